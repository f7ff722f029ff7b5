"""Arbitrary-precision numeric layer.

Heuristic (not interval-certified) error tracking: every value carries an
additive error magnitude that honest tests are expected to respect.  All
load-bearing identities elsewhere in the package are exact; this layer only
cross-checks them and supports root isolation for factorization.
"""

import math
from fractions import Fraction

import mpmath
from mpmath import mp, mpc, mpf

from .errors import InputError, PrecisionError

DEFAULT_PREC_BITS = 256
MIN_PREC_BITS = 64


def _check_prec(prec_bits):
    p = DEFAULT_PREC_BITS if prec_bits is None else int(prec_bits)
    if p < MIN_PREC_BITS:
        raise InputError("working precision below %d bits" % MIN_PREC_BITS)
    return p


def to_mpf(x):
    """Fraction/int to mpf at the ambient precision."""
    if isinstance(x, Fraction):
        if x.denominator == 1:
            return mpf(x.numerator)
        return mpf(x.numerator) / x.denominator
    return mpf(x)


def to_mpc(x):
    if isinstance(x, BigComplex):
        return x.value
    if isinstance(x, Fraction):
        return mpc(to_mpf(x))
    return mpc(x)


class BigComplex:
    """Complex value plus a heuristic absolute error magnitude."""

    __slots__ = ("value", "err")

    def __init__(self, value, err=0):
        self.value = to_mpc(value)
        self.err = abs(mpf(err))

    def __repr__(self):
        return "BigComplex(%s, err=%s)" % (mpmath.nstr(self.value, 17), mpmath.nstr(self.err, 3))

    def _coerce(self, other):
        if isinstance(other, BigComplex):
            return other
        return BigComplex(other, 0)

    def __add__(self, other):
        other = self._coerce(other)
        return BigComplex(self.value + other.value, self.err + other.err)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        return BigComplex(self.value - other.value, self.err + other.err)

    def __rsub__(self, other):
        return self._coerce(other).__sub__(self)

    def __mul__(self, other):
        other = self._coerce(other)
        e = abs(self.value) * other.err + abs(other.value) * self.err + self.err * other.err
        return BigComplex(self.value * other.value, e)

    __rmul__ = __mul__

    def __neg__(self):
        return BigComplex(-self.value, self.err)

    def __abs__(self):
        return abs(self.value)

    def distance(self, other):
        return abs(self.value - to_mpc(other))

    def serialize(self, digits=30):
        return {
            "re": mpmath.nstr(self.value.real, digits),
            "im": mpmath.nstr(self.value.imag, digits),
            "err": mpmath.nstr(self.err, 3),
        }


def kronecker(a, n):
    """Kronecker symbol (a|n), the full extension of the Jacobi symbol."""
    a = int(a)
    n = int(n)
    if n == 0:
        return 1 if a in (1, -1) else 0
    if a % 2 == 0 and n % 2 == 0:
        return 0
    tab2 = (0, 1, 0, -1, 0, -1, 0, 1)  # (2|b) for odd b, indexed b mod 8
    k = 1
    v = 0
    while n % 2 == 0:
        n //= 2
        v += 1
    if v % 2 == 1:
        k = tab2[a & 7]
        if k == 0:
            return 0
    if n < 0:
        n = -n
        if a < 0:
            k = -k
    # now n odd positive; standard binary Jacobi loop
    a %= n
    while a != 0:
        v = 0
        while a % 2 == 0:
            a //= 2
            v += 1
        if v % 2 == 1 and n & 7 in (3, 5):
            k = -k
        if a & n & 2:
            k = -k
        a, n = n % a, a
    return k if n == 1 else 0


def eval_qseries(f, tau, prec_bits=None):
    """Evaluate a rational-coefficient q-expansion at tau in the upper half-plane.

    f needs .coeffs (index m = coefficient of q^(m/e)) and .e.  The result
    error combines a fitted-majorant tail estimate for the unknown
    coefficients past the truncation with a rounding allowance.
    """
    prec = _check_prec(prec_bits)
    coeffs = list(f.coeffs)
    e = int(getattr(f, "e", 1))
    for c in coeffs:
        if not isinstance(c, (int, Fraction)):
            raise InputError("eval_qseries handles rational-coefficient series only")
    M = len(coeffs) - 1
    if M < 0:
        return BigComplex(0, 0)
    guard = 16 + (M + 2).bit_length()
    with mp.workprec(prec + guard):
        tau = to_mpc(tau)
        if tau.imag <= 0:
            raise InputError("tau must lie in the upper half-plane")
        q1 = mpmath.expjpi(2 * tau / e)
        r = abs(q1)
        if r >= 1:
            raise InputError("tau must lie in the upper half-plane")
        acc = mpc(0)
        for c in reversed(coeffs):
            acc = acc * q1
            if c:
                acc = acc + to_mpf(c)
        # tail majorant |c_m| <= C*(m+1)^alpha fitted on the computed range
        alpha = mpf(0)
        for m, c in enumerate(coeffs):
            if m >= 2 and c:
                a = mpmath.log(abs(to_mpf(c))) / mpmath.log(m + 1)
                if a > alpha:
                    alpha = a
        C = mpf(0)
        absr_sum = mpf(0)
        rpow = mpf(1)
        for m, c in enumerate(coeffs):
            if c:
                am = abs(to_mpf(c))
                absr_sum += am * rpow
                cm = am / mpf(m + 1) ** alpha
                if cm > C:
                    C = cm
            rpow *= r
        if C == 0:
            C = mpf(1)
        rho = r * (1 + mpf(1) / (M + 2)) ** alpha
        if rho >= mpf(63) / 64:
            raise InputError(
                "Im(tau) too small for the truncation order; evaluate with a larger series order"
            )
        tail = 4 * C * mpf(M + 2) ** alpha * r ** (M + 1) / (1 - rho)
        rounding = (absr_sum + 1) * (M + 2) * mpf(2) ** (-(prec + guard) + 4)
        return BigComplex(acc, tail + rounding)


def _lattice_tail_bound(lam, N, X, Y, B):
    """Upper bound for the truncated coset-sum defect, via integral comparison.

    Coprimality and the character can only remove terms, so bounding the
    unrestricted absolute tail is valid.  O(B^(2-lam)) in the bound B.
    """
    lam = mpf(lam)
    Y = mpf(Y)
    X = abs(mpf(X))
    c_tail = 3 * (N * Y) ** (1 - lam) * mpf(B) ** (2 - lam) / (lam - 2)
    d_tail = mpf(0)
    for c in range(N, B * N + 1, N):
        a = c * Y
        v = B - c * X
        if v >= 1:
            # |c tau + d| >= max(t, a) with t the distance to the window edge
            if v >= a:
                integral = v ** (1 - lam) / (lam - 1)
            else:
                integral = a ** (1 - lam) * lam / (lam - 1)
            d_tail += 2 * (integral + (v * v + a * a) ** (-lam / 2))
        else:
            d_tail += 2 * (2 * a ** (1 - lam) + a ** (-lam))
    return c_tail + d_tail


def lattice_sum_eisenstein(weight, level, tau, bound, character=None, prec_bits=None):
    """Truncated coset sum 1 + sum chi(d) (c tau + d)^(-weight) over the
    Gamma_infinity orbit representatives with 0 < c <= bound*level, level | c,
    |d| <= bound, gcd(c, d) = 1.

    The numeric oracle for the exact Eisenstein constructors.  character is
    None (trivial) or a Kronecker-symbol discriminant for a real quadratic
    character.  The attached error is the explicit truncation bound.
    """
    lam = int(weight)
    N = int(level)
    B = int(bound)
    if lam < 3:
        raise InputError("lattice sum needs weight >= 3 for absolute convergence")
    if N < 1 or B < 1:
        raise InputError("level and bound must be positive")
    prec = _check_prec(prec_bits)
    with mp.workprec(prec + 16):
        tau = to_mpc(tau)
        if tau.imag <= 0:
            raise InputError("tau must lie in the upper half-plane")
        half = lam // 2
        odd = lam % 2
        total = mpc(1)  # the c = 0 orbit
        nterms = 1
        for c in range(N, B * N + 1, N):
            ctau = c * tau
            row = mpc(0)
            for d in range(-B, B + 1):
                if math.gcd(c, abs(d)) != 1:
                    continue
                chi = 1 if character is None else kronecker(character, d)
                if chi == 0:
                    continue
                w = ctau + d
                w2inv = 1 / (w * w)
                term = w2inv ** half
                if odd:
                    term = term / w
                row += term if chi == 1 else -term
                nterms += 1
            total += row
        tail = _lattice_tail_bound(lam, N, tau.real, tau.imag, B)
        rounding = nterms * mpf(2) ** (-prec - 8)
        return BigComplex(total, tail + rounding)


def root_cluster(p, prec_bits=None):
    """All complex roots of a rational polynomial, deterministically ordered.

    Accepts a UniPoly or a constant-first coefficient sequence.  Roots must
    separate cleanly at the working precision (inputs here are squarefree);
    otherwise a PrecisionError asks the caller to refine.
    """
    prec = _check_prec(prec_bits)
    coeffs = list(getattr(p, "coeffs", p))
    if not coeffs or all(c == 0 for c in coeffs):
        raise InputError("root_cluster needs a nonzero polynomial")
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    deg = len(coeffs) - 1
    if deg == 0:
        return []
    with mp.workprec(prec):
        poly = [to_mpf(Fraction(c)) for c in reversed(coeffs)]
        try:
            roots, err = mpmath.polyroots(poly, maxsteps=200, extraprec=prec, error=True)
        except mpmath.libmp.NoConvergence as exc:
            raise PrecisionError("root finding did not converge; raise the precision") from exc
        roots = [mpc(r) for r in roots]
        roots.sort(key=lambda z: (z.real, z.imag))
        scale = max([abs(r) for r in roots] + [mpf(1)])
        floor = max(mpf(err), scale * mpf(2) ** (-prec + 8))
        for i in range(len(roots) - 1):
            for j in range(i + 1, len(roots)):
                if abs(roots[i] - roots[j]) <= 4 * floor:
                    raise PrecisionError(
                        "root separation not certified at %d bits; refine" % prec
                    )
        return [BigComplex(r, floor) for r in roots]

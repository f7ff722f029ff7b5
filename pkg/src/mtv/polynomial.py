"""Dense univariate polynomials over Q and factorization into irreducibles.

Factorization strategy: squarefree decomposition (Yun), then a numeric
assist on each squarefree part: cluster the roots at high precision, try
subsets of roots as candidate factors, round the candidate's coefficients
to integers, and certify by exact division.  A failed certification never
produces a wrong answer, only a retry at doubled precision; the final
multiply-back identity is asserted unconditionally.
"""

import itertools
import math
from fractions import Fraction

import mpmath

from .errors import InputError, PrecisionError
from .numerics import root_cluster
from .rational import lcm_denominators


class UniPoly:
    """Polynomial over Q, coefficients stored constant-first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls):
        return cls((0, 1))

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self == UniPoly((other,))
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __neg__(self):
        return UniPoly(tuple(-c for c in self.coeffs))

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return UniPoly(a)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if self.is_zero() or other.is_zero():
            return UniPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n):
        if n < 0:
            raise InputError("negative polynomial power")
        out = UniPoly((1,))
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly((Fraction(other),))

    def __divmod__(self, other):
        other = self._coerce(other)
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return UniPoly(), self
        quo = [Fraction(0)] * (dq + 1)
        inv_lc = 1 / other.lc()
        for i in range(dq, -1, -1):
            c = rem[i + other.degree] * inv_lc
            quo[i] = c
            if c:
                for j, b in enumerate(other.coeffs):
                    rem[i + j] -= c * b
        return UniPoly(quo), UniPoly(rem)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def monic(self):
        if self.is_zero():
            raise InputError("zero polynomial has no monic form")
        inv = 1 / self.lc()
        return UniPoly(tuple(c * inv for c in self.coeffs))

    def derivative(self):
        return UniPoly(tuple(i * c for i, c in enumerate(self.coeffs) if i))

    def eval(self, x):
        acc = None
        for c in reversed(self.coeffs):
            acc = c if acc is None else acc * x + c
        if acc is None:
            return Fraction(0)
        return acc

    def scale_arg(self, a):
        """p(a*x)."""
        a = Fraction(a)
        pw = Fraction(1)
        out = []
        for c in self.coeffs:
            out.append(c * pw)
            pw *= a
        return UniPoly(out)

    def primitive_int(self):
        """Write p = unit * P with P integer-coefficient, primitive, lc > 0."""
        if self.is_zero():
            return Fraction(0), UniPoly()
        den = lcm_denominators(self.coeffs)
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = math.gcd(g, abs(v))
        if ints[-1] < 0:
            g = -g
        return Fraction(g, den), UniPoly([v // g for v in ints])

    def serialize(self):
        from .rational import format_rational

        return [format_rational(c) for c in self.coeffs]

    def __repr__(self):
        if self.is_zero():
            return "UniPoly(0)"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                parts.append(str(c))
            elif i == 1:
                parts.append("%s*x" % c if c != 1 else "x")
            else:
                parts.append("%s*x^%d" % (c, i) if c != 1 else "x^%d" % i)
        return "UniPoly(%s)" % " + ".join(parts).replace("+ -", "- ")


def poly_gcd(a, b):
    """Monic gcd over Q."""
    while not b.is_zero():
        a, b = b, a % b
    if a.is_zero():
        return a
    return a.monic()


def squarefree_parts(p):
    """Yun's algorithm on a monic polynomial: list of (g_i, i), product g_i^i = p."""
    out = []
    a = poly_gcd(p, p.derivative())
    b = p // a
    c = p.derivative() // a
    d = c - b.derivative()
    i = 1
    while b.degree > 0:
        g = poly_gcd(b, d)
        if g.degree > 0:
            out.append((g, i))
        b = b // g
        c = d // g
        d = c - b.derivative()
        i += 1
    return out


def _round_to_int(x, slack):
    n = int(round(float(x)))
    if abs(x - n) > slack:
        return None
    return n


def _factor_squarefree_monic_int(H, prec0):
    """Irreducible monic integer factors of a squarefree monic integer polynomial.

    Returns factors in discovery order; the caller sorts.  Raises
    PrecisionError if root accuracy can never support a trustworthy verdict.
    """
    n = H.degree
    if n <= 1:
        return [H]
    maxcoeff = max(abs(int(c)) for c in H.coeffs)
    prec = max(prec0, 128 + 16 * n + 2 * maxcoeff.bit_length())
    while True:
        if prec > 1 << 16:
            raise PrecisionError("factorization assist exhausted precision")
        try:
            roots = root_cluster(H, prec)
        except PrecisionError:
            prec *= 2
            continue
        R = max([abs(r.value) for r in roots] + [mpmath.mpf(1)])
        err = max(r.err for r in roots)
        # worst-case coefficient error of a subset product
        margin = len(roots) * (2 * (R + 1)) ** (max(1, n // 2)) * err
        if margin > mpmath.mpf("0.05"):
            prec *= 2
            continue
        rvals = [r.value for r in roots]
        remaining = list(range(n))
        rem_poly = H
        found = []
        size = 1
        while 2 * size <= len(remaining):
            hit = None
            for subset in itertools.combinations(remaining, size):
                # monic product of the chosen linear factors
                cs = [mpmath.mpc(1)]
                for idx in subset:
                    r = rvals[idx]
                    cs = [mpmath.mpc(0)] + cs
                    for t in range(len(cs) - 1):
                        cs[t] -= r * cs[t + 1]
                cand = []
                ok = True
                for v in cs:
                    if abs(v.imag) > 0.25:
                        ok = False
                        break
                    m = _round_to_int(v.real, 0.25)
                    if m is None:
                        ok = False
                        break
                    cand.append(m)
                if not ok:
                    continue
                G = UniPoly(cand)
                q, r = divmod(rem_poly, G)
                if r.is_zero():
                    hit = (subset, G, q)
                    break
            if hit is None:
                size += 1
                continue
            subset, G, q = hit
            found.append(G)
            rem_poly = q
            remaining = [t for t in remaining if t not in subset]
        if rem_poly.degree > 0:
            found.append(rem_poly)
        assert sum(f.degree for f in found) == n
        return found


def poly_factor_q(p, prec_bits=None):
    """Factor p over Q into monic irreducibles.

    Returns [(factor, multiplicity), ...] sorted by (degree, coefficients);
    lc(p) * product(factor^mult) == p, asserted before returning.
    """
    if not isinstance(p, UniPoly):
        p = UniPoly(p)
    if p.is_zero():
        raise InputError("cannot factor the zero polynomial")
    if p.degree == 0:
        return []
    prec0 = 256 if prec_bits is None else int(prec_bits)
    work = p.monic()
    result = {}
    # peel the power of x so the squarefree machinery sees nonzero constant terms
    v = 0
    while work.coeffs[0] == 0:
        work = UniPoly(work.coeffs[1:])
        v += 1
    if v:
        result[UniPoly((0, 1)).coeffs] = v
    if work.degree > 0:
        for part, mult in squarefree_parts(work):
            unit, P = part.primitive_int()
            lcP = int(P.lc())
            # monic integer transform: Htilde(x) = lc^(deg-1) * P(x/lc)
            d = P.degree
            H = UniPoly([int(P.coeffs[i]) * lcP ** (d - 1 - i) for i in range(d + 1)])
            for G in _factor_squarefree_monic_int(H, prec0):
                # map back to a monic rational factor of the original part
                f = G.scale_arg(lcP)
                f = f.monic()
                result[f.coeffs] = result.get(f.coeffs, 0) + mult
    factors = sorted(
        ((UniPoly(cs), m) for cs, m in result.items()),
        key=lambda fm: (fm[0].degree, fm[0].coeffs),
    )
    check = UniPoly((p.lc(),))
    for f, m in factors:
        check = check * f ** m
    assert check == p, "factorization certification failed"
    return factors

"""Elliptic-curve side: period lattice recovery and exact specialization.

A curve y^2 = 4x^3 - g2 x - g3 over Q with nonzero discriminant has a lattice
tau via inversion of the j-function (Newton on numeric q-expansions, seeded
by the reciprocal of j - 744, certified afterwards).  Specialization sends
E4 -> 12 g2, E6 -> 216 g3, Delta -> g2^3 - 27 g3^2 after the (2 pi / w2)^k
rescaling, which on the triangular level-1 basis is a ring homomorphism we
can apply exactly to any level-1 form.
"""

from fractions import Fraction

import mpmath
from mpmath import mpc, mpf

from .errors import InputError, PrecisionError, VerificationError
from .numerics import BigComplex, eval_qseries, to_mpc
from .numfield import nf_trace
from .polynomial import UniPoly, poly_factor_q
from .qexp import eisenstein_level1
from .rational import exact_fraction, format_rational, rational_reconstruct
from .spaces import delta_series, expand_in_triangular, miller_basis, miller_exponents
from .trace import verify_theorem


class CurveQ:
    """y^2 = 4x^3 - g2 x - g3 with rational invariants and nonzero discriminant."""

    __slots__ = ("g2", "g3")

    def __init__(self, g2, g3):
        self.g2 = Fraction(g2)
        self.g3 = Fraction(g3)
        if self.discriminant == 0:
            raise InputError("singular curve: g2^3 - 27 g3^2 = 0")

    @property
    def discriminant(self):
        return self.g2**3 - 27 * self.g3**2

    @property
    def j(self):
        return 1728 * self.g2**3 / self.discriminant

    @classmethod
    def from_ainvs(cls, a1, a2, a3, a4, a6):
        """Canonicalize a long Weierstrass model to (g2, g3)."""
        a1, a2, a3, a4, a6 = (Fraction(v) for v in (a1, a2, a3, a4, a6))
        b2 = a1**2 + 4 * a2
        b4 = 2 * a4 + a1 * a3
        b6 = a3**2 + 4 * a6
        c4 = b2**2 - 24 * b4
        c6 = -(b2**3) + 36 * b2 * b4 - 216 * b6
        return cls(c4 / 12, c6 / 216)

    def serialize(self):
        return {
            "g2": format_rational(self.g2),
            "g3": format_rational(self.g3),
            "discriminant": format_rational(self.discriminant),
            "j": format_rational(self.j),
        }

    def __repr__(self):
        return "CurveQ(g2=%s, g3=%s)" % (self.g2, self.g3)


# -- numeric j-inversion ---------------------------------------------------

_SERIES_CACHE = {}


def _level1_series(trunc):
    key = int(trunc)
    if key not in _SERIES_CACHE:
        _SERIES_CACHE[key] = (
            eisenstein_level1(4, key),
            eisenstein_level1(6, key),
            delta_series(key),
        )
    return _SERIES_CACHE[key]


def _order_for(im_tau, prec_bits):
    # |q|^T = exp(-2 pi Im(tau) T) must undercut 2^-prec with headroom
    T = int(0.80 * prec_bits / im_tau) + 24
    return max(48, T)


def j_invariant_numeric(tau, prec_bits=256):
    """j(tau) = E4^3/Delta as a BigComplex with the series tail accounted."""
    tau = to_mpc(tau)
    if tau.imag <= 0:
        raise InputError("tau must be in the upper half plane")
    T = _order_for(float(tau.imag), prec_bits)
    E4, _, D = _level1_series(T)
    with mpmath.workprec(prec_bits + 16):
        e4 = eval_qseries(E4, tau, prec_bits + 16)
        dd = eval_qseries(D, tau, prec_bits + 16)
        num = e4 * e4 * e4
        dv = dd.value
        if abs(dv) <= 2 * dd.err:
            raise PrecisionError("discriminant series vanishes to working precision")
        val = num.value / dv
        # |A/B| error: (errA + |A/B| errB) / (|B| - errB)
        err = (num.err + abs(val) * dd.err) / (abs(dv) - dd.err)
        return BigComplex(val, err)


def _reduce_fundamental(tau):
    for _ in range(256):
        tau = tau - mpmath.floor(tau.real + mpf("0.5"))
        if abs(tau) >= 1:
            return tau
        tau = -1 / tau
    raise PrecisionError("fundamental-domain reduction did not settle")


class CurvePair:
    """A curve together with its lattice point tau and scaling 2 pi / w2."""

    __slots__ = ("curve", "tau", "scale", "omega2", "prec_bits", "order")

    def __init__(self, curve, tau, scale, prec_bits, order):
        self.curve = curve
        self.tau = tau
        self.scale = scale
        self.omega2 = 2 * mpmath.pi / scale
        self.prec_bits = prec_bits
        self.order = order

    def scale_bc(self):
        s = abs(self.scale)
        return BigComplex(self.scale, s * mpf(2) ** (-self.prec_bits + 8))

    def specialize_numeric(self, series, weight):
        """(2 pi / w2)^weight * series(tau) as a BigComplex."""
        with mpmath.workprec(self.prec_bits + 16):
            v = eval_qseries(series, self.tau, self.prec_bits + 16)
            s = self.scale_bc()
            p = int(weight)
            acc = BigComplex(mpc(1), mpf(0))
            base = s
            while p:
                if p & 1:
                    acc = acc * base
                p >>= 1
                if p:
                    base = base * base
            return acc * v

    def serialize(self):
        return {
            "tau": mpmath.nstr(self.tau, 30),
            "omega2": mpmath.nstr(self.omega2, 30),
            "scale": mpmath.nstr(self.scale, 30),
            "prec_bits": self.prec_bits,
        }


def tau_from_curve(curve, prec_bits=256):
    """Invert j to a fundamental-domain tau and fix the period branch.

    The returned pair satisfies scale^4 E4(tau) = 12 g2 and
    scale^6 E6(tau) = 216 g3 to the certified working precision.
    """
    prec_bits = int(prec_bits)
    if prec_bits < 64:
        raise InputError("precision below 64 bits")
    jv = curve.j
    with mpmath.workprec(prec_bits + 32):
        if jv == 0:
            tau = (1 + mpmath.sqrt(-3)) / 2
        elif jv == 1728:
            tau = mpc(0, 1)
        else:
            tau = _invert_j_newton(jv, prec_bits)
        tau = _reduce_fundamental(tau)
        T = _order_for(float(tau.imag), prec_bits)
        E4s, E6s, Ds = _level1_series(T)
        # certify |E4^3 - j Delta| relative to |Delta|
        e4 = eval_qseries(E4s, tau, prec_bits + 16)
        e6 = eval_qseries(E6s, tau, prec_bits + 16)
        dd = eval_qseries(Ds, tau, prec_bits + 16)
        lhs = e4 * e4 * e4
        rhs = dd * BigComplex(to_mpc(jv), mpf(0))
        diff = lhs - rhs
        gate = (abs(dd.value) + dd.err) * (1 + abs(to_mpc(jv))) * mpf(2) ** (
            -(prec_bits // 2)
        )
        if abs(diff.value) + diff.err > gate:
            raise PrecisionError(
                "j-inversion certificate failed: residual %s vs gate %s"
                % (mpmath.nstr(abs(diff.value) + diff.err, 8), mpmath.nstr(gate, 8))
            )
        # period branch
        if curve.g2 != 0:
            scale = (12 * to_mpc(curve.g2) / e4.value) ** Fraction(1, 4)
            if curve.g3 != 0:
                want = to_mpc(curve.g3)
                got = scale**6 * e6.value / 216
                if abs(got - want) > abs(got + want):
                    scale *= mpc(0, 1)
                got = scale**6 * e6.value / 216
                tol = mpf(2) ** (-(prec_bits // 3)) * (1 + abs(want))
                if abs(got - want) > tol:
                    raise PrecisionError("period branch fix failed on g3")
        else:
            scale = (216 * to_mpc(curve.g3) / e6.value) ** Fraction(1, 6)
        # final lattice certificate through the discriminant
        dE = to_mpc(curve.discriminant)
        got = scale**12 * dd.value
        tol = mpf(2) ** (-(prec_bits // 3)) * (1 + abs(dE))
        if abs(got - dE) > tol:
            raise PrecisionError("lattice certificate failed on the discriminant")
        return CurvePair(curve, tau, scale, prec_bits, T)


def _invert_j_newton(jv, prec_bits):
    jc = to_mpc(jv)
    seeds = []
    if abs(jc - 744) > 1:
        q0 = 1 / (jc - 744)
        if abs(q0) < mpf("0.05"):
            seeds.append(mpmath.log(q0) / (2j * mpmath.pi))
    seeds += [
        mpc("0.0", "1.2"), mpc("0.25", "1.1"), mpc("-0.25", "1.1"),
        mpc("0.45", "0.95"), mpc("0.1", "2.0"),
    ]
    two_pi_i = 2j * mpmath.pi
    stop = mpf(2) ** (-prec_bits - 8)
    for seed in seeds:
        tau = seed
        ok = False
        for _ in range(200):
            if tau.imag < mpf("0.05"):
                break
            tau_r = _reduce_fundamental(tau)
            if tau_r.imag > tau.imag:
                tau = tau_r
            T = _order_for(float(tau.imag), prec_bits)
            E4s, E6s, Ds = _level1_series(T)
            e4 = eval_qseries(E4s, tau, prec_bits + 16).value
            e6 = eval_qseries(E6s, tau, prec_bits + 16).value
            dd = eval_qseries(Ds, tau, prec_bits + 16).value
            jval = e4**3 / dd
            jder = -two_pi_i * e4**2 * e6 / dd
            if jder == 0:
                break
            step = (jval - jc) / jder
            tau = tau - step
            if abs(step) < stop * max(1, abs(tau)):
                ok = True
                break
        if ok and tau.imag > 0:
            return tau
    raise PrecisionError("j-inversion did not converge from any seed")


# -- exact specialization ----------------------------------------------------

def specialize_level1_exact(f, curve):
    """Exact specialized value of a level-1 form of even weight.

    Expands f in the triangular basis and maps basis monomials through
    E4 -> 12 g2, E6 -> 216 g3, Delta -> discriminant.  Coefficients may lie
    in a number field; the value then lies in the same field.
    """
    k = f.weight
    if k is None or k < 0 or k % 2:
        raise InputError("specialization needs an even nonnegative weight")
    if k == 0:
        if not (f - f.coeff(0)).is_zero():
            raise VerificationError("weight-0 input is not constant")
        return f.coeff(0)
    d, a, b = miller_exponents(k)
    if f.trunc < d:
        raise InputError("series order %d below basis length %d" % (f.trunc, d))
    basis = miller_basis(k, f.trunc)
    coords, _ = expand_in_triangular(f, basis, strict=True)
    A = 12 * curve.g2
    B = 216 * curve.g3
    D = curve.discriminant
    total = None
    for j in range(1, d + 1):
        mono = A**a * B ** (b + 2 * (d - j)) * D ** (j - 1)
        term = coords[j - 1] * mono
        total = term if total is None else total + term
    return total


def specialize_phi(symmetric, curve):
    """Specialized transformation polynomial X^mu - s1' X^(mu-1) + ... exactly."""
    mu = len(symmetric)
    coeffs = [Fraction(0)] * (mu + 1)
    coeffs[mu] = Fraction(1)
    sign = -1
    for i, s in enumerate(symmetric, start=1):
        v = specialize_level1_exact(s, curve)
        if not isinstance(v, Fraction):
            raise InputError("transformation coefficients must be rational")
        coeffs[mu - i] = sign * v
        sign = -sign
    return UniPoly(coeffs)


def condition_a(poly):
    """Irreducibility over Q, with the certified factorization as evidence."""
    factors = poly_factor_q(poly)
    irreducible = (
        len(factors) == 1
        and factors[0][1] == 1
        and factors[0][0].degree == poly.degree
    )
    return irreducible, factors


def reconstruct_real(bc, denom_bound=10**6):
    """Recognize a certified BigComplex as a rational; error if ambiguous."""
    if abs(bc.value.imag) > bc.err + mpf(2) ** -40:
        raise VerificationError(
            "value has a nonreal part %s beyond its error bound"
            % mpmath.nstr(bc.value.imag, 8)
        )
    x = exact_fraction(bc.value.real)
    return rational_reconstruct(x, denom_bound, err=exact_fraction(mpf(bc.err)))


# -- the specialization corollary -------------------------------------------

class CorollaryResult:
    __slots__ = (
        "theorem", "curve", "lhs", "rhs", "equal", "condition_a",
        "phi_factor_degrees", "interpretation", "condition_b", "pair",
        "j_level_tau",
    )

    def __init__(self, **kw):
        for k in self.__slots__:
            setattr(self, k, kw[k])

    def to_dict(self):
        d = {
            "curve": self.curve.serialize(),
            "specialized_trace_lhs": format_rational(self.lhs),
            "newform_side_rhs": format_rational(self.rhs),
            "identity_holds": self.equal,
            "condition_a_irreducible": self.condition_a,
            "phi_factor_degrees": self.phi_factor_degrees,
            "interpretation": self.interpretation,
            "condition_b": self.condition_b,
            "theorem": self.theorem.to_dict(),
        }
        if self.pair is not None:
            d["lattice"] = self.pair.serialize()
        if self.j_level_tau is not None:
            d["j_at_level_tau"] = self.j_level_tau.serialize(30)
        return d


def verify_corollary(level, eta_pairs, eis_weight, power, curve, order=64,
                     prec_bits=192):
    """Exact check that the specialized trace equals the newform-side sum.

    LHS: specialize Tr(h^power) through the basis homomorphism.
    RHS: c * sum_i Tr_(K_i/Q)(ratio_i * specialize(f_i)).
    Both sides are rational numbers; they must be equal, not just close.
    """
    res = verify_theorem(level, eta_pairs, eis_weight, power, order=order)
    lhs = specialize_level1_exact(res.trace, curve)
    acc = Fraction(0)
    for nf, xi in zip(res.orbit_set.orbits, res.ratios):
        sv = specialize_level1_exact(nf.qexp, curve)
        acc += nf_trace(xi * sv) if nf.field is not None else xi * sv
    rhs = res.constant * acc
    if lhs != rhs:
        raise VerificationError(
            "specialization identity fails: trace side %s vs newform side %s"
            % (lhs, rhs)
        )
    phiE = specialize_phi(res.phi_symmetric, curve)
    irr, factors = condition_a(phiE)
    degrees = sorted(g.degree for g, m in factors for _ in range(m))
    if irr:
        interpretation = "full strength: specialized polynomial is irreducible"
    else:
        interpretation = (
            "identity holds; specialized polynomial splits, so the field "
            "interpretation degenerates to the factor fields"
        )
    pair = None
    jN = None
    try:
        pair = tau_from_curve(curve, prec_bits)
        jN = j_invariant_numeric(pair.tau * level, prec_bits)
    except PrecisionError:
        pass
    return CorollaryResult(
        theorem=res,
        curve=curve,
        lhs=lhs,
        rhs=rhs,
        equal=(lhs == rhs),
        condition_a=irr,
        phi_factor_degrees=degrees,
        interpretation=interpretation,
        condition_b="base field is Q, coefficient comparison is exact; nothing further to check",
        pair=pair,
        j_level_tau=jN,
    )

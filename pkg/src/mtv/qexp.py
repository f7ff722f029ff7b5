"""Exact q-expansion engine.

QSeries holds a truncated expansion in q^(1/e) with exact coefficients:
rationals, number-field elements, or prime-conductor cyclotomic elements.
Multiplication clears denominators, convolves integer component arrays, and
reduces by the coefficient field's power relations, so the inner loops stay
big-integer only.

The Eisenstein constructors are closed forms; each (weight, level) is gated
once per process against the independent numeric coset-sum oracle before its
series is handed out, and the Fricke image is additionally gated against a
direct numeric evaluation of the slash action.
"""

import json
import math
from fractions import Fraction

from mpmath import mp, mpc

from .errors import (
    InputError,
    TruncationError,
    UnsupportedScopeError,
    VerificationError,
)
from .numerics import eval_qseries, lattice_sum_eisenstein
from .numfield import (
    CycloElem,
    CycloField,
    NumberField,
    NumberFieldElem,
    conjugate_quadratic,
)
from .rational import format_rational, lcm_denominators, parse_rational


def _merge_fields(fa, fb):
    if fa is None:
        return fb
    if fb is None or fa == fb:
        return fa
    raise InputError("coefficient domain mismatch: %r vs %r" % (fa, fb))


def _lcm(a, b):
    return a * b // math.gcd(a, b)


class QSeries:
    """Truncated q-expansion; coeffs[m] multiplies q^(m/e), known through q^trunc."""

    __slots__ = ("coeffs", "e", "trunc", "weight", "level", "field")

    def __init__(self, coeffs, e=1, trunc=None, weight=None, level=1, field=None):
        e = int(e)
        if e < 1:
            raise InputError("q-power denominator must be >= 1")
        coeffs = list(coeffs)
        if trunc is None:
            trunc = (len(coeffs) - 1) // e if coeffs else 0
        trunc = int(trunc)
        if trunc < 0:
            raise InputError("negative truncation order")
        want = e * trunc + 1
        coeffs = coeffs[:want]
        if field is None:
            coeffs = [c if isinstance(c, Fraction) else Fraction(c) for c in coeffs]
        else:
            coeffs = [field.coerce(c) for c in coeffs]
        if len(coeffs) < want:
            zero = Fraction(0) if field is None else field.zero()
            coeffs.extend([zero] * (want - len(coeffs)))
        self.coeffs = tuple(coeffs)
        self.e = e
        self.trunc = trunc
        self.weight = weight if weight is None else int(weight)
        self.level = int(level)
        self.field = field

    # -- inspection ----------------------------------------------------

    def is_zero(self):
        if self.field is None:
            return all(c == 0 for c in self.coeffs)
        return all(c.is_zero() for c in self.coeffs)

    def constant_term(self):
        return self.coeffs[0]

    def coeff(self, n):
        """Coefficient of q^n; n may be a Fraction on a fractional-power grid."""
        n = Fraction(n)
        if n > self.trunc:
            raise TruncationError(
                "coefficient of q^%s requested beyond truncation order %d" % (n, self.trunc)
            )
        m = n * self.e
        if m.denominator != 1 or m < 0:
            return Fraction(0) if self.field is None else self.field.zero()
        return self.coeffs[int(m)]

    def valuation(self):
        """Exponent of the first nonzero term, or None for the zero series."""
        for m, c in enumerate(self.coeffs):
            nz = (c != 0) if self.field is None else (not c.is_zero())
            if nz:
                return Fraction(m, self.e)
        return None

    def __eq__(self, other):
        if not isinstance(other, QSeries):
            return NotImplemented
        return (
            self.e == other.e
            and self.trunc == other.trunc
            and self.field == other.field
            and self.coeffs == other.coeffs
        )

    def __hash__(self):
        return hash((self.e, self.trunc, self.coeffs))

    def __repr__(self):
        head = []
        shown = 0
        for m, c in enumerate(self.coeffs):
            nz = (c != 0) if self.field is None else (not c.is_zero())
            if nz:
                head.append("%s*q^(%d/%d)" % (c, m, self.e) if self.e > 1 else "%s*q^%d" % (c, m))
                shown += 1
                if shown == 4:
                    head.append("...")
                    break
        return "QSeries(%s; trunc=%d)" % (" + ".join(head) or "0", self.trunc)

    def truncate(self, T):
        T = int(T)
        if T > self.trunc:
            raise TruncationError("cannot extend a series by truncation")
        if T == self.trunc:
            return self
        return QSeries(
            self.coeffs[: self.e * T + 1],
            e=self.e,
            trunc=T,
            weight=self.weight,
            level=self.level,
            field=self.field,
        )

    def agrees_through(self, other, T):
        """Exact coefficient agreement through q^T (grids may differ)."""
        if self.trunc < T or other.trunc < T:
            raise TruncationError("agreement order exceeds a truncation order")
        e = _lcm(self.e, other.e)
        for m in range(e * T + 1):
            n = Fraction(m, e)
            a = self.coeff(n)
            b = other.coeff(n)
            if isinstance(a, (CycloElem, NumberFieldElem)) != isinstance(
                b, (CycloElem, NumberFieldElem)
            ):
                a, b = _match_values(a, b)
            if a != b:
                return False
        return True

    # -- arithmetic ----------------------------------------------------

    def _meta_add(self, other):
        if self.weight is not None and other.weight is not None and self.weight != other.weight:
            raise InputError("adding series of different weights")
        w = self.weight if self.weight is not None else other.weight
        return w, _lcm(self.level, other.level)

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QSeries(
                [other], e=1, trunc=self.trunc, level=self.level, field=None
            )
        elif isinstance(other, (NumberFieldElem, CycloElem)):
            other = QSeries(
                [other], e=1, trunc=self.trunc, level=self.level, field=other.field
            )
        if not isinstance(other, QSeries):
            return NotImplemented
        field = _merge_fields(self.field, other.field)
        w, lev = self._meta_add(other)
        e = _lcm(self.e, other.e)
        T = min(self.trunc, other.trunc)
        out = []
        for m in range(e * T + 1):
            n = Fraction(m, e)
            out.append(_add_values(self.coeff(n), other.coeff(n), field))
        return QSeries(out, e=e, trunc=T, weight=w, level=lev, field=field)

    __radd__ = __add__

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        if isinstance(other, QSeries):
            return self + other.scale(-1)
        return self + (-Fraction(other))

    def __rsub__(self, other):
        return (-self) + Fraction(other)

    def scale(self, c):
        """Multiply by an exact scalar (rational or coefficient-field element)."""
        if isinstance(c, (int, Fraction)):
            c = Fraction(c)
            coeffs = [a * c for a in self.coeffs]
            return QSeries(
                coeffs, e=self.e, trunc=self.trunc, weight=self.weight,
                level=self.level, field=self.field,
            )
        field = _merge_fields(self.field, getattr(c, "field", None))
        coeffs = [c * a for a in self.coeffs]
        return QSeries(
            coeffs, e=self.e, trunc=self.trunc, weight=self.weight,
            level=self.level, field=field,
        )

    def _components(self, e_out, out_len):
        """Integer component arrays on the q^(1/e_out) grid plus their denominator."""
        stride = e_out // self.e
        if self.field is None:
            den = lcm_denominators(c for c in self.coeffs if c)
            arr = [0] * out_len
            for m, c in enumerate(self.coeffs):
                idx = m * stride
                if idx >= out_len:
                    break
                if c:
                    arr[idx] = c.numerator * (den // c.denominator)
            return [arr], den
        ncomp = self.field.degree
        den = 1
        for c in self.coeffs:
            for v in c.coords:
                den = _lcm(den, v.denominator)
        comps = [[0] * out_len for _ in range(ncomp)]
        for m, c in enumerate(self.coeffs):
            idx = m * stride
            if idx >= out_len:
                break
            for i, v in enumerate(c.coords):
                if v:
                    comps[i][idx] = v.numerator * (den // v.denominator)
        return comps, den

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, NumberFieldElem, CycloElem)):
            return self.scale(other)
        if not isinstance(other, QSeries):
            return NotImplemented
        field = _merge_fields(self.field, other.field)
        if (
            isinstance(field, NumberField)
            and self.field is not None
            and other.field is not None
        ):
            return self._mul_generic(other)
        w = None
        if self.weight is not None and other.weight is not None:
            w = self.weight + other.weight
        lev = _lcm(self.level, other.level)
        e = _lcm(self.e, other.e)
        T = min(self.trunc, other.trunc)
        out_len = e * T + 1
        A, da = self._components(e, out_len)
        B, db = other._components(e, out_len)
        raw = [[0] * out_len for _ in range(len(A) + len(B) - 1)]
        for i, ai in enumerate(A):
            for j, bj in enumerate(B):
                _conv_into(raw[i + j], ai, bj, out_len)
        if isinstance(field, CycloField):
            comps = _cyclo_reduce_arrays(field.p, raw, out_len)
        else:
            comps = raw
        den = da * db
        if field is None:
            coeffs = [Fraction(v, den) for v in comps[0]]
        else:
            ncomp = field.degree
            while len(comps) < ncomp:
                comps.append([0] * out_len)
            coeffs = [
                field.elem([Fraction(comps[i][m], den) for i in range(ncomp)])
                for m in range(out_len)
            ]
        return QSeries(coeffs, e=e, trunc=T, weight=w, level=lev, field=field)

    __rmul__ = __mul__

    def _mul_generic(self, other):
        field = _merge_fields(self.field, other.field)
        w = None
        if self.weight is not None and other.weight is not None:
            w = self.weight + other.weight
        e = _lcm(self.e, other.e)
        T = min(self.trunc, other.trunc)
        out_len = e * T + 1
        sa = e // self.e
        sb = e // other.e
        zero = field.zero()
        out = [zero] * out_len
        for i, a in enumerate(self.coeffs):
            ia = i * sa
            if ia >= out_len:
                break
            if (a == 0) if isinstance(a, Fraction) else a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                idx = ia + j * sb
                if idx >= out_len:
                    break
                if (b == 0) if isinstance(b, Fraction) else b.is_zero():
                    continue
                out[idx] = out[idx] + a * b
        return QSeries(
            out, e=e, trunc=T, weight=w,
            level=_lcm(self.level, other.level), field=field,
        )

    def __pow__(self, n):
        n = int(n)
        if n < 0:
            raise InputError("negative series power")
        if n == 0:
            one = Fraction(1) if self.field is None else self.field.one()
            return QSeries(
                [one], e=1, trunc=self.trunc, weight=0, level=self.level,
                field=self.field,
            )
        out = None
        base = self
        while n:
            if n & 1:
                out = base if out is None else out * base
            n >>= 1
            if n:
                base = base * base
        return out

    # -- serialization ---------------------------------------------------

    def serialize(self):
        d = {
            "weight": self.weight,
            "level": self.level,
            "character": "trivial",
            "qdenom": self.e,
            "trunc": self.trunc,
        }
        if self.field is None:
            d["coeffs"] = [format_rational(c) for c in self.coeffs]
        elif isinstance(self.field, NumberField):
            d["field_modulus"] = self.field.modulus.serialize()
            d["coeffs"] = [[format_rational(v) for v in c.coords] for c in self.coeffs]
        else:
            raise UnsupportedScopeError("cyclotomic series serialization not supported")
        return d


def _add_values(a, b, field):
    if field is None:
        return a + b
    return field.coerce(a) + field.coerce(b)


def _match_values(a, b):
    if isinstance(a, Fraction):
        a = b.field.coerce(a) if not isinstance(b, Fraction) else a
    elif isinstance(b, Fraction):
        b = a.field.coerce(b)
    return a, b


def _conv_into(out, a, b, out_len):
    for i, ai in enumerate(a):
        if not ai:
            continue
        top = min(len(b), out_len - i)
        if top <= 0:
            break
        if ai == 1:
            for j in range(top):
                bj = b[j]
                if bj:
                    out[i + j] += bj
        else:
            for j in range(top):
                bj = b[j]
                if bj:
                    out[i + j] += ai * bj


def _cyclo_reduce_arrays(p, raw, out_len):
    d = p - 1
    out = [list(raw[t]) if t < len(raw) else [0] * out_len for t in range(d)]
    if len(raw) > d:
        mid = raw[d]  # zeta^(p-1) = -(1 + ... + zeta^(p-2))
        for i in range(d):
            oi = out[i]
            for m, v in enumerate(mid):
                if v:
                    oi[m] -= v
    for t in range(p, len(raw)):
        oi = out[t - p]
        for m, v in enumerate(raw[t]):
            if v:
                oi[m] += v
    return out


# -- standard series -----------------------------------------------------

_BERNOULLI = {0: Fraction(1)}


def bernoulli(n):
    n = int(n)
    if n < 0:
        raise InputError("negative Bernoulli index")
    if n not in _BERNOULLI:
        for m in range(1, n + 1):
            if m in _BERNOULLI:
                continue
            s = Fraction(0)
            for j in range(m):
                s += math.comb(m + 1, j) * _BERNOULLI[j]
            _BERNOULLI[m] = -s / (m + 1)
    return _BERNOULLI[n]


def _sigma_list(power, T):
    s = [0] * (T + 1)
    for d in range(1, T + 1):
        dp = d**power
        for m in range(d, T + 1, d):
            s[m] += dp
    return s


def _eisenstein_level1_raw(weight, trunc):
    mult = Fraction(-2 * weight) / bernoulli(weight)
    sig = _sigma_list(weight - 1, trunc)
    coeffs = [Fraction(1)] + [mult * sig[n] for n in range(1, trunc + 1)]
    return QSeries(coeffs, e=1, trunc=trunc, weight=weight, level=1)


def _eisenstein_prime_level_raw(weight, level, trunc):
    if level == 1:
        return _eisenstein_level1_raw(weight, trunc)
    E = _eisenstein_level1_raw(weight, trunc)
    Npow = Fraction(level) ** weight
    den = Npow - 1
    coeffs = []
    for m in range(trunc + 1):
        v = -E.coeffs[m]
        if m % level == 0:
            v += Npow * E.coeffs[m // level]
        coeffs.append(v / den)
    return QSeries(coeffs, e=1, trunc=trunc, weight=weight, level=level)


def _fricke_eisenstein_raw(weight, level, trunc):
    E = _eisenstein_level1_raw(weight, trunc)
    scale = Fraction(level) ** (weight // 2) / (Fraction(level) ** weight - 1)
    coeffs = []
    for m in range(trunc + 1):
        v = E.coeffs[m]
        if m % level == 0:
            v -= E.coeffs[m // level]
        coeffs.append(v * scale)
    return QSeries(coeffs, e=1, trunc=trunc, weight=weight, level=level)


_GATE_DONE = set()
_GATE_ORDER = 64
_GATE_PREC = 160


def _require_even_weight(weight):
    weight = int(weight)
    if weight < 4 or weight % 2:
        raise InputError("Eisenstein weight must be even and >= 4")
    return weight


def _require_prime(level):
    level = int(level)
    if level < 2 or any(level % t == 0 for t in range(2, int(level**0.5) + 1)):
        raise InputError("level must be prime")
    return level


def _gate_eisenstein(weight, level):
    """One-time cross-check of the closed form against the coset-sum oracle."""
    key = (weight, level)
    if key in _GATE_DONE:
        return
    ser = _eisenstein_prime_level_raw(weight, level, _GATE_ORDER)
    with mp.workprec(_GATE_PREC):
        for tau in (mpc("0.21", "1.13"), mpc("-0.37", "1.71")):
            closed = eval_qseries(ser, tau, _GATE_PREC)
            lat = lattice_sum_eisenstein(weight, level, tau, 32, None, _GATE_PREC)
            if closed.distance(lat) > closed.err + lat.err:
                raise VerificationError(
                    "Eisenstein closed form (weight %d, level %d) disagrees with "
                    "the coset-sum oracle at tau=%s" % (weight, level, tau)
                )
    _GATE_DONE.add(key)


def _gate_fricke(weight, level):
    """One-time numeric check of the Fricke image closed form via the slash action."""
    key = (weight, level, "fricke")
    if key in _GATE_DONE:
        return
    # -1/(N tau) has small imaginary part, so the slash side needs a long
    # series; order 256 keeps its tail far below the 1e-20 gate
    E = _eisenstein_prime_level_raw(weight, level, 256)
    F = _fricke_eisenstein_raw(weight, level, 256)
    with mp.workprec(_GATE_PREC):
        for tau in (mpc("0.13", "1.07"), mpc("-0.29", "1.04")):
            w = -1 / (level * tau)
            lhs = eval_qseries(E, w, _GATE_PREC).value
            lhs = lhs * level ** (weight // 2) * (level * tau) ** (-weight)
            rhs = eval_qseries(F, tau, _GATE_PREC).value
            tol = 1e-20 * (1 + abs(lhs) + abs(rhs))
            if abs(lhs - rhs) > tol:
                raise VerificationError(
                    "Fricke Eisenstein closed form (weight %d, level %d) fails "
                    "the slash-action check at tau=%s" % (weight, level, tau)
                )
    _GATE_DONE.add(key)


def eisenstein_level1(weight, trunc):
    """E_weight = 1 - (2*weight/B_weight) sum sigma_(weight-1)(n) q^n."""
    weight = _require_even_weight(weight)
    _gate_eisenstein(weight, 1)
    return _eisenstein_level1_raw(weight, int(trunc))


def eisenstein_prime_level(weight, level, trunc):
    """The Gamma_0(level) Eisenstein row at the infinity cusp, trivial character.

    Closed form (level^w E(level z) - E(z)) / (level^w - 1); constant term 1.
    """
    weight = _require_even_weight(weight)
    level = int(level)
    if level == 1:
        return eisenstein_level1(weight, trunc)
    _require_prime(level)
    _gate_eisenstein(weight, level)
    return _eisenstein_prime_level_raw(weight, level, int(trunc))


def fricke_eisenstein(weight, level, trunc):
    """Image of eisenstein_prime_level under the Fricke involution; vanishes at infinity."""
    weight = _require_even_weight(weight)
    level = _require_prime(level)
    _gate_eisenstein(weight, level)
    _gate_fricke(weight, level)
    return _fricke_eisenstein_raw(weight, level, int(trunc))


# -- eta quotients ---------------------------------------------------------

class EtaQuotientSpec:
    """Finite product of eta(d z)^(r_d) with integral weight and leading exponent."""

    __slots__ = ("pairs",)

    def __init__(self, pairs):
        if isinstance(pairs, dict):
            pairs = pairs.items()
        norm = {}
        for d, r in pairs:
            d = int(d)
            r = int(r)
            if d < 1:
                raise InputError("eta argument multiplier must be >= 1")
            if r:
                norm[d] = norm.get(d, 0) + r
        self.pairs = tuple(sorted((d, r) for d, r in norm.items() if r))
        if sum(d * r for d, r in self.pairs) % 24:
            raise InputError("sum of d*r_d must be divisible by 24")
        if sum(r for _, r in self.pairs) % 2:
            raise UnsupportedScopeError("half-integral weight eta quotients out of scope")

    @property
    def weight(self):
        return sum(r for _, r in self.pairs) // 2

    @property
    def leading_exponent(self):
        return sum(d * r for d, r in self.pairs) // 24

    def fricke_partner(self, level):
        """Spec of the quotient obtained by d -> level/d (requires all d | level)."""
        for d, _ in self.pairs:
            if level % d:
                raise InputError("eta multiplier %d does not divide the level %d" % (d, level))
        return EtaQuotientSpec([(level // d, r) for d, r in self.pairs])

    def serialize(self):
        return ",".join("%d:%d" % (d, r) for d, r in self.pairs)

    def __eq__(self, other):
        return isinstance(other, EtaQuotientSpec) and self.pairs == other.pairs

    def __hash__(self):
        return hash(self.pairs)

    def __repr__(self):
        return "EtaQuotientSpec(%s)" % (self.serialize() or "1")


def _pentagonal(limit):
    """(exponent, sign) pairs of the Euler product expansion, exponent <= limit."""
    out = [(0, 1)]
    k = 1
    while True:
        g1 = k * (3 * k - 1) // 2
        g2 = k * (3 * k + 1) // 2
        s = -1 if k % 2 else 1
        if g1 > limit:
            break
        out.append((g1, s))
        if g2 <= limit:
            out.append((g2, s))
        k += 1
    return out


def eta_quotient(spec, trunc, level=None):
    """Exact expansion of q^v * prod_n prod_d (1 - q^(d n))^(r_d), v from the spec."""
    if not isinstance(spec, EtaQuotientSpec):
        spec = EtaQuotientSpec(spec)
    trunc = int(trunc)
    v = spec.leading_exponent
    if v < 0:
        raise UnsupportedScopeError("eta quotient with a pole at infinity")
    if trunc < v:
        raise InputError("truncation order below the leading exponent %d" % v)
    L = trunc - v
    acc = [0] * (L + 1)
    acc[0] = 1
    for d, r in spec.pairs:
        pent = [(g * d, s) for g, s in _pentagonal(L // d if d <= L else 0)]
        if r > 0:
            for _ in range(r):
                nxt = [0] * (L + 1)
                for g, s in pent:
                    if s == 1:
                        for m in range(g, L + 1):
                            nxt[m] += acc[m - g]
                    else:
                        for m in range(g, L + 1):
                            nxt[m] -= acc[m - g]
                acc = nxt
        else:
            # divide by the unit Euler factor |r| times
            for _ in range(-r):
                nxt = [0] * (L + 1)
                for m in range(L + 1):
                    t = acc[m]
                    for g, s in pent:
                        if g and g <= m:
                            if s == 1:
                                t -= nxt[m - g]
                            else:
                                t += nxt[m - g]
                    nxt[m] = t
                acc = nxt
    coeffs = [Fraction(0)] * v + [Fraction(c) for c in acc]
    if level is None:
        level = 1
        for d, r in spec.pairs:
            level = _lcm(level, d)
    return QSeries(coeffs, e=1, trunc=trunc, weight=spec.weight, level=int(level))


# -- operators -------------------------------------------------------------

def op_U(f, t):
    """Pick every t-th coefficient: (U_t f)_n = f_(t n). Integral grid only."""
    t = int(t)
    if t < 1:
        raise InputError("U_t needs t >= 1")
    if f.e != 1:
        raise InputError("U_t acts on integral q-power series")
    T = f.trunc // t
    coeffs = [f.coeffs[t * n] for n in range(T + 1)]
    return QSeries(coeffs, e=1, trunc=T, weight=f.weight, level=f.level, field=f.field)


def op_V(f, t):
    """Dilate exponents: (V_t f)(q) = f(q^t)."""
    t = int(t)
    if t < 1:
        raise InputError("V_t needs t >= 1")
    if f.e != 1:
        raise InputError("V_t acts on integral q-power series")
    T = f.trunc * t
    zero = Fraction(0) if f.field is None else f.field.zero()
    coeffs = [zero] * (T + 1)
    for n, c in enumerate(f.coeffs):
        coeffs[t * n] = c
    return QSeries(
        coeffs, e=1, trunc=T, weight=f.weight, level=f.level * t, field=f.field
    )


def _hecke_p(f, p):
    k = f.weight
    T = f.trunc // p
    if T < 1:
        raise TruncationError(
            "series order %d too small for T_%d; need order >= %d" % (f.trunc, p, p)
        )
    pk = p ** (k - 1)
    coeffs = []
    for m in range(T + 1):
        c = f.coeffs[p * m]
        if m % p == 0:
            c = c + pk * f.coeffs[m // p]
        coeffs.append(c)
    return QSeries(coeffs, e=1, trunc=T, weight=k, level=f.level, field=f.field)


def hecke_T(f, n):
    """Hecke operator T_n on a level-1 integral-weight expansion."""
    n = int(n)
    if n < 1:
        raise InputError("Hecke index must be >= 1")
    if f.level != 1:
        raise UnsupportedScopeError("Hecke operators implemented at level 1 only")
    if f.weight is None or f.e != 1:
        raise InputError("Hecke operators need weight metadata on an integral grid")
    if f.trunc < n:
        raise TruncationError(
            "series order %d too small for T_%d; need order >= %d" % (f.trunc, n, n)
        )
    out = f
    for p, r in _factorize(n):
        out = _hecke_prime_power(out, p, r)
    return out


def _hecke_prime_power(f, p, r):
    k = f.weight
    if r == 0:
        return f
    prev2 = f
    prev1 = _hecke_p(f, p)
    for _ in range(r - 1):
        nxt = _hecke_p(prev1, p)
        corr = prev2.truncate(nxt.trunc).scale(p ** (k - 1))
        nxt = nxt - corr
        prev2, prev1 = prev1, nxt
    return prev1


def _factorize(n):
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            r = 0
            while n % d == 0:
                n //= d
                r += 1
            out.append((d, r))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def rho_conjugate(f):
    """Apply the nontrivial field automorphism to the coefficients (degree <= 2)."""
    if f.field is None:
        return f
    if not isinstance(f.field, NumberField) or f.field.degree > 2:
        raise UnsupportedScopeError("coefficient conjugation needs a rational or quadratic field")
    coeffs = [conjugate_quadratic(c) for c in f.coeffs]
    return QSeries(
        coeffs, e=f.e, trunc=f.trunc, weight=f.weight, level=f.level, field=f.field
    )


# -- form files --------------------------------------------------------------

def dump_form(f, fp=None):
    d = f.serialize()
    if fp is None:
        return json.dumps(d, sort_keys=True, indent=1)
    json.dump(d, fp, sort_keys=True, indent=1)
    return None


def load_form(data):
    """Rebuild a QSeries from the JSON form-file dict (or JSON text)."""
    if isinstance(data, str):
        data = json.loads(data)
    try:
        e = int(data.get("qdenom", 1))
        trunc = int(data["trunc"])
        level = int(data.get("level", 1))
        weight = data.get("weight")
        character = data.get("character", "trivial")
        raw = data["coeffs"]
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError("malformed form file: %s" % exc) from exc
    if character != "trivial":
        raise UnsupportedScopeError("only trivial character form files are supported")
    field = None
    if "field_modulus" in data:
        from .polynomial import UniPoly

        field = NumberField(UniPoly([parse_rational(c) for c in data["field_modulus"]]))
        coeffs = [field.elem([parse_rational(v) for v in c]) for c in raw]
    else:
        coeffs = [parse_rational(c) for c in raw]
    return QSeries(coeffs, e=e, trunc=trunc, weight=weight, level=level, field=field)

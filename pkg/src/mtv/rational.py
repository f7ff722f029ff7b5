"""Exact rational helpers on top of fractions.Fraction.

Fraction already guarantees the invariants we need (gcd-reduced, positive
denominator, exact arithmetic), so this module only adds the serialization
format, denominator bookkeeping, and continued-fraction reconstruction of
rationals from high-precision numeric values.
"""

import math
from fractions import Fraction

import mpmath

from .errors import InputError, ReconstructionError


def format_rational(x):
    """Serialize a rational as "p/q", or plain "n" when the denominator is 1."""
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def parse_rational(s):
    """Inverse of format_rational. Accepts "p/q" and "n" forms."""
    try:
        return Fraction(str(s).strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError("not a rational: %r" % (s,)) from exc


def lcm_denominators(xs):
    """lcm of the denominators of an iterable of Fractions (1 for empty)."""
    out = 1
    for x in xs:
        out = out * x.denominator // math.gcd(out, x.denominator)
    return out


def exact_fraction(x):
    """Convert an exact-friendly numeric (int, Fraction, float, mpf) to Fraction.

    mpf values are dyadic, so the conversion is exact, not a decimal round-trip.
    """
    if isinstance(x, (int, Fraction)):
        return Fraction(x)
    if isinstance(x, float):
        return Fraction(x)
    x = mpmath.mpmathify(x)
    if hasattr(x, "imag"):
        if getattr(x, "imag", 0) != 0:
            raise InputError("cannot reconstruct a rational from a non-real value")
        x = x.real
    if not mpmath.isfinite(x):
        raise InputError("non-finite value")
    sign, man, exp, _ = x._mpf_
    man = int(man)  # the gmpy backend hands back mpz, which poisons Fraction
    if man == 0:
        return Fraction(0)
    v = Fraction(man) * Fraction(2) ** int(exp)
    return -v if sign else v


def convergents(x):
    """Yield the continued-fraction convergents (p, q) of an exact Fraction."""
    x = Fraction(x)
    h0, k0 = 1, 0
    a = x.numerator // x.denominator
    h1, k1 = a, 1
    yield h1, k1
    x = x - a
    while x != 0:
        x = 1 / x
        a = x.numerator // x.denominator
        h0, k0, h1, k1 = h1, k1, a * h1 + h0, a * k1 + k0
        yield h1, k1
        x = x - a


def rational_reconstruct(x, denom_bound, err=None):
    """Recover the unique p/q with q <= denom_bound lying within 1/(2*denom_bound^2) of x.

    Classical best-approximation theory: any such p/q is a convergent of x,
    and two distinct candidates with q <= B differ by at least 1/B^2, so at
    most one can qualify.  err is the known absolute error of x; when it is
    too large relative to the bound the answer would be ambiguous and we
    refuse rather than guess.
    """
    B = int(denom_bound)
    if B < 1:
        raise InputError("denominator bound must be >= 1")
    X = exact_fraction(x)
    radius = Fraction(1, 2 * B * B)
    if err is not None:
        eps = exact_fraction(err)
        if eps < 0:
            raise InputError("negative error bound")
        if eps >= radius:
            raise ReconstructionError(
                "ambiguous: error bound %s exceeds the separation radius %s"
                % (format_rational(eps) if eps.denominator < 10**40 else float(eps), format_rational(radius))
            )
    best = None
    for p, q in convergents(X):
        if q > B:
            break
        best = Fraction(p, q)
    if best is None or abs(X - best) >= radius:
        raise ReconstructionError(
            "no rational with denominator <= %d within 1/(2*%d^2) of the input" % (B, B)
        )
    return best

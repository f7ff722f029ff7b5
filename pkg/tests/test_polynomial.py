from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from mtv.polynomial import UniPoly, poly_factor_q, poly_gcd, squarefree_parts

X = UniPoly.x()


def from_sympy_factors(p):
    """Factor with sympy over Q and normalize to monic (poly, mult) pairs."""
    x = sympy.Symbol("x")
    expr = sum(sympy.Rational(c.numerator, c.denominator) * x**i
               for i, c in enumerate(p.coeffs))
    _, factors = sympy.factor_list(sympy.Poly(expr, x))
    out = []
    for fac, mult in factors:
        cs = [Fraction(int(c.p), int(c.q)) for c in reversed(sympy.Poly(fac, x).all_coeffs())]
        mon = UniPoly(cs).monic()
        out.append((mon, mult))
    return sorted(out, key=lambda t: (t[0].degree, t[0].coeffs))


small_fracs = st.fractions(min_value=-9, max_value=9, max_denominator=6)


@given(st.lists(small_fracs, min_size=1, max_size=5),
       st.lists(small_fracs, min_size=2, max_size=5))
@settings(max_examples=80)
def test_divmod_invariant(a, b):
    pa, pb = UniPoly(a), UniPoly(b)
    if pb.is_zero():
        return
    q, r = divmod(pa, pb)
    assert q * pb + r == pa
    assert r.is_zero() or r.degree < pb.degree


def test_basic_arithmetic_and_eval():
    p = (X - 1) * (X + 2)
    assert p.coeffs == (Fraction(-2), Fraction(1), Fraction(1))
    assert p.eval(Fraction(3)) == 10
    assert p.derivative().coeffs == (Fraction(1), Fraction(2))
    assert (X**3).degree == 3
    assert UniPoly([0, 0]).is_zero()


def test_monic_and_primitive():
    p = UniPoly([Fraction(2), Fraction(0), Fraction(4)])
    assert p.monic().coeffs == (Fraction(1, 2), Fraction(0), Fraction(1))
    scale, prim = p.primitive_int()
    assert [c * scale for c in prim.coeffs] == list(p.coeffs)


def test_scale_arg():
    p = X**2 + 3 * X + 1
    q = p.scale_arg(Fraction(2))
    assert q.eval(Fraction(5)) == p.eval(Fraction(10))


def test_gcd_and_squarefree():
    a = (X - 1) ** 2 * (X + 3)
    b = (X - 1) * (X + 5)
    g = poly_gcd(a, b).monic()
    assert g == (X - 1).monic()
    parts = squarefree_parts((X - 1) ** 2 * (X + 2))
    # Yun output: list of (factor, multiplicity) with product reassembling
    acc = UniPoly([1])
    for fac, mult in parts:
        acc = acc * fac**mult
    assert acc.monic() == ((X - 1) ** 2 * (X + 2)).monic()


FACTOR_CASES = [
    X**2 - 1080 * X - 20468736,            # weight-24 Hecke polynomial
    (X - 37) ** 3,                          # triple rational root
    X**4 - 10 * X**2 + 1,                   # irreducible, golden-ratio-free
    X**6 - 1,                               # product of cyclotomics
    X**4 + X**3 + X**2 + X + 1,             # 5th cyclotomic
    (X - 1) * (X**2 + 1) * (2 * X + 3),     # mixed degrees, non-monic
    X**5 - X - 1,                           # irreducible quintic
]


@pytest.mark.parametrize("p", FACTOR_CASES, ids=[str(i) for i in range(len(FACTOR_CASES))])
def test_factor_matches_sympy(p):
    got = sorted(poly_factor_q(p), key=lambda t: (t[0].degree, t[0].coeffs))
    want = from_sympy_factors(p)
    assert got == want


def test_factor_certifies_product():
    # multiply the factors back and compare against the monic input
    p = (X**2 - 2) * (X - 7) ** 2
    acc = UniPoly([1])
    for fac, mult in poly_factor_q(p):
        acc = acc * fac**mult
    assert acc == p.monic()

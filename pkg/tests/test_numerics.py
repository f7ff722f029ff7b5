from fractions import Fraction

import mpmath
import pytest
import sympy
from mpmath import mpc, mpf

from mtv.errors import InputError, PrecisionError
from mtv.numerics import (
    BigComplex,
    eval_qseries,
    kronecker,
    lattice_sum_eisenstein,
    root_cluster,
    to_mpc,
)
from mtv.polynomial import UniPoly
from mtv.qexp import QSeries, eisenstein_level1
from mtv.spaces import delta_series

F = Fraction
X = UniPoly.x()


def test_bigcomplex_error_propagation():
    a = BigComplex(mpc(1, 1), mpf("1e-10"))
    b = BigComplex(mpc(2, -1), mpf("1e-12"))
    s = a + b
    assert s.err >= a.err
    p = a * b
    # |a||db| + |b||da| lower-bounds the product error
    assert p.err >= abs(b.value) * a.err
    assert abs((-a).value + a.value) == 0
    assert a.distance(a.value) == 0
    d = a.serialize(digits=10)
    assert set(d) == {"re", "im", "err"}


def test_kronecker_matches_sympy_jacobi_on_odd():
    for n in (3, 5, 7, 9, 15, 21):
        for a in range(-8, 9):
            assert kronecker(a, n) == int(sympy.jacobi_symbol(a, n))


def test_kronecker_special_cases():
    # (a|2) follows the a mod 8 rule
    assert [kronecker(a, 2) for a in (1, 3, 5, 7)] == [1, -1, -1, 1]
    assert kronecker(4, 2) == 0
    # (a|1) = 1, (a|-1) = sign
    assert kronecker(-7, 1) == 1
    assert kronecker(-7, -1) == -1 and kronecker(7, -1) == 1
    assert kronecker(0, 5) == 0 and kronecker(0, 1) == 1


def test_kronecker_multiplicative_in_top():
    for n in (2, 3, 4, 5, 12):
        for a in range(1, 13):
            for b in range(1, 13):
                assert kronecker(a * b, n) == kronecker(a, n) * kronecker(b, n)


def test_eval_geometric_series_certified():
    T = 120
    f = QSeries([F(1)] * (T + 1), e=1, trunc=T, weight=None, level=1)
    with mpmath.workprec(150):
        tau = mpc("0.1", "0.9")
        got = eval_qseries(f, tau, 128)
        q = mpmath.exp(2j * mpmath.pi * tau)
        want = 1 / (1 - q)
        assert abs(got.value - want) <= got.err + mpf(2) ** -120


def test_eval_honesty_by_doubling_order():
    d1 = delta_series(40)
    d2 = delta_series(80)
    with mpmath.workprec(170):
        tau = mpc("0.3", "0.8")
        v1 = eval_qseries(d1, tau, 160)
        v2 = eval_qseries(d2, tau, 160)
        assert abs(v1.value - v2.value) <= v1.err + v2.err


def test_eval_e6_vanishes_at_i():
    e6 = eisenstein_level1(6, 200)
    v = eval_qseries(e6, mpc(0, 1), 192)
    assert abs(v.value) <= v.err + mpf(2) ** -150


def test_eval_rejects_low_imag_with_short_series():
    f = delta_series(8)
    with pytest.raises(InputError):
        eval_qseries(f, mpc("0.0", "0.001"), 128)


def test_eval_rejects_nonrational_coeffs():
    from mtv.numfield import NumberField

    K = NumberField(X**2 - 2)
    f = QSeries([K.one(), K.gen()], e=1, trunc=1, weight=None, level=1, field=K)
    with pytest.raises(InputError):
        eval_qseries(f, mpc(0, 2), 128)


def test_lattice_sum_certified_against_closed_form():
    # the certificate must cover the actual truncation defect
    e4 = eisenstein_level1(4, 64)
    for tau in (mpc(0, 1), mpc("0.21", "1.13")):
        closed = eval_qseries(e4, tau, 160)
        lat = lattice_sum_eisenstein(4, 1, tau, 24, None, 160)
        assert closed.distance(lat) <= closed.err + lat.err


def test_lattice_sum_prime_level():
    from mtv.qexp import eisenstein_prime_level

    ser = eisenstein_prime_level(6, 3, 64)
    tau = mpc("0.11", "1.4")
    closed = eval_qseries(ser, tau, 160)
    lat = lattice_sum_eisenstein(6, 3, tau, 24, None, 160)
    assert closed.distance(lat) <= closed.err + lat.err


def test_lattice_sum_rejects_bad_args():
    with pytest.raises(InputError):
        lattice_sum_eisenstein(2, 1, mpc(0, 1), 16, None, 128)
    with pytest.raises(InputError):
        lattice_sum_eisenstein(4, 1, mpc(0, -1), 16, None, 128)


def test_lattice_sum_quadratic_character():
    # chi(d) = (-4|d) kills even d and alternates on odd d; the sum must
    # still carry a finite certificate and stay stable when B grows
    a = lattice_sum_eisenstein(5, 1, mpc("0.2", "1.1"), 12, -4, 160)
    b = lattice_sum_eisenstein(5, 1, mpc("0.2", "1.1"), 24, -4, 160)
    assert a.distance(b) <= a.err + b.err


def test_root_cluster_simple():
    roots = root_cluster(X**2 - 2, 128)
    assert len(roots) == 2
    vals = sorted(float(r.value.real) for r in roots)
    assert abs(vals[0] + 2**0.5) < 1e-15
    assert abs(vals[1] - 2**0.5) < 1e-15
    for r in roots:
        assert float(abs(r.value**2 - 2)) < 1e-15


def test_root_cluster_rejects_repeated_roots():
    with pytest.raises(PrecisionError):
        root_cluster((X - 1) ** 2, 128)


def test_to_mpc_fraction_exact():
    with mpmath.workprec(200):
        v = to_mpc(F(1, 3))
        assert abs(v - mpmath.mpf(1) / 3) < mpf(2) ** -190

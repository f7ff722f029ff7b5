"""Level-1 space machinery: dimensions, Miller basis, Hecke matrices, orbits."""

from fractions import Fraction

import pytest

from mtv import (
    InputError,
    VerificationError,
    conductor_of_space,
    delta_series,
    dim_cusp_level1,
    dim_modular_level1,
    eisenstein_level1,
    expand_in_triangular,
    hecke_matrix_level1,
    miller_basis,
    newform_basis_level1,
    validate_external_newform,
)
from mtv.qexp import QSeries

from _oracles import t2_charpoly_weight24


DIM_MODULAR = {0: 1, 2: 0, 4: 1, 6: 1, 8: 1, 10: 1, 12: 2, 14: 1, 16: 2,
               18: 2, 20: 2, 22: 2, 24: 3, 26: 2, 28: 3, 30: 3}


def test_dimension_tables():
    for k, d in DIM_MODULAR.items():
        assert dim_modular_level1(k) == d
    for k in range(12, 32, 2):
        assert dim_cusp_level1(k) == dim_modular_level1(k) - 1
    assert dim_cusp_level1(10) == 0
    assert dim_modular_level1(7) == 0
    assert dim_modular_level1(-4) == 0


@pytest.mark.parametrize("weight", [0, 4, 12, 24, 28])
def test_miller_basis_triangular(weight):
    T = 16
    basis = miller_basis(weight, T)
    assert len(basis) == dim_modular_level1(weight)
    for j, h in enumerate(basis):
        assert h.weight == weight
        # h_j = q^j + O(q^(j+1)) exactly
        for m in range(j):
            assert h.coeff(m) == 0
        assert h.coeff(j) == 1


def test_miller_rejects_odd_weight():
    with pytest.raises(InputError):
        miller_basis(11, 8)
    assert miller_basis(2, 8) == []


def test_expand_in_triangular_exact():
    T = 20
    basis = miller_basis(12, T)
    f = eisenstein_level1(4, T) ** 3
    coords, rem = expand_in_triangular(f, basis)
    assert coords == [Fraction(1), Fraction(1728)]
    assert rem.is_zero()


def test_expand_in_triangular_strict_failure():
    T = 12
    e6sq = eisenstein_level1(6, T) ** 2
    with pytest.raises(VerificationError) as exc:
        expand_in_triangular(delta_series(T), [e6sq])
    assert "q^1" in str(exc.value)
    coords, rem = expand_in_triangular(delta_series(T), [e6sq], strict=False)
    assert coords == [Fraction(0)] and rem.valuation() == 1


def test_hecke_matrix_weight12():
    M, basis = hecke_matrix_level1(12, 2)
    assert len(basis) == 1
    assert M.rows[0][0] == -24


def test_hecke_matrix_weight24_charpoly():
    M, _ = hecke_matrix_level1(24, 2)
    chi = M.charpoly()
    assert list(chi.coeffs) == t2_charpoly_weight24()


def test_newform_orbit_structure():
    expect_degrees = {12: [1], 16: [1], 18: [1], 20: [1], 22: [1],
                      24: [2], 26: [1]}
    for k, degs in expect_degrees.items():
        orbs = newform_basis_level1(k, 20)
        assert sorted(f.degree for f in orbs) == degs
        assert orbs.single_orbit
        assert sum(f.degree for f in orbs) == dim_cusp_level1(k)
    empty = newform_basis_level1(10, 20)
    assert len(empty) == 0 and empty.single_orbit


def test_weight24_orbit_pinned():
    orbs = newform_basis_level1(24, 16)
    (f,) = list(orbs)
    assert f.modulus.serialize() == ["-20468736", "-1080", "1"]
    a2 = f.a(2)
    assert a2.coords == (Fraction(0), Fraction(1))  # a_2 is the T_2 root itself
    assert f.qexp.coeff(1).coords == (Fraction(1), Fraction(0))


def test_newforms_validate_and_match_delta():
    orbs = newform_basis_level1(12, 40)
    (f,) = list(orbs)
    assert f.degree == 1
    assert f.qexp.agrees_through(delta_series(40), 40)
    assert validate_external_newform(f)


@pytest.mark.parametrize("weight", [16, 18, 20, 22, 24, 26, 28, 30])
def test_newforms_satisfy_hecke_relations(weight):
    for f in newform_basis_level1(weight, 64):
        assert validate_external_newform(f)


def test_validate_rejects_bad_expansions():
    d = delta_series(36)
    with pytest.raises(VerificationError):
        validate_external_newform(eisenstein_level1(12, 20))  # constant term 1
    with pytest.raises(VerificationError):
        validate_external_newform(d.scale(2))  # a_1 != 1

    def corrupt(f, n, delta):
        coeffs = list(f.coeffs)
        coeffs[n] += delta
        return QSeries(coeffs, trunc=f.trunc, weight=f.weight, level=1)

    with pytest.raises(VerificationError) as exc:
        validate_external_newform(corrupt(d, 6, 1))
    assert "multiplicativity" in str(exc.value)
    # with order 8 no coprime pair reaches a_4, so the p-power check fires
    with pytest.raises(VerificationError) as exc:
        validate_external_newform(corrupt(d.truncate(8), 4, 1))
    assert "a_4 (p=2)" in str(exc.value)
    with pytest.raises(InputError):
        validate_external_newform(QSeries([0, 1], trunc=1, weight=12, level=1))


def test_conductor_of_space():
    assert conductor_of_space(12, 2) == (1, [1, 2])
    assert conductor_of_space(8, 2) == (2, [2])
    assert conductor_of_space(12, 1) == (1, [1])
    assert conductor_of_space(8, 5) == (5, [5])
    with pytest.raises(InputError):
        conductor_of_space(12, 6)

from math import comb

import pytest

from goa.errors import InputError
from goa.incidence import (IncidenceFunction, bilinear_dimension_comparison,
                           bilinear_dimension_crossover, e_mu,
                           enumerate_incidence_functions, signature_of,
                           verify_bilinear_decomposition)
from goa.poly import Poly
from goa.subsets import GroundSet, mask_of


def test_counts_match_stars_and_bars():
    assert len(enumerate_incidence_functions(GroundSet(3), 2)) == comb(6, 3) == 20
    assert len(enumerate_incidence_functions(GroundSet(2), 3)) == comb(9, 7) == 36
    assert len(enumerate_incidence_functions(GroundSet(1), 2)) == comb(4, 3) == 4
    for n in range(1, 6):
        assert len(enumerate_incidence_functions(GroundSet(n), 2)) == comb(n + 3, 3)
        assert len(enumerate_incidence_functions(GroundSet(n), 3)) == comb(n + 7, 7)


def test_unsupported_order():
    with pytest.raises(InputError):
        enumerate_incidence_functions(GroundSet(3), 4)


def test_enumerated_functions_are_valid_and_anchored():
    for mu in enumerate_incidence_functions(GroundSet(3), 2):
        assert mu.is_valid()
        assert mu.values[0] == 3
        # monotone decreasing under index-set inclusion
        for j in range(4):
            for l in range(4):
                if j & l == j:
                    assert mu.values[j] >= mu.values[l]


def test_signatures_are_valid_and_realized():
    g = GroundSet(4)
    import random
    rng = random.Random(0)
    for _ in range(50):
        sets = tuple(rng.randrange(g.size) for _ in range(3))
        mu = signature_of(g, sets)
        assert mu.is_valid()


def test_e_mu_diagonal_case(g3):
    s = mask_of([1, 3])
    mu = signature_of(g3, (s, s, s))
    assert e_mu(g3, mu, s, s) == Poly.term(g3, s)


def test_e_mu_forces_empty(g3):
    mu = signature_of(g3, (mask_of([1]), mask_of([2]), 0))
    assert e_mu(g3, mu, mask_of([1]), mask_of([2])) == Poly.one(g3)


def test_e_mu_brute_force_case(g3):
    # s1={1}, s2={2}, third set a singleton avoiding both: only {3} fits
    mu = signature_of(g3, (mask_of([1]), mask_of([2]), mask_of([3])))
    assert e_mu(g3, mu, mask_of([1]), mask_of([2])) == Poly.term(g3, mask_of([3]))


def test_e_mu_off_pattern_inputs_give_zero(g3):
    mu = signature_of(g3, (mask_of([1]), mask_of([2]), mask_of([3])))
    assert e_mu(g3, mu, mask_of([1, 2]), mask_of([2])).is_zero()


def test_e_mu_rejects_invalid(g3):
    # meets force S1 = S2, yet S1 and S2 meet the third set differently
    bad = IncidenceFunction(3, (3, 1, 1, 1, 1, 1, 0, 0))
    assert not bad.is_valid()
    with pytest.raises(InputError):
        e_mu(g3, bad, mask_of([1]), mask_of([2]))


@pytest.mark.parametrize("n", [1, 2])
def test_bilinear_decomposition_zero_residual(n):
    rep = verify_bilinear_decomposition(GroundSet(n))
    assert rep["all_ok"], rep["failures"]
    assert rep["checked"] == comb(n + 7, 7)
    assert rep["grid"] == "full"


def test_bilinear_decomposition_on_representatives():
    rep = verify_bilinear_decomposition(GroundSet(3))
    assert rep["all_ok"], rep["failures"]
    assert rep["checked"] == comb(10, 7) == 120
    assert rep["grid"] == "orbit representatives"


def test_dimension_comparison_is_honest():
    lhs, rhs, holds = bilinear_dimension_comparison(20)
    assert lhs == 3 * comb(27, 7) ** 2
    assert rhs == comb(35, 15)
    assert not holds  # 2.37e12 vs 3.2e9: the inequality needs much larger n


def test_dimension_crossover_value():
    n = bilinear_dimension_crossover()
    assert bilinear_dimension_comparison(n)[2]
    assert not bilinear_dimension_comparison(n - 1)[2]
    assert n == 154376

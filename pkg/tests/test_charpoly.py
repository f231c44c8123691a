from fractions import Fraction

import pytest
from hypothesis import given, settings

from conftest import matroids
from matvol.catalog import catalog
from matvol.charpoly import (
    char_poly,
    divide_by_t_minus_one,
    gamma,
    gamma_chains,
    gamma_recursive,
    is_log_concave,
    maximal_chain_weight_sum,
    mobius,
    mu_vector,
    reduced_char_poly,
    weisner_holds,
)
from matvol.combinat import mask_of
from matvol.matroid import flat_lattice, uniform

CATALOG = catalog(6)


def test_mobius_u23():
    lat = flat_lattice(uniform(2, 3))
    mu = mobius(lat)
    assert mu[0] == 1
    assert [mu[1 << i] for i in range(3)] == [-1, -1, -1]
    assert mu[0b111] == 2


def test_mobius_u34_top():
    m = uniform(3, 4)
    assert mobius(flat_lattice(m))[m.ground] == -3


def test_char_poly_examples():
    assert char_poly(uniform(3, 4)) == [-3, 6, -4, 1]
    assert char_poly(uniform(2, 3)) == [2, -3, 1]
    assert char_poly(uniform(1, 1)) == [-1, 1]


def test_reduced_examples():
    assert reduced_char_poly(uniform(2, 3)) == [-2, 1]
    assert mu_vector(uniform(2, 3)) == (1, 2)
    assert reduced_char_poly(uniform(2, 2)) == [-1, 1]
    assert mu_vector(uniform(2, 2)) == (1, 1)
    assert reduced_char_poly(uniform(3, 4)) == [3, -3, 1]
    assert mu_vector(uniform(3, 4)) == (1, 3, 3)


def test_division_requires_root_at_one():
    with pytest.raises(ArithmeticError):
        divide_by_t_minus_one([1, 1])


def test_gamma_examples():
    for m in CATALOG.values():
        assert gamma(m, 0) == 1
        assert gamma(m, -1) == -1
        assert gamma(m, m.rank) == 0
    assert gamma(uniform(2, 3), 1) == -2


def test_gamma_range():
    m = uniform(2, 3)
    for bad in (-2, 3):
        with pytest.raises(ValueError):
            gamma(m, bad)


@pytest.mark.parametrize("name", sorted(CATALOG))
def test_charpoly_invariants(name):
    m = CATALOG[name]
    lat = flat_lattice(m)
    assert sum(char_poly(m)) == 0
    assert weisner_holds(lat)
    assert maximal_chain_weight_sum(m) == 1
    mus = mu_vector(m)
    assert mus[0] == 1 and all(x > 0 for x in mus)
    assert is_log_concave(mus)
    reduced = reduced_char_poly(m)
    d = m.rank - 1
    for i in range(m.rank):
        g = gamma_chains(m, i)
        assert g == gamma_recursive(m, i)
        assert g.denominator == 1
        assert g == reduced[d - i]
        assert abs(g) == mus[i] and (g > 0) == (i % 2 == 0)


@settings(max_examples=40, deadline=None)
@given(matroids)
def test_gamma_matches_mu_random(m):
    mus = mu_vector(m)
    for i in range(m.rank):
        assert gamma(m, i) == (-1) ** i * mus[i]
    assert maximal_chain_weight_sum(m) == 1


def test_weisner_detects_wrong_values():
    lat = flat_lattice(uniform(2, 3))
    mu = mobius(lat)
    mu[lat.top] = 3  # corrupt the cached value
    try:
        assert not weisner_holds(lat)
    finally:
        mu[lat.top] = 2


def test_log_concavity_helper():
    assert is_log_concave([1, 3, 3, 1])
    assert not is_log_concave([1, 1, 3])


def test_interval_mu_vector_of_minor():
    from matvol.charpoly import interval_mu_vector
    from matvol.matroid import minor_interval

    m = CATALOG["K4"]
    lat = flat_lattice(m)
    f = mask_of([0])
    assert interval_mu_vector(lat, f, m.ground) == mu_vector(minor_interval(m, f, m.ground))
    assert isinstance(gamma(m, 1), Fraction)

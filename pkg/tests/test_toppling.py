from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from matvol.catalog import catalog, vamos
from matvol.chow import ChainMonomial, ChainPolynomial, feasible_chain_monomials, intersection_number
from matvol.combinat import mask_of, popcount
from matvol.matroid import direct_sum, flat_lattice, uniform
from matvol.selftest import chain_monomials
from matvol.toppling import (
    chain_with_ends,
    degree_via_toppling,
    dual_point,
    expand,
    pairing,
    topple,
)

U34 = uniform(3, 4)
CATALOG = catalog(5)


def mono(*pairs):
    return ChainMonomial.of((mask_of(f), e) for f, e in pairs)


def test_non_chain_term_vanishes():
    p = ChainPolynomial({mono(([0], 1), ([1], 1)): Fraction(1)})
    assert not topple(U34, p, mask_of([0]))


def test_square_free_chain_unchanged():
    p = ChainPolynomial({mono(([0], 1), ([0, 1], 1)): Fraction(3)})
    for tight in (False, True):
        assert topple(U34, p, mask_of([0]), tight=tight) == p


def test_u34_tight_single_step():
    p = ChainPolynomial({mono(([0], 2)): Fraction(1)})
    out = topple(U34, p, mask_of([0]), tight=True)
    expected = ChainPolynomial(
        {mono(([0], 1), ([0, i], 1)): Fraction(-2, 3) for i in (1, 2, 3)}
    )
    assert out == expected
    assert sum(out.terms.values()) == -2


def test_degree_examples():
    assert degree_via_toppling(U34, mono(([0], 2))) == -2
    u22_u23 = direct_sum(uniform(2, 2), uniform(2, 3))
    m = mono(([2, 3, 4], 3))
    assert degree_via_toppling(u22_u23, m) == intersection_number(u22_u23, m) == 2


def test_maximal_chain_needs_no_toppling():
    chain = (mask_of([0]), mask_of([0, 1]))
    m = ChainMonomial(chain, (1, 1))
    assert expand(U34, m) == ChainPolynomial({m: Fraction(1)})
    assert degree_via_toppling(U34, m) == 1


def test_tight_requires_homogeneous_input():
    p = ChainPolynomial({mono(([0], 2)): Fraction(1), mono(([0], 1)): Fraction(1)})
    with pytest.raises(ValueError):
        topple(U34, p, mask_of([0]), tight=True)


@pytest.mark.parametrize("name", ["U(3,4)", "U(4,5)", "K4", "Fano", "U(2,2)+U(2,3)", "parallel-pair"])
def test_tight_and_full_toppling_agree_with_closed_form(name):
    m = CATALOG[name]
    for mn in chain_monomials(m):
        closed = intersection_number(m, mn)
        assert degree_via_toppling(m, mn, tight=True) == closed
        assert degree_via_toppling(m, mn, tight=False) == closed


@pytest.mark.parametrize("name", ["U(3,4)", "U(4,5)", "K4", "U(2,2)+U(2,3)"])
def test_single_topple_preserves_degree(name):
    """Applying one (non-tight) toppling step anywhere keeps the class."""
    m = CATALOG[name]
    for mn in chain_monomials(m):
        before = intersection_number(m, mn)
        for f, e in zip(mn.chain, mn.exps):
            if e == 1:
                continue
            after = topple(m, ChainPolynomial({mn: Fraction(1)}), f)
            total = sum(c * degree_via_toppling(m, t) for t, c in after.terms.items())
            assert total == before


def test_vamos_feasible_monomials():
    m = vamos()
    count = 0
    for chain, exps in feasible_chain_monomials(flat_lattice(m)):
        mono = ChainMonomial(chain, exps)
        assert degree_via_toppling(m, mono) == intersection_number(m, mono)
        count += 1
    assert count > 500


def test_expansion_is_square_free_and_maximal():
    m = CATALOG["U(4,5)"]
    lat = flat_lattice(m)
    for mn in chain_monomials(m):
        for term in expand(m, mn, tight=False).terms:
            assert term.is_square_free()
            assert [lat.rank[f] for f in term.chain] == list(range(1, m.rank))


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(["U(3,4)", "K4", "Fano", "U(2,2)+U(2,3)", "U(4,5)"]), st.data())
def test_dual_point_pairings(name, data):
    m = CATALOG[name]
    lat = flat_lattice(m)
    proper = lat.proper_flats
    chain = []
    current = 0
    while True:
        options = [g for g in proper if g != current and (current & ~g) == 0]
        if not options or (chain and not data.draw(st.booleans())):
            break
        current = data.draw(st.sampled_from(options))
        chain.append(current)
    ends = chain_with_ends(m, chain)
    k = len(chain)
    for i in range(1, k + 1):
        vec = dual_point(ends, i, m.n)
        assert sum(vec) == 0  # lies in the dual of the all-ones direction
        for j in range(1, k + 1):
            value = pairing(vec, ends[j])
            if j != i:
                assert value == 0
            else:
                a = popcount(ends[i + 1] & ~ends[i])
                b = popcount(ends[i] & ~ends[i - 1])
                assert value == -a * b

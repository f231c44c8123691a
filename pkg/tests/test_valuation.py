import pytest

from matvol.catalog import catalog
from matvol.chow import ChainMonomial, ChainPolynomial, volume_polynomial
from matvol.combinat import mask_of
from matvol.matroid import direct_sum, from_bases, uniform
from matvol.valuation import (
    InteriorFace,
    Subdivision,
    check_valuation,
    hypersimplex_split,
    matroid_polytope,
    trivial_subdivision,
)


def test_polytope_examples():
    p = matroid_polytope(uniform(2, 4))
    assert len(p.vertices) == 6 and p.dim == 3
    assert matroid_polytope(uniform(1, 1)).dim == 0
    sq = matroid_polytope(direct_sum(uniform(1, 2), uniform(1, 2)))
    assert len(sq.vertices) == 4 and sq.dim == 2


@pytest.mark.parametrize("name,m", sorted(catalog(5).items()))
def test_trivial_subdivision(name, m):
    report = check_valuation(trivial_subdivision(m))
    assert report.holds
    assert report.shrvol_parent == report.shrvol_signed_sum


def test_hypersimplex_split():
    sub = hypersimplex_split()
    report = check_valuation(sub)
    assert not report.difference
    assert report.shrvol_parent == report.shrvol_signed_sum == 4
    # the rank-2 volume polynomials are sums over rank-1 flats
    vps = [volume_polynomial(q) for q in sub.cells]

    def linear(*flats):
        return ChainPolynomial({ChainMonomial((mask_of(f),), (1,)): 1 for f in flats})

    assert vps[0] == linear([0], [1], [2, 3])
    assert vps[1] == linear([0, 1], [2], [3])
    assert volume_polynomial(sub.interior_faces[0].matroid) == linear([0, 1], [2, 3])
    assert volume_polynomial(sub.parent) == linear([0], [1], [2], [3])


def test_signs():
    sub = hypersimplex_split()
    signs = [s for s, _ in sub.signed_pieces()]
    assert signs == [1, 1, -1]


def test_missing_face_breaks_identity():
    sub = hypersimplex_split()
    broken = Subdivision(sub.parent, sub.cells, [])
    assert not check_valuation(broken).holds


def test_validation_errors():
    sub = hypersimplex_split()
    with pytest.raises(ValueError, match="cover"):
        Subdivision(sub.parent, sub.cells[:1], []).validate()
    with pytest.raises(ValueError, match="rank"):
        Subdivision(sub.parent, [uniform(3, 4)], []).validate()
    with pytest.raises(ValueError, match="dim"):
        Subdivision(sub.parent, sub.cells, [InteriorFace(sub.interior_faces[0].matroid, 1)]).validate()
    stray = from_bases(4, [[0, 1], [0, 2], [1, 2], [0, 3], [1, 3]])
    with pytest.raises(ValueError, match="full-dimensional"):
        Subdivision(
            sub.parent, list(sub.cells) + [direct_sum(uniform(1, 2), uniform(1, 2))], []
        ).validate()
    assert stray.rank == 2

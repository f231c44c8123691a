"""Matroid polytopes and the inclusion-exclusion identity for VP and shRVol
under explicitly supplied matroid subdivisions."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .chow import ChainPolynomial, evaluate, volume_polynomial
from .combinat import mask_of
from .matroid import Matroid, connected_components, from_bases, uniform


@dataclass(frozen=True)
class MatroidPolytope:
    matroid: Matroid
    vertices: frozenset  # tuples of 0/1
    dim: int


def matroid_polytope(m: Matroid) -> MatroidPolytope:
    verts = frozenset(tuple((b >> e) & 1 for e in range(m.n)) for b in m.bases)
    return MatroidPolytope(m, verts, m.n - len(connected_components(m)))


@dataclass(frozen=True)
class InteriorFace:
    matroid: Matroid
    dim: int | None = None  # derived from the matroid when omitted


@dataclass
class Subdivision:
    """Maximal cells plus interior faces of a matroid subdivision of Δ(parent)."""

    parent: Matroid
    cells: list[Matroid]
    interior_faces: list[InteriorFace] = field(default_factory=list)

    def validate(self) -> None:
        p = self.parent
        pieces = list(self.cells) + [f.matroid for f in self.interior_faces]
        if not self.cells:
            raise ValueError("a subdivision needs at least one cell")
        for q in pieces:
            if q.n != p.n:
                raise ValueError(f"piece on {q.n} elements, parent on {p.n}")
            if q.rank != p.rank:
                raise ValueError(f"piece of rank {q.rank}, parent of rank {p.rank}")
            if not q.bases <= p.bases:
                raise ValueError("a piece has a basis that is not a basis of the parent")
        covered = frozenset().union(*(c.bases for c in self.cells))
        if covered != p.bases:
            raise ValueError("cells do not cover every vertex of the parent polytope")
        parent_dim = matroid_polytope(p).dim
        for c in self.cells:
            if matroid_polytope(c).dim != parent_dim:
                raise ValueError("every maximal cell must be full-dimensional")
        for f in self.interior_faces:
            actual = matroid_polytope(f.matroid).dim
            if f.dim is not None and f.dim != actual:
                raise ValueError(f"interior face declared with dim {f.dim}, actual {actual}")

    def signed_pieces(self):
        """(sign, matroid) for every cell and interior face."""
        top = matroid_polytope(self.parent).dim
        out = []
        for q in self.cells:
            out.append((1, q))
        for f in self.interior_faces:
            dim = matroid_polytope(f.matroid).dim
            out.append((-1 if (top - dim) % 2 else 1, f.matroid))
        return out


@dataclass
class ValuationReport:
    difference: ChainPolynomial
    shrvol_parent: Fraction
    shrvol_signed_sum: Fraction

    @property
    def vp_holds(self) -> bool:
        return not self.difference

    @property
    def shrvol_holds(self) -> bool:
        return self.shrvol_parent == self.shrvol_signed_sum

    @property
    def holds(self) -> bool:
        return self.vp_holds and self.shrvol_holds


def check_valuation(sub: Subdivision) -> ValuationReport:
    """VP(parent) - sum_Q (-1)^(dim Δ - dim Q) VP(M_Q), with every VP read
    as a polynomial in variables t_S indexed by subsets S of the ground set.
    """
    sub.validate()
    vp_parent = volume_polynomial(sub.parent)
    diff = ChainPolynomial(vp_parent.terms)
    sh_parent = evaluate(vp_parent, sub.parent.rank_of)
    sh_sum = Fraction(0)
    for sign, q in sub.signed_pieces():
        vp = volume_polynomial(q)
        diff = diff - vp.scale(sign)
        sh_sum += sign * evaluate(vp, q.rank_of)
    return ValuationReport(diff, sh_parent, sh_sum)


def trivial_subdivision(m: Matroid) -> Subdivision:
    return Subdivision(m, [m], [])


def hypersimplex_split() -> Subdivision:
    """Δ(U_{2,4}) cut by x_0 + x_1 = 1 into two square pyramids."""
    pairs = [mask_of(p) for p in ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))]
    m1 = from_bases(4, [b for b in pairs if b != mask_of((2, 3))])
    m2 = from_bases(4, [b for b in pairs if b != mask_of((0, 1))])
    square = from_bases(4, [mask_of(p) for p in ((0, 2), (0, 3), (1, 2), (1, 3))])
    return Subdivision(uniform(2, 4), [m1, m2], [InteriorFace(square, 2)])

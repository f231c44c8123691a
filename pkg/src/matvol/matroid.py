"""Matroids given by their bases, with rank/closure queries, minors and the
lattice of flats.

Elements are labelled ``0..n-1`` and subsets are ``int`` bitmasks.  All
objects are immutable once built; the rank and lattice memos are private
caches and never change observable behaviour.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .combinat import elements_of, is_subset, mask_of, popcount


class MatroidError(ValueError):
    """Raised when input data does not describe a loopless matroid."""


class Matroid:
    """A loopless matroid on ``{0, ..., n-1}`` stored by its bases."""

    __slots__ = ("n", "bases", "rank", "_rank_memo", "_lattice")

    def __init__(self, n: int, bases, *, check: bool = True):
        if n < 1:
            raise MatroidError("ground set must have at least one element")
        bases = frozenset(b if isinstance(b, int) else mask_of(b) for b in bases)
        if not bases:
            raise MatroidError("a matroid needs at least one basis")
        full = (1 << n) - 1
        sizes = {popcount(b) for b in bases}
        if len(sizes) != 1:
            raise MatroidError(f"bases have different sizes {sorted(sizes)}")
        for b in bases:
            if b & ~full:
                raise MatroidError(f"basis {elements_of(b)} leaves the ground set")
        self.n = n
        self.bases = bases
        self.rank = sizes.pop()
        self._rank_memo: dict[int, int] = {}
        self._lattice = None
        if check:
            _check_exchange(self)
            covered = 0
            for b in bases:
                covered |= b
            if covered != full:
                loops = elements_of(full & ~covered)
                raise MatroidError(f"element {loops[0]} is a loop")

    @property
    def ground(self) -> int:
        return (1 << self.n) - 1

    def rank_of(self, subset: int) -> int:
        r = self._rank_memo.get(subset)
        if r is None:
            r = max(popcount(b & subset) for b in self.bases)
            self._rank_memo[subset] = r
        return r

    def closure(self, subset: int) -> int:
        r = self.rank_of(subset)
        out = subset
        for e in range(self.n):
            bit = 1 << e
            if not out & bit and self.rank_of(subset | bit) == r:
                out |= bit
        return out

    def is_flat(self, subset: int) -> bool:
        return self.closure(subset) == subset

    def __eq__(self, other):
        return isinstance(other, Matroid) and self.n == other.n and self.bases == other.bases

    def __hash__(self):
        return hash((self.n, self.bases))

    def __repr__(self):
        return f"Matroid(n={self.n}, rank={self.rank}, bases={len(self.bases)})"

    def __getstate__(self):
        return {"n": self.n, "bases": self.bases}

    def __setstate__(self, state):
        self.n = state["n"]
        self.bases = state["bases"]
        self.rank = popcount(next(iter(self.bases)))
        self._rank_memo = {}
        self._lattice = None


def _check_exchange(m: Matroid) -> None:
    bases = m.bases
    for b1 in bases:
        for b2 in bases:
            diff = b1 & ~b2
            if not diff:
                continue
            for e in elements_of(diff):
                without = b1 & ~(1 << e)
                if not any((without | (1 << f)) in bases for f in elements_of(b2 & ~b1)):
                    raise MatroidError(
                        f"basis exchange fails for {elements_of(b1)}, {elements_of(b2)} at {e}"
                    )


# -- constructors ---------------------------------------------------------

def uniform(r: int, n: int) -> Matroid:
    """U_{r,n}: every r-subset of n elements is a basis."""
    if not 1 <= r <= n:
        raise MatroidError(f"uniform matroid needs 1 <= r <= n, got r={r}, n={n}")
    return Matroid(n, (mask_of(c) for c in combinations(range(n), r)), check=False)


def from_bases(n: int, bases) -> Matroid:
    return Matroid(n, [b if isinstance(b, int) else mask_of(b) for b in bases])


def graphic(n_vertices: int, edges) -> Matroid:
    """Cycle matroid of a multigraph; ground set = edge indices."""
    edges = [tuple(e) for e in edges]
    if not edges:
        raise MatroidError("graph has no edges")
    for i, (u, v) in enumerate(edges):
        if u == v:
            raise MatroidError(f"edge {i} is a self-loop at vertex {u}")
        if not (0 <= u < n_vertices and 0 <= v < n_vertices):
            raise MatroidError(f"edge {i} uses a vertex outside 0..{n_vertices - 1}")

    def forest_size(idx):
        parent = list(range(n_vertices))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        size = 0
        for i in idx:
            a, b = find(edges[i][0]), find(edges[i][1])
            if a != b:
                parent[a] = b
                size += 1
        return size

    r = forest_size(range(len(edges)))
    bases = [mask_of(c) for c in combinations(range(len(edges)), r) if forest_size(c) == r]
    return Matroid(len(edges), bases, check=False)


def direct_sum(m1: Matroid, m2: Matroid) -> Matroid:
    """Disjoint union; the labels of ``m2`` are shifted by ``m1.n``."""
    shift = m1.n
    bases = [b1 | (b2 << shift) for b1 in m1.bases for b2 in m2.bases]
    return Matroid(m1.n + m2.n, bases, check=False)


# -- derived matroids -----------------------------------------------------

def minor_interval(m: Matroid, lower: int, upper: int) -> Matroid:
    """The minor ``M|upper / lower`` for flats ``lower ⊊ upper``.

    The ground set ``upper - lower`` is relabelled ``0..k-1`` in increasing
    order of the original labels.  Its lattice of flats is the interval
    ``[lower, upper]`` of ``m``.
    """
    if not is_subset(lower, upper):
        raise MatroidError("lower flat is not contained in upper flat")
    if not (m.is_flat(lower) and m.is_flat(upper)):
        raise MatroidError("minor_interval expects two flats")
    if lower == upper:
        raise MatroidError("the interval [F, F] gives an empty ground set")
    r_lo, r_up = m.rank_of(lower), m.rank_of(upper)
    labels = elements_of(upper & ~lower)
    relabel = {e: i for i, e in enumerate(labels)}
    bases = set()
    for b in m.bases:
        if popcount(b & upper) == r_up and popcount(b & lower) == r_lo:
            bases.add(mask_of(relabel[e] for e in elements_of(b & upper & ~lower)))
    return Matroid(len(labels), bases, check=False)


def restriction(m: Matroid, subset: int) -> Matroid:
    """``M|subset`` relabelled ``0..k-1`` in increasing order."""
    labels = elements_of(subset)
    relabel = {e: i for i, e in enumerate(labels)}
    r = m.rank_of(subset)
    bases = {
        mask_of(relabel[e] for e in elements_of(b & subset))
        for b in m.bases
        if popcount(b & subset) == r
    }
    return Matroid(len(labels), bases, check=False)


def simplify(m: Matroid) -> Matroid:
    """Keep the smallest element of every rank-1 flat."""
    keep = 0
    seen = 0
    for e in range(m.n):
        if seen >> e & 1:
            continue
        keep |= 1 << e
        seen |= m.closure(1 << e)
    if keep == m.ground:
        return m
    return restriction(m, keep)


def connected_components(m: Matroid) -> list[int]:
    """Connected components, read off the fundamental graph of one basis."""
    parent = list(range(m.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    base = min(m.bases)
    for e in elements_of(m.ground & ~base):
        for b in elements_of(base):
            if (base & ~(1 << b)) | (1 << e) in m.bases:
                parent[find(e)] = find(b)
    blocks: dict[int, int] = {}
    for e in range(m.n):
        root = find(e)
        blocks[root] = blocks.get(root, 0) | (1 << e)
    return sorted(blocks.values(), key=lambda s: (elements_of(s)[0]))


# -- lattice of flats -----------------------------------------------------

@dataclass(frozen=True, eq=False)
class FlatLattice:
    """All flats of a matroid, graded by rank, with the covering relation."""

    matroid: Matroid
    by_rank: tuple[tuple[int, ...], ...]
    covers: dict = field(repr=False)
    rank: dict = field(repr=False)
    memo: dict = field(default_factory=dict, repr=False)

    @property
    def flats(self) -> list[int]:
        return [f for level in self.by_rank for f in level]

    @property
    def proper_flats(self) -> list[int]:
        return [f for level in self.by_rank[1:-1] for f in level]

    @property
    def bottom(self) -> int:
        return 0

    @property
    def top(self) -> int:
        return self.matroid.ground

    def __len__(self):
        return sum(len(level) for level in self.by_rank)

    def __contains__(self, subset: int) -> bool:
        return subset in self.rank

    def interval(self, lower: int, upper: int) -> list[int]:
        """Flats G with lower ⊆ G ⊆ upper, sorted by rank."""
        lo, hi = self.rank[lower], self.rank[upper]
        return [
            g
            for level in self.by_rank[lo:hi + 1]
            for g in level
            if is_subset(lower, g) and is_subset(g, upper)
        ]

    def open_interval(self, lower: int, upper: int) -> list[int]:
        return [g for g in self.interval(lower, upper) if g != lower and g != upper]

    def lower_covers(self, flat: int) -> list[int]:
        r = self.rank[flat]
        if r == 0:
            return []
        return [f for f in self.by_rank[r - 1] if is_subset(f, flat)]


def flat_lattice(m: Matroid) -> FlatLattice:
    """Enumerate flats rank by rank: the flats covering F are the closures
    of F + e for e outside F, and they must partition E - F."""
    if m._lattice is not None:
        return m._lattice
    bottom = m.closure(0)
    if bottom:
        raise MatroidError("matroid has loops")
    levels = [(bottom,)]
    covers: dict[int, tuple[int, ...]] = {}
    rank = {bottom: 0}
    for k in range(m.rank):
        nxt: dict[int, None] = {}
        for f in levels[k]:
            ups = []
            remaining = m.ground & ~f
            while remaining:
                e = remaining & -remaining
                g = m.closure(f | e)
                if (g & ~f) & ~remaining:
                    raise MatroidError("cover-partition axiom fails; input is not a matroid")
                ups.append(g)
                remaining &= ~g
            covers[f] = tuple(ups)
            for g in ups:
                nxt[g] = None
        level = tuple(sorted(nxt, key=lambda s: (popcount(s), elements_of(s))))
        for g in level:
            rank[g] = k + 1
        levels.append(level)
    covers[m.ground] = ()
    lattice = FlatLattice(m, tuple(levels), covers, rank)
    m._lattice = lattice
    return lattice

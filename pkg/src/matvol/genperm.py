"""Volumes of generalized permutohedra P(z) = {x : sum_I x <= z_I, sum x = z_[n]}.

Three independent routes:

* :func:`gp_volume_chain_formula`, a signed sum over chains of subsets;
* :func:`gp_volume_postnikov`, the Minkowski-sum-of-simplices formula
  applied to the Minkowski weights of P(z) (see :func:`minkowski_weights`);
* :func:`gp_volume_polytope_oracle`, an exact triangulation of the convex
  hull of the greedy vertices.

Volumes are lattice-normalized: the hyperplane sum x = c is projected to
the first n-1 coordinates, which maps its integer points onto Z^(n-1).
A submodular function is a ``dict`` from subset bitmask to ``Fraction``
defined on all 2^n subsets.
"""

from __future__ import annotations

import random
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement, permutations
from math import factorial

from . import combinat
from .combinat import elements_of, is_subset, popcount

SubmodularFunction = dict  # int bitmask -> Fraction

ORACLE_MAX_N = 5


def _full(n: int) -> int:
    return (1 << n) - 1


def _check_complete(n: int, z: SubmodularFunction) -> None:
    missing = [s for s in range(1 << n) if s not in z]
    if missing:
        raise ValueError(f"z is undefined on {len(missing)} subsets")
    if z[0] != 0:
        raise ValueError("z of the empty set must be 0")


def is_submodular(n: int, z: SubmodularFunction):
    """Return ``(True, None)`` or ``(False, (I, J))`` for the first pair
    with z(I | J) + z(I & J) > z(I) + z(J)."""
    _check_complete(n, z)
    for a in range(1 << n):
        for b in range(a + 1, 1 << n):
            if z[a | b] + z[a & b] > z[a] + z[b]:
                return False, (a, b)
    return True, None


def normalize_z(n: int, z: SubmodularFunction) -> SubmodularFunction:
    """Subtract the modular function I -> (|I|/n) z_[n]; translates P(z)."""
    _check_complete(n, z)
    top = Fraction(z[_full(n)])
    return {s: Fraction(v) - Fraction(popcount(s), n) * top for s, v in z.items()}


def permutohedron_z(n: int) -> SubmodularFunction:
    """z_I = (n - |I|)|I|/2, whose P(z) is a translate of the permutohedron."""
    return {s: Fraction((n - popcount(s)) * popcount(s), 2) for s in range(1 << n)}


def modular_z(weights) -> SubmodularFunction:
    n = len(weights)
    return {s: sum((Fraction(weights[i]) for i in elements_of(s)), Fraction(0)) for s in range(1 << n)}


def mobius_invert(n: int, z: SubmodularFunction) -> SubmodularFunction:
    """y_I = sum_{J <= I} (-1)^{|I - J|} z_J, so that z_I = sum_{J <= I} y_J."""
    _check_complete(n, z)
    y = {}
    for s in range(1 << n):
        total = Fraction(0)
        sub = s
        while True:
            sign = -1 if popcount(s & ~sub) % 2 else 1
            total += sign * Fraction(z[sub])
            if sub == 0:
                break
            sub = (sub - 1) & s
        y[s] = total
    return y


def dual_z(n: int, z: SubmodularFunction) -> SubmodularFunction:
    """Z_I = z_[n] - z_{[n] - I}.  P(z) = {sum_I x >= Z_I, sum x = Z_[n]}."""
    full = _full(n)
    return {s: Fraction(z[full]) - Fraction(z[full & ~s]) for s in range(1 << n)}


def minkowski_weights(n: int, z: SubmodularFunction) -> SubmodularFunction:
    """y with P(z) = sum_I y_I Delta_I, when every y_I (|I| >= 2) is >= 0.

    Minkowski sums of simplices are described by lower bounds
    sum_I x >= sum_{J <= I} y_J, so y is the Möbius inverse of the dual Z.
    """
    return mobius_invert(n, dual_z(n, z))


def submodular_from_minkowski(n: int, y) -> SubmodularFunction:
    """The submodular z with P(z) = sum_I y_I Delta_I."""
    lower = {
        s: sum((Fraction(v) for j, v in y.items() if is_subset(j, s)), Fraction(0))
        for s in range(1 << n)
    }
    return dual_z(n, lower)


def postnikov_applicable(y) -> bool:
    """Singletons only translate P, so their sign is irrelevant."""
    return all(v >= 0 for s, v in y.items() if popcount(s) >= 2)


# -- chain formula --------------------------------------------------------

@lru_cache(maxsize=None)
def _subset_chains(n: int, d: int):
    """Chains 0 < I_1 < ... < I_k < [n] together with exponent vectors
    satisfying D_{i-1} < |I_i| <= D_i; other terms vanish."""
    full = _full(n)
    out = []

    def extend(prev, dt_prev, chain, exps):
        rest = full & ~prev
        for size in range(1, popcount(rest)):
            if popcount(prev) + size <= dt_prev:
                continue
            for extra in combinations(elements_of(rest), size):
                g = prev | combinat.mask_of(extra)
                for dt in range(popcount(g), d + 1):
                    c, e = chain + (g,), exps + (dt - dt_prev,)
                    if dt == d:
                        out.append((c, e))
                    else:
                        extend(g, dt, c, e)

    extend(0, 0, (), ())
    return tuple(out)


def chain_formula_terms(n: int):
    """Yield (chain, exps, integer coefficient) of (n-1)! Vol as a
    polynomial in the z_I; the coefficient of prod z_{I_i}^{d_i} is
    (-1)^(d-k) multinomial(d) prod C(d_i - 1, j_i) C(|I_{i+1}| - |I_i| - 1, j_i)
    with j_i = D_i - |I_i|."""
    d = n - 1
    full = _full(n)
    for chain, exps in _subset_chains(n, d):
        k = len(chain)
        coeff = (-1) ** (d - k) * combinat.multinomial(exps)
        partial = 0
        for i, (s, di) in enumerate(zip(chain, exps)):
            partial += di
            j = partial - popcount(s)
            nxt = chain[i + 1] if i + 1 < k else full
            coeff *= combinat.binom(di - 1, j) * combinat.binom(popcount(nxt) - popcount(s) - 1, j)
            if not coeff:
                break
        if coeff:
            yield chain, exps, coeff


def gp_volume_chain_formula(n: int, z: SubmodularFunction, *, check: bool = True) -> Fraction:
    """Lattice-normalized volume of P(z) by the chain formula.  ``z`` must
    satisfy z_[n] = 0 (see :func:`normalize_z`)."""
    _check_complete(n, z)
    if z[_full(n)] != 0:
        raise ValueError("z is not normalized: z_[n] != 0")
    if check:
        ok, _ = is_submodular(n, z)
        if not ok:
            raise ValueError("z is not submodular")
    if n == 1:
        return Fraction(1)
    total = Fraction(0)
    for chain, exps, coeff in chain_formula_terms(n):
        term = Fraction(coeff)
        for s, e in zip(chain, exps):
            term *= Fraction(z[s]) ** e
        total += term
    return total / factorial(n - 1)


# -- Postnikov ------------------------------------------------------------

def _hall_condition(sets) -> bool:
    """|I_{i_1} u ... u I_{i_k}| >= k + 1 for every nonempty subfamily."""
    m = len(sets)
    for k in range(1, m + 1):
        for idx in combinations(range(m), k):
            union = 0
            for i in idx:
                union |= sets[i]
            if popcount(union) < k + 1:
                return False
    return True


def gp_volume_postnikov(n: int, y) -> Fraction:
    """Volume of the Minkowski sum sum_I y_I Delta_I.

    Ordered (n-1)-tuples are grouped into multisets, each counted with
    its number of orderings, so the 1/(n-1)! cancels into 1/prod(m!).
    """
    if any(v < 0 for v in y.values()):
        raise ValueError("Minkowski weights must be nonnegative")
    if n == 1:
        return Fraction(1)
    support = sorted(s for s, v in y.items() if v and popcount(s) >= 2)
    total = Fraction(0)
    for multiset in combinations_with_replacement(support, n - 1):
        if not _hall_condition(multiset):
            continue
        term = Fraction(1)
        for s in multiset:
            term *= Fraction(y[s])
        for s in set(multiset):
            term /= factorial(multiset.count(s))
        total += term
    return total


# -- polytope oracle ------------------------------------------------------

def greedy_vertices(n: int, z: SubmodularFunction) -> list[tuple[Fraction, ...]]:
    """Distinct vertices v_sigma with v_{sigma(k)} = z(sigma[1..k]) - z(sigma[1..k-1])."""
    seen = {}
    for perm in permutations(range(n)):
        v = [Fraction(0)] * n
        prefix = 0
        for e in perm:
            v[e] = Fraction(z[prefix | 1 << e]) - Fraction(z[prefix])
            prefix |= 1 << e
        seen[tuple(v)] = None
    return list(seen)


def _affine_rank(points) -> int:
    if len(points) <= 1:
        return 0
    base = points[0]
    rows = [[a - b for a, b in zip(p, base)] for p in points[1:]]
    rank = 0
    cols = len(base)
    for c in range(cols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][c] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][c] != 0:
                f = rows[r][c] / rows[rank][c]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _det(matrix) -> Fraction:
    a = [list(row) for row in matrix]
    size = len(a)
    det = Fraction(1)
    for c in range(size):
        pivot = next((r for r in range(c, size) if a[r][c] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det *= a[c][c]
        for r in range(c + 1, size):
            f = a[r][c] / a[c][c]
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return det


def gp_volume_polytope_oracle(n: int, z: SubmodularFunction) -> Fraction:
    """Exact volume of conv(greedy vertices) via a pulling triangulation.

    Faces are tracked as vertex sets; the facets of a face are its
    intersections with the hyperplanes sum_I x = z_I (I proper), which
    carry every facet of P(z).  Lower-dimensional polytopes have volume 0.
    """
    if n > ORACLE_MAX_N:
        raise ValueError(f"polytope oracle supports n <= {ORACLE_MAX_N}")
    _check_complete(n, z)
    if n == 1:
        return Fraction(1)
    verts = greedy_vertices(n, z)
    dim = n - 1
    if _affine_rank(verts) < dim:
        return Fraction(0)
    proper = [s for s in range(1, _full(n))]
    tight = {
        v: frozenset(s for s in proper if sum(v[i] for i in elements_of(s)) == z[s])
        for v in verts
    }
    memo: dict[frozenset, list] = {}

    def triangulate(face: frozenset, k: int):
        if face in memo:
            return memo[face]
        if k == 0:
            out = [(next(iter(face)),)]
        else:
            apex = min(face)
            ties = set().union(*(tight[v] for v in face)) - frozenset.intersection(*(tight[v] for v in face))
            facets = set()
            for s in ties:
                sub = frozenset(v for v in face if s in tight[v])
                if apex not in sub and _affine_rank(list(sub)) == k - 1:
                    facets.add(sub)
            out = [(apex,) + simplex for sub in facets for simplex in triangulate(sub, k - 1)]
        memo[face] = out
        return out

    total = Fraction(0)
    for simplex in triangulate(frozenset(verts), dim):
        apex = simplex[0]
        rows = [[p[i] - apex[i] for i in range(dim)] for p in simplex[1:]]
        total += abs(_det(rows))
    return total / factorial(dim)


# -- random submodular functions -----------------------------------------

def random_submodular(n: int, rng: random.Random, *, max_value: int = 3) -> SubmodularFunction:
    """A nonnegative combination of truncated-cardinality functions
    I -> min(|I & A|, c) and coverage-style terms, plus a random modular
    part.  Truncations give negative Möbius weights, so not every sample
    is a Minkowski sum of simplices."""
    z = {s: Fraction(0) for s in range(1 << n)}
    for _ in range(rng.randint(1, 4)):
        a = rng.randint(1, _full(n))
        cap = rng.randint(1, max(1, popcount(a)))
        lam = Fraction(rng.randint(1, max_value), rng.randint(1, 2))
        for s in z:
            z[s] += lam * min(popcount(s & a), cap)
    for _ in range(rng.randint(0, 3)):
        a = rng.randint(1, _full(n))
        lam = Fraction(rng.randint(1, max_value), rng.randint(1, 3))
        for s in z:
            if s & a:
                z[s] += lam
    weights = [Fraction(rng.randint(-max_value, max_value)) for _ in range(n)]
    for s, v in modular_z(weights).items():
        z[s] += v
    return z


def random_minkowski(n: int, rng: random.Random, *, max_value: int = 3, density: float = 0.5):
    y = {}
    for s in range(1, 1 << n):
        if rng.random() < density:
            y[s] = Fraction(rng.randint(0, max_value), rng.randint(1, 2))
    return y

"""Möbius function, characteristic polynomials and the signed chain sums
``gamma(M, i)`` whose values are the coefficients of the reduced
characteristic polynomial.

Polynomials are plain ``list[int]`` coefficient lists, lowest degree first,
with trailing zeros trimmed.
"""

from __future__ import annotations

from fractions import Fraction

from .combinat import is_subset, popcount
from .matroid import FlatLattice, Matroid, flat_lattice


def _trim(coeffs: list) -> list:
    while len(coeffs) > 1 and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def mobius(lattice: FlatLattice, lower: int = 0) -> dict[int, int]:
    """``mu(lower, G)`` for every flat G above ``lower``.

    Uses the defining recursion mu(F,F) = 1, mu(F,G) = -sum_{F <= X < G} mu(F,X).
    """
    key = ("mobius", lower)
    cache = _lattice_cache(lattice)
    if key in cache:
        return cache[key]
    mu = {lower: 1}
    for level in lattice.by_rank[lattice.rank[lower] + 1:]:
        for g in level:
            if not is_subset(lower, g):
                continue
            mu[g] = -sum(v for x, v in mu.items() if x != g and is_subset(x, g))
    cache[key] = mu
    return mu


def _lattice_cache(lattice: FlatLattice) -> dict:
    return lattice.memo


def interval_char_poly(lattice: FlatLattice, lower: int, upper: int) -> list[int]:
    """Characteristic polynomial of the minor ``M|upper / lower``, computed
    on the interval ``[lower, upper]`` of the lattice."""
    mu = mobius(lattice, lower)
    top = lattice.rank[upper] - lattice.rank[lower]
    coeffs = [0] * (top + 1)
    for g in lattice.interval(lower, upper):
        coeffs[lattice.rank[upper] - lattice.rank[g]] += mu[g]
    return _trim(coeffs)


def divide_by_t_minus_one(coeffs: list[int]) -> list[int]:
    """Exact synthetic division by (t - 1)."""
    if sum(coeffs) != 0:
        raise ArithmeticError("polynomial does not vanish at t = 1")
    deg = len(coeffs) - 1
    quotient = [0] * deg
    carry = 0
    for k in range(deg, 0, -1):
        carry += coeffs[k]
        quotient[k - 1] = carry
    return _trim(quotient) if quotient else [0]


def interval_mu_vector(lattice: FlatLattice, lower: int, upper: int) -> tuple[int, ...]:
    """Unsigned coefficients mu^0, mu^1, ... of the reduced characteristic
    polynomial of ``M|upper / lower`` (leading coefficient first)."""
    key = ("muvec", lower, upper)
    cache = _lattice_cache(lattice)
    if key not in cache:
        reduced = divide_by_t_minus_one(interval_char_poly(lattice, lower, upper))
        d = len(reduced) - 1
        cache[key] = tuple(abs(reduced[d - i]) for i in range(d + 1))
    return cache[key]


def char_poly(m: Matroid) -> list[int]:
    lat = flat_lattice(m)
    return interval_char_poly(lat, 0, m.ground)


def reduced_char_poly(m: Matroid) -> list[int]:
    return divide_by_t_minus_one(char_poly(m))


def mu_vector(m: Matroid) -> tuple[int, ...]:
    lat = flat_lattice(m)
    return interval_mu_vector(lat, 0, m.ground)


def _check_index(m: Matroid, i: int) -> None:
    if not -1 <= i <= m.rank:
        raise ValueError(f"index {i} outside -1..{m.rank}")


def gamma_chains(m: Matroid, i: int) -> Fraction:
    """gamma(M, i) as the signed sum over chains
    0 = G_0 < G_1 < ... < G_i < G_{i+1} = E with rk G_j = j."""
    _check_index(m, i)
    if i == -1:
        return Fraction(-1)
    if i == m.rank:
        return Fraction(0)
    lat = flat_lattice(m)
    top = m.ground
    total = Fraction(0)

    def walk(prev: int, depth: int, weight: Fraction):
        nonlocal total
        if depth == i:
            total += -weight * Fraction(-popcount(top & ~prev), popcount(top))
            return
        for g in lat.covers[prev]:
            walk(g, depth + 1, weight * Fraction(-popcount(g & ~prev), popcount(g)))

    walk(0, 0, Fraction(1))
    return total


def gamma_recursive(m: Matroid, i: int) -> Fraction:
    """gamma(M, i) via gamma(M, i) = sum_{rk F = i} -(|E - F|/|E|) gamma(M|F, i - 1).

    ``M|F`` is never built: its flats are the flats of M below F.
    """
    _check_index(m, i)
    if i == -1:
        return Fraction(-1)
    if i == m.rank:
        return Fraction(0)
    lat = flat_lattice(m)
    memo: dict[int, Fraction] = {}

    def top_gamma(f: int) -> Fraction:
        # gamma(M|f, rk f - 1)
        if f == 0:
            return Fraction(-1)
        if f not in memo:
            memo[f] = sum(
                (Fraction(-popcount(f & ~g), popcount(f)) * top_gamma(g) for g in lat.lower_covers(f)),
                Fraction(0),
            )
        return memo[f]

    n = popcount(m.ground)
    return sum(
        (Fraction(-popcount(m.ground & ~f), n) * top_gamma(f) for f in lat.by_rank[i]),
        Fraction(0),
    )


def gamma(m: Matroid, i: int) -> Fraction:
    """gamma(M, i); both evaluation routes are computed and must agree."""
    a = gamma_chains(m, i)
    b = gamma_recursive(m, i)
    if a != b:
        raise ArithmeticError(f"gamma mismatch at i={i}: chains {a}, recursion {b}")
    return a


def maximal_chain_weight_sum(m: Matroid) -> Fraction:
    """Sum over maximal chains of prod |G_j - G_{j-1}| / |E - G_{j-1}|,
    j = 1..rk-1; equals 1 for every loopless matroid."""
    lat = flat_lattice(m)
    top = m.ground
    d = m.rank - 1
    total = Fraction(0)

    def walk(prev: int, depth: int, weight: Fraction):
        nonlocal total
        if depth == d:
            total += weight
            return
        for g in lat.covers[prev]:
            walk(g, depth + 1, weight * Fraction(popcount(g & ~prev), popcount(top & ~prev)))

    walk(0, 0, Fraction(1))
    return total


def weisner_holds(lattice: FlatLattice) -> bool:
    """mu(0, G) = -sum_{F covered by G, a not in F} mu(0, F) for every G, a in G."""
    mu = mobius(lattice)
    for g in lattice.flats:
        if g == 0:
            continue
        lower = lattice.lower_covers(g)
        a_mask = g
        while a_mask:
            a = a_mask & -a_mask
            a_mask &= a_mask - 1
            if mu[g] != -sum(mu[f] for f in lower if not f & a):
                return False
    return True


def is_log_concave(seq) -> bool:
    return all(seq[i - 1] * seq[i + 1] <= seq[i] ** 2 for i in range(1, len(seq) - 1))

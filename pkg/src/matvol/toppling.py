"""Toppling expansion of chain monomials into square-free monomials.

This is an independent (and exponentially slower) route to intersection
numbers, used to cross-check :func:`matvol.chow.intersection_number`.
Each toppling step rewrites one power of x_F through a linear relation of
the Chow ring; once every exponent is 1 the support is a maximal chain and
the monomial has degree 1.
"""

from __future__ import annotations

from fractions import Fraction

from .chow import ChainMonomial, ChainPolynomial, _validate_monomial
from .combinat import is_subset, popcount
from .matroid import FlatLattice, Matroid, flat_lattice


class TopplingError(ArithmeticError):
    """The expansion left a term that should have vanished or reduced."""


def _is_initial_before(lat: FlatLattice, chain, i: int) -> bool:
    return all(lat.rank[chain[j]] == j + 1 for j in range(i))


def _topple_term(lat: FlatLattice, mono: ChainMonomial, i: int, tight: bool):
    """Rewrite x_{F_i}^{d_i} (d_i > 1) once; yields (monomial, weight)."""
    chain, exps = mono.chain, mono.exps
    lower = chain[i - 1] if i > 0 else 0
    f = chain[i]
    upper = chain[i + 1] if i + 1 < len(chain) else lat.top
    r_lower = lat.rank[lower]
    reduced = exps[:i] + (exps[i] - 1,) + exps[i + 1:]
    base = list(zip(chain, reduced))

    below = popcount(f & ~lower)
    for g in lat.open_interval(lower, f):
        if tight and lat.rank[g] != r_lower + 1:
            continue
        yield ChainMonomial.of(base + [(g, 1)]), Fraction(-popcount(g & ~lower), below)

    above = popcount(upper & ~f)
    for g in lat.open_interval(f, upper):
        if tight and lat.rank[g] != exps[i] + r_lower:
            continue
        yield ChainMonomial.of(base + [(g, 1)]), Fraction(-popcount(upper & ~g), above)


def topple(m: Matroid, poly: ChainPolynomial, flat: int, tight: bool = False) -> ChainPolynomial:
    """Apply the (tight) toppling operator associated with ``flat``.

    Non-chain terms go to 0.  A chain term containing ``flat`` with
    exponent > 1 is rewritten; in tight mode only when every earlier flat
    has exponent 1 and rank equal to its position.  Everything else is
    left as it is.
    """
    lat = flat_lattice(m)
    if tight and not poly.is_homogeneous():
        raise ValueError("tight toppling needs a homogeneous input")
    out = ChainPolynomial()
    for mono, c in poly.terms.items():
        if not mono.is_chain():
            continue
        try:
            i = mono.chain.index(flat)
        except ValueError:
            out.add(mono, c)
            continue
        if mono.exps[i] == 1 or (
            tight and not (all(e == 1 for e in mono.exps[:i]) and _is_initial_before(lat, mono.chain, i))
        ):
            out.add(mono, c)
            continue
        for new, w in _topple_term(lat, mono, i, tight):
            out.add(new, c * w)
    return out


def expand(m: Matroid, mono: ChainMonomial, tight: bool = True) -> ChainPolynomial:
    """Apply T_{F_k}^{d_k - 1} after ... after T_{F_1}^{d_1 - 1} to ``mono``."""
    poly = ChainPolynomial({mono: Fraction(1)})
    for f, e in zip(mono.chain, mono.exps):
        for _ in range(e - 1):
            poly = topple(m, poly, f, tight=tight)
    return poly


def degree_via_toppling(m: Matroid, mono: ChainMonomial, tight: bool = True) -> int:
    """deg(mono) computed by toppling down to square-free monomials."""
    lat = flat_lattice(m)
    if not _validate_monomial(m, lat, mono):
        return 0
    d = m.rank - 1
    total = Fraction(0)
    for term, c in expand(m, mono, tight=tight).terms.items():
        if term.is_square_free():
            ranks = [lat.rank[f] for f in term.chain]
            if not term.is_chain() or ranks != list(range(1, d + 1)):
                raise TopplingError(f"square-free term {term} is not a maximal chain")
            total += c
            continue
        # Only the tight operator leaves powers behind, and only on terms
        # that vanish because their initial segment skips a rank.
        first = next(j for j, e in enumerate(term.exps) if e > 1)
        if not tight or _is_initial_before(lat, term.chain, first):
            raise TopplingError(f"expansion left a non-square-free term {term}")
    if total.denominator != 1:
        raise TopplingError(f"non-integral degree {total}")
    return int(total)


def dual_point(chain_with_ends, i: int, n: int) -> list[int]:
    """m(F, i) = -|F_{i+1} - F_i| e_{F_i - F_{i-1}} + |F_i - F_{i-1}| e_{F_{i+1} - F_i}
    for a chain 0 = F_0 < F_1 < ... < F_{k+1} = E, as an integer vector."""
    prev, cur, nxt = chain_with_ends[i - 1], chain_with_ends[i], chain_with_ends[i + 1]
    a, b = cur & ~prev, nxt & ~cur
    na, nb = popcount(a), popcount(b)
    return [(-nb if a >> e & 1 else 0) + (na if b >> e & 1 else 0) for e in range(n)]


def pairing(vec: list[int], subset: int) -> int:
    """<vec, u_S> with u_S the indicator vector of S."""
    return sum(v for e, v in enumerate(vec) if subset >> e & 1)


def chain_with_ends(m: Matroid, chain) -> list[int]:
    if not all(is_subset(a, b) for a, b in zip(chain, chain[1:])):
        raise ValueError("not a chain")
    return [0, *chain, m.ground]

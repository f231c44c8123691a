"""Named test matroids."""

from __future__ import annotations

from itertools import combinations

from .combinat import mask_of
from .matroid import Matroid, MatroidError, direct_sum, from_bases, graphic, uniform

K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

FANO_LINES = [(0, 1, 2), (0, 3, 4), (0, 5, 6), (1, 3, 5), (1, 4, 6), (2, 3, 6), (2, 4, 5)]


def fano() -> Matroid:
    lines = {mask_of(l) for l in FANO_LINES}
    return from_bases(7, [mask_of(t) for t in combinations(range(7), 3) if mask_of(t) not in lines])


def vamos() -> Matroid:
    """Rank 4 on 8 points: every 4-set is a basis except five of the six
    unions of two of the pairs {0,1}, {2,3}, {4,5}, {6,7}."""
    pairs = [0b11, 0b1100, 0b110000, 0b11000000]
    circuits = {pairs[a] | pairs[b] for a, b in ((0, 1), (0, 2), (0, 3), (1, 2), (2, 3))}
    return from_bases(8, [mask_of(t) for t in combinations(range(8), 4) if mask_of(t) not in circuits])


def k4() -> Matroid:
    return graphic(4, K4_EDGES)


def parallel_pair() -> Matroid:
    """U_{2,4} with elements 2 and 3 made parallel."""
    return from_bases(4, [mask_of(p) for p in combinations(range(4), 2) if p != (2, 3)])


def doubled_triangle() -> Matroid:
    return graphic(3, [(0, 1), (1, 2), (0, 2), (0, 2)])


def worked_examples() -> dict[str, Matroid]:
    return {
        "U(3,4)": uniform(3, 4),
        "U(1,1)+U(2,3)": direct_sum(uniform(1, 1), uniform(2, 3)),
        "U(2,2)+U(2,3)": direct_sum(uniform(2, 2), uniform(2, 3)),
    }


def uniforms(max_n: int) -> dict[str, Matroid]:
    return {f"U({r},{n})": uniform(r, n) for n in range(1, max_n + 1) for r in range(1, n + 1)}


def catalog(max_uniform_n: int = 6, *, include_vamos: bool = True) -> dict[str, Matroid]:
    out = uniforms(max_uniform_n)
    out.update(worked_examples())
    out["K4"] = k4()
    out["Fano"] = fano()
    out["parallel-pair"] = parallel_pair()
    out["doubled-triangle"] = doubled_triangle()
    if include_vamos:
        out["Vamos"] = vamos()
    return out


_NAMED = {
    "fano": fano,
    "vamos": vamos,
    "k4": k4,
    "parallel-pair": parallel_pair,
    "doubled-triangle": doubled_triangle,
}


def named_matroid(name: str) -> Matroid:
    try:
        return _NAMED[name.lower()]()
    except KeyError:
        raise MatroidError(f"unknown named matroid {name!r}; known: {sorted(_NAMED)}") from None

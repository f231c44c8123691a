"""Small exact combinatorial helpers shared across modules.

Subsets of a ground set ``{0, ..., n-1}`` are stored as ``int`` bitmasks
throughout the package.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import comb, factorial


def binom(n: int, k: int) -> int:
    """Binomial coefficient, zero when ``k < 0`` or ``k > n``."""
    if k < 0 or n < 0 or k > n:
        return 0
    return comb(n, k)


def multinomial(parts) -> int:
    total = factorial(sum(parts))
    for p in parts:
        total //= factorial(p)
    return total


@lru_cache(maxsize=None)
def compositions(total: int, nparts: int) -> tuple[tuple[int, ...], ...]:
    """All ordered tuples of ``nparts`` positive integers summing to ``total``."""
    if nparts == 0:
        return ((),) if total == 0 else ()
    out = []
    for cuts in combinations(range(1, total), nparts - 1):
        bounds = (0,) + cuts + (total,)
        out.append(tuple(bounds[i + 1] - bounds[i] for i in range(nparts)))
    return tuple(out)


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def mask_of(elements) -> int:
    mask = 0
    for e in elements:
        mask |= 1 << e
    return mask


def elements_of(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


def to_fraction(value) -> Fraction:
    """Parse ``int``, ``Fraction`` or a ``"p/q"``/``"p"`` string exactly."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot read {value!r} as an exact rational")


def fraction_str(q: Fraction) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"

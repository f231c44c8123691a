"""Intersection numbers of products of divisors x_F in the Chow ring of a
matroid, the volume polynomial, and divisor evaluation.

A degree-d monomial x_{F_1}^{d_1} ... x_{F_k}^{d_k} over a chain of proper
flats F_1 < ... < F_k (d = rk M - 1) has degree

    (-1)^(d-k) * prod_i C(d_i - 1, D_i - r_i) * mu^(D_i - r_i)(M|F_{i+1} / F_i)

where r_i = rk F_i, D_i = d_1 + ... + d_i, F_{k+1} = E, and mu^j is the
j-th unsigned coefficient of the reduced characteristic polynomial.  The
coefficient of the matching term of the volume polynomial carries an
extra multinomial factor d! / (d_1! ... d_k!).
"""

from __future__ import annotations

import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from . import combinat
from .charpoly import interval_mu_vector
from .combinat import elements_of, is_subset, popcount
from .matroid import FlatLattice, Matroid, flat_lattice


def _flat_key(f: int):
    return (popcount(f), elements_of(f))


@dataclass(frozen=True, order=False)
class ChainMonomial:
    """x_{F_1}^{d_1} ... x_{F_k}^{d_k}; flats are bitmasks.

    Flats are kept sorted by (size, elements), which is the inclusion order
    whenever they form a chain.  Use :meth:`of` to build one from unsorted
    data.
    """

    chain: tuple[int, ...]
    exps: tuple[int, ...]

    def __post_init__(self):
        if len(self.chain) != len(self.exps):
            raise ValueError("chain and exponent lists differ in length")
        if any(e < 1 for e in self.exps):
            raise ValueError("exponents must be positive")
        if len(set(self.chain)) != len(self.chain):
            raise ValueError("repeated flat in monomial")

    @classmethod
    def of(cls, pairs: Iterable[tuple[int, int]]) -> "ChainMonomial":
        merged: dict[int, int] = {}
        for f, e in pairs:
            merged[f] = merged.get(f, 0) + e
        items = sorted(merged.items(), key=lambda fe: _flat_key(fe[0]))
        return cls(tuple(f for f, _ in items), tuple(e for _, e in items))

    @property
    def degree(self) -> int:
        return sum(self.exps)

    def is_chain(self) -> bool:
        return all(is_subset(a, b) for a, b in zip(self.chain, self.chain[1:]))

    def is_square_free(self) -> bool:
        return all(e == 1 for e in self.exps)

    def sort_key(self):
        return (tuple(_flat_key(f) for f in self.chain), self.exps)

    def __str__(self):
        if not self.chain:
            return "1"
        parts = []
        for f, e in zip(self.chain, self.exps):
            name = "t{" + ",".join(map(str, elements_of(f))) + "}"
            parts.append(name if e == 1 else f"{name}^{e}")
        return "*".join(parts)


class ChainPolynomial:
    """Sparse polynomial in the variables t_F (or x_F) with exact rational
    coefficients, keyed by :class:`ChainMonomial`.  Zero coefficients are
    never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[ChainMonomial, Fraction] | None = None):
        self.terms: dict[ChainMonomial, Fraction] = {}
        if terms:
            for mono, c in terms.items():
                self.add(mono, c)

    @classmethod
    def constant(cls, value=1) -> "ChainPolynomial":
        return cls({ChainMonomial((), ()): Fraction(value)})

    def add(self, mono: ChainMonomial, coeff) -> None:
        c = self.terms.get(mono, 0) + Fraction(coeff)
        if c:
            self.terms[mono] = c
        else:
            self.terms.pop(mono, None)

    def __add__(self, other: "ChainPolynomial") -> "ChainPolynomial":
        out = ChainPolynomial(self.terms)
        for mono, c in other.terms.items():
            out.add(mono, c)
        return out

    def __sub__(self, other: "ChainPolynomial") -> "ChainPolynomial":
        return self + other.scale(-1)

    def scale(self, factor) -> "ChainPolynomial":
        factor = Fraction(factor)
        if not factor:
            return ChainPolynomial()
        return ChainPolynomial({m: c * factor for m, c in self.terms.items()})

    def __eq__(self, other):
        return isinstance(other, ChainPolynomial) and self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __getitem__(self, mono: ChainMonomial) -> Fraction:
        return self.terms.get(mono, Fraction(0))

    def sorted_terms(self) -> list[tuple[ChainMonomial, Fraction]]:
        return sorted(self.terms.items(), key=lambda mc: mc[0].sort_key())

    def degrees(self) -> set[int]:
        return {m.degree for m in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def __repr__(self):
        return f"ChainPolynomial({len(self.terms)} terms)"

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for mono, c in self.sorted_terms():
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono.chain:
                body = str(mag)
            elif mag == 1:
                body = str(mono)
            else:
                body = f"{mag}*{mono}"
            out.append(f"{sign} {body}")
        text = " ".join(out)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def _degree_on_chain(lat: FlatLattice, chain, exps) -> int:
    d = lat.matroid.rank - 1
    k = len(chain)
    total = 1 if (d - k) % 2 == 0 else -1
    partial = 0
    for i, (f, di) in enumerate(zip(chain, exps)):
        partial += di
        r = lat.rank[f]
        j = partial - r
        b = combinat.binom(di - 1, j)
        if not b:
            return 0
        upper = chain[i + 1] if i + 1 < k else lat.top
        mus = interval_mu_vector(lat, f, upper)
        if j >= len(mus):
            return 0
        total *= b * mus[j]
    return total


def _validate_monomial(m: Matroid, lat: FlatLattice, mono: ChainMonomial) -> bool:
    """Raise on malformed input; return False for non-chain supports."""
    d = m.rank - 1
    if mono.degree != d:
        raise ValueError(f"monomial has degree {mono.degree}, expected rk - 1 = {d}")
    for f in mono.chain:
        if f not in lat or f == 0 or f == m.ground:
            raise ValueError(f"{elements_of(f)} is not a proper flat")
    return mono.is_chain()


def intersection_number(m: Matroid, mono: ChainMonomial) -> int:
    """deg(x_{F_1}^{d_1} ... x_{F_k}^{d_k}); non-chain supports give 0."""
    lat = flat_lattice(m)
    if not _validate_monomial(m, lat, mono):
        warnings.warn("monomial support is not a chain; its degree is 0", stacklevel=2)
        return 0
    return _degree_on_chain(lat, mono.chain, mono.exps)


def feasible_chain_monomials(lat: FlatLattice, first_flats=None):
    """Yield (chain, exps) with D_{i-1} < r_i <= D_i for all i: exactly the
    monomials that can have nonzero degree.  ``first_flats`` restricts F_1."""
    d = lat.matroid.rank - 1
    if d == 0:
        yield (), ()
        return
    proper = lat.proper_flats
    above = {0: proper if first_flats is None else [f for f in proper if f in first_flats]}
    for f in proper:
        above[f] = [g for g in proper if g != f and is_subset(f, g)]

    def extend(prev, dt_prev, chain, exps):
        for g in above[prev]:
            r = lat.rank[g]
            if r <= dt_prev:
                continue
            for dt in range(r, d + 1):
                if dt == d:
                    yield chain + (g,), exps + (dt - dt_prev,)
                else:
                    yield from extend(g, dt, chain + (g,), exps + (dt - dt_prev,))

    yield from extend(0, 0, (), ())


def _vp_terms(m: Matroid, first_flats=None):
    lat = flat_lattice(m)
    out = []
    for chain, exps in feasible_chain_monomials(lat, first_flats):
        deg = _degree_on_chain(lat, chain, exps)
        if deg:
            out.append((chain, exps, combinat.multinomial(exps) * deg))
    return out


def volume_polynomial(m: Matroid, jobs: int = 1) -> ChainPolynomial:
    """VP_M = deg((sum_F t_F x_F)^d), as a sparse polynomial in the t_F."""
    if m.rank == 1:
        return ChainPolynomial.constant(1)
    if jobs > 1:
        lat = flat_lattice(m)
        atoms = list(lat.proper_flats)
        chunks = [set(atoms[i::jobs]) for i in range(jobs)]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_vp_terms, [m] * jobs, chunks))
        raw = [t for part in parts for t in part]
    else:
        raw = _vp_terms(m)
    poly = ChainPolynomial()
    for chain, exps, c in raw:
        poly.terms[ChainMonomial(chain, exps)] = Fraction(c)
    return poly


def evaluate(poly: ChainPolynomial, values: Mapping[int, object] | Callable[[int], object]) -> Fraction:
    """Substitute t_F := values[F] (missing flats count as 0)."""
    if callable(values):
        lookup = values
    else:
        lookup = lambda f: values.get(f, 0)  # noqa: E731
    total = Fraction(0)
    for mono, c in poly.terms.items():
        term = c
        for f, e in zip(mono.chain, mono.exps):
            v = lookup(f)
            if not v:
                term = 0
                break
            term *= Fraction(v) ** e
        total += term
    return total


def shifted_rank_volume(m: Matroid, jobs: int = 1) -> Fraction:
    """VP_M evaluated at t_F = rk F."""
    return evaluate(volume_polynomial(m, jobs=jobs), m.rank_of)

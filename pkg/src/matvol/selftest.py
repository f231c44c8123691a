"""Built-in invariant suite used by ``matvol selftest``."""

from __future__ import annotations

import contextlib
import random
import warnings
from dataclasses import dataclass
from importlib import resources

from . import combinat
from .catalog import catalog, worked_examples
from .charpoly import (
    char_poly,
    gamma,
    is_log_concave,
    maximal_chain_weight_sum,
    mu_vector,
    weisner_holds,
)
from .chow import ChainMonomial, intersection_number, shifted_rank_volume, volume_polynomial
from .genperm import (
    gp_volume_chain_formula,
    gp_volume_polytope_oracle,
    gp_volume_postnikov,
    minkowski_weights,
    normalize_z,
    permutohedron_z,
    postnikov_applicable,
    random_submodular,
)
from .matroid import Matroid, flat_lattice, uniform
from .serialize import parse_polynomial_text, read_sections
from .toppling import degree_via_toppling
from .valuation import check_valuation, hypersimplex_split, trivial_subdivision

GOLDEN_SHRVOL = {"U(3,4)": 16, "U(1,1)+U(2,3)": 15, "U(2,2)+U(2,3)": 112}


@dataclass
class CheckResult:
    name: str
    passed: bool
    detail: str = ""


def load_worked_polynomials():
    text = resources.files("matvol").joinpath("data/worked_examples.txt").read_text()
    return {name: parse_polynomial_text(lines) for name, lines in read_sections(text).items()}


def chain_monomials(m: Matroid):
    """Every chain of proper flats with every positive exponent vector of
    total degree rk - 1."""
    lat = flat_lattice(m)
    d = m.rank - 1
    if d == 0:
        return
    above = {0: lat.proper_flats}
    for f in lat.proper_flats:
        above[f] = [g for g in lat.proper_flats if g != f and combinat.is_subset(f, g)]

    def chains(prev, acc):
        if acc:
            yield acc
        if len(acc) < d:
            for g in above[prev]:
                yield from chains(g, acc + (g,))

    for chain in chains(0, ()):
        for exps in combinat.compositions(d, len(chain)):
            yield ChainMonomial(chain, exps)


@contextlib.contextmanager
def _corrupted_binomial():
    original = combinat.binom

    def bad(n, k):
        value = original(n, k)
        return value + 1 if value and k > 0 else value

    combinat.binom = bad
    try:
        yield
    finally:
        combinat.binom = original


def _charpoly_ok(m: Matroid) -> str | None:
    lat = flat_lattice(m)
    if sum(char_poly(m)) != 0:
        return "chi(1) != 0"
    if not weisner_holds(lat):
        return "Weisner identity"
    if maximal_chain_weight_sum(m) != 1:
        return "chain weight sum != 1"
    mus = mu_vector(m)
    for i in range(m.rank):
        g = gamma(m, i)
        if g != (-1) ** i * mus[i]:
            return f"gamma({i}) = {g}, mu = {mus[i]}"
    if not is_log_concave(mus):
        return "mu not log-concave"
    return None


def _checks(mats: dict[str, Matroid], seed: int):
    golden = load_worked_polynomials()
    worked = worked_examples()

    def golden_vp():
        bad = [k for k, m in worked.items() if volume_polynomial(m) != golden[k]]
        return not bad, ", ".join(bad)

    def golden_shrvol():
        bad = [k for k, m in worked.items() if shifted_rank_volume(m) != GOLDEN_SHRVOL[k]]
        return not bad, ", ".join(bad)

    def oracle_equivalence():
        count = 0
        for name, m in mats.items():
            if len(m.bases) > 40 or m.rank > 4:
                continue
            for mono in chain_monomials(m):
                count += 1
                a, b = intersection_number(m, mono), degree_via_toppling(m, mono)
                if a != b:
                    return False, f"{name} {mono}: closed form {a}, toppling {b}"
        return True, f"{count} monomials"

    def charpoly_suite():
        for name, m in mats.items():
            err = _charpoly_ok(m)
            if err:
                return False, f"{name}: {err}"
        return True, f"{len(mats)} matroids"

    def uniform_volume():
        for n in range(1, 6):
            for r in range(1, n + 1):
                if shifted_rank_volume(uniform(r, n)) != n ** (r - 1):
                    return False, f"U({r},{n})"
        return True, ""

    def genperm_agreement():
        rng = random.Random(seed)
        for n in (3, 4):
            for _ in range(10):
                z = random_submodular(n, rng)
                zn = normalize_z(n, z)
                a = gp_volume_chain_formula(n, zn)
                if a != gp_volume_polytope_oracle(n, zn):
                    return False, f"n={n}: chain formula vs polytope"
                y = minkowski_weights(n, z)
                if postnikov_applicable(y):
                    y = {s: v for s, v in y.items() if combinat.popcount(s) >= 2}
                    if gp_volume_postnikov(n, y) != a:
                        return False, f"n={n}: chain formula vs Postnikov"
        for n in range(3, 6):
            if gp_volume_chain_formula(n, permutohedron_z(n)) != n ** (n - 2):
                return False, f"permutohedron n={n}"
        return True, ""

    def valuation():
        subs = [hypersimplex_split()] + [trivial_subdivision(m) for m in mats.values() if m.rank <= 4]
        bad = [i for i, s in enumerate(subs) if not check_valuation(s).holds]
        return not bad, f"{len(subs)} subdivisions" if not bad else f"failing #{bad}"

    return [
        ("golden volume polynomials", golden_vp),
        ("golden shifted rank volumes", golden_shrvol),
        ("uniform shRVol = n^(r-1)", uniform_volume),
        ("toppling oracle = closed form", oracle_equivalence),
        ("characteristic polynomial suite", charpoly_suite),
        ("generalized permutohedra agreement", genperm_agreement),
        ("valuation identity", valuation),
    ]


def run_selftest(*, corrupt_binomial: bool = False, empty_catalog: bool = False, seed: int = 0):
    """Run every check; returns a list of :class:`CheckResult`."""
    mats = {} if empty_catalog else catalog(5, include_vamos=False)
    if empty_catalog:
        warnings.warn("empty catalog: catalog-driven checks pass vacuously", stacklevel=2)
    results = []
    ctx = _corrupted_binomial() if corrupt_binomial else contextlib.nullcontext()
    with ctx:
        for name, fn in _checks(mats, seed):
            try:
                ok, detail = fn()
            except Exception as exc:  # a crash counts as a failed check
                ok, detail = False, f"{type(exc).__name__}: {exc}"
            results.append(CheckResult(name, ok, detail))
    return results


def format_table(results) -> str:
    width = max(len(r.name) for r in results)
    lines = [f"{r.name:<{width}}  {'PASS' if r.passed else 'FAIL'}  {r.detail}".rstrip() for r in results]
    return "\n".join(lines)


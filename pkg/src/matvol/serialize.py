"""JSON and text formats for matroids, polynomials, submodular functions
and subdivisions.  Rationals are always written as ``"p/q"`` strings."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from itertools import combinations

from . import matroid as mt
from .chow import ChainMonomial, ChainPolynomial
from .combinat import elements_of, fraction_str, mask_of, to_fraction


class InputError(ValueError):
    """Malformed user input (bad JSON, missing keys, invalid values)."""


def load_json_arg(text: str):
    """Parse inline JSON, or read it from a file when ``text`` is a path."""
    stripped = text.lstrip()
    if not stripped.startswith(("{", "[")):
        try:
            with open(text) as fh:
                stripped = fh.read()
        except OSError as exc:
            raise InputError(f"cannot read {text!r}: {exc}") from None
    try:
        return json.loads(stripped)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON: {exc}") from None


# -- matroids -------------------------------------------------------------

def matroid_from_spec(spec) -> mt.Matroid:
    if not isinstance(spec, dict) or "type" not in spec:
        raise InputError("matroid spec must be an object with a 'type' key")
    kind = spec["type"]
    try:
        if kind == "uniform":
            return mt.uniform(int(spec["r"]), int(spec["n"]))
        if kind == "graphic":
            return mt.graphic(int(spec["vertices"]), [tuple(e) for e in spec["edges"]])
        if kind == "bases":
            return mt.from_bases(int(spec["n"]), [mask_of(b) for b in spec["bases"]])
        if kind == "direct_sum":
            parts = spec["parts"]
            if not parts:
                raise InputError("direct_sum needs at least one part")
            out = matroid_from_spec(parts[0])
            for p in parts[1:]:
                out = mt.direct_sum(out, matroid_from_spec(p))
            return out
        if kind == "named":
            from .catalog import named_matroid

            return named_matroid(spec["name"])
    except KeyError as exc:
        raise InputError(f"matroid spec of type {kind!r} is missing {exc}") from None
    except mt.MatroidError as exc:
        raise InputError(str(exc)) from None
    except (TypeError, ValueError) as exc:
        raise InputError(f"bad matroid spec: {exc}") from None
    raise InputError(f"unknown matroid type {kind!r}")


def matroid_to_spec(m: mt.Matroid) -> dict:
    return {"type": "bases", "n": m.n, "bases": sorted(elements_of(b) for b in m.bases)}


def subset_json(mask: int) -> list[int]:
    return elements_of(mask)


# -- polynomials ----------------------------------------------------------

def polynomial_to_json(poly: ChainPolynomial) -> list[dict]:
    return [
        {
            "chain": [elements_of(f) for f in mono.chain],
            "exps": list(mono.exps),
            "coeff": fraction_str(c),
        }
        for mono, c in poly.sorted_terms()
    ]


def polynomial_from_json(data) -> ChainPolynomial:
    poly = ChainPolynomial()
    try:
        for term in data:
            mono = ChainMonomial.of(zip((mask_of(f) for f in term["chain"]), term["exps"]))
            poly.add(mono, to_fraction(term["coeff"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad polynomial JSON: {exc}") from None
    return poly


_TERM = re.compile(r"^([+-]\d+(?:/\d+)?)\s+(\S+)$")
_FACTOR = re.compile(r"^t\{([\d,]*)\}(?:\^(\d+))?$")


def parse_polynomial_text(lines) -> ChainPolynomial:
    """Read ``+c t{a,b}^e*t{c}`` lines (one term per line)."""
    poly = ChainPolynomial()
    for raw in lines:
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        match = _TERM.match(line)
        if not match:
            raise InputError(f"cannot parse term {line!r}")
        pairs = []
        for factor in match.group(2).split("*"):
            fm = _FACTOR.match(factor)
            if not fm:
                raise InputError(f"cannot parse factor {factor!r}")
            elems = [int(x) for x in fm.group(1).split(",") if x]
            pairs.append((mask_of(elems), int(fm.group(2) or 1)))
        poly.add(ChainMonomial.of(pairs), Fraction(match.group(1)))
    return poly


def read_sections(text: str) -> dict[str, list[str]]:
    """Split ``[name]`` headed sections of a text file."""
    sections: dict[str, list[str]] = {}
    current = None
    for line in text.splitlines():
        s = line.strip()
        if s.startswith("[") and s.endswith("]"):
            current = s[1:-1]
            sections[current] = []
        elif current is not None:
            sections[current].append(line)
    return sections


# -- submodular functions -------------------------------------------------

def _parse_subset_key(key: str, n: int) -> int:
    try:
        elems = json.loads(key)
    except json.JSONDecodeError:
        raise InputError(f"subset key {key!r} is not a JSON array") from None
    if not isinstance(elems, list) or not all(isinstance(e, int) for e in elems):
        raise InputError(f"subset key {key!r} is not a list of integers")
    if any(not 1 <= e <= n for e in elems):
        raise InputError(f"subset key {key!r} has labels outside 1..{n}")
    return mask_of(e - 1 for e in elems)


def z_from_json(data) -> tuple[int, dict[int, Fraction]]:
    """Read ``{"n": 3, "z": {"[1]": "1", ...}, "preset": ...}``.

    Subset keys use labels ``1..n``.  The empty set is 0; entries missing
    from ``z`` are taken from the preset, if one is named.
    """
    from .genperm import permutohedron_z

    if not isinstance(data, dict) or "n" not in data:
        raise InputError("submodular function JSON needs an 'n' key")
    n = data["n"]
    if not isinstance(n, int) or n < 1:
        raise InputError("'n' must be a positive integer")
    preset = data.get("preset")
    if preset is None:
        values: dict[int, Fraction] = {0: Fraction(0)}
    elif preset == "permutohedron":
        values = permutohedron_z(n)
    else:
        raise InputError(f"unknown preset {preset!r}")
    for key, val in (data.get("z") or {}).items():
        try:
            values[_parse_subset_key(key, n)] = to_fraction(val)
        except (TypeError, ValueError, ZeroDivisionError) as exc:
            raise InputError(f"bad value for {key}: {exc}") from None
    missing = [s for s in range(1 << n) if s not in values]
    if missing:
        raise InputError(f"z is missing {len(missing)} subsets, e.g. {[e + 1 for e in elements_of(missing[0])]}")
    if values[0] != 0:
        raise InputError("z of the empty set must be 0")
    return n, values


def z_to_json(n: int, z: dict[int, Fraction]) -> dict:
    return {
        "n": n,
        "z": {
            json.dumps([e + 1 for e in elements_of(s)], separators=(",", ":")): fraction_str(z[s])
            for k in range(1, n + 1)
            for s in (mask_of(c) for c in combinations(range(n), k))
        },
    }


# -- subdivisions ---------------------------------------------------------

def subdivision_from_json(data):
    from .valuation import InteriorFace, Subdivision

    if not isinstance(data, dict):
        raise InputError("subdivision JSON must be an object")
    try:
        parent = matroid_from_spec(data["parent"])
        cells = [matroid_from_spec(c) for c in data["cells"]]
        faces = []
        for item in data.get("interior_faces", []):
            dim = item.get("dim")
            faces.append(InteriorFace(matroid_from_spec(item["matroid"]), None if dim is None else int(dim)))
    except KeyError as exc:
        raise InputError(f"subdivision JSON is missing {exc}") from None
    return Subdivision(parent, cells, faces)

import json
import subprocess
import sys

import pytest

from matvol.chow import volume_polynomial
from matvol.cli import main
from matvol.matroid import uniform
from matvol.serialize import polynomial_from_json

U34 = '{"type":"uniform","r":3,"n":4}'
SPLIT = {
    "parent": {"type": "uniform", "r": 2, "n": 4},
    "cells": [
        {"type": "bases", "n": 4, "bases": [[0, 1], [0, 2], [0, 3], [1, 2], [1, 3]]},
        {"type": "bases", "n": 4, "bases": [[0, 2], [0, 3], [1, 2], [1, 3], [2, 3]]},
    ],
    "interior_faces": [
        {"matroid": {"type": "direct_sum", "parts": [
            {"type": "uniform", "r": 1, "n": 2}, {"type": "uniform", "r": 1, "n": 2}]}, "dim": 2}
    ],
}


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_intersect_example(capsys):
    code, out, _ = run(capsys, "intersect", "--matroid", U34, "--chain", "[[0]]", "--exps", "[2]")
    assert code == 0 and out.strip() == "-2"


def test_intersect_json(capsys):
    code, out, _ = run(capsys, "intersect", "--matroid", U34, "--chain", "[[0]]", "--exps", "[2]",
                       "--format", "json")
    assert json.loads(out) == {"degree": "-2/1"}


def test_intersect_non_chain_warns(capsys):
    code, out, err = run(capsys, "intersect", "--matroid", U34, "--chain", "[[0],[1]]", "--exps", "[1,1]")
    assert code == 0 and out.strip() == "0" and "not a chain" in err


def test_shrvol_example(capsys):
    assert run(capsys, "shrvol", "--matroid", U34)[:2] == (0, "16\n")


def test_gp_volume_preset(capsys):
    assert run(capsys, "gp-volume", "--preset", "permutohedron", "--n", "4")[:2] == (0, "16\n")


def test_gp_volume_checks(capsys):
    z = {"n": 3, "z": {"[1]": "1", "[2]": "1", "[3]": "1", "[1,2]": "1", "[1,3]": "1", "[2,3]": "1", "[1,2,3]": "0"}}
    code, out, _ = run(capsys, "gp-volume", "--z", json.dumps(z), "--check", "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["volume"] == "3/1"
    assert data["checks"] == {"polytope": "3/1", "postnikov": "3/1"}


def test_gp_volume_rejects_supermodular(capsys):
    z = {"n": 2, "z": {"[1]": "0", "[2]": "0", "[1,2]": "1"}}
    code, _, err = run(capsys, "gp-volume", "--z", json.dumps(z))
    assert code == 2 and "not submodular" in err


def test_gp_volume_missing_subsets(capsys):
    code, _, err = run(capsys, "gp-volume", "--z", '{"n": 3, "z": {"[1]": "1"}}')
    assert code == 2 and "missing" in err


def test_gp_volume_preset_with_override(capsys):
    # one entry overridden on top of the preset; still submodular
    z = {"n": 3, "preset": "permutohedron", "z": {"[1,2]": "1/2"}}
    code, out, _ = run(capsys, "gp-volume", "--z", json.dumps(z), "--check")
    lines = out.split()
    assert code == 0 and lines[0] == lines[2]


def test_flats_text_and_json(capsys):
    code, out, _ = run(capsys, "flats", "--matroid", U34)
    assert code == 0 and out.splitlines()[1] == "rank 1: {0} {1} {2} {3}"
    code, out, _ = run(capsys, "flats", "--matroid", U34, "--format", "json")
    data = json.loads(out)
    assert data["rank"] == 3 and len(data["flats"][2]) == 6


def test_charpoly(capsys):
    code, out, _ = run(capsys, "charpoly", "--matroid", U34, "--format", "json")
    assert json.loads(out) == {"char_poly": [-3, 6, -4, 1], "reduced_char_poly": [3, -3, 1], "mu": [1, 3, 3]}
    code, out, _ = run(capsys, "charpoly", "--matroid", U34)
    assert "t^3 - 4t^2 + 6t - 3" in out


def test_volume_poly_round_trip_and_determinism(capsys):
    _, first, _ = run(capsys, "volume-poly", "--matroid", U34, "--format", "json")
    _, second, _ = run(capsys, "volume-poly", "--matroid", U34, "--format", "json", "--jobs", "2")
    assert first == second
    assert polynomial_from_json(json.loads(first)) == volume_polynomial(uniform(3, 4))


def test_volume_poly_text(capsys):
    _, out, _ = run(capsys, "volume-poly", "--matroid", U34)
    lines = out.splitlines()
    assert len(lines) == 22 and lines[0] == "-2 t{0}^2"


def test_valuation_check(capsys):
    code, out, _ = run(capsys, "valuation-check", "--subdivision", json.dumps(SPLIT), "--format", "json")
    data = json.loads(out)
    assert code == 0
    assert data["vp_holds"] and data["shrvol_holds"] and data["vp_difference"] == []


def test_valuation_bad_subdivision(capsys):
    bad = dict(SPLIT, cells=SPLIT["cells"][:1])
    code, _, err = run(capsys, "valuation-check", "--subdivision", json.dumps(bad))
    assert code == 2 and "cover" in err


def test_input_from_file(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(U34)
    assert run(capsys, "shrvol", "--matroid", str(path))[:2] == (0, "16\n")


@pytest.mark.parametrize("spec,needle", [
    ("{bad", "malformed JSON"),
    ('{"type":"bases","n":3,"bases":[[0,1]]}', "loop"),
    ('{"type":"uniform","r":5,"n":3}', "1 <= r <= n"),
    ('{"type":"spiral"}', "unknown matroid type"),
    ('{"type":"uniform","r":2}', "missing"),
    ('{"type":"graphic","vertices":2,"edges":[[0,0]]}', "self-loop"),
    ("/nonexistent/file.json", "cannot read"),
])
def test_input_errors(capsys, spec, needle):
    code, _, err = run(capsys, "shrvol", "--matroid", spec)
    assert code == 2 and needle in err


def test_intersect_bad_degree(capsys):
    code, _, err = run(capsys, "intersect", "--matroid", U34, "--chain", "[[0]]", "--exps", "[1]")
    assert code == 2 and "degree" in err


def test_unknown_subcommand(capsys):
    code, _, err = run(capsys, "frobnicate")
    assert code == 2 and "invalid choice" in err


def test_bad_jobs(capsys):
    assert run(capsys, "shrvol", "--matroid", U34, "--jobs", "0")[0] == 2


def test_named_matroid(capsys):
    assert run(capsys, "shrvol", "--matroid", '{"type":"named","name":"fano"}')[:2] == (0, "42\n")


def test_selftest_passes(capsys):
    code, out, _ = run(capsys, "selftest")
    assert code == 0 and "FAIL" not in out


def test_selftest_corrupted_binomial(capsys):
    code, out, err = run(capsys, "selftest", "--corrupt-binomial")
    assert code == 3
    assert "toppling oracle = closed form" in err and "FAIL" in out


def test_selftest_empty_catalog(capsys):
    code, out, err = run(capsys, "selftest", "--empty-catalog")
    assert code == 0 and "vacuous" in err


def test_console_script_entry_point():
    proc = subprocess.run(
        [sys.executable, "-m", "matvol.cli", "shrvol", "--matroid", U34],
        capture_output=True, text=True, check=False,
    )
    assert proc.returncode == 0 and proc.stdout == "16\n"

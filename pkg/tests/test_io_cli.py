import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import families
from rotund import __version__
from rotund._rng import stream
from rotund.acceptance import random_martingale
from rotund.cli import main
from rotund.io import (InputError, digest, family_from_json, family_to_json,
                       martingale_from_json, martingale_to_json, measure_from_json,
                       vector_from_json, vector_to_json)

DATA = Path(__file__).resolve().parent.parent / "demos" / "data"


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out else None), err


def write(tmp_path, name, doc):
    p = tmp_path / name
    p.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return p


# -- serialization -----------------------------------------------------------

@given(families())
def test_family_roundtrip(fam):
    assert family_from_json(family_to_json(fam)) == fam


def test_vector_and_measure_formats():
    v = vector_from_json({"ground_size": 3, "values": ["1/2", 2, "-3/4"]})
    assert list(v) == [Fraction(1, 2), 2, Fraction(-3, 4)]
    assert vector_to_json(v)["values"] == ["1/2", "2/1", "-3/4"]
    mu = measure_from_json({"ground_size": 2, "weights": ["1/3", "2/3"]})
    assert mu.is_probability
    with pytest.raises(InputError):
        vector_from_json({"ground_size": 2, "values": ["1"]})
    with pytest.raises(InputError):
        measure_from_json({"weights": ["1"]})


@given(st.integers(0, 10_000))
def test_martingale_roundtrip(seed):
    m = random_martingale(stream(seed, "io"))
    back = martingale_from_json(json.loads(json.dumps(martingale_to_json(m))))
    assert back.scale == m.scale
    assert all((a == b).all() for a, b in zip(back.values, m.values))


def test_martingale_block_order_is_free():
    doc = {"atoms": ["1/2", "1/2"], "levels": [[[0, 1]], [[1], [0]]],
           "values": {"0": {"0": {"ground_size": 1, "values": ["0"]}},
                      "1": {"0": {"ground_size": 1, "values": ["-1"]},
                            "1": {"ground_size": 1, "values": ["1"]}}}}
    m = martingale_from_json(doc)
    assert [list(r) for r in m.atom_values(1)] == [[1], [-1]]


# -- CLI ---------------------------------------------------------------------

def test_indices_triangle(capsys):
    code, doc, _ = run(capsys, "indices", "--family", DATA / "triangle.json")
    assert code == 0
    assert doc["result"]["l"] == 2
    assert doc["result"]["win"] == "2/3" and doc["result"]["win_tilde"] == "1/1"
    assert doc["version"] == __version__
    assert doc["inputs"]["family"] == digest(DATA / "triangle.json")


def test_bound_disjoint_m11_q10(capsys):
    code, doc, _ = run(capsys, "martingale", "bound", "--families",
                       DATA / "disjoint_m11_q10.json")
    assert code == 0
    assert doc["result"]["bound"] == "2/1" and doc["result"]["verified"] is True


def test_duality(capsys):
    code, doc, _ = run(capsys, "duality", "--family", DATA / "triangle.json", "--max-len", 6)
    assert code == 0 and doc["result"]["gap"] == "0/1"


def test_build_then_check(capsys, tmp_path):
    code, doc, _ = run(capsys, "martingale", "build", "--families",
                       DATA / "disjoint_m3_q2.json")
    assert code == 0 and doc["result"]["certificate"]["ok"]
    p = write(tmp_path, "m.json", doc["result"]["martingale"])
    code, doc, _ = run(capsys, "martingale", "check", "--martingale", p, "--norm", "triple",
                       "--measure", DATA / "uniform3.json")
    assert code == 0 and doc["result"]["validation"]["ok"]


def test_build_lemma_with_g(capsys):
    code, doc, _ = run(capsys, "martingale", "build", "--family", DATA / "common_point_m4.json",
                       "--g", DATA / "g_half.json")
    assert code == 0
    assert doc["result"]["certificate"]["bound"] == "10/3"


def test_check_detects_law_violation(capsys, tmp_path):
    m = martingale_to_json(random_martingale(stream(1, "cli")))
    m["values"]["1"]["0"]["values"][0] = "7/1"
    p = write(tmp_path, "bad.json", m)
    code, doc, err = run(capsys, "martingale", "check", "--martingale", p)
    assert code == 1 and "martingale law" in err
    assert doc["invariant"] == "martingale law"


def test_modulus_and_pur(capsys):
    code, doc, _ = run(capsys, "modulus", "--norm", "sup", "--direction", DATA / "axis2.json",
                       "--epsilon", 1.0, "--starts", 16)
    assert code == 0 and doc["result"]["verdict"] == "direction-degenerate"
    code, doc, _ = run(capsys, "pur-check", "--measure", DATA / "skewed3.json", "--trials", 50)
    assert code == 0 and doc["result"]["violations"] == 0


@pytest.mark.parametrize("body,msg", [
    ('{"ground_size": 3, "sets": [[0, 1]', "line 1, column"),
    ('{"ground_size": 3, "sets": [[0], []]}', "empty set in family"),
    ('{"ground_size": 3}', "'sets'"),
])
def test_input_errors_exit_2(capsys, tmp_path, body, msg):
    p = write(tmp_path, "f.json", body)
    code, _, err = run(capsys, "indices", "--family", p)
    assert code == 2 and msg in err


def test_missing_measure_exit_2(capsys):
    code, _, err = run(capsys, "modulus", "--norm", "triple", "--direction",
                       DATA / "direction4.json", "--epsilon", 0.5)
    assert code == 2 and "--measure" in err


def test_output_file_and_determinism(capsys, tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert main(["--output", str(out), "modulus", "--norm", "triple", "--measure",
                     str(DATA / "uniform4.json"), "--direction", str(DATA / "direction4.json"),
                     "--epsilon", "0.5", "--seed", "3", "--starts", "64"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_help_lists_flags():
    out = subprocess.run([sys.executable, "-m", "rotund.cli", "modulus", "--help"],
                         capture_output=True, text=True, check=True).stdout
    for flag in ("--norm", "--measure", "--direction", "--epsilon", "--seed"):
        assert flag in out

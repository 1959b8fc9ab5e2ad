import json
import subprocess
import sys
from fractions import Fraction
from pathlib import Path

import pytest
from hypothesis import given
from hypothesis import strategies as st

from wittsuper import cli
from wittsuper.geometry import ShiftedCone, SupportSet
from wittsuper.serialize import (
    SCHEMA,
    dump_report,
    parse_window,
    support_from_json,
    support_to_json,
)

ROOT = Path(__file__).resolve().parent.parent

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)


@st.composite
def supports(draw):
    m = draw(st.integers(1, 3))
    base = tuple(draw(st.lists(fractions, min_size=m, max_size=m)))
    # generators ±e_i on distinct coordinates stay independent
    kinds = draw(st.lists(st.sampled_from(["none", "free", "plus", "minus"]), min_size=m, max_size=m))
    unit = lambda i, c: tuple(c if k == i else 0 for k in range(m))
    free = tuple(unit(i, 1) for i, k in enumerate(kinds) if k == "free")
    plus = tuple(unit(i, 1 if k == "plus" else -1) for i, k in enumerate(kinds) if k in ("plus", "minus"))
    return SupportSet((ShiftedCone(base, free, plus),))


@given(supports())
def test_support_round_trip(S):
    text = json.dumps(support_to_json(S))
    back = support_from_json(json.loads(text))
    assert support_to_json(back) == support_to_json(S)


def test_support_errors_name_the_field():
    with pytest.raises(ValueError, match=r"support\[0\]\.base"):
        support_from_json([{"free": []}])
    with pytest.raises(ValueError, match=r"support\[0\]\.free\[0\]"):
        support_from_json([{"base": ["0", "0"], "free": [["1"]]}])


def test_parse_window():
    assert parse_window("2", 2) == ((-2, 2), (-2, 2))
    assert parse_window("-1:1,0:2", 2) == ((-1, 1), (0, 2))
    with pytest.raises(ValueError):
        parse_window("0:1", 2)
    with pytest.raises(ValueError):
        parse_window("2:1", 1)


def test_report_is_deterministic_and_versioned():
    body = {"b": Fraction(1, 3), "a": [float("inf"), {"z": 1, "y": 2}]}
    text = dump_report("verify", {"m": 1}, body, True)
    assert text == dump_report("verify", {"m": 1}, dict(reversed(list(body.items()))), True)
    doc = json.loads(text)
    assert list(doc)[0] == "schema" and doc["schema"] == SCHEMA
    assert doc["result"]["b"] == "1/3" and doc["result"]["a"][0] == "inf"


def run(*args):
    return subprocess.run([sys.executable, "-m", "wittsuper", *args], cwd=ROOT, capture_output=True, text=True)


def test_cli_examples():
    proc = run("verify", "--suite", "jacobi", "--m", "1", "--n", "1", "--deg", "2")
    assert proc.returncode == 0 and "jacobi: pass" in proc.stdout
    proc = run("shadow", "--support", "fixtures/zline.cone")
    assert proc.returncode == 0 and "infinite: {-e1, e1}" in proc.stdout
    proc = run("classify", "--P", "A", "--M", "trivial")
    assert proc.returncode == 0 and "not simple" in proc.stdout and "2d" in proc.stdout


def test_cli_usage_errors():
    assert run("verify").returncode == 2
    assert run("verify", "--suite", "nope").returncode == 2
    assert run("classify", "--P", "X", "--M", "trivial").returncode == 2
    assert run("shadow", "--support", "fixtures/missing.cone").returncode == 2
    assert run("bracket", "--m", "-1").returncode == 2


def test_cli_degree_cap_env(monkeypatch):
    proc = subprocess.run(
        [sys.executable, "-m", "wittsuper", "verify", "--suite", "omega"],
        cwd=ROOT,
        capture_output=True,
        text=True,
        env={**__import__("os").environ, "WITTSUPER_MAX_DEGREE": "1"},
    )
    assert proc.returncode == 2 and "DegreeCapExceeded" in proc.stderr


def test_cli_false_result_exits_1(monkeypatch, capsys):
    monkeypatch.setitem(cli.HANDLERS, "bracket", lambda a: (False, {}, {"basis_size": 0, "nonzero": 0}))
    assert cli.main(["bracket"]) == 1
    assert "FAIL" in capsys.readouterr().out


def test_cli_parallel_jobs_match_serial(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--suite", "jacobi,pi", "--m", "1", "--n", "1", "--deg", "2"]
    assert run(*args, "--out", str(a)).returncode == 0
    assert run(*args, "--jobs", "2", "--out", str(b)).returncode == 0
    assert a.read_bytes() == b.read_bytes()

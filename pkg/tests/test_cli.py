"""CLI behaviour and golden outputs.

Regenerate the golden files after an intentional output change with
``python3 tests/test_cli.py --regen``.
"""

import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from ultraforms.cli import run

GOLDEN = Path(__file__).parent / "golden"

CASES = {
    "isotropy_anisotropic": ["isotropy", "--p", "3", "--n", "1", "1,1,t1,t1"],
    "bounds_rank_one": ["bounds", "--n", "1", "--d", "3"],
    "bounds_rank_one_text": ["bounds", "--n", "1", "--d", "3", "--format", "text"],
    "decompose_half_basis": ["decompose", "--p", "3", "--n", "1", "--l", "2", "--basis", "t1^2", "t1"],
    "symbol_2t1_2t2": ["symbol", "--p", "3", "--n", "2", "(2*t1,2*t2)"],
    "split_2_t1": ["split", "--p", "3", "--n", "1", "(2,t1)"],
    "index_biquaternion": ["index", "--p", "3", "--n", "2", "(2,t1) (2,t2)"],
}


def invoke(argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(argv, out, err)
    return code, out.getvalue(), err.getvalue()


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    code, out, _ = invoke(CASES[name])
    assert code == 0
    assert out == (GOLDEN / f"{name}.out").read_text(encoding="utf-8")


@pytest.mark.parametrize("name", sorted(CASES))
def test_repeatable(name):
    assert invoke(CASES[name])[1] == invoke(CASES[name])[1]


def test_separate_processes_byte_identical():
    argv = [sys.executable, "-m", "ultraforms", *CASES["symbol_2t1_2t2"]]
    a = subprocess.run(argv, capture_output=True, check=True).stdout
    b = subprocess.run(argv, capture_output=True, check=True).stdout
    assert a == b == (GOLDEN / "symbol_2t1_2t2.out").read_bytes()


def test_isotropy_report():
    report = json.loads(invoke(CASES["isotropy_anisotropic"])[1])
    assert report["schema"] == 1 and report["verified"]
    assert report["result"]["decision"] == "anisotropic"
    assert report["result"]["oracles"] == {"residue_blocks": False, "springer": False}


def test_decompose_report():
    report = json.loads(invoke(CASES["decompose_half_basis"])[1])
    assert report["result"]["c"] == ["a1"] and report["result"]["mu"] == [[1]]
    assert report["checks"] == {"certificate": True}


def test_bounds_text():
    assert "Br_l dim(k) ≤ 4" in invoke(CASES["bounds_rank_one_text"])[1]


def test_timing_is_optional():
    plain = json.loads(invoke(CASES["split_2_t1"])[1])
    timed = json.loads(invoke(CASES["split_2_t1"] + ["--timing"])[1])
    assert "timing" not in plain and "timing" in timed
    del timed["timing"]
    assert plain == timed


@pytest.mark.parametrize(
    "argv,fragment",
    [
        (["isotropy", "--p", "3", "--n", "1", "1,t3"], "position 2"),
        (["isotropy", "--p", "3", "1,3*t1"], "zero element"),
        (["isotropy", "--p", "4", "1"], "odd prime"),
        (["decompose", "--p", "3", "--l", "3", "t1"], "different from p"),
        (["decompose", "--p", "3", "--n", "2", "--basis", "t1,t1^2", "t1"], "dependent"),
        (["symbol", "--p", "5", "--l", "3", "(t1,2)"], "root"),
        (["symbol", "--p", "3", "(t1,2) junk"], "symbol"),
        (["split", "--p", "3", "(t1,2) (2,t1)"], "exactly one"),
        (["bounds", "--n", "1", "--us", "2", "--s", "1", "--t", "1"], "Abhyankar"),
        (["bounds", "--n", "1", "--s", "1"], "together"),
        (["index", "--p", "3"], "--survey"),
        (["frobnicate"], ""),
    ],
)
def test_input_errors_exit_2(argv, fragment):
    code, out, err = invoke(argv)
    assert code == 2 and out == ""
    assert fragment in err


def test_survey_refusal(monkeypatch):
    monkeypatch.setenv("ULTRAFORMS_MAX_ENUM", "50")
    code, out, err = invoke(["survey", "--p", "3", "--n", "1"])
    assert code == 2 and "limit" in err


def test_survey_with_figure(tmp_path):
    code, out, _ = invoke(["survey", "--p", "3", "--n", "1", "--figures", str(tmp_path)])
    report = json.loads(out)
    assert code == 0 and report["result"]["max_anisotropic_dim"] == 4
    assert Path(report["result"]["figure"]).stat().st_size > 0


def test_certificate_failure_exit_3(monkeypatch):
    import ultraforms.cli as cli

    monkeypatch.setattr(cli, "verify_decomposition", lambda *a, **k: False)
    code, out, err = invoke(CASES["decompose_half_basis"])
    assert code == 3 and json.loads(out)["verified"] is False and "certificate" in err


def test_bounds_infinity_serialised():
    report = json.loads(invoke(["bounds", "--n", "2", "--us", "inf"])[1])
    assert {b["value"] for b in report["result"]["bounds"]} == {"inf"}


def regenerate():
    GOLDEN.mkdir(exist_ok=True)
    for name, argv in CASES.items():
        code, out, err = invoke(argv)
        assert code == 0, err
        (GOLDEN / f"{name}.out").write_text(out, encoding="utf-8")


def test_index_figure(tmp_path):
    from ultraforms.plotting import index_figure

    report = {"p": 3, "n": 2, "max_bound": 4, "index_histogram": {"1": 5, "2": 9}}
    path = index_figure(report, tmp_path / "sub" / "idx.png")
    assert path.read_bytes()[:8] == b"\x89PNG\r\n\x1a\n"


if __name__ == "__main__" and "--regen" in sys.argv:
    regenerate()

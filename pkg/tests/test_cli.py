"""Command-line behavior: exit codes, flags, error paths, golden replays."""

import importlib.util
import json
import pathlib
import shutil
import subprocess
import sys

import pytest

from rht.cli import main

TESTS_DIR = pathlib.Path(__file__).resolve().parent
DATA_DIR = TESTS_DIR / "data"
GOLDEN_DIR = TESTS_DIR / "golden"

_spec = importlib.util.spec_from_file_location("golden_regen", GOLDEN_DIR / "regen.py")
golden_regen = importlib.util.module_from_spec(_spec)
_spec.loader.exec_module(golden_regen)


def corpus(filename: str) -> str:
    return golden_regen.corpus_path(filename)


# ----------------------------------------------------------------- goldens


@pytest.mark.parametrize(
    "filename,argv,expected_exit",
    golden_regen.build_cases(),
    ids=lambda v: v if isinstance(v, str) and v.endswith(".json") else None,
)
def test_golden_byte_for_byte(filename, argv, expected_exit):
    # the stored file came from an earlier process, so byte equality here
    # is also a cross-run determinism check
    proc = subprocess.run(
        [sys.executable, "-m", "rht", *argv], capture_output=True, check=False
    )
    assert proc.returncode == expected_exit, proc.stderr.decode()
    assert proc.stdout == (GOLDEN_DIR / filename).read_bytes()


def test_console_script_is_installed():
    exe = shutil.which("rht")
    assert exe, "console script missing"
    proc = subprocess.run([exe, "--help"], capture_output=True, check=False)
    assert proc.returncode == 0
    assert b"weights" in proc.stdout


# ------------------------------------------------------------- check/weights


def test_check_valid_presentation(capsys):
    assert main(["check", corpus("s2.json")]) == 0
    assert "s2: valid" in capsys.readouterr().out


def test_check_reports_validation_failures(capsys):
    code = main(["check", str(DATA_DIR / "degree-one-generator.json")])
    out = capsys.readouterr().out
    assert code == 1
    assert "INVALID" in out
    assert "degree" in out


def test_missing_file_is_an_input_error(capsys):
    assert main(["check", str(DATA_DIR / "no-such-file.json")]) == 2
    assert capsys.readouterr().err.strip()


def test_malformed_json_is_an_input_error(tmp_path, capsys):
    bad = tmp_path / "broken.json"
    bad.write_text("{\n")
    assert main(["weights", str(bad)]) == 2
    assert "error" in capsys.readouterr().err


def test_weights_auto_text_output(capsys):
    assert main(["weights", corpus("s2.json")]) == 0
    assert capsys.readouterr().out.strip() == "feasible: x:1 y:2"


def test_weights_infeasible_exits_one_with_witness(capsys):
    code = main(["weights", corpus("infeasible-synthetic.json")])
    out = capsys.readouterr().out
    assert code == 1
    assert "infeasible" in out
    assert "d(q): a^3" in out


def test_weights_from_assignment_file(capsys):
    code = main(
        [
            "weights",
            corpus("s2xs3.json"),
            "--weights",
            str(DATA_DIR / "s2xs3-stage-weights.json"),
            "--json",
        ]
    )
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc == {"feasible": True, "weights": {"u": 3, "x": 2, "y": 4}, "violations": []}


def test_weights_from_report_file(capsys):
    # a previously written JSON report round-trips as an input assignment
    code = main(
        [
            "cohomology",
            corpus("s2xs3.json"),
            "--weights",
            str(GOLDEN_DIR / "weights-s2xs3.json"),
            "--json",
        ]
    )
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["weights"]["assignment"] == {"u": 1, "x": 1, "y": 2}


def test_invalid_weight_file_rejected(tmp_path, capsys):
    f = tmp_path / "w.json"
    f.write_text('{"x": 1, "y": 3}\n')
    code = main(["weights", corpus("s2.json"), "--weights", str(f)])
    out = capsys.readouterr().out
    assert code == 1
    assert "invalid" in out
    assert "d(y)" in out


# --------------------------------------------------------------- cohomology


def test_cohomology_default_range_is_formal_dimension_plus_two(capsys):
    assert main(["cohomology", corpus("s2.json"), "--json"]) == 0
    doc = json.loads(capsys.readouterr().out)
    assert doc["certified_through"] == 4
    assert doc["betti"] == [1, 0, 1, 0, 0]


def test_cohomology_max_degree_cap(capsys):
    assert main(["cohomology", corpus("s2.json"), "--max-degree", "5", "--json"]) == 0
    capsys.readouterr()
    assert main(["cohomology", corpus("s2.json"), "--max-degree", "6", "--json"]) == 2
    assert "certified" in capsys.readouterr().err


def test_cohomology_without_weights_still_reports_betti(capsys):
    code = main(["cohomology", corpus("infeasible-synthetic.json"), "--json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["weights"] is None
    assert doc["action"] is None
    assert doc["betti"] == [1, 0, 1, 1, 0, 2, 0, 0]


# ------------------------------------------------------------------- family


def test_family_eval_away_from_zero_is_invertible(capsys):
    code = main(["family", corpus("s2xs3.json"), "--eval", "2", "--json"])
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    assert doc["invertible"] is True
    assert doc["images"]["y"] == "4*y"


def test_family_eval_at_zero_reports_but_succeeds(capsys):
    code = main(["family", corpus("s2xs3.json"), "--eval", "0"])
    out = capsys.readouterr().out
    assert code == 0
    assert "NOT invertible" in out


def test_family_failing_verification_exits_one(capsys):
    code = main(
        [
            "family",
            corpus("s2.json"),
            "--family",
            str(DATA_DIR / "s2-bad-family.json"),
        ]
    )
    out = capsys.readouterr().out
    assert code == 1
    assert "FAILS" in out
    assert "chain" in out


def test_family_conjugation_changes_the_images(capsys):
    assert main(["family", corpus("s2xs3.json"), "--json"]) == 0
    plain = json.loads(capsys.readouterr().out)
    code = main(
        [
            "family",
            corpus("s2xs3.json"),
            "--conjugate-by",
            corpus("s2xs3-shear-automorphism.json"),
            "--json",
        ]
    )
    conj = json.loads(capsys.readouterr().out)
    assert code == 0
    assert conj["verified"] is True
    assert conj["images"] != plain["images"]


# ---------------------------------------------------------------------- act


def test_act_dual_is_the_transpose(capsys):
    fam = corpus("s2xs3-conjugated-family.json")
    assert main(["act", corpus("s2xs3.json"), "--family", fam, "--json"]) == 0
    co = json.loads(capsys.readouterr().out)
    assert (
        main(["act", corpus("s2xs3.json"), "--family", fam, "--dual", "--json"]) == 0
    )
    ho = json.loads(capsys.readouterr().out)
    assert ho["variance"] == "homology"
    for deg, rep in co["degrees"].items():
        m = rep["matrix"]
        expected = [list(col) for col in zip(*m)] if m else []
        assert ho["degrees"][deg]["matrix"] == expected


def test_act_needs_feasible_weights(capsys):
    assert main(["act", corpus("infeasible-synthetic.json"), "--json"]) == 1
    assert capsys.readouterr().err.strip()


# ------------------------------------------------------------- formal-model


def test_formal_model_deeper_truncation_adds_the_killer(capsys):
    code = main(
        ["formal-model", corpus("h-cp2.json"), "--max-degree", "7", "--json"]
    )
    doc = json.loads(capsys.readouterr().out)
    assert code == 0
    names = [g["name"] for g in doc["model"]["generators"]]
    assert names == ["x", "z5_0"]
    assert doc["stages"] == {"x": 0, "z5_0": 1}
    assert doc["weights"] == {"x": 2, "z5_0": 6}


def test_formal_model_rejects_a_presentation_file(capsys):
    assert main(["formal-model", corpus("s2.json"), "--json"]) == 2
    assert "error" in capsys.readouterr().err


# ------------------------------------------------------------ growth / flex


def test_growth_text_output(capsys):
    assert main(["growth", corpus("s2xs3.json")]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "r = 3/2"
    assert lines[1] == "dil = 2/3"
    assert lines[2].startswith("note: conditional")


def test_flex_text_output(capsys):
    assert main(["flex", corpus("s2xs3.json")]) == 0
    assert (
        capsys.readouterr().out.strip()
        == "s2xs3: top-degree action t^2 in degree 5"
    )


def test_growth_needs_a_formal_dimension(capsys):
    assert main(["growth", corpus("infeasible-synthetic.json")]) == 1
    assert capsys.readouterr().err.strip()


# ------------------------------------------------------------------ plumbing


def test_output_flag_writes_the_report_file(tmp_path, capsys):
    target = tmp_path / "report.json"
    code = main(["weights", corpus("s2.json"), "--json", "--output", str(target)])
    assert code == 0
    assert capsys.readouterr().out == ""
    assert target.read_bytes() == (GOLDEN_DIR / "weights-s2.json").read_bytes()


def test_no_subcommand_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 2


def test_unknown_subcommand_is_a_usage_error():
    with pytest.raises(SystemExit) as exc:
        main(["frobnicate", "x.json"])
    assert exc.value.code == 2

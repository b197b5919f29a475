import os
import subprocess
import sys

import jsonschema
import pytest

from probcalc.cli import ERROR_SCHEMA, REPORT_SCHEMAS, build_parser

from cli_cases import CASES, ERROR_CASES, SUBCOMMANDS, fx, invoke


def test_every_subcommand_is_covered():
    assert {argv[0] for argv, _ in CASES} == SUBCOMMANDS == set(REPORT_SCHEMAS)
    choices = build_parser()._subparsers._group_actions[0].choices
    assert set(choices) == SUBCOMMANDS


@pytest.mark.parametrize("argv, code", CASES, ids=[" ".join(a[:2]) for a, _ in CASES])
def test_json_reports(argv, code):
    got, report, _ = invoke(argv)
    assert got == code
    jsonschema.validate(report, REPORT_SCHEMAS[argv[0]])
    assert report["exit_code"] == code


@pytest.mark.parametrize("argv, code", CASES[:12], ids=[" ".join(a[:2]) for a, _ in CASES[:12]])
def test_text_mode_exit_codes(argv, code):
    got, text, _ = invoke(argv, as_json=False)
    assert got == code and text.strip()


@pytest.mark.parametrize("argv", ERROR_CASES, ids=[" ".join(a[:2]) or "empty" for a in ERROR_CASES])
def test_input_errors_exit_2(argv):
    code, report, err = invoke(argv)
    assert code == 2
    assert err.startswith("probcalc: error:")
    jsonschema.validate(report, ERROR_SCHEMA)


def test_lem_countermodel_is_printed():
    code, text, _ = invoke(["decide", "a | ~a", "--logic", "ipc"], as_json=False)
    assert code == 1 and "countermodel" in text and "a true at: [1]" in text
    _, report, _ = invoke(["decide", "a | ~a", "--logic", "ipc"])
    assert report["witness"] == {"worlds": 2, "le": [[0, 1]], "val": {"a": [1]}, "root": 0}


def test_triangle_demo_content():
    _, report, _ = invoke(["demo", "triangle"])
    f = report["facts"]
    assert f["bs3_level"] == 1 and f["trivial_level"] == -2
    assert f["bs3_self_identifications"] == 6 and f["bc3_self_identifications"] == 3
    assert not f["bs3_equivalent_trivial"] and not f["bs3_equivalent_bc3"]


def test_euclid_demo_separates_problem_from_proposition():
    _, report, _ = invoke(["demo", "euclid"])
    f = report["facts"]
    assert f["problem_level"] >= 0 and f["proposition_level"] <= -1 and f["inhabited"]


def test_fermat_and_goldbach_demos():
    _, fermat, _ = invoke(["demo", "fermat"])
    assert fermat["facts"]["lem_problem"] is False
    assert fermat["facts"]["lem_double_negated"] and fermat["facts"]["lem_proposition"]
    _, gold, _ = invoke(["demo", "goldbach"])
    assert gold["facts"] == {"decidable_dne": True, "bare_dne": False, "propositional": True}


def test_galois_output_file_is_checkable(tmp_path):
    out = tmp_path / "fwd.json"
    code, report, _ = invoke(["galois", fx("galois-and-left"), "--dir", "fwd", "-o", str(out)])
    assert code == 0 and report["output_target"] == "a & b -> !?a"
    code, check, _ = invoke(["check", str(out), "--system", "hc"])
    assert code == 0 and check["status"] == "accepted"


def test_max_worlds_from_environment(monkeypatch):
    monkeypatch.setenv("PROBCALC_MAX_WORLDS", "1")
    code, report, _ = invoke(["countermodel", "a | ~a"])
    assert code == 0 and report["status"] == "none" and report["max_worlds"] == 1


def test_module_entry_point():
    env = dict(os.environ)
    r = subprocess.run([sys.executable, "-m", "probcalc", "decide", "a | ~a", "--logic", "ipc",
                        "--json"], capture_output=True, text=True, env=env)
    assert r.returncode == 1 and '"status": "invalid"' in r.stdout

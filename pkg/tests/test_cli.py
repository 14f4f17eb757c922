import io
import json

import pytest

from skewsagbi.cli import RunConfig, main, run

FIG1_JSON = {"lambda": [6, 5, 5, 3], "mu": [2, 1, 0, 0]}
FIG4_JSON = {"lambda": [9, 8, 8, 6, 5, 5, 5, 2, 2], "mu": [5, 4, 4, 3, 2, 2, 2, 0, 0]}


@pytest.fixture
def write(tmp_path):
    def _write(obj, name="d.json"):
        path = tmp_path / name
        path.write_text(obj if isinstance(obj, str) else json.dumps(obj), encoding="utf-8")
        return str(path)
    return _write


def call(**kw):
    out, err = io.StringIO(), io.StringIO()
    code = run(RunConfig(**kw), out=out, err=err)
    return code, out.getvalue(), err.getvalue()


def report(**kw):
    code, out, err = call(**kw)
    text = out or err
    assert text.endswith("\n")
    return code, json.loads(text)


def test_dim_fig4(write):
    code, rep = report(command="dim", diagram_path=write(FIG4_JSON))
    assert code == 0 and rep["result"] == "pass"
    assert rep["details"]["formula_dim"] == 26 and rep["details"]["agree"] is True
    assert rep["schema"] == 1 and rep["config"]["command"] == "dim"


def test_validate_rejects_increasing_lambda(write):
    code, rep = report(command="validate", diagram_path=write({"lambda": [3, 4]}))
    assert code == 2 and rep["result"] == "error"
    assert rep["details"]["error"] == "NotNonincreasing"


def test_validate_fig1(write):
    code, rep = report(command="validate", diagram_path=write(FIG1_JSON))
    assert code == 0
    assert rep["details"] == {"rows": 4, "cols": 6, "cells": 16, "p_nw": 9, "p_se": 6}
    assert rep["diagram"] == {"lambda": [6, 5, 5, 3], "mu": [2, 1, 0, 0]}


def test_std_prints_normal_form_and_trace(write):
    code, rep = report(command="std", diagram_path=write(FIG1_JSON), expression="T[1,3]*T[2,5]")
    assert code == 0
    assert rep["details"]["standard"] == "T[1,5]*T[2,3]"
    assert len(rep["details"]["trace"]) == 1


def test_std_rejects_invalid_variable(write):
    code, rep = report(command="std", diagram_path=write(FIG1_JSON), expression="T[1,1]*T[2,5]")
    assert code == 2 and rep["details"]["error"] == "InvalidTVariable"
    code, rep = report(command="std", diagram_path=write(FIG1_JSON))
    assert code == 2 and rep["details"]["error"] == "UsageError"


def test_subduct_single_step(write):
    code, rep = report(command="subduct", diagram_path=write(FIG1_JSON), expression="x1*y3")
    assert code == 0
    assert rep["details"]["remainder"] == "p3*q1" and rep["details"]["member"] is False
    assert rep["details"]["steps"] == [{"coefficient": 1, "factors": ["T[1,3]"]}]


def test_vars_counts(write):
    code, rep = report(command="vars", diagram_path=write(FIG1_JSON))
    d = rep["details"]
    assert code == 0 and d["two_index"] == 16 and d["count"] == d["two_index"] + d["four_index"]


def test_chi_lemma_needs_no_diagram():
    code, rep = report(command="check-chi-lemma")
    assert code == 0 and rep["diagram"] is None and rep["details"]["grid"] == 6


def test_check_lifting(write):
    code, rep = report(command="check-lifting", diagram_path=write(FIG1_JSON))
    assert code == 0 and rep["details"]["instances"] == 61


def test_check_fibers(write):
    code, rep = report(command="check-fibers", diagram_path=write({"lambda": [2, 2]}), degree_budget=3)
    assert code == 0 and rep["details"]["max_degree"] == 3


def test_check_noetherian_reports_order_failures(write):
    code, rep = report(command="check-noetherian", diagram_path=write(FIG1_JSON), samples=400, seed=5)
    assert rep["seed"] == 5 and rep["config"]["seed"] == 5
    d = rep["details"]
    assert d["terminates"] is True
    assert code == (0 if d["ok"] else 1)


def test_budget_env(write, monkeypatch):
    monkeypatch.setenv("SKEWSAGBI_BUDGET", "10")
    code, rep = report(command="check-fibers", diagram_path=write(FIG1_JSON), degree_budget=3)
    assert code == 2 and rep["details"]["error"] == "BudgetExceeded"


@pytest.mark.parametrize("content", ["{not json", '[1, 2]', '{"lambda": [2], "mu": [3]}'])
def test_malformed_input_exits_two(write, content):
    code, _, err = call(command="validate", diagram_path=write(content))
    assert code == 2 and json.loads(err)["result"] == "error"


def test_missing_file(tmp_path):
    code, _, err = call(command="dim", diagram_path=str(tmp_path / "nope.json"))
    assert code == 2 and "cannot read" in json.loads(err)["details"]["message"]


def test_render_and_export_write_raw_text(write):
    path = write(FIG4_JSON)
    code, out, _ = call(command="render", diagram_path=path, overlay="perimeter")
    assert code == 0 and out.startswith("<svg") and out.count('class="marker-nw"') == 16
    code, out, _ = call(command="render", diagram_path=path, render_format="tikz", overlay="perimeter")
    assert code == 0 and "\\begin{tikzpicture}" in out and out.endswith("\n")
    code, out, _ = call(command="export", diagram_path=path, dialect="singular")
    assert code == 0 and "ring R" in out and out.endswith("\n")
    code, _, err = call(command="render", diagram_path=path, overlay="glitter")
    assert code == 2 and json.loads(err)["details"]["error"] == "UnknownOverlay"


def test_text_format(write):
    code, out, _ = call(command="validate", diagram_path=write(FIG1_JSON), output_format="text")
    assert code == 0
    lines = out.splitlines()
    assert "result: pass" in lines and "seed: 0" in lines
    assert "  lambda: [6, 5, 5, 3]" in lines


def test_reports_are_deterministic(write):
    path = write(FIG1_JSON)
    a = call(command="check-noetherian", diagram_path=path, samples=200, seed=3)
    b = call(command="check-noetherian", diagram_path=path, samples=200, seed=3)
    assert a == b


def test_main_parses_flags(write, capsys):
    path = write(FIG4_JSON)
    assert main(["dim", path, "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["details"]["oracle_rank"] == 26
    assert main(["std", write(FIG1_JSON, "f1.json"), "T[1,3]*T[2,5]", "--seed", "7"]) == 0
    assert json.loads(capsys.readouterr().out)["seed"] == 7


@pytest.mark.parametrize("argv", [[], ["frobnicate"], ["dim", "x.json", "--format", "xml"], ["check-noetherian", "x", "--samples", "0"]])
def test_argparse_errors(argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2

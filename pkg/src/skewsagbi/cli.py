"""Command-line entry point: ``skewsagbi <command> [diagram.json] [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict, dataclass, field
from typing import Optional

from . import __version__
from .diagram import SkewDiagram, diagram_from_json, perimeter_nw, perimeter_se
from .errors import BudgetExceeded, DiagramError, InvalidTVariable, ParseError, SkewSagbiError, UnknownOverlay
from .export import DIALECTS, export
from .lifting import verify_all_liftings
from .render import parse_overlays, render
from .rewrite import normal_form, check_standard_structure
from .rring import enumerate_tvars, is_valid_tvar, parse_rmonomial, phi_star_var, phi_var
from .sagbi import subduct
from .spoly import parse_spoly
from .toric import (
    default_max_degree,
    krull_dimension,
    verify_chi_lemma,
    verify_fiber_invariance,
    verify_noetherian,
)

SCHEMA = 1
COMMANDS = (
    "validate", "vars", "std", "check-fibers", "check-noetherian", "check-chi-lemma",
    "check-lifting", "dim", "subduct", "render", "export",
)
NEEDS_DIAGRAM = frozenset(COMMANDS) - {"check-chi-lemma"}
EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    diagram_path: Optional[str] = None
    degree_budget: Optional[int] = None
    samples: int = 2000
    seed: int = 0
    output_format: str = "json"
    render_format: str = "svg"
    overlay: str = ""
    dialect: str = "macaulay2"
    grid: int = 6
    expression: Optional[str] = None

    def to_json(self) -> dict:
        return {k: v for k, v in asdict(self).items() if v is not None}


@dataclass
class Outcome:
    passed: bool
    details: dict = field(default_factory=dict)
    text: Optional[str] = None  # raw payload (render, export) written instead of a report


class UsageError(SkewSagbiError, ValueError):
    pass


def load_diagram(path: str) -> SkewDiagram:
    try:
        with open(path, encoding="utf-8") as fh:
            obj = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc.msg}") from None
    if not isinstance(obj, dict) or "lambda" not in obj:
        raise UsageError(f"{path}: expected an object with a 'lambda' list")
    return diagram_from_json(obj)


# -- command bodies ----------------------------------------------------------


def _validate(D: SkewDiagram, cfg: RunConfig) -> Outcome:
    return Outcome(True, {
        "rows": D.a, "cols": D.b, "cells": len(D.cells),
        "p_nw": len(perimeter_nw(D)), "p_se": len(perimeter_se(D)),
    })


def _vars(D: SkewDiagram, cfg: RunConfig) -> Outcome:
    tv = enumerate_tvars(D)
    return Outcome(True, {
        "count": len(tv),
        "two_index": sum(t.is_two_index for t in tv),
        "four_index": sum(not t.is_two_index for t in tv),
        "variables": [{"name": str(t), "phi": str(phi_var(D, t)), "lead": str(phi_star_var(t))} for t in tv],
    })


def _std(D: SkewDiagram, cfg: RunConfig) -> Outcome:
    g = parse_rmonomial(_need_expression(cfg))
    for t in g.factors:
        if not is_valid_tvar(D, t):
            raise InvalidTVariable(t)
    out, trace = normal_form(D, g)
    sr = check_standard_structure(D, out)
    return Outcome(sr.ok, {
        "input": str(g), "standard": str(out),
        "trace": [str(inst) for inst in trace], "structure": sr.to_json(),
    })


def _fibers(D: SkewDiagram, cfg: RunConfig) -> Outcome:
    deg = cfg.degree_budget if cfg.degree_budget is not None else default_max_degree(len(enumerate_tvars(D)))
    rep = verify_fiber_invariance(D, deg)
    return Outcome(rep.ok, {"max_degree": deg, **rep.to_json()})


def _noetherian(D: SkewDiagram, cfg: RunConfig) -> Outcome:
    rep = verify_noetherian(D, cfg.samples, cfg.seed)
    return Outcome(rep.ok, rep.to_json())


def _chi_lemma(D, cfg: RunConfig) -> Outcome:
    rep = verify_chi_lemma(cfg.grid)
    return Outcome(rep.ok, {"grid": cfg.grid, **rep.to_json()})


def _lifting(D: SkewDiagram, cfg: RunConfig) -> Outcome:
    rep = verify_all_liftings(D)
    return Outcome(rep.ok, rep.to_json())


def _dim(D: SkewDiagram, cfg: RunConfig) -> Outcome:
    rep = krull_dimension(D)
    return Outcome(rep.agree, rep.to_json())


def _subduct(D: SkewDiagram, cfg: RunConfig) -> Outcome:
    f = parse_spoly(_need_expression(cfg))
    steps = []
    rem = subduct(D, f, steps)
    return Outcome(True, {
        "input": str(f), "remainder": str(rem), "member": not rem,
        "steps": [{"coefficient": c, "factors": [str(t) for t in fac]} for c, fac in steps],
    })


def _render(D: SkewDiagram, cfg: RunConfig) -> Outcome:
    return Outcome(True, text=render(D, cfg.render_format, parse_overlays(cfg.overlay)))


def _export(D: SkewDiagram, cfg: RunConfig) -> Outcome:
    return Outcome(True, text=export(D, cfg.dialect))


COMMAND_TABLE = {
    "validate": _validate, "vars": _vars, "std": _std, "check-fibers": _fibers,
    "check-noetherian": _noetherian, "check-chi-lemma": _chi_lemma, "check-lifting": _lifting,
    "dim": _dim, "subduct": _subduct, "render": _render, "export": _export,
}


def _need_expression(cfg: RunConfig) -> str:
    if not cfg.expression:
        raise UsageError(f"{cfg.command} needs an expression argument")
    return cfg.expression


# -- driver --------------------------------------------------------------------


def _text_lines(obj, indent: int = 0) -> list[str]:
    pad = "  " * indent
    if isinstance(obj, dict):
        out = []
        for k, v in obj.items():
            if isinstance(v, list) and not any(isinstance(e, (dict, list)) for e in v):
                out.append(f"{pad}{k}: [{', '.join(map(str, v))}]")
            elif isinstance(v, (dict, list)) and v:
                out.append(f"{pad}{k}:")
                out.extend(_text_lines(v, indent + 1))
            else:
                out.append(f"{pad}{k}: {v}")
        return out
    if isinstance(obj, list):
        out = []
        for v in obj:
            if isinstance(v, (dict, list)):
                out.append(f"{pad}-")
                out.extend(_text_lines(v, indent + 1))
            else:
                out.append(f"{pad}- {v}")
        return out
    return [f"{pad}{obj}"]


def emit(report: dict, fmt: str, stream) -> None:
    if fmt == "json":
        stream.write(json.dumps(report, indent=2, ensure_ascii=False) + "\n")
    else:
        stream.write("\n".join(_text_lines(report)) + "\n")


def run(cfg: RunConfig, out=None, err=None) -> int:
    """Execute one command; returns the process exit code."""
    out = out or sys.stdout
    err = err or sys.stderr
    D = None
    try:
        if cfg.command not in COMMAND_TABLE:
            raise UsageError(f"unknown command {cfg.command!r}")
        if cfg.command in NEEDS_DIAGRAM:
            if not cfg.diagram_path:
                raise UsageError(f"{cfg.command} needs a diagram file")
            D = load_diagram(cfg.diagram_path)
        outcome = COMMAND_TABLE[cfg.command](D, cfg)
    except (DiagramError, ParseError, UsageError, UnknownOverlay, InvalidTVariable, BudgetExceeded) as exc:
        report = {
            "schema": SCHEMA, "config": cfg.to_json(), "seed": cfg.seed, "result": "error",
            "details": {"error": type(exc).__name__, "message": str(exc)},
        }
        if D is not None:
            report["diagram"] = D.to_json()
        emit(report, cfg.output_format, err)
        return EXIT_USAGE
    if outcome.text is not None:
        out.write(outcome.text)
        return EXIT_PASS
    report = {
        "schema": SCHEMA,
        "diagram": D.to_json() if D is not None else None,
        "config": cfg.to_json(),
        "seed": cfg.seed,
        "result": "pass" if outcome.passed else "fail",
        "details": outcome.details,
    }
    emit(report, cfg.output_format, out)
    return EXIT_PASS if outcome.passed else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="skewsagbi", description="Checks for binomial edge rings of skew diagrams.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    ap.add_argument("command", choices=COMMANDS)
    ap.add_argument("diagram", nargs="?", help='JSON file {"lambda": [...], "mu": [...]}')
    ap.add_argument("expression", nargs="?", help="R-monomial for std, S-polynomial for subduct")
    ap.add_argument("--degree", type=int, help="maximum degree for check-fibers")
    ap.add_argument("--samples", type=int, default=2000, help="random monomials for check-noetherian")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--format", dest="output_format", choices=("json", "text"), default="json")
    ap.add_argument("--render", dest="render_format", choices=("svg", "tikz"), default="svg")
    ap.add_argument("--overlay", default="", help="comma list: perimeter, components, labels, closure=r:c;r:c")
    ap.add_argument("--dialect", choices=DIALECTS, default="macaulay2")
    ap.add_argument("--grid", type=int, default=6, help="grid size for check-chi-lemma")
    return ap


def config_from_args(argv=None) -> RunConfig:
    ap = build_parser()
    ns = ap.parse_args(argv)
    if ns.samples < 1:
        ap.error("--samples must be at least 1")
    return RunConfig(
        command=ns.command, diagram_path=ns.diagram, degree_budget=ns.degree,
        samples=ns.samples, seed=ns.seed, output_format=ns.output_format,
        render_format=ns.render_format, overlay=ns.overlay, dialect=ns.dialect,
        grid=ns.grid, expression=ns.expression,
    )


def main(argv=None) -> int:
    cfg = config_from_args(argv)  # argparse exits with status 2 on bad usage
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())

"""Lifting each reduction binomial to a relation in the kernel of phi.

Letters follow one fixed convention throughout: i < i', e < e', j' < j and
f' < f.  A 2-index input is T[i,j]; a 4-index input is T[i,j';i',j] or
T[e,f';e',f].
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .diagram import SkewDiagram, closure, reflect_antidiagonal
from .errors import InvalidTVariable, NoCaseMatches
from .rewrite import RuleInstance, apply_rule
from .rring import (
    RMonomial,
    RPolynomial,
    T2,
    T4,
    TIndex,
    cell_set,
    enumerate_tvars,
    is_valid_tvar,
    phi,
    phi_monomial,
    phi_star,
    xy,
)
from .spoly import lex_compare

Term = tuple  # (coefficient, (TIndex, TIndex))


@dataclass(frozen=True)
class LiftCase:
    id: str
    rule: str
    guard: str
    template: Callable[[dict], list]
    # cases whose cell sets are bounded by the closure of the input cells
    closure_bounded: bool = False


# -- templates ---------------------------------------------------------------
# Each returns the ordered terms; the first two are +input and -output.


def _f1(b):
    i, j, e, f = b["i"], b["j"], b["e"], b["f"]
    return [
        (1, (T2(i, j), T2(e, f))),
        (-1, (T2(i, f), T2(e, j))),
        (-1, (T4(i, j, e, f),)),
    ]


def _mixed_input(b):
    return (T2(b["i"], b["j"]), T4(b["e"], b["f'"], b["e'"], b["f"]))


def _f2(b):
    i, j, e, e_, f, f_ = b["i"], b["j"], b["e"], b["e'"], b["f"], b["f'"]
    return [
        (1, _mixed_input(b)),
        (-1, (T2(e, f), T4(i, f_, e_, j))),
        (1, (T2(i, f_), T4(e, f, e_, j))),
        (1, (T2(e_, j), T4(i, f_, e, f))),
        (1, (T2(e_, f_), T4(i, f, e, j))),
    ]


def _f3(b):
    i, j, e, e_, f, f_ = b["i"], b["j"], b["e"], b["e'"], b["f"], b["f'"]
    return [
        (1, _mixed_input(b)),
        (-1, (T2(i, f), T4(e, f_, e_, j))),
        (1, (T2(i, f_), T4(e, f, e_, j))),
    ]


def _f3_remedy(b):
    i, j, e, e_, f, f_ = b["i"], b["j"], b["e"], b["e'"], b["f"], b["f'"]
    return [
        (1, _mixed_input(b)),
        (-1, (T2(e, j), T4(i, f_, e_, f))),
        (-1, (T2(e_, f), T4(e, f_, i, j))),
        (1, (T2(e_, f_), T4(e, f, i, j))),
    ]


def _f4(b):
    i, j, e, e_, f, f_ = b["i"], b["j"], b["e"], b["e'"], b["f"], b["f'"]
    return [
        (1, _mixed_input(b)),
        (-1, (T2(e, j), T4(i, f_, e_, f))),
        (1, (T2(e_, j), T4(i, f_, e, f))),
    ]


def _f4_remedy(b):
    i, j, e, e_, f, f_ = b["i"], b["j"], b["e"], b["e'"], b["f"], b["f'"]
    return [
        (1, _mixed_input(b)),
        (-1, (T2(i, f), T4(e, f_, e_, j))),
        (-1, (T2(e, f_), T4(i, j, e_, f))),
        (1, (T2(e_, f_), T4(i, j, e, f))),
    ]


def _quartic_input(b):
    return (T4(b["i"], b["j'"], b["i'"], b["j"]), T4(b["e"], b["f'"], b["e'"], b["f"]))


def _letters(b):
    return b["i"], b["i'"], b["e"], b["e'"], b["j"], b["j'"], b["f"], b["f'"]


def _f5(b):
    i, i_, e, e_, j, j_, f, f_ = _letters(b)
    return [
        (1, _quartic_input(b)),
        (-1, (T4(i, f_, i_, f), T4(e, j_, e_, j))),
    ]


def _f6(b):
    i, i_, e, e_, j, j_, f, f_ = _letters(b)
    return [
        (1, _quartic_input(b)),
        (-1, (T4(e, f_, i_, f), T4(i, j_, e_, j))),
        (1, (T4(e, f_, i, f), T4(i_, j_, e_, j))),
    ]


def _f7(b):
    i, i_, e, e_, j, j_, f, f_ = _letters(b)
    return [
        (1, _quartic_input(b)),
        (-1, (T4(i, f_, e_, f), T4(e, j_, i_, j))),
        (1, (T4(e_, j_, i_, j), T4(i, f_, e, f))),
    ]


def _f8(b):
    i, i_, e, e_, j, j_, f, f_ = _letters(b)
    return [
        (1, _quartic_input(b)),
        (-1, (T4(i, j_, i_, f), T4(e, f_, e_, j))),
        (1, (T4(i, j, i_, f), T4(e, f_, e_, j_))),
    ]


def _f9_remedy(b):
    i, i_, e, e_, j, j_, f, f_ = _letters(b)
    return [
        (1, _quartic_input(b)),
        (-1, (T4(i, f_, i_, j), T4(e, j_, e_, f))),
        (1, (T4(i, f, i_, j), T4(e, j_, e_, f_))),
    ]


def _f10(b):
    i, i_, e, e_, j, j_, f, f_ = _letters(b)
    return [
        (1, _quartic_input(b)),
        (-1, (T4(e, j_, i_, f), T4(i, f_, e_, j))),
        (1, (T4(e, j_, i, f), T4(i_, f_, e_, j))),
        (1, (T4(i, j, e_, f), T4(e, f_, i_, j_))),
        (-1, (T4(i_, j, e_, f), T4(e, f_, i, j_))),
    ]


def _f11(b):
    i, i_, e, e_, j, j_, f, f_ = _letters(b)
    return [
        (1, _quartic_input(b)),
        (-1, (T4(e, j_, i_, f), T4(i, f_, e_, j))),
        (1, (T4(i, f_, e, j), T4(e_, j_, i_, f))),
        (1, (T4(e, f, i_, j), T4(i, j_, e_, f_))),
        (-1, (T4(e_, f, i_, j), T4(i, j_, e, f_))),
    ]


def _f12_remedy(b):
    i, i_, e, e_, j, j_, f, f_ = _letters(b)
    return [
        (1, _quartic_input(b)),
        (-1, (T4(e, f_, i_, j), T4(i, j_, e_, f))),
        (1, (T4(e, f, i_, j), T4(i, j_, e_, f_))),
        (-1, (T4(e, f, i, j), T4(i_, j_, e_, f_))),
        (1, (T4(e, f_, i, j), T4(i_, j_, e_, f))),
    ]


# -- the anti-diagonal symmetry ---------------------------------------------


def reflect_tvar(a: int, b: int, t: TIndex) -> TIndex:
    """Image of a variable under (r, c) -> (b+1-c, a+1-r); swaps the roles of XY and QP rows."""
    return T4(b + 1 - t.j2, a + 1 - t.i2, b + 1 - t.j1, a + 1 - t.i1)


def _reflect_binding_quartic(a: int, b: int, bind: dict) -> dict:
    # T[i,j';i',j] -> T[b+1-j, a+1-i'; b+1-j', a+1-i], same for the e/f factor
    return {
        "i": b + 1 - bind["j"], "i'": b + 1 - bind["j'"],
        "j'": a + 1 - bind["i'"], "j": a + 1 - bind["i"],
        "e": b + 1 - bind["f"], "e'": b + 1 - bind["f'"],
        "f'": a + 1 - bind["e'"], "f": a + 1 - bind["e"],
    }


def _f13_transported(bind: dict, a: int, b: int) -> list:
    mirrored = _f12_remedy(_reflect_binding_quartic(a, b, bind))
    # reflecting a b-by-a grid back uses the same formula with a and b swapped
    return [(c, tuple(reflect_tvar(b, a, t) for t in ts)) for c, ts in mirrored]


# -- the catalog ---------------------------------------------------------------

LEQ, GEQ = "<=", ">="


def _sign_ok(x: int, want: str) -> bool:
    return {"<": x < 0, ">": x > 0, LEQ: x <= 0, GEQ: x >= 0}[want]


QUARTIC_PATTERNS = {
    # sign pattern of (i-e, i'-e', j'-f', j-f)
    "F5": (LEQ, LEQ, LEQ, LEQ),
    "F6": (">", "<", LEQ, LEQ),
    "F7": ("<", ">", LEQ, LEQ),
    "F8": (LEQ, LEQ, ">", "<"),
    "F9'": (LEQ, LEQ, "<", ">"),
    "F10": (">", "<", ">", "<"),
    "F11": ("<", ">", "<", ">"),
    "F12'": (">", "<", "<", ">"),
    "F13'": ("<", ">", ">", "<"),
}

CASES = {
    "F1": LiftCase("F1", "I", "i < e and j < f", _f1),
    "F2": LiftCase("F2", "III1", "i < e and f < j", _f2),
    "F3": LiftCase("F3", "III1", "e <= i and f < j", _f3),
    "F3'": LiftCase("F3'", "III2", "e <= i and f < j, guard variable missing", _f3_remedy),
    "F4": LiftCase("F4", "III1", "i < e and j <= f", _f4),
    "F4'": LiftCase("F4'", "III2", "i < e and j <= f, guard variable missing", _f4_remedy),
    "F5": LiftCase("F5", "II", "(<=, <=, <=, <=)", _f5),
    "F6": LiftCase("F6", "II", "(>, <, <=, <=)", _f6, True),
    "F7": LiftCase("F7", "II", "(<, >, <=, <=)", _f7, True),
    "F8": LiftCase("F8", "II", "(<=, <=, >, <)", _f8, True),
    "F9'": LiftCase("F9'", "II", "(<=, <=, <, >)", _f9_remedy, True),
    "F10": LiftCase("F10", "II", "(>, <, >, <)", _f10, True),
    "F11": LiftCase("F11", "II", "(<, >, <, >)", _f11, True),
    "F12'": LiftCase("F12'", "II", "(>, <, <, >)", _f12_remedy),
    "F13'": LiftCase("F13'", "II", "(<, >, >, <), from F12' by reflection", None),
}
CASE_ORDER = tuple(CASES)


@dataclass(frozen=True)
class CaseMatch:
    case: str
    binding: tuple  # sorted (letter, value) pairs
    swapped: bool = False

    @property
    def bind(self) -> dict:
        return dict(self.binding)

    def to_json(self) -> dict:
        return {"case": self.case, "binding": self.bind, "swapped": self.swapped}


def _freeze(bind: dict) -> tuple:
    return tuple(sorted(bind.items()))


def case_matches(D: SkewDiagram, inst: RuleInstance) -> list[CaseMatch]:
    """Every case whose guard accepts ``inst``, in dispatch order."""
    if inst.rule == "I":
        s, t = sorted(inst.input, key=lambda v: (v.i1, v.j2))
        (i, j), (e, f) = xy(s), xy(t)
        if i < e and j < f:
            return [CaseMatch("F1", _freeze({"i": i, "j": j, "e": e, "f": f}))]
        return []
    if inst.rule in ("III1", "III2"):
        t4, t2 = inst.input
        bind = {"i": t2.i1, "j": t2.j2, "e": t4.i1, "f'": t4.j1, "e'": t4.i2, "f": t4.j2}
        i, j, e, f = bind["i"], bind["j"], bind["e"], bind["f"]
        if inst.rule == "III1":
            candidates = [("F2", i < e and f < j), ("F3", e <= i and f < j), ("F4", i < e and j <= f)]
        else:
            candidates = [("F3'", e <= i and f < j), ("F4'", i < e and j <= f)]
        return [CaseMatch(c, _freeze(bind)) for c, ok in candidates if ok]
    out = []
    for swapped, (s, t) in ((False, inst.input), (True, inst.input[::-1])):
        bind = {"i": s.i1, "j'": s.j1, "i'": s.i2, "j": s.j2, "e": t.i1, "f'": t.j1, "e'": t.i2, "f": t.j2}
        diffs = (bind["i"] - bind["e"], bind["i'"] - bind["e'"], bind["j'"] - bind["f'"], bind["j"] - bind["f"])
        for cid, pattern in QUARTIC_PATTERNS.items():
            if all(_sign_ok(d, w) for d, w in zip(diffs, pattern)):
                out.append(CaseMatch(cid, _freeze(bind), swapped))
    return out


def classify_case(D: SkewDiagram, inst: RuleInstance) -> CaseMatch:
    """The first matching case: the given factor order is tried before the swapped one."""
    matches = case_matches(D, inst)
    if not matches:
        raise NoCaseMatches(f"no lifting case for {inst}")
    return matches[0]


def template_terms(D: SkewDiagram, match: CaseMatch) -> list:
    if match.case == "F13'":
        return _f13_transported(match.bind, D.a, D.b)
    return CASES[match.case].template(match.bind)


def lift_terms(D: SkewDiagram, inst: RuleInstance, match: Optional[CaseMatch] = None) -> list:
    """Ordered (coefficient, RMonomial) terms of the lift; every variable is checked for validity."""
    match = match or classify_case(D, inst)
    terms = []
    for c, ts in template_terms(D, match):
        for t in ts:
            if not is_valid_tvar(D, t):
                raise InvalidTVariable(t)
        terms.append((c, RMonomial(ts)))
    return terms


def lift(D: SkewDiagram, inst: RuleInstance, match: Optional[CaseMatch] = None) -> RPolynomial:
    return RPolynomial([(m, c) for c, m in lift_terms(D, inst, match)])


# -- verification ------------------------------------------------------------


@dataclass
class LiftCheck:
    case: str
    instance: RuleInstance
    kernel: bool = False
    cells_in_diagram: bool = False
    marked_binomial: bool = False
    trailing_below_lead: bool = False
    trailing_below_initial: bool = False
    within_closure: Optional[bool] = None
    error: Optional[str] = None
    polynomial: str = ""

    @property
    def ok(self) -> bool:
        return (
            self.error is None
            and self.kernel
            and self.cells_in_diagram
            and self.marked_binomial
            and self.trailing_below_lead
            and self.trailing_below_initial
            and self.within_closure is not False
        )

    def to_json(self) -> dict:
        return {
            "case": self.case,
            "instance": str(self.instance),
            "lift": self.polynomial,
            "kernel": self.kernel,
            "cells_in_diagram": self.cells_in_diagram,
            "marked_binomial": self.marked_binomial,
            "trailing_below_lead": self.trailing_below_lead,
            "trailing_below_initial": self.trailing_below_initial,
            "within_closure": self.within_closure,
            "error": self.error,
        }


def verify_lift(D: SkewDiagram, inst: RuleInstance, match: Optional[CaseMatch] = None) -> LiftCheck:
    """Check a lift: it lies in ker(phi), starts with the rule's binomial, and its tail is small.

    Two tail bounds are checked: phi* of each trailing monomial is below phi*
    of the input monomial, and also no larger than the lex initial term of
    phi applied to the binomial.
    """
    try:
        match = match or classify_case(D, inst)
    except NoCaseMatches as exc:
        return LiftCheck("none", inst, error=str(exc))
    rep = LiftCheck(match.case, inst)
    try:
        terms = lift_terms(D, inst, match)
    except InvalidTVariable as exc:
        rep.error = str(exc)
        return rep
    F = RPolynomial([(m, c) for c, m in terms])
    rep.polynomial = " ".join(f"{'+' if c > 0 else '-'} {m}" for c, m in terms)
    rep.kernel = not phi(D, F)
    rep.cells_in_diagram = cell_set(F) <= D.cells
    rep.marked_binomial = (
        len(terms) >= 2
        and terms[0] == (1, inst.lead)
        and terms[1] == (-1, inst.tail)
    )
    lead = phi_star(inst.lead)
    tail = terms[2:]
    rep.trailing_below_lead = all(lex_compare(phi_star(m), lead) == -1 for _, m in tail)
    binom = phi_monomial(D, inst.lead) - phi_monomial(D, inst.tail)
    if tail:
        initial = binom.lead_monomial()
        rep.trailing_below_initial = all(lex_compare(phi_star(m), initial) <= 0 for _, m in tail)
    else:
        rep.trailing_below_initial = True
    if CASES[match.case].closure_bounded:
        rep.within_closure = cell_set(F) <= closure(D, cell_set(inst.lead))
    return rep


def enumerate_gb(D: SkewDiagram) -> list[RuleInstance]:
    """Every nontrivial reduction over unordered pairs of variables, in tau order."""
    tvars = enumerate_tvars(D)
    out = []
    for k, s in enumerate(tvars):
        for t in tvars[k:]:
            inst = apply_rule(D, s, t)
            if inst is not None:
                out.append(inst)
    return out


@dataclass
class LiftingReport:
    instances: int = 0
    tallies: dict = field(default_factory=lambda: {c: {"count": 0, "failures": 0} for c in CASE_ORDER})
    failures: list = field(default_factory=list)
    no_case: list = field(default_factory=list)
    ambiguities: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures and not self.no_case

    def merge(self, other: "LiftingReport") -> None:
        self.instances += other.instances
        for c, v in other.tallies.items():
            self.tallies[c]["count"] += v["count"]
            self.tallies[c]["failures"] += v["failures"]
        self.failures += other.failures
        self.no_case += other.no_case
        self.ambiguities += other.ambiguities

    def to_json(self) -> dict:
        return {
            "instances": self.instances,
            "tallies": self.tallies,
            "failures": self.failures[:20],
            "no_case": self.no_case[:20],
            "ambiguity_count": len(self.ambiguities),
            "ambiguities": self.ambiguities[:20],
        }


def verify_all_liftings(D: SkewDiagram) -> LiftingReport:
    rep = LiftingReport()
    for inst in enumerate_gb(D):
        rep.instances += 1
        matches = case_matches(D, inst)
        if not matches:
            rep.no_case.append(str(inst))
            continue
        check = verify_lift(D, inst, matches[0])
        tally = rep.tallies[check.case]
        tally["count"] += 1
        if not check.ok:
            tally["failures"] += 1
            rep.failures.append(check.to_json())
        if len(matches) > 1:
            others = [verify_lift(D, inst, m) for m in matches[1:]]
            rep.ambiguities.append({
                "instance": str(inst),
                "chosen": matches[0].to_json(),
                "alternatives": [
                    {**m.to_json(), "verifies": c.ok} for m, c in zip(matches[1:], others)
                ],
            })
    return rep


def reflect_diagram_instance(D: SkewDiagram, inst: RuleInstance) -> tuple[SkewDiagram, RuleInstance]:
    """Carry a reduction instance across the anti-diagonal reflection of the diagram."""
    E = reflect_antidiagonal(D)
    a, b = D.a, D.b
    s, t = (reflect_tvar(a, b, v) if not v.is_two_index else T2(b + 1 - v.j2, a + 1 - v.i1) for v in inst.input)
    image = apply_rule(E, s, t)
    return E, image

"""The quadratic reduction system on monomials of R and its normal forms."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional

from .diagram import SkewDiagram, is_legitimate_pair, strictly_ne, weakly_ne
from .errors import InvariantBreach, NonDecreasingStep
from .rring import (
    RMonomial,
    RPolynomial,
    T2,
    T4,
    TIndex,
    chi_tau_compare,
    flipped_tau_key,
    is_valid_tvar,
    phi_star,
    qp,
    tau_key,
    xy,
)

RULES = ("I", "II", "III1", "III2")


@dataclass(frozen=True)
class RuleInstance:
    rule: str
    input: tuple[TIndex, TIndex]
    output: tuple[TIndex, TIndex]

    @property
    def lead(self) -> RMonomial:
        return RMonomial(self.input)

    @property
    def tail(self) -> RMonomial:
        return RMonomial(self.output)

    def binomial(self) -> RPolynomial:
        return RPolynomial({self.lead: 1, self.tail: -1} if self.lead != self.tail else {})

    def to_json(self) -> dict:
        return {
            "rule": self.rule,
            "input": [str(t) for t in self.input],
            "output": [str(t) for t in self.output],
        }

    def __str__(self) -> str:
        return f"({self.rule}) {self.lead} -> {self.tail}"


def _finish(D: SkewDiagram, rule: str, inp: tuple, out: tuple) -> Optional[RuleInstance]:
    if sorted(inp, key=tau_key) == sorted(out, key=tau_key):
        return None
    for t in out:
        if not is_valid_tvar(D, t):
            raise InvariantBreach(f"rule {rule} on {inp[0]}*{inp[1]} produced {t}, not in R")
    return RuleInstance(rule, inp, out)


def apply_rule_I(D: SkewDiagram, t1: TIndex, t2: TIndex) -> Optional[RuleInstance]:
    (i, j), (k, l) = xy(t1), xy(t2)
    out = (T2(min(i, k), max(j, l)), T2(max(i, k), min(j, l)))
    return _finish(D, "I", (t1, t2), out)


def apply_rule_II(D: SkewDiagram, s: TIndex, t: TIndex) -> Optional[RuleInstance]:
    out = (
        T4(min(s.i1, t.i1), max(s.j1, t.j1), min(s.i2, t.i2), max(s.j2, t.j2)),
        T4(max(s.i1, t.i1), min(s.j1, t.j1), max(s.i2, t.i2), min(s.j2, t.j2)),
    )
    return _finish(D, "II", (s, t), out)


def apply_rule_III(D: SkewDiagram, t4: TIndex, t2: TIndex) -> Optional[RuleInstance]:
    """Mixed pair: a 4-index variable against a 2-index variable.

    The guard variable T_{min(i1,i1'), j1'; i2', max(j1, j2')} decides between
    the two branches.
    """
    i1, j1 = xy(t2)
    top, bottom = min(i1, t4.i1), max(i1, t4.i1)
    right, left = max(j1, t4.j2), min(j1, t4.j2)
    guard = T4(top, t4.j1, t4.i2, right)
    if is_valid_tvar(D, guard):
        return _finish(D, "III1", (t4, t2), (guard, T2(bottom, left)))
    return _finish(D, "III2", (t4, t2), (T4(bottom, t4.j1, t4.i2, left), T2(top, right)))


def apply_rule(D: SkewDiagram, s: TIndex, t: TIndex) -> Optional[RuleInstance]:
    """The reduction of the pair {s, t}, or None when it is trivial."""
    return _apply_cached(D, s, t)


@lru_cache(maxsize=1_000_000)
def _apply_cached(D: SkewDiagram, s: TIndex, t: TIndex) -> Optional[RuleInstance]:
    if s.is_two_index and t.is_two_index:
        return apply_rule_I(D, s, t)
    if not s.is_two_index and not t.is_two_index:
        return apply_rule_II(D, s, t)
    if s.is_two_index:
        return apply_rule_III(D, t, s)
    return apply_rule_III(D, s, t)


def reduce_once(
    D: SkewDiagram, g: RMonomial, strategy: Optional[random.Random] = None
) -> Optional[tuple[RMonomial, RuleInstance]]:
    """Apply the first available reduction to a pair of factors of ``g``.

    Pairs are scanned in position order over the tau-sorted factors, or in a
    shuffled order when ``strategy`` is a seeded ``random.Random``.
    """
    fs = g.factors
    n = len(fs)
    pairs = [(k, l) for k in range(n) for l in range(k + 1, n)]
    if strategy is not None:
        strategy.shuffle(pairs)
    seen = set()
    for k, l in pairs:
        key = (fs[k], fs[l])
        if key in seen:
            continue
        seen.add(key)
        inst = apply_rule(D, fs[k], fs[l])
        if inst is not None:
            return g.replace(k, l, inst.output), inst
    return None


def normal_form(
    D: SkewDiagram, g: RMonomial, strategy: Optional[random.Random] = None
) -> tuple[RMonomial, list[RuleInstance]]:
    """Reduce ``g`` to its standard monomial, returning the trace as well.

    Every step must strictly decrease chi, then the flipped tau order; the
    plain tau order is not monotone along reductions when chi ties.
    """
    trace = []
    while True:
        step = reduce_once(D, g, strategy)
        if step is None:
            return g, trace
        new, inst = step
        if chi_tau_compare(g, new, flipped_tau_key) != 1:
            raise NonDecreasingStep(f"{g} -> {new} via {inst} does not decrease chi#tau")
        trace.append(inst)
        g = new


@lru_cache(maxsize=500_000)
def std(D: SkewDiagram, g: RMonomial) -> RMonomial:
    return normal_form(D, g)[0]


def is_standard(D: SkewDiagram, g: RMonomial) -> bool:
    return reduce_once(D, g) is None


# -- structure of standard monomials ---------------------------------------


def _ne_first(cell) -> tuple:
    return (float(cell[0]), -float(cell[1]))


@dataclass
class StructureReport:
    ordered: list
    violations: dict = field(default_factory=lambda: {"R1": [], "R2": [], "R3": [], "R4": []})

    @property
    def ok(self) -> bool:
        return not any(self.violations.values())

    def to_json(self) -> dict:
        return {
            "ordered": [str(t) for t in self.ordered],
            "ok": self.ok,
            "violations": {k: [list(map(str, v)) for v in vs] for k, vs in self.violations.items()},
        }


def check_standard_structure(D: SkewDiagram, g: RMonomial) -> StructureReport:
    """Check the four requirements a standard monomial has to satisfy.

    Factors are ordered with XY cells north-east first, ties broken by the QP
    cell the same way; V holds the positions of 2-index factors and U the rest.
    """
    ordered = sorted(g.factors, key=lambda t: (_ne_first(xy(t)), _ne_first(qp(t))))
    rep = StructureReport(ordered)
    V = [k for k, t in enumerate(ordered) if t.is_two_index]
    U = [k for k, t in enumerate(ordered) if not t.is_two_index]
    n = len(ordered)
    for k in range(n):
        for l in range(k + 1, n):
            if not weakly_ne(xy(ordered[k]), xy(ordered[l])):
                rep.violations["R1"].append((ordered[k], ordered[l]))
    for k in V:
        for l in U:
            if k < l and is_legitimate_pair(D, xy(ordered[k]), qp(ordered[l])):
                rep.violations["R2"].append((ordered[k], ordered[l]))
    for idx, k in enumerate(U):
        for l in U[idx + 1:]:
            if not weakly_ne(qp(ordered[k]), qp(ordered[l])):
                rep.violations["R3"].append((ordered[k], ordered[l]))
    for k in U:
        t = ordered[k]
        if not strictly_ne(xy(t), qp(t)):
            rep.violations["R4"].append((t,))
    return rep


def fiber_key(g: RMonomial):
    return phi_star(g)

"""Fibers of phi*, the Groebner and termination checks, and Krull dimension."""

from __future__ import annotations

import os
import random
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
from typing import Optional

from .diagram import (
    INF_CELL,
    SkewDiagram,
    as_skew_diagram,
    edge_components,
    grid_cells,
    perimeter_nw,
    perimeter_se,
)
from .errors import BudgetExceeded
from .rewrite import check_standard_structure, normal_form, reduce_once, std
from .rring import RMonomial, UNIT, chi, chi_monomial, chi_tau_compare, enumerate_tvars, flipped_tau_key, phi_star
from .spoly import P, Q, X, Y, SVariable

DEFAULT_BUDGET = 2_000_000


def enumeration_budget() -> int:
    raw = os.environ.get("SKEWSAGBI_BUDGET")
    return int(raw) if raw else DEFAULT_BUDGET


def default_max_degree(n_vars: int) -> int:
    """Degree reachable exhaustively by default: 4 for tiny R, 3 up to 60 variables."""
    if n_vars <= 12:
        return 4
    if n_vars <= 60:
        return 3
    return 2


# -- fibers ------------------------------------------------------------------


@dataclass
class FiberTable:
    degree: int
    groups: dict

    @property
    def monomial_count(self) -> int:
        return sum(len(v) for v in self.groups.values())


def monomial_count(n_vars: int, degree: int) -> int:
    return comb(n_vars + degree - 1, degree)


def build_fibers(D: SkewDiagram, degree: int, budget: Optional[int] = None) -> FiberTable:
    """Group every degree-``degree`` monomial of R by its phi* image."""
    if budget is None:
        budget = enumeration_budget()
    tvars = enumerate_tvars(D)
    count = monomial_count(len(tvars), degree)
    if count > budget:
        raise BudgetExceeded(count, budget)
    groups: dict = defaultdict(set)
    for combo in combinations_with_replacement(tvars, degree):
        g = RMonomial(combo)
        groups[phi_star(g)].add(g)
    if degree == 0:
        groups = {phi_star(UNIT): {UNIT}}
    return FiberTable(degree, dict(groups))


@dataclass
class FiberReport:
    diagram: SkewDiagram
    max_degree: int
    fibers: dict = field(default_factory=dict)
    monomials: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    structure_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.structure_failures

    def to_json(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "fibers": self.fibers,
            "monomials": self.monomials,
            "violations": self.violations,
            "structure_failures": self.structure_failures,
        }


def verify_fiber_invariance(D: SkewDiagram, max_degree: int, budget: Optional[int] = None) -> FiberReport:
    """Every monomial of a fiber must reduce to the same standard monomial."""
    rep = FiberReport(D, max_degree)
    for d in range(1, max_degree + 1):
        table = build_fibers(D, d, budget)
        rep.fibers[d] = len(table.groups)
        rep.monomials[d] = table.monomial_count
        for key, members in table.groups.items():
            normal = {g: std(D, g) for g in members}
            results = set(normal.values())
            if len(results) > 1:
                rep.violations.append({
                    "fiber": str(key),
                    "members": {
                        str(g): {
                            "std": str(s),
                            "trace": [str(inst) for inst in normal_form(D, g)[1]],
                        }
                        for g, s in sorted(normal.items(), key=lambda kv: str(kv[0]))
                    },
                })
            for s in results:
                sr = check_standard_structure(D, s)
                if not sr.ok:
                    rep.structure_failures.append({"fiber": str(key), **sr.to_json()})
    return rep


# -- termination -------------------------------------------------------------


@dataclass
class NoetherianReport:
    seed: int
    samples: int = 0
    steps: int = 0
    non_decreasing: list = field(default_factory=list)
    flipped_non_decreasing: list = field(default_factory=list)
    chi_increases: list = field(default_factory=list)
    strategy_mismatches: list = field(default_factory=list)
    unterminated: list = field(default_factory=list)
    histogram: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return not (self.non_decreasing or self.termination_failures)

    @property
    def terminates(self) -> bool:
        """Descent under the flipped order, no chi increase, strategy independence."""
        return not self.termination_failures

    @property
    def termination_failures(self) -> list:
        """Everything except plain chi#tau failures, which are expected on chi ties."""
        return self.flipped_non_decreasing + self.chi_increases + self.strategy_mismatches + self.unterminated

    def merge(self, other: "NoetherianReport") -> None:
        self.samples += other.samples
        self.steps += other.steps
        self.non_decreasing += other.non_decreasing
        self.flipped_non_decreasing += other.flipped_non_decreasing
        self.chi_increases += other.chi_increases
        self.strategy_mismatches += other.strategy_mismatches
        self.unterminated += other.unterminated
        self.histogram.update(other.histogram)

    def to_json(self) -> dict:
        return {
            "seed": self.seed,
            "samples": self.samples,
            "steps": self.steps,
            "ok": self.ok,
            "terminates": self.terminates,
            "non_decreasing_count": len(self.non_decreasing),
            "non_decreasing": self.non_decreasing[:20],
            "flipped_non_decreasing": self.flipped_non_decreasing[:20],
            "chi_increases": self.chi_increases[:20],
            "strategy_mismatches": self.strategy_mismatches[:20],
            "unterminated": self.unterminated[:20],
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
        }


def random_monomial(rng: random.Random, D: SkewDiagram, min_degree: int = 2, max_degree: int = 6) -> RMonomial:
    tvars = enumerate_tvars(D)
    return RMonomial(rng.choice(tvars) for _ in range(rng.randint(min_degree, max_degree)))


MAX_TRAJECTORY = 10_000


def run_trajectory(D: SkewDiagram, g: RMonomial, rng: Optional[random.Random], rep: NoetherianReport) -> RMonomial:
    """Reduce ``g`` step by step, recording every step that breaks a descent.

    Both the plain and the flipped chi#tau orders are checked; the walk is cut
    off after MAX_TRAJECTORY steps.
    """
    start = g
    steps = 0
    while True:
        nxt = reduce_once(D, g, rng)
        if nxt is None:
            break
        new, inst = nxt
        steps += 1
        if steps > MAX_TRAJECTORY:
            rep.unterminated.append({"monomial": str(start)})
            break
        step = {"from": str(g), "to": str(new), "rule": str(inst)}
        if chi_tau_compare(g, new) != 1:
            rep.non_decreasing.append(step)
        if chi_tau_compare(g, new, flipped_tau_key) != 1:
            rep.flipped_non_decreasing.append(step)
        if chi_monomial(new) > chi_monomial(g):
            rep.chi_increases.append(step)
        g = new
    rep.steps += steps
    rep.histogram[steps] += 1
    return g


def verify_noetherian(D: SkewDiagram, samples: int, seed: int, *, min_degree: int = 2, max_degree: int = 6) -> NoetherianReport:
    """Random monomials reduced under a seeded random strategy, then compared with std."""
    rng = random.Random(seed)
    rep = NoetherianReport(seed)
    for _ in range(samples):
        g = random_monomial(rng, D, min_degree, max_degree)
        out = run_trajectory(D, g, rng, rep)
        rep.samples += 1
        if out != std(D, g):
            rep.strategy_mismatches.append({"monomial": str(g), "random": str(out), "canonical": str(std(D, g))})
    return rep


# -- the chi inequality ------------------------------------------------------

ROW_BANDS = ("above", "top", "middle", "bottom", "below")
COL_BANDS = ("left", "left-edge", "middle", "right-edge", "right")


def _band(v, lo, hi) -> int:
    if v < lo:
        return 0
    if v == lo:
        return 1
    if v < hi:
        return 2
    if v == hi:
        return 3
    return 4


@dataclass
class ChiLemmaReport:
    grid: int
    triples: int = 0
    violations: list = field(default_factory=list)
    regions: dict = field(default_factory=dict)
    formal_cell: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return not self.violations

    def region_values(self) -> dict:
        """(row band, col band) -> the single (lhs, rhs) pair seen there, or None if it varies."""
        out = {}
        for key, seen in self.regions.items():
            out[key] = next(iter(seen)) if len(seen) == 1 else None
        return out

    def tally(self) -> dict:
        vals = self.region_values()
        return {
            "same": sum(1 for v in vals.values() if v is not None and v[0] == v[1]),
            "drop": sum(1 for v in vals.values() if v is not None and v[0] > v[1]),
            "mixed": sum(1 for v in vals.values() if v is None),
        }

    def to_json(self) -> dict:
        vals = self.region_values()
        return {
            "grid": self.grid,
            "triples": self.triples,
            "violations": self.violations[:20],
            "violation_count": len(self.violations),
            "tally": self.tally(),
            "regions": {
                f"{ROW_BANDS[r]}/{COL_BANDS[c]}": (f"{v[0]}->{v[1]}" if v else "mixed")
                for (r, c), v in sorted(vals.items())
            },
            "formal_cell": {f"{k[0]}->{k[1]}": n for k, n in sorted(self.formal_cell.items())},
        }


def verify_chi_lemma(n: int) -> ChiLemmaReport:
    """chi(A,C)+chi(B,C) >= chi(A',C)+chi(B',C) for A strictly NW of B on an n by n grid.

    A' and B' are the north-east and south-west corners of the rectangle of A
    and B. C ranges over the grid and the formal cell.
    """
    rep = ChiLemmaReport(n)
    cells = grid_cells(n, n)
    regions: dict = defaultdict(set)
    for A in cells:
        for B in cells:
            if not (A[0] < B[0] and A[1] < B[1]):
                continue
            A2, B2 = (A[0], B[1]), (B[0], A[1])
            for C in cells + [INF_CELL]:
                lhs = chi(A, C) + chi(B, C)
                rhs = chi(A2, C) + chi(B2, C)
                rep.triples += 1
                if lhs < rhs:
                    rep.violations.append({"A": A, "B": B, "C": C, "lhs": lhs, "rhs": rhs})
                if C == INF_CELL:
                    rep.formal_cell[(lhs, rhs)] += 1
                else:
                    key = (_band(C[0], A[0], B[0]), _band(C[1], A[1], B[1]))
                    regions[key].add((lhs, rhs))
    rep.regions = dict(regions)
    return rep


# -- rank and dimension ------------------------------------------------------


def rank_exact(M) -> int:
    """Rank over the rationals by fraction-free (Bareiss) elimination on integers."""
    rows = [list(r) for r in M if any(r)]
    if not rows:
        return 0
    ncols = len(rows[0])
    rank = 0
    prev = 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]
        pr = rows[rank]
        for r in range(rank + 1, len(rows)):
            row = rows[r]
            row_c = row[col]
            for k in range(col, ncols):
                # exact division is guaranteed by Sylvester's identity
                row[k] = (pr[col] * row[k] - row_c * pr[k]) // prev
        prev = pr[col]
        rank += 1
        if rank == len(rows):
            break
    return rank


def coordinates(D: SkewDiagram) -> list:
    """Column labels of the exponent matrix: x1..xa, p1..pb, q1..qa, y1..yb."""
    a, b = D.a, D.b
    return (
        [SVariable(X, i) for i in range(1, a + 1)]
        + [SVariable(P, j) for j in range(1, b + 1)]
        + [SVariable(Q, i) for i in range(1, a + 1)]
        + [SVariable(Y, j) for j in range(1, b + 1)]
    )


def exponent_matrix(D: SkewDiagram) -> list[list[int]]:
    cols = coordinates(D)
    rows = []
    for t in enumerate_tvars(D):
        m = phi_star(t).as_dict()
        rows.append([m.get(v, 0) for v in cols])
    return rows


@dataclass
class DimensionReport:
    p_nw: int
    p_se: int
    formula_dim: int
    oracle_rank: int
    xy_rank: int
    pq_rank: int

    @property
    def agree(self) -> bool:
        return (
            self.formula_dim == self.oracle_rank
            and self.xy_rank == self.p_nw
            and self.pq_rank == self.p_se
        )

    def to_json(self) -> dict:
        return {
            "p_nw": self.p_nw,
            "p_se": self.p_se,
            "formula_dim": self.formula_dim,
            "oracle_rank": self.oracle_rank,
            "xy_rank": self.xy_rank,
            "pq_rank": self.pq_rank,
            "agree": self.agree,
        }


def krull_dimension(D: SkewDiagram) -> DimensionReport:
    cols = coordinates(D)
    kinds = [v.kind for v in cols]
    M = exponent_matrix(D)
    tvars = enumerate_tvars(D)
    xy_rows = [
        [e for e, k in zip(row, kinds) if k in (X, Y)]
        for row, t in zip(M, tvars) if t.is_two_index
    ]
    pq_rows = {
        tuple(e for e, k in zip(row, kinds) if k in (P, Q))
        for row, t in zip(M, tvars) if not t.is_two_index
    }
    nw, se = len(perimeter_nw(D)), len(perimeter_se(D))
    return DimensionReport(
        p_nw=nw,
        p_se=se,
        formula_dim=nw + se,
        oracle_rank=rank_exact(M),
        xy_rank=rank_exact(xy_rows),
        pq_rank=rank_exact(sorted(pq_rows)),
    )


def component_xy_ranks(D: SkewDiagram) -> list[int]:
    """xy rank of each edge-connected component, each renormalized to a diagram."""
    return [krull_dimension(as_skew_diagram(comp)).xy_rank for comp in edge_components(D)]

"""Acceptance criteria, one test each; the summary hook prints a pass/fail line per criterion."""

import random
import time
from itertools import combinations_with_replacement

import pytest

from conftest import ACCEPTANCE, FIG1, FIG4, rect
from skewsagbi.diagram import all_diagrams, is_legitimate_pair, random_diagram
from skewsagbi.errors import InvariantBreach
from skewsagbi.lifting import verify_all_liftings
from skewsagbi.rewrite import apply_rule
from skewsagbi.rring import RMonomial, enumerate_tvars, phi_monomial, phi_star_var, phi_var
from skewsagbi.sagbi import subduct
from skewsagbi.spoly import SMonomial, SPolynomial, p, parse_spoly, q, x, y
from skewsagbi.toric import (
    COL_BANDS,
    ROW_BANDS,
    NoetherianReport,
    krull_dimension,
    verify_chi_lemma,
    verify_fiber_invariance,
    verify_noetherian,
)

pytestmark = pytest.mark.slow

SMALL = list(all_diagrams(3, 3))


def record(n, ok, detail, elapsed):
    ACCEPTANCE[n] = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  ({elapsed:.2f}s)  {detail}"


def test_criterion_01_dimension_fig4():
    t0 = time.perf_counter()
    rep = krull_dimension(FIG4)
    dt = time.perf_counter() - t0
    ok = (rep.p_nw, rep.p_se, rep.formula_dim, rep.oracle_rank) == (16, 10, 26, 26) and dt < 5
    record(1, ok, f"formula {rep.formula_dim} = {rep.p_nw} + {rep.p_se}, oracle rank {rep.oracle_rank}", dt)
    assert ok


def test_criterion_02_complete_bipartite():
    t0 = time.perf_counter()
    got = {}
    for a, b in [(2, 2), (2, 3), (3, 4), (4, 4)]:
        rep = krull_dimension(rect(a, b))
        got[(a, b)] = (rep.formula_dim, rep.oracle_rank)
    dt = time.perf_counter() - t0
    want = {(a, b): (2 * (a + b - 2),) * 2 for a, b in got}
    ok = got == want and [v[0] for v in got.values()] == [4, 6, 10, 12] and dt < 5
    record(2, ok, f"dims {[v[0] for v in got.values()]} by both paths", dt)
    assert ok


def test_criterion_03_fig1_end_to_end():
    t0 = time.perf_counter()
    rep = krull_dimension(FIG1)
    legit = is_legitimate_pair(FIG1, (2, 3), (4, 2))
    not_legit = is_legitimate_pair(FIG1, (1, 6), (3, 5))
    dt = time.perf_counter() - t0
    ok = (rep.p_nw, rep.p_se, rep.formula_dim, rep.oracle_rank) == (9, 6, 15, 15) and legit and not not_legit
    record(3, ok, f"P_NW {rep.p_nw}, P_SE {rep.p_se}, dim {rep.formula_dim}/{rep.oracle_rank}, "
                  f"pair (2,3),(4,2) {legit}, pair (1,6),(3,5) {not_legit}", dt)
    assert ok


def test_criterion_04_fiber_invariance():
    t0 = time.perf_counter()
    bad, fibers = [], 0
    for D in SMALL + [FIG1]:
        rep = verify_fiber_invariance(D, 3)
        fibers += sum(rep.fibers.values())
        if not rep.ok:
            bad.append((str(D), rep.violations[:1], rep.structure_failures[:1]))
    dt = time.perf_counter() - t0
    ok = len(SMALL) == 155 and not bad and dt < 600
    record(4, ok, f"{len(SMALL) + 1} diagrams, {fibers} fibers to degree 3, {len(bad)} violations", dt)
    assert ok, bad[:3]


NOETHERIAN_DIAGRAMS = 60
NOETHERIAN_SAMPLES = 1800
NOETHERIAN_BASE_SEED = 1000


def test_criterion_05_noetherian():
    t0 = time.perf_counter()
    total = NoetherianReport(seed=NOETHERIAN_BASE_SEED)
    seeds = []
    for k in range(NOETHERIAN_DIAGRAMS):
        seed = NOETHERIAN_BASE_SEED + k
        D = random_diagram(random.Random(seed), 5, 5, min_cells=6)
        total.merge(verify_noetherian(D, NOETHERIAN_SAMPLES, seed, min_degree=4, max_degree=12))
        seeds.append(seed)
    dt = time.perf_counter() - t0
    big_enough = total.steps >= 10**5 and len(seeds) >= 50
    ok = big_enough and not total.non_decreasing and not total.chi_increases and total.terminates
    detail = (
        f"{total.steps} steps on {len(seeds)} diagrams (seeds {seeds[0]}..{seeds[-1]}); "
        f"chi#tau non-decreasing steps {len(total.non_decreasing)}, chi increases {len(total.chi_increases)}, "
        f"flipped-order non-decreasing {len(total.flipped_non_decreasing)}, "
        f"strategy mismatches {len(total.strategy_mismatches)}"
    )
    record(5, ok, detail, dt)
    assert big_enough, detail
    assert not total.chi_increases and total.terminates, detail
    # the plain tau order ties are a real obstruction, so this is left failing
    if total.non_decreasing:
        pytest.fail(detail + "; first: " + str(total.non_decreasing[0]), pytrace=False)


# 25 regions of the chi-sum figure, rows top to bottom, columns left to right
FIGURE_REGIONS = {
    ("above", "left"): (2, 2), ("above", "left-edge"): (1, 1), ("above", "middle"): (1, 1),
    ("above", "right-edge"): (0, 0), ("above", "right"): (0, 0),
    ("top", "left"): (1, 1), ("top", "left-edge"): (1, 0), ("top", "middle"): (1, 0),
    ("top", "right-edge"): (0, 0), ("top", "right"): (0, 0),
    ("middle", "left"): (1, 1), ("middle", "left-edge"): (1, 0), ("middle", "middle"): (2, 0),
    ("middle", "right-edge"): (1, 0), ("middle", "right"): (1, 1),
    ("bottom", "left"): (0, 0), ("bottom", "left-edge"): (0, 0), ("bottom", "middle"): (1, 0),
    ("bottom", "right-edge"): (1, 0), ("bottom", "right"): (1, 1),
    ("below", "left"): (0, 0), ("below", "left-edge"): (0, 0), ("below", "middle"): (1, 1),
    ("below", "right-edge"): (1, 1), ("below", "right"): (2, 2),
}


def test_criterion_06_chi_inequality():
    t0 = time.perf_counter()
    rep = verify_chi_lemma(6)
    dt = time.perf_counter() - t0
    regions = {(ROW_BANDS[r], COL_BANDS[c]): v for (r, c), v in rep.region_values().items()}
    tally = rep.tally()
    same = sum(a == b for a, b in FIGURE_REGIONS.values())
    drop = sum(a > b for a, b in FIGURE_REGIONS.values())
    ok = rep.ok and regions == FIGURE_REGIONS and tally == {"same": same, "drop": drop, "mixed": 0} and dt < 10
    record(6, ok, f"{rep.triples} triples, 0 violations: {rep.ok}; region pattern matches figure: "
                  f"{regions == FIGURE_REGIONS}; tally {tally['same']} same / {tally['drop']} drop; "
                  f"formal cell values {sorted(set(rep.formal_cell))}", dt)
    assert ok


def test_criterion_07_validity():
    t0 = time.perf_counter()
    breaches, pairs = [], 0
    for D in SMALL + [FIG1]:
        for s, t in combinations_with_replacement(enumerate_tvars(D), 2):
            pairs += 1
            try:
                apply_rule(D, s, t)
                apply_rule(D, t, s)
            except InvariantBreach as exc:
                breaches.append(str(exc))
    dt = time.perf_counter() - t0
    ok = not breaches
    record(7, ok, f"{pairs} variable pairs scanned, {len(breaches)} InvariantBreach", dt)
    assert ok, breaches[:3]


def test_criterion_08_lifting():
    t0 = time.perf_counter()
    rng = random.Random(8)
    diagrams = [FIG1] + [random_diagram(rng, 5, 5, min_cells=8) for _ in range(60)]
    instances, failures, no_case, by_diagram = 0, [], [], []
    for D in diagrams:
        rep = verify_all_liftings(D)
        instances += rep.instances
        failures += rep.failures
        no_case += rep.no_case
        by_diagram.append(rep.ok)
    dt = time.perf_counter() - t0
    ok = all(by_diagram) and len(diagrams) >= 51
    record(8, ok, f"{len(diagrams)} diagrams (random seed 8), {instances} rule instances, "
                  f"{len(failures)} lift failures, {len(no_case)} NoCaseMatches", dt)
    assert ok, (failures[:2], no_case[:2])


def test_criterion_09_leading_terms():
    t0 = time.perf_counter()
    rng = random.Random(9)
    diagrams = [FIG1, FIG4] + list(all_diagrams(3, 4)) + [random_diagram(rng, 5, 6) for _ in range(40)]
    bad, count = [], 0
    for D in diagrams:
        for t in enumerate_tvars(D):
            count += 1
            lead = phi_var(D, t).lead_term()
            if lead != (phi_star_var(t), 1):
                bad.append((str(D), str(t)))
            if not t.is_two_index and phi_star_var(t) != SMonomial.of(x(t.i1), p(t.j1), q(t.i2), y(t.j2)):
                bad.append((str(D), str(t), "shape"))
    dt = time.perf_counter() - t0
    record(9, not bad, f"{count} variables on {len(diagrams)} diagrams, {len(bad)} mismatches", dt)
    assert not bad, bad[:3]


def test_criterion_10_subduction():
    t0 = time.perf_counter()
    rng = random.Random(10)
    nonzero = []
    for k in range(200):
        D = FIG1 if k % 5 == 0 else random_diagram(rng, 5, 5)
        tv = enumerate_tvars(D)
        f = SPolynomial()
        for _ in range(rng.randint(1, 4)):
            g = RMonomial(rng.choice(tv) for _ in range(rng.randint(1, 3)))
            f.iadd(phi_monomial(D, g), rng.randint(-5, 5) or 1)
        if subduct(D, f):
            nonzero.append((str(D), str(f)))
    single = subduct(FIG1, parse_spoly("x1*y3"))
    dt = time.perf_counter() - t0
    ok = not nonzero and single == parse_spoly("p3*q1")
    record(10, ok, f"200 combinations (seed 10), {len(nonzero)} nonzero remainders; subduct(x1*y3) = {single}", dt)
    assert ok, nonzero[:2]

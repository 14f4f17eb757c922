import random
from itertools import product

import pytest
from hypothesis import given, strategies as st

from conftest import FIG1, FIG4, rect
from skewsagbi.diagram import (
    INF_CELL,
    Relation,
    SkewDiagram,
    adjacent_square_contained,
    all_diagrams,
    closure,
    compatibility,
    contains,
    diagram_from_json,
    edge_components,
    gamma_double_prime,
    gamma_prime,
    is_legitimate_pair,
    ne_sw_compatible,
    parse_diagram,
    perimeter_nw,
    perimeter_se,
    random_diagram,
    reflect_antidiagonal,
    reflect_antidiagonal_cell,
    rotate180,
)
from skewsagbi.errors import (
    CellOutsideDiagram,
    EmptyInput,
    LengthMismatch,
    MuExceedsLambda,
    NonPositiveLambda,
    NotNonincreasing,
)
from skewsagbi.rring import cell_set, parse_rmonomial


@st.composite
def diagrams(draw, max_rows=5, max_cols=6):
    return random_diagram(random.Random(draw(st.integers(0, 2**32))), max_rows, max_cols)


# -- construction ------------------------------------------------------------


def test_fig1_shape():
    assert (FIG1.a, FIG1.b) == (4, 6)
    assert len(FIG1.cells) == 16


def test_rectangle_is_full():
    assert rect(2, 2).cells == frozenset(product((1, 2), (1, 2)))


def test_lambda_must_be_nonincreasing():
    with pytest.raises(NotNonincreasing) as ei:
        parse_diagram([3, 4], [0, 0])
    assert (ei.value.which, ei.value.index) == ("lambda", 2)


@pytest.mark.parametrize("lam,mu,err", [
    ([3, 2], [0], LengthMismatch),
    ([3, 2], [2, 3], NotNonincreasing),
    ([2, 2], [3, 0], MuExceedsLambda),
    ([2, 0], [0, 0], NonPositiveLambda),
    ([], [], EmptyInput),
])
def test_malformed_inputs(lam, mu, err):
    with pytest.raises(err):
        parse_diagram(lam, mu)


def test_json_round_trip():
    assert diagram_from_json(FIG1.to_json()) == FIG1
    assert diagram_from_json({"lambda": [3, 1]}).mu == (0, 0)


def test_membership():
    assert contains(FIG1, (2, 3))
    assert not contains(FIG1, (3, 6))
    assert not contains(FIG1, (1, 2))


# -- relations ---------------------------------------------------------------


def test_compatibility_examples():
    assert compatibility((1, 5), (2, 3)) is Relation.STRICT_NE
    assert compatibility((1, 2), (2, 3)) is Relation.STRICT_NW
    assert compatibility(INF_CELL, (5, 1)).ne_sw_compatible
    assert ne_sw_compatible(INF_CELL, (5, 1))


@given(st.tuples(st.integers(1, 6), st.integers(1, 6)), st.tuples(st.integers(1, 6), st.integers(1, 6)))
def test_relation_classes_cover_every_pair(A, B):
    rel = compatibility(A, B)
    assert rel.ne_sw_compatible or rel.nw_se_compatible
    same_line = A[0] == B[0] or A[1] == B[1]
    assert (rel.ne_sw_compatible and rel.nw_se_compatible) == same_line


def test_legitimate_pairs():
    assert is_legitimate_pair(FIG1, (2, 3), (4, 2))
    assert not is_legitimate_pair(FIG1, (1, 6), (3, 5))
    for c in FIG1.cells:
        assert is_legitimate_pair(FIG1, c, c)


# -- closure -----------------------------------------------------------------


def closure_oracle(Z):
    # fixpoint over bounding boxes of comparable pairs, written without the library helpers
    cur = set(Z)
    while True:
        add = set()
        for (r1, c1), (r2, c2) in product(cur, cur):
            if r1 <= r2 and c1 <= c2:
                add |= {(r, c) for r in range(r1, r2 + 1) for c in range(c1, c2 + 1)}
        if add <= cur:
            return frozenset(cur)
        cur |= add


def test_closure_fig2():
    R = rect(4, 9)
    Z = cell_set(parse_rmonomial("T[1,1;3,2]*T[2,3;4,4]"))
    assert len(Z) == 8
    assert closure(R, Z) == frozenset(product(range(1, 5), range(1, 5)))


def test_closure_small_cases():
    assert closure(FIG1, {(2, 3)}) == {(2, 3)}
    assert closure(rect(2, 2), {(1, 1), (2, 2)}) == rect(2, 2).cells
    with pytest.raises(EmptyInput):
        closure(FIG1, set())
    with pytest.raises(CellOutsideDiagram):
        closure(FIG1, {(1, 1)})


@given(diagrams(), st.data())
def test_closure_properties(D, data):
    cells = sorted(D.cells)
    Z = set(data.draw(st.lists(st.sampled_from(cells), min_size=1, max_size=5)))
    C = closure(D, Z)
    assert Z <= C <= D.cells
    assert closure(D, C) == C
    assert C == closure_oracle(Z)


# -- perimeter and components --------------------------------------------------


def test_perimeter_counts():
    assert (len(perimeter_nw(FIG1)), len(perimeter_se(FIG1))) == (9, 6)
    assert (len(perimeter_nw(FIG4)), len(perimeter_se(FIG4))) == (16, 10)
    R = rect(2, 2)
    assert perimeter_nw(R) == {(1, 1), (1, 2), (2, 1)}
    assert perimeter_se(R) == {(2, 2)}


# cells read off the perimeter figure, row 1 on top
FIG4_NW = {(1, 9), (7, 3), (6, 3), (5, 3), (5, 4), (4, 5), (4, 4), (3, 5), (2, 5), (2, 6),
           (1, 6), (1, 7), (1, 8), (8, 1), (9, 1), (8, 2)}
FIG4_SE = {(2, 8), (3, 7), (3, 8), (5, 5), (4, 6), (3, 6), (6, 5), (7, 5), (7, 4), (9, 2)}


def test_fig4_perimeter_cells():
    assert perimeter_nw(FIG4) == FIG4_NW
    assert perimeter_se(FIG4) == FIG4_SE


def test_components():
    comps = edge_components(FIG4)
    assert len(comps) == 2
    assert sorted(map(len, comps)) == [4, 24]
    assert len(edge_components(rect(3, 4))) == 1
    assert edge_components(parse_diagram([2, 1], [1, 0])) == [frozenset({(1, 2)}), frozenset({(2, 1)})]


@given(diagrams())
def test_perimeter_identities(D):
    nw, se = perimeter_nw(D), perimeter_se(D)
    assert not nw & se
    assert perimeter_nw(gamma_double_prime(D)) == rotate180(D.a, D.b, se)
    for comp in edge_components(D):
        rows = {r for r, _ in comp}
        cols = {c for _, c in comp}
        assert len(nw & comp) == len(rows) + len(cols) - 1


# -- the dimension geometry ----------------------------------------------------

# Gamma' of the perimeter diagram, read off the left panel of its figure
FIG5_LEFT = {(2, 7), (2, 8), (3, 7), (3, 8), (4, 6), (5, 5), (6, 4), (6, 5), (7, 4), (7, 5), (3, 6), (9, 2)}
# right panel; the drawn frame is one column narrower than the diagram, see notes
FIG5_RIGHT = {(3, 5), (4, 5), (4, 4), (3, 4), (6, 3), (7, 3), (7, 1), (7, 2), (8, 1), (8, 2), (1, 7), (5, 4)}


def test_gamma_prime_fig5():
    assert gamma_prime(FIG4) == FIG5_LEFT
    assert gamma_double_prime(FIG4) == {(i, j + 1) for i, j in FIG5_RIGHT}
    assert len(perimeter_nw(gamma_double_prime(FIG4))) == 10


def test_gamma_prime_small():
    assert len(gamma_prime(FIG1)) == 7
    a, b = 3, 4
    assert gamma_prime(rect(a, b)) == frozenset(product(range(2, a + 1), range(2, b + 1)))


@given(diagrams())
def test_adjacent_square_matches_gamma_prime(D):
    for i, j in D.cells:
        assert adjacent_square_contained(D, i, j) == ((i, j) in gamma_prime(D))


# -- reflection and enumeration --------------------------------------------------


@given(diagrams())
def test_reflection_is_cellwise(D):
    E = reflect_antidiagonal(D)
    assert E.cells == {reflect_antidiagonal_cell(D.a, D.b, c) for c in D.cells}
    for c in D.cells:
        assert reflect_antidiagonal_cell(D.b, D.a, reflect_antidiagonal_cell(D.a, D.b, c)) == c
    assert len(perimeter_nw(E)) + len(perimeter_se(E)) == len(perimeter_nw(D)) + len(perimeter_se(D))


def test_enumeration_counts():
    ds = list(all_diagrams(3, 3))
    assert len(ds) == len(set(ds)) == 155
    assert all(isinstance(D, SkewDiagram) and D.cells for D in ds)


def test_random_diagram_is_reproducible():
    a = [random_diagram(random.Random(5), 5, 5) for _ in range(3)]
    b = [random_diagram(random.Random(5), 5, 5) for _ in range(3)]
    assert a == b
    rng = random.Random(1)
    sizes = [len(random_diagram(rng, 5, 5).cells) for _ in range(200)]
    assert max(sizes) >= 12

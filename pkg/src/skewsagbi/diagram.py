"""Skew Ferrers diagrams and their cell geometry.

Cells use matrix convention: ``(row, col)`` with row 1 at the top.  The only
non-finite cell is ``INF_CELL = (POS_INF, NEG_INF)``, which sits strictly
south-west of every finite cell.
"""

from __future__ import annotations

import enum
import math
import random
from collections import deque
from dataclasses import dataclass, field
from itertools import product
from typing import Iterable, Iterator

from .errors import (
    CellOutsideDiagram,
    DiagramError,
    EmptyInput,
    LengthMismatch,
    MuExceedsLambda,
    NonPositiveLambda,
    NotNonincreasing,
)


class Ext(enum.Enum):
    """Extended coordinate values.  Ordered, never added or subtracted."""

    NEG_INF = "-inf"
    POS_INF = "+inf"

    def __float__(self) -> float:
        return -math.inf if self is Ext.NEG_INF else math.inf

    def __lt__(self, other):
        if isinstance(other, (Ext, int)):
            return float(self) < float(other)
        return NotImplemented

    def __le__(self, other):
        if isinstance(other, (Ext, int)):
            return float(self) <= float(other)
        return NotImplemented

    def __gt__(self, other):
        if isinstance(other, (Ext, int)):
            return float(self) > float(other)
        return NotImplemented

    def __ge__(self, other):
        if isinstance(other, (Ext, int)):
            return float(self) >= float(other)
        return NotImplemented

    def __repr__(self) -> str:
        return self.value

    __str__ = __repr__


NEG_INF = Ext.NEG_INF
POS_INF = Ext.POS_INF
INF_CELL = (POS_INF, NEG_INF)

Cell = tuple  # (row, col); row may be POS_INF and col NEG_INF together


@dataclass(frozen=True)
class SkewDiagram:
    lam: tuple[int, ...]
    mu: tuple[int, ...]
    cells: frozenset = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        cells = frozenset(
            (i, j)
            for i, (l, m) in enumerate(zip(self.lam, self.mu), start=1)
            for j in range(m + 1, l + 1)
        )
        object.__setattr__(self, "cells", cells)

    @property
    def a(self) -> int:
        return len(self.lam)

    @property
    def b(self) -> int:
        return self.lam[0]

    def __contains__(self, cell) -> bool:
        return cell in self.cells

    def __len__(self) -> int:
        return len(self.cells)

    def rows(self) -> Iterator[tuple[int, range]]:
        for i, (l, m) in enumerate(zip(self.lam, self.mu), start=1):
            yield i, range(m + 1, l + 1)

    def sorted_cells(self) -> list:
        return sorted(self.cells)

    def to_json(self) -> dict:
        return {"lambda": list(self.lam), "mu": list(self.mu)}

    def __str__(self) -> str:
        lam = ",".join(map(str, self.lam))
        mu = ",".join(map(str, self.mu))
        return f"({lam})/({mu})"


def parse_diagram(lam: Iterable[int], mu: Iterable[int] | None = None) -> SkewDiagram:
    """Validate ``lam`` and ``mu`` and build the diagram.

    ``mu`` defaults to all zeros.  Indices in error messages are 1-based.

    >>> parse_diagram([6, 5, 5, 3], [2, 1, 0, 0]).b
    6
    """
    lam = tuple(int(v) for v in lam)
    mu = tuple(0 for _ in lam) if mu is None else tuple(int(v) for v in mu)
    if not lam:
        raise EmptyInput("lambda must be non-empty")
    if len(lam) != len(mu):
        raise LengthMismatch(len(lam), len(mu))
    for k, l in enumerate(lam, start=1):
        if l < 1:
            raise NonPositiveLambda(k)
    for name, seq in (("lambda", lam), ("mu", mu)):
        for k in range(1, len(seq)):
            if seq[k] > seq[k - 1]:
                raise NotNonincreasing(name, k + 1)
    for k, (l, m) in enumerate(zip(lam, mu), start=1):
        if m < 0:
            raise DiagramError(f"mu must be non-negative, row {k}")
        if m > l:
            raise MuExceedsLambda(k)
    return SkewDiagram(lam, mu)


def diagram_from_json(obj: dict) -> SkewDiagram:
    if not isinstance(obj, dict) or "lambda" not in obj:
        raise EmptyInput('diagram JSON needs a "lambda" list')
    return parse_diagram(obj["lambda"], obj.get("mu"))


def contains(D: SkewDiagram, c) -> bool:
    return c in D.cells


# -- positional relations ---------------------------------------------------


class Relation(enum.Enum):
    """Position of cell A relative to cell B."""

    EQUAL = "equal"
    STRICT_NE = "strictly-NE"
    WEAK_NE = "weakly-NE"
    STRICT_SW = "strictly-SW"
    WEAK_SW = "weakly-SW"
    STRICT_NW = "strictly-NW"
    STRICT_SE = "strictly-SE"

    @property
    def ne_sw_compatible(self) -> bool:
        return self in _NE_SW

    @property
    def nw_se_compatible(self) -> bool:
        # same row or same column counts for both axes
        return self in _NW_SE


_NE_SW = {Relation.EQUAL, Relation.STRICT_NE, Relation.WEAK_NE, Relation.STRICT_SW, Relation.WEAK_SW}
_NW_SE = {Relation.EQUAL, Relation.WEAK_NE, Relation.WEAK_SW, Relation.STRICT_NW, Relation.STRICT_SE}


def weakly_ne(A, B) -> bool:
    """A lies weakly north-east of B."""
    return A[0] <= B[0] and A[1] >= B[1]


def strictly_ne(A, B) -> bool:
    return A[0] < B[0] and A[1] > B[1]


def ne_sw_compatible(A, B) -> bool:
    return weakly_ne(A, B) or weakly_ne(B, A)


def nw_se_compatible(A, B) -> bool:
    return (A[0] <= B[0] and A[1] <= B[1]) or (B[0] <= A[0] and B[1] <= A[1])


def compatibility(A, B) -> Relation:
    if A == B:
        return Relation.EQUAL
    if strictly_ne(A, B):
        return Relation.STRICT_NE
    if strictly_ne(B, A):
        return Relation.STRICT_SW
    if weakly_ne(A, B):
        return Relation.WEAK_NE
    if weakly_ne(B, A):
        return Relation.WEAK_SW
    if A[0] < B[0]:
        return Relation.STRICT_NW
    return Relation.STRICT_SE


def rectangle(A, B) -> set:
    """All cells of the rectangle spanned by two finite cells."""
    r0, r1 = sorted((A[0], B[0]))
    c0, c1 = sorted((A[1], B[1]))
    return {(r, c) for r in range(r0, r1 + 1) for c in range(c0, c1 + 1)}


def is_legitimate_pair(D: SkewDiagram, A, B) -> bool:
    if not weakly_ne(A, B):
        return False
    cells = D.cells
    return (
        A in cells
        and B in cells
        and (B[0], A[1]) in cells
        and (A[0], B[1]) in cells
    )


def quad_in_diagram(D: SkewDiagram, i1: int, j1: int, i2: int, j2: int) -> bool:
    """Whether (i1, j1; i2, j2) indexes a 4-index variable: i1 < i2, j1 < j2, all corners in D."""
    cells = D.cells
    return (
        i1 < i2
        and j1 < j2
        and (i1, j1) in cells
        and (i2, j2) in cells
        and (i1, j2) in cells
        and (i2, j1) in cells
    )


def closure(D: SkewDiagram, Z: Iterable) -> frozenset:
    """Smallest superset of ``Z`` closed under filling NW-SE rectangles."""
    current = set(Z)
    if not current:
        raise EmptyInput("closure of an empty cell set")
    for c in current:
        if c not in D.cells:
            raise CellOutsideDiagram(c)
    changed = True
    while changed:
        changed = False
        cells = sorted(current)
        for idx, A in enumerate(cells):
            for B in cells[idx + 1:]:
                if not nw_se_compatible(A, B):
                    continue
                new = rectangle(A, B) - current
                if new:
                    # rectangles of NW-SE pairs in a skew diagram stay inside it
                    assert new <= D.cells, (A, B, new - D.cells)
                    current |= new
                    changed = True
    return frozenset(current)


# -- perimeter cells and the dimension geometry -----------------------------


def _cellset(D) -> frozenset:
    return D.cells if isinstance(D, SkewDiagram) else frozenset(D)


def perimeter_nw(D) -> frozenset:
    """Cells whose north-west neighbour is missing.  Accepts a diagram or cell set."""
    cells = _cellset(D)
    return frozenset(c for c in cells if (c[0] - 1, c[1] - 1) not in cells)


def perimeter_se(D) -> frozenset:
    cells = _cellset(D)
    return frozenset(
        c for c in cells
        if (c[0] - 1, c[1] - 1) in cells and (c[0] + 1, c[1] + 1) not in cells
    )


def edge_components(D) -> list[frozenset]:
    """Classes of cells under horizontal/vertical adjacency, sorted by first cell."""
    cells = _cellset(D)
    seen: set = set()
    components = []
    for start in sorted(cells):
        if start in seen:
            continue
        comp = {start}
        queue = deque([start])
        seen.add(start)
        while queue:
            r, c = queue.popleft()
            for nb in ((r - 1, c), (r + 1, c), (r, c - 1), (r, c + 1)):
                if nb in cells and nb not in seen:
                    seen.add(nb)
                    comp.add(nb)
                    queue.append(nb)
        components.append(frozenset(comp))
    return components


def as_skew_diagram(cells: Iterable) -> SkewDiagram:
    """Shift a cell set to start at row 1 / column 1 and read it as a skew diagram.

    Raises a ``DiagramError`` when the rows do not form a skew shape.
    """
    cells = set(cells)
    if not cells:
        raise EmptyInput("no cells")
    r0 = min(r for r, _ in cells)
    c0 = min(c for _, c in cells)
    r1 = max(r for r, _ in cells)
    lam, mu = [], []
    for r in range(r0, r1 + 1):
        cols = sorted(c - c0 + 1 for rr, c in cells if rr == r)
        if not cols:
            raise NotNonincreasing("lambda", r - r0 + 1)
        if cols != list(range(cols[0], cols[-1] + 1)):
            raise NotNonincreasing("mu", r - r0 + 1)
        lam.append(cols[-1])
        mu.append(cols[0] - 1)
    return parse_diagram(lam, mu)


def gamma_prime(D: SkewDiagram) -> frozenset:
    return D.cells - perimeter_nw(D)


def adjacent_square_contained(D, i: int, j: int) -> bool:
    cells = _cellset(D)
    return all(c in cells for c in ((i - 1, j - 1), (i - 1, j), (i, j - 1), (i, j)))


def rotate180(a: int, b: int, Z: Iterable) -> frozenset:
    return frozenset((a + 1 - i, b + 1 - j) for i, j in Z)


def gamma_double_prime(D: SkewDiagram) -> frozenset:
    return rotate180(D.a, D.b, gamma_prime(D))


def reflect_antidiagonal_cell(a: int, b: int, cell):
    """Reflect through the anti-diagonal of the a-by-b box (result lives in a b-by-a box)."""
    i, j = cell
    return (b + 1 - j, a + 1 - i)


def reflect_antidiagonal(D: SkewDiagram) -> SkewDiagram:
    """The anti-diagonal mirror image of ``D``, cell for cell.

    Trailing empty rows are dropped; interior empty rows are pinned so that
    both sequences stay monotone.
    """
    a, b = D.a, D.b
    cells = {reflect_antidiagonal_cell(a, b, c) for c in D.cells}
    last = max(r for r, _ in cells)
    lam: list = []
    mu: list = []
    for r in range(1, last + 1):
        cols = [c for rr, c in cells if rr == r]
        if cols:
            lam.append(max(cols))
            mu.append(min(cols) - 1)
        else:
            lam.append(None)
            mu.append(None)
    for r in range(len(lam) - 1, -1, -1):
        if lam[r] is None:
            lam[r] = mu[r] = lam[r + 1]
    return parse_diagram(lam, mu)


# -- diagram families used by the verification suites ----------------------


def _nonincreasing(length: int, hi: int, lo: int = 0) -> Iterator[tuple[int, ...]]:
    if length == 0:
        yield ()
        return
    for first in range(hi, lo - 1, -1):
        for rest in _nonincreasing(length - 1, first, lo):
            yield (first,) + rest


def all_diagrams(max_rows: int, max_cols: int, *, nonempty: bool = True) -> Iterator[SkewDiagram]:
    """Every valid (lambda, mu) with a <= max_rows and b <= max_cols."""
    for a in range(1, max_rows + 1):
        for lam in _nonincreasing(a, max_cols, 1):
            for mu in _nonincreasing(a, lam[0], 0):
                if any(m > l for l, m in zip(lam, mu)):
                    continue
                D = SkewDiagram(lam, mu)
                if nonempty and not D.cells:
                    continue
                yield D


def random_diagram(rng: random.Random, max_rows: int = 5, max_cols: int = 6, *, min_cells: int = 1) -> SkewDiagram:
    """Uniform a and b, then (lambda, mu) uniform among valid pairs with lambda_1 = b, by rejection."""
    while True:
        a = rng.randint(1, max_rows)
        b = rng.randint(1, max_cols)
        for _ in range(100_000):
            lam = [b] + [rng.randint(1, b) for _ in range(a - 1)]
            mu = [rng.randint(0, b) for _ in range(a)]
            if any(lam[k] > lam[k - 1] or mu[k] > mu[k - 1] for k in range(1, a)):
                continue
            if any(m > l for l, m in zip(lam, mu)):
                continue
            break
        else:
            continue
        D = SkewDiagram(tuple(lam), tuple(mu))
        if len(D.cells) >= min_cells:
            return D


def grid_cells(rows: int, cols: int) -> list:
    return list(product(range(1, rows + 1), range(1, cols + 1)))

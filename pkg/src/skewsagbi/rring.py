"""The presentation ring R: T-variables, the maps phi and phi*, chi, and tau.

Every variable is stored as a 4-tuple ``(i1, j1, i2, j2)``.  A 2-index
variable T_{i,j} is ``(i, NEG_INF, POS_INF, j)``, so that its QP cell is the
formal cell ``(POS_INF, NEG_INF)`` and p_{-inf} = q_{+inf} = 1 under phi*.
"""

from __future__ import annotations

import re
from functools import lru_cache
from typing import Iterable, Iterator, NamedTuple

from .diagram import INF_CELL, NEG_INF, POS_INF, SkewDiagram, ne_sw_compatible, quad_in_diagram
from .errors import InvalidTVariable, ParseError
from .spoly import ONE, SMonomial, SPolynomial, generator_f, generator_f4, p, q, x, y


class TIndex(NamedTuple):
    i1: object
    j1: object
    i2: object
    j2: object

    @property
    def is_two_index(self) -> bool:
        return self.j1 is NEG_INF

    def __str__(self) -> str:
        if self.is_two_index:
            return f"T[{self.i1},{self.j2}]"
        return f"T[{self.i1},{self.j1};{self.i2},{self.j2}]"

    def __repr__(self) -> str:
        return str(self)


def T2(i: int, j: int) -> TIndex:
    return TIndex(i, NEG_INF, POS_INF, j)


def T4(i1: int, j1: int, i2: int, j2: int) -> TIndex:
    return TIndex(i1, j1, i2, j2)


def is_valid_tvar(D: SkewDiagram, t: TIndex) -> bool:
    if t.is_two_index:
        return t.i2 is POS_INF and isinstance(t.i1, int) and (t.i1, t.j2) in D.cells
    if not all(isinstance(v, int) for v in t):
        return False
    return quad_in_diagram(D, t.i1, t.j1, t.i2, t.j2)


def xy(t: TIndex):
    return (t.i1, t.j2)


def qp(t: TIndex):
    return (t.i2, t.j1)


def cells_of(t: TIndex) -> frozenset:
    if t.is_two_index:
        return frozenset({(t.i1, t.j2)})
    return frozenset({(t.i1, t.j1), (t.i1, t.j2), (t.i2, t.j1), (t.i2, t.j2)})


@lru_cache(maxsize=None)
def tau_key(t: TIndex) -> tuple:
    """Ascending key means tau-descending variables: compare (i1, i2, j1, j2), smaller wins."""
    return (float(t.i1), float(t.i2), float(t.j1), float(t.j2))


def tau_compare(t1: TIndex, t2: TIndex) -> int:
    k1, k2 = tau_key(t1), tau_key(t2)
    if k1 == k2:
        return 0
    return 1 if k1 < k2 else -1


@lru_cache(maxsize=64)
def enumerate_tvars(D: SkewDiagram) -> tuple[TIndex, ...]:
    """All variables of R over D in tau-descending order."""
    out = [T2(i, j) for i, j in D.cells]
    cells = sorted(D.cells)
    for i1, j1 in cells:
        for i2, j2 in cells:
            if quad_in_diagram(D, i1, j1, i2, j2):
                out.append(T4(i1, j1, i2, j2))
    return tuple(sorted(out, key=tau_key))


# -- monomials and polynomials of R -----------------------------------------


class RMonomial:
    """Multiset of TIndex values kept in tau-descending order."""

    __slots__ = ("factors", "_hash")

    def __init__(self, factors: Iterable[TIndex] = ()):
        self.factors = tuple(sorted(factors, key=tau_key))
        self._hash = hash(self.factors)

    @property
    def degree(self) -> int:
        return len(self.factors)

    def __mul__(self, other: "RMonomial") -> "RMonomial":
        return RMonomial(self.factors + other.factors)

    def __eq__(self, other) -> bool:
        return isinstance(other, RMonomial) and self.factors == other.factors

    def __hash__(self) -> int:
        return self._hash

    def __iter__(self) -> Iterator[TIndex]:
        return iter(self.factors)

    def __len__(self) -> int:
        return len(self.factors)

    def replace(self, i: int, j: int, new: Iterable[TIndex]) -> "RMonomial":
        """Drop the factors at positions i and j and insert ``new``."""
        rest = [t for k, t in enumerate(self.factors) if k != i and k != j]
        return RMonomial(rest + list(new))

    def __str__(self) -> str:
        if not self.factors:
            return "1"
        return "*".join(map(str, self.factors))

    def __repr__(self) -> str:
        return f"RMonomial({self})"


UNIT = RMonomial()


class RPolynomial:
    __slots__ = ("terms",)

    def __init__(self, terms=None):
        acc: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for m, c in items:
                if not isinstance(m, RMonomial):
                    m = RMonomial(m)
                acc[m] = acc.get(m, 0) + c
        self.terms = {m: c for m, c in acc.items() if c}

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __add__(self, other: "RPolynomial") -> "RPolynomial":
        return RPolynomial(list(self.terms.items()) + list(other.terms.items()))

    def __neg__(self) -> "RPolynomial":
        return RPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other: "RPolynomial") -> "RPolynomial":
        return self + (-other)

    def __eq__(self, other) -> bool:
        return isinstance(other, RPolynomial) and self.terms == other.terms

    def monomials(self) -> list[RMonomial]:
        return list(self.terms)

    def variables(self) -> set[TIndex]:
        return {t for m in self.terms for t in m}

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, (m, c) in enumerate(self.terms.items()):
            mag = abs(c)
            body = str(m) if mag == 1 else f"{mag}*{m}"
            if k == 0:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f" {'-' if c < 0 else '+'} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"RPolynomial({self})"


_TVAR = re.compile(r"^T\[(\d+),(\d+)(?:;(\d+),(\d+))?\]$")


def parse_tvar(text: str) -> TIndex:
    mt = _TVAR.match(text.strip())
    if not mt:
        raise ParseError(f"bad T-variable {text!r}")
    a, b, c, d = mt.groups()
    if c is None:
        return T2(int(a), int(b))
    return T4(int(a), int(b), int(c), int(d))


def parse_rmonomial(text: str) -> RMonomial:
    src = text.replace(" ", "")
    if src == "1":
        return UNIT
    factors = []
    for piece in src.split("*"):
        mt = re.match(r"^(T\[[^\]]*\])(?:\^(\d+))?$", piece)
        if not mt:
            raise ParseError(f"bad factor {piece!r}")
        factors.extend([parse_tvar(mt.group(1))] * int(mt.group(2) or 1))
    return RMonomial(factors)


def parse_rpoly(text: str) -> RPolynomial:
    src = text.replace("−", "-").replace(" ", "")
    if src == "0":
        return RPolynomial()
    if src[0] not in "+-":
        src = "+" + src
    # split on signs that are not inside brackets (indices carry no signs)
    pieces = re.split(r"([+-])", src)[1:]
    terms = []
    for sign, body in zip(pieces[0::2], pieces[1::2]):
        coef = 1
        mt = re.match(r"^(\d+)\*(.*)$", body)
        if mt:
            coef, body = int(mt.group(1)), mt.group(2)
        terms.append((parse_rmonomial(body), -coef if sign == "-" else coef))
    return RPolynomial(terms)


# -- phi and phi* -----------------------------------------------------------


@lru_cache(maxsize=None)
def phi_star_var(t: TIndex) -> SMonomial:
    if t.is_two_index:
        return SMonomial.of(x(t.i1), y(t.j2))
    return SMonomial.of(x(t.i1), p(t.j1), q(t.i2), y(t.j2))


def phi_star(g) -> SMonomial:
    """Product of x_{i1} p_{j1} q_{i2} y_{j2} over the factors of ``g``."""
    if isinstance(g, TIndex):
        return phi_star_var(g)
    out = ONE
    for t in g:
        out = out * phi_star_var(t)
    return out


@lru_cache(maxsize=200_000)
def phi_var(D: SkewDiagram, t: TIndex) -> SPolynomial:
    if not is_valid_tvar(D, t):
        raise InvalidTVariable(t)
    if t.is_two_index:
        return generator_f(D, t.i1, t.j2)
    return generator_f4(D, t.i1, t.j1, t.i2, t.j2)


@lru_cache(maxsize=200_000)
def phi_monomial(D: SkewDiagram, g: RMonomial) -> SPolynomial:
    out = SPolynomial.constant(1)
    for t in g:
        out = out * phi_var(D, t)
    return out


def phi(D: SkewDiagram, F) -> SPolynomial:
    """Substitute the generators of H for the variables of ``F`` and expand."""
    if isinstance(F, TIndex):
        return phi_var(D, F)
    if isinstance(F, RMonomial):
        return phi_monomial(D, F)
    out = SPolynomial()
    for m, c in F.terms.items():
        out.iadd(phi_monomial(D, m), c)
    return out


def cell_set(F) -> frozenset:
    """Union of the cells of every variable occurring in ``F``."""
    if isinstance(F, TIndex):
        return cells_of(F)
    if isinstance(F, RMonomial):
        tvars: Iterable[TIndex] = F.factors
    else:
        tvars = F.variables()
    out: set = set()
    for t in tvars:
        out |= cells_of(t)
    return frozenset(out)


# -- chi and the term orders -------------------------------------------------


@lru_cache(maxsize=1 << 16)
def chi(A, B) -> int:
    """0 when A and B are weakly NE-SW-compatible, else 1."""
    return 0 if ne_sw_compatible(A, B) else 1


@lru_cache(maxsize=1 << 16)
def chi_monomial(g: RMonomial) -> int:
    fs = g.factors
    total = 0
    for k, s in enumerate(fs):
        xs, qs = (s.i1, s.j2), (s.i2, s.j1)
        for t in fs[k + 1:]:
            total += chi(xs, (t.i1, t.j2)) + chi(qs, (t.i2, t.j1))
    return total


def flipped_tau_key(t: TIndex) -> tuple:
    """Variable order comparing (i1, i2, -j1, -j2); smaller key means bigger variable.

    Under the plain tau order some reductions between chi-tied monomials go
    upwards. With this order every reduction step goes strictly down, which
    is what normal_form enforces.
    """
    return (float(t.i1), float(t.i2), -float(t.j1), -float(t.j2))


def tau_monomial_compare(g1: RMonomial, g2: RMonomial, key=tau_key) -> int:
    """Graded reverse lexicographic comparison over the variable order given by ``key``."""
    if g1.degree != g2.degree:
        return 1 if g1.degree > g2.degree else -1
    diff: dict = {}
    for t in g1:
        diff[t] = diff.get(t, 0) + 1
    for t in g2:
        diff[t] = diff.get(t, 0) - 1
    nonzero = [t for t, d in diff.items() if d]
    if not nonzero:
        return 0
    smallest = max(nonzero, key=key)
    return 1 if diff[smallest] < 0 else -1


def chi_tau_compare(g1: RMonomial, g2: RMonomial, key=tau_key) -> int:
    c1, c2 = chi_monomial(g1), chi_monomial(g2)
    if c1 != c2:
        return 1 if c1 > c2 else -1
    return tau_monomial_compare(g1, g2, key)

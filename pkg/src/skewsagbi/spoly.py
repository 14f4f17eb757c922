"""Exact sparse polynomials over the integers in S = K[x, p, q, y].

Variables are ordered x1 > ... > xa > p1 > ... > pb > q1 > ... > qa > y1 > ... > yb,
and monomials are compared lexicographically with respect to that order.
The block order does not depend on a or b, so one set of classes serves
every diagram.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, NamedTuple

from .diagram import SkewDiagram, quad_in_diagram
from .errors import CellOutsideDiagram, InvalidTVariable, ParseError

X, P, Q, Y = 0, 1, 2, 3
KIND_NAMES = "xpqy"


class SVariable(NamedTuple):
    kind: int
    index: int

    def __str__(self) -> str:
        return f"{KIND_NAMES[self.kind]}{self.index}"


def x(i: int) -> SVariable:
    return SVariable(X, i)


def p(j: int) -> SVariable:
    return SVariable(P, j)


def q(i: int) -> SVariable:
    return SVariable(Q, i)


def y(j: int) -> SVariable:
    return SVariable(Y, j)


# Larger than every real (variable, -exponent) entry of a lex key.
_KEY_END = (SVariable(len(KIND_NAMES), 0), 0)


class SMonomial:
    """A finitely supported exponent vector; zero exponents are never stored."""

    __slots__ = ("powers", "_hash", "_key")

    def __init__(self, powers: Iterable[tuple[SVariable, int]] = ()):
        merged: dict = {}
        for v, e in powers:
            if e:
                merged[v] = merged.get(v, 0) + e
        for v, e in merged.items():
            if e < 0:
                raise ValueError(f"negative exponent on {v}")
        self.powers = tuple(sorted((v, e) for v, e in merged.items() if e))
        self._hash = hash(self.powers)
        self._key = None

    @classmethod
    def of(cls, *variables: SVariable) -> "SMonomial":
        return cls((v, 1) for v in variables)

    @classmethod
    def _from_sorted(cls, powers: tuple) -> "SMonomial":
        m = cls.__new__(cls)
        m.powers = powers
        m._hash = hash(powers)
        m._key = None
        return m

    def __mul__(self, other: "SMonomial") -> "SMonomial":
        if not other.powers:
            return self
        if not self.powers:
            return other
        merged = dict(self.powers)
        for v, e in other.powers:
            merged[v] = merged.get(v, 0) + e
        return SMonomial._from_sorted(tuple(sorted(merged.items())))

    def __eq__(self, other) -> bool:
        return isinstance(other, SMonomial) and self.powers == other.powers

    def __hash__(self) -> int:
        return self._hash

    def exponent(self, v: SVariable) -> int:
        for w, e in self.powers:
            if w == v:
                return e
        return 0

    def as_dict(self) -> dict:
        return dict(self.powers)

    @property
    def degree(self) -> int:
        return sum(e for _, e in self.powers)

    def lex_key(self) -> tuple:
        """Sort key that is *ascending* when the monomial is lex-*descending*."""
        if self._key is None:
            self._key = tuple((v, -e) for v, e in self.powers) + (_KEY_END,)
        return self._key

    def __str__(self) -> str:
        if not self.powers:
            return "1"
        return "*".join(str(v) if e == 1 else f"{v}^{e}" for v, e in self.powers)

    def __repr__(self) -> str:
        return f"SMonomial({self})"


ONE = SMonomial()


def lex_compare(m1: SMonomial, m2: SMonomial) -> int:
    """Return 1, 0 or -1 as ``m1`` is lex-greater, equal or smaller than ``m2``."""
    k1, k2 = m1.lex_key(), m2.lex_key()
    if k1 == k2:
        return 0
    return 1 if k1 < k2 else -1


class SPolynomial:
    """Integer combination of SMonomials; zero coefficients are never stored."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms: dict = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for m, c in items:
                if c:
                    self.terms[m] = self.terms.get(m, 0) + c
            self.terms = {m: c for m, c in self.terms.items() if c}

    @classmethod
    def monomial(cls, m: SMonomial, c: int = 1) -> "SPolynomial":
        return cls({m: c})

    @classmethod
    def constant(cls, c: int) -> "SPolynomial":
        return cls({ONE: c})

    def copy(self) -> "SPolynomial":
        out = SPolynomial()
        out.terms = dict(self.terms)
        return out

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def _coerce(self, other) -> "SPolynomial":
        if isinstance(other, SPolynomial):
            return other
        if isinstance(other, int):
            return SPolynomial.constant(other)
        if isinstance(other, SMonomial):
            return SPolynomial.monomial(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = self.copy()
        out.iadd(other)
        return out

    __radd__ = __add__

    def __neg__(self) -> "SPolynomial":
        out = SPolynomial()
        out.terms = {m: -c for m, c in self.terms.items()}
        return out

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        out = self.copy()
        out.iadd(other, -1)
        return out

    def __rsub__(self, other):
        return (-self) + other

    def iadd(self, other: "SPolynomial", scale: int = 1) -> None:
        """In-place ``self += scale * other``."""
        terms = self.terms
        for m, c in other.terms.items():
            v = terms.get(m, 0) + scale * c
            if v:
                terms[m] = v
            else:
                terms.pop(m, None)

    def __mul__(self, other):
        if isinstance(other, int):
            if not other:
                return SPolynomial()
            out = SPolynomial()
            out.terms = {m: c * other for m, c in self.terms.items()}
            return out
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        acc: dict = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = m1 * m2
                acc[m] = acc.get(m, 0) + c1 * c2
        out = SPolynomial()
        out.terms = {m: c for m, c in acc.items() if c}
        return out

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "SPolynomial":
        out = SPolynomial.constant(1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is NotImplemented:
            return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def sorted_terms(self) -> list[tuple[SMonomial, int]]:
        """Terms in lex-descending order."""
        return sorted(self.terms.items(), key=lambda mc: mc[0].lex_key())

    def lead_term(self) -> tuple[SMonomial, int]:
        if not self.terms:
            raise ValueError("the zero polynomial has no lead term")
        m = min(self.terms, key=SMonomial.lex_key)
        return m, self.terms[m]

    def lead_monomial(self) -> SMonomial:
        return self.lead_term()[0]

    def degrees(self) -> set[int]:
        return {m.degree for m in self.terms}

    def __iter__(self) -> Iterator[tuple[SMonomial, int]]:
        return iter(self.sorted_terms())

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for k, (m, c) in enumerate(self.sorted_terms()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if m == ONE:
                body = str(mag)
            elif mag == 1:
                body = str(m)
            else:
                body = f"{mag}*{m}"
            if k == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self) -> str:
        return f"SPolynomial({self})"


_TERM_SPLIT = re.compile(r"([+-])")
_FACTOR = re.compile(r"^(?:([xpqy])(\d+)(?:\^(\d+))?|(\d+))$")


def parse_spoly(text: str) -> SPolynomial:
    """Parse text such as ``"x1*y3 - p3*q1"`` or ``"2*x1^2*y3 + 1"``."""
    src = text.replace("−", "-").replace(" ", "").replace("\t", "").replace("\n", "")
    if not src:
        raise ParseError("empty polynomial")
    if src == "0":
        return SPolynomial()
    if src[0] not in "+-":
        src = "+" + src
    pieces = _TERM_SPLIT.split(src)[1:]
    out = SPolynomial()
    for sign, body in zip(pieces[0::2], pieces[1::2]):
        if not body:
            raise ParseError(f"dangling sign in {text!r}")
        coef = 1
        powers = []
        for factor in body.split("*"):
            mt = _FACTOR.match(factor)
            if not mt:
                raise ParseError(f"bad factor {factor!r} in {text!r}")
            kind, idx, exp, num = mt.groups()
            if num is not None:
                coef *= int(num)
            else:
                if int(idx) < 1:
                    raise ParseError(f"variable index must be positive: {factor!r}")
                powers.append((SVariable(KIND_NAMES.index(kind), int(idx)), int(exp or 1)))
        out.iadd(SPolynomial.monomial(SMonomial(powers), coef), -1 if sign == "-" else 1)
    return out


# -- the generators of the binomial edge ring -------------------------------


def generator_f(D: SkewDiagram, i: int, j: int) -> SPolynomial:
    """x_i*y_j - p_j*q_i for a cell (i, j) of the diagram."""
    if (i, j) not in D.cells:
        raise CellOutsideDiagram((i, j))
    return SPolynomial({SMonomial.of(x(i), y(j)): 1, SMonomial.of(p(j), q(i)): -1})


def generator_f4(D: SkewDiagram, i1: int, j1: int, i2: int, j2: int) -> SPolynomial:
    """f_{i1,j1} f_{i2,j2} - f_{i1,j2} f_{i2,j1}, expanded."""
    if not quad_in_diagram(D, i1, j1, i2, j2):
        raise InvalidTVariable((i1, j1, i2, j2))
    return (
        generator_f(D, i1, j1) * generator_f(D, i2, j2)
        - generator_f(D, i1, j2) * generator_f(D, i2, j1)
    )

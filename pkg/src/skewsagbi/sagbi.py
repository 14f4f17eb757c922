"""The generating set H, lead-term factorization, and subduction against H."""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

from .diagram import SkewDiagram
from .errors import SkewSagbiError
from .rring import (
    RMonomial,
    T2,
    T4,
    TIndex,
    enumerate_tvars,
    is_valid_tvar,
    phi_monomial,
    phi_star_var,
    phi_var,
)
from .spoly import P, Q, SMonomial, SPolynomial, X, Y, lex_compare


def generators(D: SkewDiagram) -> list[tuple[TIndex, SPolynomial]]:
    """The elements of H paired with the variable of R naming each, in tau order."""
    return [(t, phi_var(D, t)) for t in enumerate_tvars(D)]


def lt_factorization(D: SkewDiagram, m: SMonomial) -> Optional[tuple[TIndex, ...]]:
    """Write ``m`` as a product of lead terms of H, or return None.

    Each q_i is matched first against an x, a p and a y, forming a 4-index
    factor; the x's left over are then matched with the y's. Candidates are
    tried in tau order so the answer is deterministic.
    """
    return _factor(D, m.powers)


@lru_cache(maxsize=200_000)
def _factor(D: SkewDiagram, powers: tuple) -> Optional[tuple[TIndex, ...]]:
    if not powers:
        return ()
    counts = {}
    for v, e in powers:
        counts.setdefault(v.kind, {})[v.index] = e
    xs, ps, qs, ys = (counts.get(k, {}) for k in (X, P, Q, Y))
    if sum(ps.values()) != sum(qs.values()) or sum(xs.values()) != sum(ys.values()):
        return None
    if qs:
        i2 = min(qs)
        cands = [
            T4(i1, j1, i2, j2)
            for i1 in sorted(xs) if i1 < i2
            for j1 in sorted(ps)
            for j2 in sorted(ys) if j1 < j2
        ]
    else:
        i1 = min(xs)
        cands = [T2(i1, j) for j in sorted(ys)]
    for t in cands:
        if not is_valid_tvar(D, t):
            continue
        rest = _divide(powers, t)
        sub = _factor(D, rest)
        if sub is not None:
            return (t,) + sub
    return None


def _divide(powers: tuple, t: TIndex) -> tuple:
    out = dict(powers)
    for v, e in phi_star_var(t).powers:
        out[v] -= e
    return tuple(sorted((v, e) for v, e in out.items() if e))


class SubductionStall(SkewSagbiError, AssertionError):
    """A subduction step failed to lower the lead term."""


def subduct(D: SkewDiagram, f: SPolynomial, steps: Optional[list] = None) -> SPolynomial:
    """Reduce ``f`` by lead-term elimination against H and return the remainder.

    A zero remainder certifies membership in the subalgebra generated by H.
    When ``steps`` is a list, each (coefficient, factors) used is appended.
    """
    f = f.copy()
    while f:
        m, c = f.lead_term()
        fac = lt_factorization(D, m)
        if fac is None:
            break
        f.iadd(phi_monomial(D, RMonomial(fac)), -c)
        if steps is not None:
            steps.append((c, fac))
        if f:
            nxt = f.lead_monomial()
            # lex is a well-order, so strict descent suffices for termination
            if lex_compare(nxt, m) != -1:
                raise SubductionStall(f"lead went from {m} to {nxt}")
    return f

"""Macaulay2 and Singular scripts for cross-checking kernels and dimensions in a CAS."""

from __future__ import annotations

from .diagram import SkewDiagram
from .rring import TIndex, enumerate_tvars, phi_star_var
from .sagbi import generators

DIALECTS = ("macaulay2", "singular")


def s_variable_names(D: SkewDiagram) -> list[str]:
    """Names of the variables of S in the lex order x > p > q > y."""
    rows, cols = range(1, D.a + 1), range(1, D.b + 1)
    return [f"x{i}" for i in rows] + [f"p{j}" for j in cols] + [f"q{i}" for i in rows] + [f"y{j}" for j in cols]


def t_name(t: TIndex, dialect: str) -> str:
    idx = [t.i1, t.j2] if t.is_two_index else [t.i1, t.j1, t.i2, t.j2]
    base = "t" if t.is_two_index else "u"
    if dialect == "macaulay2":
        return f"{base}_({','.join(map(str, idx))})"
    return base + "".join(f"({k})" for k in idx)


def _header(D: SkewDiagram, comment: str) -> list[str]:
    return [
        f"{comment} skew diagram lambda={list(D.lam)} mu={list(D.mu)}",
        f"{comment} {len(D.cells)} cells, {len(enumerate_tvars(D))} presentation variables",
    ]


def _macaulay2(D: SkewDiagram) -> str:
    gens = generators(D)
    svars = ", ".join(s_variable_names(D))
    tvars = ", ".join(t_name(t, "macaulay2") for t, _ in gens)
    out = _header(D, "--")
    out.append(f"S = QQ[{svars}, MonomialOrder => Lex];")
    out.append(f"R = QQ[{tvars}];")
    out.append("H = {")
    out.extend(f"    {f}{',' if k + 1 < len(gens) else ''}" for k, (_, f) in enumerate(gens))
    out.append("    };")
    out.append("Hstar = {")
    out.extend(f"    {phi_star_var(t)}{',' if k + 1 < len(gens) else ''}" for k, (t, _) in enumerate(gens))
    out.append("    };")
    out.append("phi = map(S, R, H);")
    out.append("phiStar = map(S, R, Hstar);")
    out.append("I = ker phi;")
    out.append("J = ker phiStar;")
    out.append("print dim(R / I);")
    out.append("print(dim(R / I) == dim(R / J));")
    return "\n".join(out) + "\n"


def _singular(D: SkewDiagram) -> str:
    gens = generators(D)
    svars = ",".join(s_variable_names(D))
    tvars = ",".join(t_name(t, "singular") for t, _ in gens)
    out = _header(D, "//")
    out.append(f"ring R = 0,({tvars}),dp;")
    out.append(f"ring S = 0,({svars}),lp;")
    out.append("ideal H =")
    out.extend(f"    {f}{',' if k + 1 < len(gens) else ';'}" for k, (_, f) in enumerate(gens))
    out.append("ideal Hstar =")
    out.extend(f"    {phi_star_var(t)}{',' if k + 1 < len(gens) else ';'}" for k, (t, _) in enumerate(gens))
    out.append("map phi = R, H;")
    out.append("map phiStar = R, Hstar;")
    out.append("setring R;")
    out.append("ideal I = kernel(S, phi);")
    out.append("ideal J = kernel(S, phiStar);")
    out.append("dim(std(I));")
    out.append("dim(std(I)) == dim(std(J));")
    return "\n".join(out) + "\n"


def export(D: SkewDiagram, dialect: str = "macaulay2") -> str:
    if dialect == "macaulay2":
        return _macaulay2(D)
    if dialect == "singular":
        return _singular(D)
    raise ValueError(f"unknown dialect {dialect!r}; expected one of {DIALECTS}")

"""Registry of the algebras used throughout the package."""
from __future__ import annotations

import re
from fractions import Fraction
from functools import cache

from ..errors import UnknownAlgebraError
from ..kernel.poly import DEFAULT
from .algebra import FiniteLieAlgebra, GradedBracketRule
from .constructions import change_basis, grassmann_double, semidirect_product

SL2_LABELS = ("L1", "L0", "L-1")
ALT_LABELS = ("X1", "X0", "X-1", "Y1", "Y0", "Y-1")
AGEING_LABELS = ("V+", "D", "Y-1/2", "X1", "Y1/2", "M0")


def _witt_window(prefix, indices=(1, 0, -1)):
    """Brackets (n-m) e_{n+m} restricted to the given index set."""
    out = {}
    for n in indices:
        for m in indices:
            if n < m or n + m not in indices:
                continue
            if n != m:
                out[(f"{prefix}{n}", f"{prefix}{m}")] = {f"{prefix}{n + m}": n - m}
    return out


# algebras are immutable, so one instance per argument tuple is shared
@cache
def sl2():
    return FiniteLieAlgebra("sl2", SL2_LABELS, _witt_window("L"))


@cache
def alt():
    """alt in the Cartan basis: [Xn,Xm]=(n-m)X(n+m), [Xn,Ym]=(n-m)Y(n+m), [Y,Y]=0."""
    idx = (1, 0, -1)
    brackets = _witt_window("X")
    for n in idx:
        for m in idx:
            if n + m in idx and n != m:
                brackets[(f"X{n}", f"Y{m}")] = {f"Y{n + m}": n - m}
            elif n + m not in idx:
                brackets[(f"X{n}", f"Y{m}")] = {}
    return FiniteLieAlgebra("alt", ALT_LABELS, brackets)


@cache
def alt_ageing():
    """alt in the ageing labels V+, D, Y-1/2 (sl2 part) and X1, Y1/2, M0 (abelian ideal).

    The dictionary to the Cartan basis is V+ = X1, D = X0, Y-1/2 = X-1,
    X1 = Y1/2, Y1/2 = Y0, M0 = Y-1; it is the composite of the Grassmann
    relabeling Xn <-> Ln, Yn <-> Ln^e with the map onto sl2 (x) R[e]/e^2.
    """
    half = Fraction(1, 2)
    images = [{"X1": 1}, {"X0": 1}, {"X-1": 1}, {"Y1": half}, {"Y0": 1}, {"Y-1": 1}]
    return change_basis(alt(), AGEING_LABELS, images, name="alt_ageing")


@cache
def p3():
    """sl2 acting on its adjoint module, i.e. so(2,1) on R^3."""
    g = sl2()
    module = ("P1", "P0", "P-1")
    action = {}
    for a in g.basis:
        for b in g.basis:
            action[(a, "P" + b[1:])] = {"P" + k[1:]: v for k, v in g.bracket_basis(a, b).items()}
    return semidirect_product(g, module, action, name="p3")


@cache
def heis3():
    return FiniteLieAlgebra("heis3", ("p", "q", "z"), {("p", "q"): {"z": 1}})


@cache
def abelian(n):
    return FiniteLieAlgebra(f"abelian({n})", tuple(f"e{i}" for i in range(1, n + 1)), {})


@cache
def vect():
    def rule(f1, n, f2, m):
        return [("L", n + m, Fraction(n - m))] if n != m else []

    return GradedBracketRule("vect", ("L",), rule)


def virasoro_value(n):
    return n * (n * n - 1)


@cache
def vir_window(c=None):
    """Virasoro algebra; the central charge defaults to the symbol c."""
    charge = DEFAULT.var("c") if c is None else Fraction(c)

    def rule(f1, n, f2, m):
        out = [("L", n + m, Fraction(n - m))] if n != m else []
        if n + m == 0 and virasoro_value(n):
            out.append(("K", None, charge * virasoro_value(n)))
        return out

    return GradedBracketRule("vir", ("L",), rule, central=("K",))


@cache
def w_window():
    """W = Vect(S1) (x) R[e]/e^2 with families L and Le."""

    def rule(f1, n, f2, m):
        if n == m and f1 == f2:
            return []
        if f1 == "L" and f2 == "L":
            return [("L", n + m, Fraction(n - m))]
        if f1 == "L" and f2 == "Le":
            return [("Le", n + m, Fraction(n - m))] if n != m else []
        if f1 == "Le" and f2 == "L":
            return [("Le", n + m, Fraction(n - m))] if n != m else []
        return []

    return GradedBracketRule("W", ("L", "Le"), rule)


@cache
def vir_plus_vir_window(c=None, cbar=None):
    """Two commuting Virasoro copies l and lb with charges c and c̄ (symbolic by default)."""
    ch = DEFAULT.var("c") if c is None else Fraction(c)
    chb = DEFAULT.var("c̄") if cbar is None else Fraction(cbar)

    def rule(f1, n, f2, m):
        if f1 != f2:
            return []
        out = [(f1, n + m, Fraction(n - m))] if n != m else []
        if n + m == 0 and virasoro_value(n):
            central, charge = ("K", ch) if f1 == "l" else ("Kb", chb)
            if charge:
                out.append((central, None, charge * virasoro_value(n)))
        return out

    return GradedBracketRule("vir+vir", ("l", "lb"), rule, central=("K", "Kb"))


_BUILDERS = {
    "alt": alt,
    "alt_ageing": alt_ageing,
    "sl2": sl2,
    "p3": p3,
    "heis3": heis3,
    "vect": vect,
    "vir_window": vir_window,
    "w_window": w_window,
    "vir_plus_vir_window": vir_plus_vir_window,
}

NAMES = tuple(_BUILDERS) + ("abelian(n)",)


def build_algebra(name, **kw):
    """Construct a registered algebra by name (``abelian(3)`` or ``abelian`` with n=3)."""
    m = re.fullmatch(r"abelian\((\d+)\)", name)
    if m:
        return abelian(int(m.group(1)))
    if name == "abelian":
        return abelian(kw.get("n", 1))
    # grassmann double of sl2 is handy under its own name
    if name == "sl2e":
        return grassmann_double(sl2())
    try:
        builder = _BUILDERS[name]
    except KeyError:
        raise UnknownAlgebraError(f"unknown algebra {name!r}; known: {', '.join(NAMES)}") from None
    return builder(**kw)

"""Fock space over alt, the turned abelian plane and the canonical Appell system.

Basis vectors are |jk> = Y1^j X1^k Ω.  Any generator is moved to the right
through the raising letters with the alt brackets until it reaches Ω, where
Y0 -> -γ, X0 -> -x and the lowering letters vanish.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from math import factorial

from .errors import DomainError, TruncationError
from .grouplaw import factor_second_kind, partial_product
from .kernel.poly import DEFAULT, MultiPoly
from .kernel.ratfunc import RationalFunction
from .kernel.series import (
    DEFAULT_CAP,
    TruncatedSeries,
    coefficient_of,
    compose,
    series_exp,
    series_power,
)
from .lie.algebra import LieElement, bracket
from .lie.catalog import ALT_LABELS, alt

RAISING = ("Y1", "X1")
LOWERING = ("Y-1", "X-1")
_ALT = alt()


def _poly(value):
    if isinstance(value, MultiPoly):
        return value
    return MultiPoly.const(DEFAULT, value)


class FockVector:
    """Finite combination of |jk> with polynomial coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        out = {}
        for (j, k), c in (coeffs or {}).items():
            if j < 0 or k < 0:
                raise ValueError("Fock indices must be non-negative")
            c = _poly(c)
            if c:
                out[(j, k)] = c
        self.coeffs = out

    @classmethod
    def basis(cls, j, k):
        return cls({(j, k): 1})

    @classmethod
    def vacuum(cls):
        return cls.basis(0, 0)

    def __add__(self, other):
        out = dict(self.coeffs)
        for key, c in other.coeffs.items():
            out[key] = out[key] + c if key in out else c
        return FockVector(out)

    def __neg__(self):
        return FockVector({k: -c for k, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return FockVector({k: v * c for k, v in self.coeffs.items()})

    __mul__ = scale
    __rmul__ = scale

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        return isinstance(other, FockVector) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, j, k):
        return self.coeffs.get((j, k), DEFAULT.zero())

    def max_level(self):
        return max((j + k for j, k in self.coeffs), default=-1)

    def to_text(self):
        if not self.coeffs:
            return "0"
        parts = []
        for (j, k) in sorted(self.coeffs, key=lambda jk: (-(jk[0] + jk[1]), -jk[0])):
            c = self.coeffs[(j, k)]
            text = c.to_text()
            ket = f"|{j},{k}>"
            if text == "1":
                parts.append(ket)
            elif text == "-1":
                parts.append("-" + ket)
            elif len(c) > 1:
                parts.append(f"({text})*{ket}")
            else:
                parts.append(f"{text}*{ket}")
        return "+".join(parts).replace("+-", "-")

    __str__ = to_text

    def __repr__(self):
        return f"FockVector({self.to_text()!r})"


@lru_cache(maxsize=None)
def _on_basis(g, j, k):
    """g Y1^j X1^k Ω as a tuple of ((j, k), coefficient)."""
    if g == "Y1":
        return (((j + 1, k), _poly(1)),)
    if g == "X1":
        return (((j, k + 1), _poly(1)),)
    if j == 0 and k == 0:
        if g == "Y0":
            return (((0, 0), -DEFAULT.var("γ")),)
        if g == "X0":
            return (((0, 0), -DEFAULT.var("x")),)
        return ()
    # g R W = R (g W) + [g, R] W with R the leftmost raising letter
    if j > 0:
        raiser, rest = "Y1", (j - 1, k)
    else:
        raiser, rest = "X1", (j, k - 1)
    out = {}
    inner = FockVector(dict(_on_basis(g, *rest)))
    moved = fock_apply(raiser, inner)
    for key, c in moved.coeffs.items():
        out[key] = out.get(key, 0) + c
    for label, c in _ALT.bracket_basis(g, raiser).items():
        for key, v in _on_basis(label, *rest):
            out[key] = out.get(key, 0) + v * c
    return tuple((key, _poly(c)) for key, c in sorted(out.items()) if c)


def fock_apply(g, s):
    """Apply an alt generator (label) or a LieElement of alt to a FockVector."""
    if isinstance(g, LieElement):
        out = FockVector()
        for label, c in g.coeffs.items():
            out = out + fock_apply(label, s).scale(c)
        return out
    if g not in ALT_LABELS:
        raise KeyError(f"{g!r} is not an alt generator")
    out = {}
    for (j, k), c in s.coeffs.items():
        for key, v in _on_basis(g, j, k):
            term = v * c
            out[key] = out[key] + term if key in out else term
    return FockVector(out)


@dataclass
class OperatorWord:
    """Product letters[0] letters[1] ... with a scalar prefactor; acts right to left."""

    letters: tuple
    prefactor: object = 1

    def __post_init__(self):
        bad = [g for g in self.letters if g not in ALT_LABELS]
        if bad:
            raise KeyError(f"letters outside the alt basis: {bad}")
        self.letters = tuple(self.letters)

    def apply(self, s):
        for g in reversed(self.letters):
            s = fock_apply(g, s)
        return s.scale(_poly(self.prefactor))

    def to_text(self):
        body = "*".join(self.letters) if self.letters else "1"
        pre = _poly(self.prefactor).to_text()
        return body if pre == "1" else f"({pre})*{body}"


def turned_pair(beta=None):
    """Ybar1 = Y1 - 2βY0 + β²Y-1 and Xbar1 = X1 - 2βX0 + β²X-1 as alt elements."""
    b = DEFAULT.var("β") if beta is None else _poly(beta)
    ybar = LieElement(_ALT, {"Y1": 1, "Y0": b * -2, "Y-1": b * b})
    xbar = LieElement(_ALT, {"X1": 1, "X0": b * -2, "X-1": b * b})
    return ybar, xbar


def turned_pair_commutes(beta=None):
    ybar, xbar = turned_pair(beta)
    return bracket(ybar, xbar).is_zero()


# -- operator route ----------------------------------------------------------

@dataclass
class AppellTable:
    max_j: int
    max_k: int
    entries: dict = field(default_factory=dict)  # (j, k) -> MultiPoly in y1, y2, β, γ, x

    def __getitem__(self, jk):
        return self.entries[jk]

    def rows(self):
        return [(j, k, self.entries[(j, k)].to_text())
                for j in range(self.max_j + 1) for k in range(self.max_k + 1)]

    def to_dict(self):
        return {"max_j": self.max_j, "max_k": self.max_k,
                "entries": [{"j": j, "k": k, "h": h} for j, k, h in self.rows()]}


def turned_powers(total, beta=None):
    """Ybar1^a Xbar1^b Ω for all a + b <= total."""
    ybar, xbar = turned_pair(beta)
    out = {}
    column = FockVector.vacuum()
    for b in range(total + 1):
        vec = column
        for a in range(total - b + 1):
            out[(a, b)] = vec
            vec = fock_apply(ybar, vec)
        column = fock_apply(xbar, column)
    return out


def appell_levels(total, beta=None):
    """h_ab for every a + b <= total, by inverting the unitriangular turned powers."""
    T = turned_powers(total, beta)
    y1, y2 = DEFAULT.var("y1"), DEFAULT.var("y2")
    h = {}
    for level in range(total + 1):
        for a in range(level + 1):
            b = level - a
            vec = T[(a, b)]
            if vec.coefficient(a, b) != 1:
                raise AssertionError(f"turned power ({a},{b}) is not unitriangular")
            value = y1 ** a * y2 ** b
            for (j, k), c in vec.coeffs.items():
                if (j, k) == (a, b):
                    continue
                if j + k >= level:
                    raise AssertionError(f"turned power ({a},{b}) has a term at level {j + k}")
                value = value - h[(j, k)] * c
            h[(a, b)] = value
    return h


def appell_table(J, K, beta=None):
    """h_jk with |jk> <-> h_jk(y1, y2) under y1^a y2^b <-> Ybar1^a Xbar1^b Ω.

    Lower-order terms of Ybar1^a Xbar1^b Ω may have j > J, so every level up
    to J + K is inverted.
    """
    if J < 0 or K < 0:
        raise DomainError("table bounds must be non-negative")
    h = appell_levels(J + K, beta)
    return AppellTable(J, K, {(j, k): h[(j, k)] for j in range(J + 1) for k in range(K + 1)})


# -- generating-function route ---------------------------------------------

SERIES_VARS = ("v1", "v2")


def _vacuum_coordinates():
    """A1, A2, A3, λ at B1=0, B2=β, V=(z1, z2), from the matrix factorization."""
    coords = factor_second_kind(partial_product())
    beta, z1, z2 = DEFAULT.vars(["β", "z1", "z2"])
    sub = {"B1": 0, "B2": beta, "V1": z1, "V2": z2}
    return {name: val.subs(sub) for name, val in coords.values().items()}


def _revert(F1, F2, cap):
    """Series z(v) with (F1, F2)(z(v)) = v, by fixed-point iteration."""
    v1, v2 = DEFAULT.vars(SERIES_VARS)
    sv1 = TruncatedSeries(v1, cap, SERIES_VARS)
    sv2 = TruncatedSeries(v2, cap, SERIES_VARS)
    z1, z2 = sv1, sv2
    for _ in range(cap + 1):
        vals = {"z1": z1, "z2": z2}
        n1 = sv1 - (compose(F1, vals) - z1)
        n2 = sv2 - (compose(F2, vals) - z2)
        if n1 == z1 and n2 == z2:
            break
        z1, z2 = n1, n2
    return z1, z2


@dataclass
class GenFunction:
    series: TruncatedSeries
    factors: dict  # name -> TruncatedSeries (exponents and the power base)
    comparison: dict

    @property
    def cap(self):
        return self.series.cap

    def coefficient(self, j, k):
        return coefficient_of(self.series, {"v1": j, "v2": k})

    def to_dict(self):
        return {"cap": self.cap, "factors": self.comparison}


def _printed_factors(cap):
    """Exponents and power base of the printed generating function, as series."""
    v1, v2, beta, gamma, y1, y2 = DEFAULT.vars(SERIES_VARS + ("β", "γ", "y1", "y2"))
    one = DEFAULT.one()
    plus = RationalFunction(one + beta * v2)
    minus = RationalFunction(one - beta * v2)
    blank = {"v1": TruncatedSeries(v1, cap, SERIES_VARS), "v2": TruncatedSeries(v2, cap, SERIES_VARS)}
    return {
        "y1-exponent": compose(RationalFunction(y1 * v1) / (plus * plus), blank),
        "y2-exponent": compose(RationalFunction(y2 * v2) / plus, blank),
        "γ-exponent": compose(RationalFunction(gamma * beta * v1 * -2) / minus, blank),
        "power-base": compose(plus.inverse(), blank),
    }, {
        "γ-exponent": compose(RationalFunction(gamma * beta * v1 * -2) / plus, blank),
    }


def genfun_expand(cap=DEFAULT_CAP):
    """Generating function of h_jk/(j! k!) rebuilt from the matrix factorization.

    exp(v1 Y1 + v2 X1)Ω = exp(y1 z1 + y2 z2) exp(γ A3(z)) λ(z)^{2x} with z = z(v)
    the inverse of v = (A1(z), A2(z)).
    """
    if cap < 0:
        raise DomainError("cap must be non-negative")
    A = _vacuum_coordinates()
    z1, z2 = _revert(A["A1"], A["A2"], cap)
    vals = {"z1": z1, "z2": z2}
    y1, y2, gamma, x = DEFAULT.vars(["y1", "y2", "γ", "x"])
    e1 = z1 * y1
    e2 = z2 * y2
    e3 = compose(A["A3"], vals) * gamma
    base = compose(A["λ"], vals)
    series = series_exp(e1 + e2 + e3) * series_power(base, x * 2)
    derived = {"y1-exponent": e1, "y2-exponent": e2, "γ-exponent": e3, "power-base": base}
    printed, corrected = _printed_factors(cap)
    comparison = {}
    for name, got in derived.items():
        row = {"matches_printed": got == printed[name]}
        if name in corrected:
            row["matches_corrected"] = got == corrected[name]
            row["corrected"] = "-2*γ*β*v1/(1+β*v2)"
            row["printed"] = "-2*γ*β*v1/(1-β*v2)"
        comparison[name] = row
    return GenFunction(series, derived, comparison)


def closed_form(cap=DEFAULT_CAP):
    """The corrected closed form, expanded directly (a second, independent expansion)."""
    v1, v2, beta, gamma, x, y1, y2 = DEFAULT.vars(SERIES_VARS + ("β", "γ", "x", "y1", "y2"))
    one = DEFAULT.one()
    plus = RationalFunction(one + beta * v2)
    blank = {"v1": TruncatedSeries(v1, cap, SERIES_VARS), "v2": TruncatedSeries(v2, cap, SERIES_VARS)}
    expo = RationalFunction(y1 * v1) / (plus * plus) + RationalFunction(y2 * v2) / plus \
        + RationalFunction(gamma * beta * v1 * -2) / plus
    base = compose(plus, blank)
    return series_exp(compose(expo, blank)) * series_power(base, x * -2)


@dataclass
class ConsistencyReport:
    cells: int
    mismatches: list

    @property
    def ok(self):
        return not self.mismatches

    def to_dict(self):
        return {"cells": self.cells, "ok": self.ok,
                "mismatches": [{"j": j, "k": k} for j, k in self.mismatches]}


def consistency_check(J, K, cap=None, max_total=None, table=None, genfun=None):
    """Compare j! k! [v1^j v2^k] of the generating function with h_jk.

    Only cells with j + k <= max_total (default J + K) are compared; that bound
    may not exceed the series cap.
    """
    limit = J + K if max_total is None else max_total
    cap = limit if cap is None else cap
    if limit > cap:
        raise TruncationError(f"cells up to degree {limit} need cap >= {limit}, got {cap}")
    table = table or appell_table(J, K)
    genfun = genfun or genfun_expand(cap)
    cells, bad = 0, []
    for j in range(J + 1):
        for k in range(K + 1):
            if j + k > limit:
                continue
            cells += 1
            if genfun.coefficient(j, k) * (factorial(j) * factorial(k)) != table[(j, k)]:
                bad.append((j, k))
    return ConsistencyReport(cells, bad)


# -- classical specializations ---------------------------------------------

def laguerre_homogenized(order):
    """P_k = (-β)^k L_k^{(2x-1)}(y2/β) from the three-term recurrence, cleared of 1/β."""
    beta, x, y2 = DEFAULT.vars(["β", "x", "y2"])
    alpha = x * 2 - 1
    P = [DEFAULT.one()]
    if order >= 1:
        P.append(y2 - beta * (alpha + 1))
    for k in range(1, order):
        nxt = (beta * -(alpha + (2 * k + 1)) + y2) * P[k] - beta * beta * (alpha + k) * P[k - 1]
        P.append(nxt / (k + 1))
    return P[: order + 1]


@dataclass
class SpecializationReport:
    order: int
    laguerre_mismatches: list
    v2_zero_family: list
    v2_zero_is_shifted_power: bool
    hermite_flag: str

    @property
    def ok(self):
        return not self.laguerre_mismatches and self.v2_zero_is_shifted_power

    def to_dict(self):
        return {
            "order": self.order,
            "ok": self.ok,
            "laguerre_mismatches": self.laguerre_mismatches,
            "v2_zero_family": self.v2_zero_family,
            "v2_zero_is_shifted_power": self.v2_zero_is_shifted_power,
            "hermite_flag": self.hermite_flag,
        }


def laguerre_hermite_specialize(order=8, levels=None):
    """Check the v1=0 branch against Laguerre and report the v2=0 branch."""
    table = levels or appell_levels(order)
    P = laguerre_homogenized(order)
    lag_bad = [k for k in range(order + 1) if table[(0, k)] != P[k] * factorial(k)]
    beta, gamma, y1 = DEFAULT.vars(["β", "γ", "y1"])
    shift = y1 - beta * gamma * 2
    family = [table[(j, 0)].to_text() for j in range(order + 1)]
    pure = all(table[(j, 0)] == shift ** j for j in range(order + 1))
    flag = ("v2=0 branch gives (y1-2*γ*β)^j, shifted pure powers; "
            "no Hermite family appears" if pure else "v2=0 branch is not a shifted power family")
    return SpecializationReport(order, lag_bad, family, pure, flag)

"""Contraction of two commuting Virasoro copies onto W.

The map used here is a reconstruction: L_n = l_n + lb_n and M_n = ε (l_n - lb_n).
Central charges are optional and default to zero.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..errors import DomainError
from ..kernel.poly import DEFAULT, MultiPoly
from ..kernel.ratfunc import RationalFunction
from ..lie.algebra import LieElement, bracket, label_text
from ..lie.catalog import vir_plus_vir_window, w_window


@dataclass
class ContractionFamily:
    """L_n = a l_n + b lb_n, M_n = c l_n + d lb_n with a, b, c, d polynomials in ε."""

    a: MultiPoly
    b: MultiPoly
    c: MultiPoly
    d: MultiPoly
    parameter: str = "ε"
    charges: tuple = (0, 0)

    @classmethod
    def standard(cls, charges=(0, 0), registry=DEFAULT):
        eps = registry.var("ε")
        one = registry.one()
        return cls(one, one, eps, -eps, "ε", charges)

    @property
    def registry(self):
        return self.a.registry

    def det(self):
        return self.a * self.d - self.b * self.c

    def algebra(self):
        if getattr(self, "_alg", None) is None:
            self._alg = vir_plus_vir_window(*self.charges)
        return self._alg

    def generator(self, family, n):
        alg = self.algebra()
        ca, cb = (self.a, self.b) if family == "L" else (self.c, self.d)
        return LieElement(alg, {("l", n): ca, ("lb", n): cb})


@dataclass
class ContractionReport:
    parameter: str
    constants: dict = field(default_factory=dict)  # (lab1, lab2) -> {label: MultiPoly}
    limit_matches_w: bool = True
    polynomial: bool = True
    linear_terms: bool = False

    @property
    def ok(self):
        return self.polynomial and self.limit_matches_w and not self.linear_terms

    def limit(self):
        eps = self.parameter
        out = {}
        for pair, value in self.constants.items():
            lim = {k: v.subs({eps: 0}) for k, v in value.items()}
            out[pair] = {k: v for k, v in lim.items() if v}
        return out

    def to_dict(self):
        def dump(table):
            return [
                {"pair": [label_text(a), label_text(b)],
                 "value": {label_text(k): v.to_text() for k, v in val.items()}}
                for (a, b), val in table.items()
            ]

        return {
            "parameter": self.parameter,
            "ok": self.ok,
            "polynomial": self.polynomial,
            "limit_matches_w": self.limit_matches_w,
            "linear_terms": self.linear_terms,
            "constants": dump(self.constants),
            "limit": dump(self.limit()),
        }


def _as_poly(value, registry):
    if isinstance(value, MultiPoly):
        return value
    return MultiPoly.const(registry, value)


def contraction_limit(family=None, window=3):
    """Structure constants of {L_n(ε), M_n(ε)} and their ε -> 0 limit, compared with W."""
    family = family or ContractionFamily.standard()
    reg = family.registry
    eps = family.parameter
    det = family.det()
    if det.subs({eps: 1}).is_zero():
        raise DomainError("contraction family is not a change of basis at ε=1")
    a, b, c, d = family.a, family.b, family.c, family.d
    rdet = RationalFunction(det)
    report = ContractionReport(eps)
    w = w_window()
    labels = [(f, n) for f in ("L", "M") for n in range(-window, window + 1)]
    for i, p in enumerate(labels):
        for q in labels[i:]:
            value = bracket(family.generator(*p), family.generator(*q))
            out = {}
            indices = sorted({k[1] for k in value.coeffs if k[1] is not None})
            for k in indices:
                pl = _as_poly(value.coefficient(("l", k)), reg)
                ql = _as_poly(value.coefficient(("lb", k)), reg)
                # alpha*(a, b) + beta*(c, d) = (pl, ql)
                alpha = RationalFunction(d * pl - c * ql) / rdet
                beta = RationalFunction(a * ql - b * pl) / rdet
                for fam, coef in (("L", alpha), ("M", beta)):
                    if coef.is_zero():
                        continue
                    if not coef.is_polynomial():
                        report.polynomial = False
                        continue
                    out[(fam, k)] = coef.as_poly()
            for central in ("K", "Kb"):
                cval = value.coefficient((central, None))
                if cval:
                    out[(central, None)] = _as_poly(cval, reg)
            report.constants[(p, q)] = out
            for k, v in out.items():
                if k[1] is not None and v.degree_in([eps]) >= 1 and v.coefficient({eps: 1}):
                    report.linear_terms = True
            # compare the ε=0 part against W with M -> Le, modulo central terms
            lim = {k: v.subs({eps: 0}) for k, v in out.items() if k[1] is not None}
            lim = {("Le" if k[0] == "M" else k[0], k[1]): v for k, v in lim.items() if v}
            expect = w.bracket_basis(("Le" if p[0] == "M" else "L", p[1]),
                                     ("Le" if q[0] == "M" else "L", q[1]))
            expect = {k: _as_poly(v, reg) for k, v in expect.items()}
            if lim != expect:
                report.limit_matches_w = False
    return report


def at_parameter(report, value):
    """Structure constants with ε set to ``value`` (Fractions)."""
    out = {}
    for pair, val in report.constants.items():
        sub = {k: v.subs({report.parameter: Fraction(value)}) for k, v in val.items()}
        out[pair] = {k: v.constant_term() for k, v in sub.items() if v}
    return out

"""Differential operators in (t, r) with Laurent coefficients in t.

A term is ``coef * t^i * r^j * ∂_t^a * ∂_r^b`` with coefficients left of the
derivatives; ``coef`` is a polynomial in symbolic parameters (x, γ, ...).
"""
from __future__ import annotations

from fractions import Fraction
from math import comb
from numbers import Rational

from ..kernel.poly import DEFAULT, MultiPoly


def _falling(k, p):
    out = 1
    for s in range(p):
        out *= k - s
    return out


class DiffOp:
    __slots__ = ("terms", "registry")

    def __init__(self, terms=None, registry=DEFAULT):
        self.registry = registry
        clean = {}
        for key, c in (terms or {}).items():
            if not isinstance(c, MultiPoly):
                c = MultiPoly.const(registry, c)
            if c:
                i, j, a, b = key
                if j < 0 or a < 0 or b < 0:
                    raise ValueError("r exponent and derivative orders must be non-negative")
                clean[key] = clean[key] + c if key in clean else c
        self.terms = {k: v for k, v in clean.items() if v}

    # constructors ------------------------------------------------------
    @classmethod
    def zero(cls, registry=DEFAULT):
        return cls({}, registry)

    @classmethod
    def term(cls, coef=1, t=0, r=0, dt=0, dr=0, registry=DEFAULT):
        return cls({(t, r, dt, dr): coef}, registry)

    # algebra -----------------------------------------------------------
    def _lift(self, other):
        if isinstance(other, DiffOp):
            return other
        if isinstance(other, (int, Rational, MultiPoly)):
            return DiffOp({(0, 0, 0, 0): other}, self.registry)
        return NotImplemented

    def __add__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return DiffOp(out, self.registry)

    __radd__ = __add__

    def __neg__(self):
        return DiffOp({k: -v for k, v in self.terms.items()}, self.registry)

    def __sub__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        return DiffOp({k: v * c for k, v in self.terms.items()}, self.registry)

    def __mul__(self, other):
        """Operator composition (scalars multiply coefficients)."""
        if isinstance(other, (int, Rational, MultiPoly)):
            return self.scale(other)
        if not isinstance(other, DiffOp):
            return NotImplemented
        out = {}
        for (i1, j1, a1, b1), c1 in self.terms.items():
            for (i2, j2, a2, b2), c2 in other.terms.items():
                c12 = c1 * c2
                for p in range(a1 + 1):
                    ft = comb(a1, p) * _falling(i2, p)
                    if not ft:
                        continue
                    for q in range(min(b1, j2) + 1):
                        fr = comb(b1, q) * _falling(j2, q)
                        if not fr:
                            continue
                        key = (i1 + i2 - p, j1 + j2 - q, a1 - p + a2, b1 - q + b2)
                        add = c12 * (ft * fr)
                        out[key] = out[key] + add if key in out else add
        return DiffOp(out, self.registry)

    def __rmul__(self, other):
        if isinstance(other, (int, Rational, MultiPoly)):
            return self.scale(other)
        return NotImplemented

    def __eq__(self, other):
        other = self._lift(other)
        if other is NotImplemented:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self):
        return not self.terms

    def subs(self, values):
        return DiffOp({k: v.subs(values) for k, v in self.terms.items()}, self.registry)

    def coefficient_polys(self):
        return list(self.terms.values())

    # text --------------------------------------------------------------
    def to_text(self):
        if not self.terms:
            return "0"

        def order(key):
            i, j, a, b = key
            return (a + b, a, b, j, i)

        parts = []
        for key in sorted(self.terms, key=order):
            i, j, a, b = key
            coef = self.terms[key]
            factors = []
            for name, e in (("t", i), ("r", j), ("∂_t", a), ("∂_r", b)):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            ctext = coef.to_text()
            neg = False
            if len(coef) > 1:
                ctext = f"({ctext})"
            elif ctext.startswith("-"):
                neg, ctext = True, ctext[1:]
            if factors:
                body = "*".join(factors) if ctext == "1" else ctext + "*" + "*".join(factors)
            else:
                body = ctext
            parts.append(("-" if neg else "+") + body)
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    __str__ = to_text

    def __repr__(self):
        return f"DiffOp({self.to_text()!r})"


def diffop_commutator(a, b):
    return a * b - b * a


def t_power(k, coef=1, registry=DEFAULT):
    return DiffOp.term(coef, t=k, registry=registry)


D_T = DiffOp.term(1, dt=1)
D_R = DiffOp.term(1, dr=1)
T = DiffOp.term(1, t=1)
R = DiffOp.term(1, r=1)
ONE = DiffOp.term(Fraction(1))

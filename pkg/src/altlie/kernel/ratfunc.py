"""Quotients of multivariate polynomials.

No general multivariate gcd is attempted.  Canonicalization removes integer
content, a common monomial factor, and any exact polynomial quotient; callers
that know a likely common factor can strip it with :meth:`cancel_factor`.
Equality is decided by cross-multiplication, so it never depends on how far
the cancellation got.
"""
from __future__ import annotations

from fractions import Fraction
from numbers import Rational

from ..errors import RegistryMismatchError
from .poly import FIELD_MASK, WIDTH, MultiPoly


class RationalFunction:
    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if den is None:
            den = num.registry.one()
        if isinstance(den, (int, Rational)):
            den = MultiPoly.const(num.registry, den)
        if num.registry is not den.registry:
            raise RegistryMismatchError("numerator and denominator registries differ")
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        self.num, self.den = _canonical(num, den)

    @classmethod
    def of(cls, value, registry=None):
        if isinstance(value, RationalFunction):
            return value
        if isinstance(value, MultiPoly):
            return cls(value)
        return cls(MultiPoly.const(registry, value))

    @property
    def registry(self):
        return self.num.registry

    def _coerce(self, other):
        if isinstance(other, RationalFunction):
            if other.registry is not self.registry:
                raise RegistryMismatchError("rational functions belong to different registries")
            return other
        if isinstance(other, MultiPoly):
            return RationalFunction(other)
        if isinstance(other, (int, Rational)):
            return RationalFunction(MultiPoly.const(self.registry, other))
        return NotImplemented

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_constant()

    def as_poly(self):
        if not self.den.is_constant():
            raise ValueError("not a polynomial")
        return self.num / self.den.constant_term()

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        q = self.den.exact_div(other.den)
        if q is not None:
            return RationalFunction(self.num + other.num * q, self.den)
        q = other.den.exact_div(self.den)
        if q is not None:
            return RationalFunction(self.num * q + other.num, other.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        n1, d1, n2, d2 = self.num, self.den, other.num, other.den
        if not d2.is_constant():
            q = n1.exact_div(d2)
            if q is not None:
                n1, d2 = q, d2.registry.one()
        if not d1.is_constant():
            q = n2.exact_div(d1)
            if q is not None:
                n2, d1 = q, d1.registry.one()
        return RationalFunction(n1 * n2, d1 * d2)

    __rmul__ = __mul__

    def inverse(self):
        if self.num.is_zero():
            raise ZeroDivisionError("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, e):
        if not isinstance(e, int):
            raise ValueError("integer exponent required")
        if e < 0:
            return self.inverse() ** (-e)
        return RationalFunction(self.num ** e, self.den ** e)

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self.num * other.den == other.num * self.den

    def __hash__(self):
        if self.is_polynomial():
            return hash(self.as_poly())
        return hash((self.num, self.den))

    def cancel_factor(self, factor):
        """Divide ``factor`` out of numerator and denominator as often as it goes."""
        num, den = self.num, self.den
        while True:
            qn, qd = num.exact_div(factor), den.exact_div(factor)
            if qn is None or qd is None:
                break
            num, den = qn, qd
        return RationalFunction(num, den)

    def subs(self, values):
        num = self.num.subs(values)
        den = self.den.subs(values)
        if den.is_zero():
            raise ZeroDivisionError("substitution hits a pole")
        return RationalFunction(num, den)

    def diff(self, name):
        return RationalFunction(self.num.diff(name) * self.den - self.num * self.den.diff(name), self.den * self.den)

    def denominator_power(self, base):
        """Largest k with ``base**k`` dividing the denominator."""
        k, den = 0, self.den
        while True:
            q = den.exact_div(base)
            if q is None or den.is_constant():
                return k
            den, k = q, k + 1

    def to_text(self):
        if self.den == 1:
            return self.num.to_text()
        n = self.num.to_text()
        d = self.den.to_text()
        if len(self.num) > 1:
            n = f"({n})"
        if len(self.den) > 1:
            d = f"({d})"
        return f"{n}/{d}"

    __str__ = to_text

    def __repr__(self):
        return f"RationalFunction({self.to_text()!r})"

    @classmethod
    def parse(cls, registry, text):
        """Inverse of :meth:`to_text`.

        The quotient bar is the last top-level ``/`` not followed by a digit;
        a slash inside a rational coefficient always is.
        """
        text = text.strip()
        depth, cut = 0, None
        for i, ch in enumerate(text):
            if ch == "(":
                depth += 1
            elif ch == ")":
                depth -= 1
            elif ch == "/" and depth == 0 and not text[i + 1:i + 2].isdigit():
                cut = i
        if cut is None:
            return cls(MultiPoly.parse(registry, _unwrap(text)))
        num = MultiPoly.parse(registry, _unwrap(text[:cut]))
        den = MultiPoly.parse(registry, _unwrap(text[cut + 1:]))
        return cls(num, den)


def _unwrap(text):
    text = text.strip()
    if text.startswith("(") and text.endswith(")"):
        return text[1:-1]
    return text


def _monomial_gcd(p):
    reg = p.registry
    n = len(reg)
    low = None
    for k in p._num:
        exps = [(k >> (WIDTH * i)) & FIELD_MASK for i in range(n)]
        low = exps if low is None else [min(a, b) for a, b in zip(low, exps)]
    return reg.pack(low) if low else 0


def _shift_down(p, key):
    if not key:
        return p
    return MultiPoly._raw(p.registry, {k - key: c for k, c in p._num.items()}, p._den)


def _canonical(num, den):
    if num.is_zero():
        return num, den.registry.one()
    q = num.exact_div(den) if not den.is_constant() else None
    if q is not None:
        num, den = q, den.registry.one()
    # strip common monomial factor
    if not den.is_constant():
        mk = _mask_min(_monomial_gcd(num), _monomial_gcd(den), num.registry)
        if mk:
            num, den = _shift_down(num, mk), _shift_down(den, mk)
    # content-normalize the denominator; its first term in canonical order is positive
    scale = den.integer_content()
    lead = next(iter(den.terms().values()))
    if lead < 0:
        scale = -scale
    return num / scale, den / scale


def _mask_min(a, b, reg):
    """Packed field-wise minimum of two packed monomials."""
    out = 0
    for i in range(len(reg)):
        off = WIDTH * i
        out |= min((a >> off) & FIELD_MASK, (b >> off) & FIELD_MASK) << off
    return out


def as_fraction(rf):
    """Value of a constant rational function."""
    if not (rf.num.is_constant() and rf.den.is_constant()):
        raise ValueError("not a constant")
    return Fraction(rf.num.constant_term()) / rf.den.constant_term()

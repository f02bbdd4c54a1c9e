"""Power series truncated in total degree of a chosen set of variables.

A :class:`TruncatedSeries` is a polynomial body plus a cap: the body holds no
monomial whose degree in the series variables exceeds the cap.  Variables not
listed as series variables behave as coefficients (they may be symbolic
parameters such as β or x).
"""
from __future__ import annotations

from numbers import Rational

from ..errors import DomainError, RegistryMismatchError, TruncationError
from .poly import MultiPoly
from .ratfunc import RationalFunction

DEFAULT_CAP = 8


class TruncatedSeries:
    __slots__ = ("body", "cap", "variables")

    def __init__(self, body, cap=DEFAULT_CAP, variables=None):
        if variables is None:
            variables = body.free_symbols() or body.registry.names
        variables = tuple(sorted(set(variables), key=body.registry.index.__getitem__))
        if cap < 0:
            raise ValueError("cap must be non-negative")
        self.body = body.truncate(variables, cap)
        self.cap = cap
        self.variables = variables

    @property
    def registry(self):
        return self.body.registry

    def _like(self, body, cap=None):
        out = TruncatedSeries.__new__(TruncatedSeries)
        out.body = body
        out.cap = self.cap if cap is None else cap
        out.variables = self.variables
        return out

    def _coerce(self, other):
        if isinstance(other, TruncatedSeries):
            if other.registry is not self.registry:
                raise RegistryMismatchError("series belong to different registries")
            if other.variables != self.variables:
                raise ValueError("series variables differ")
            return other
        if isinstance(other, (MultiPoly, int, Rational)):
            if isinstance(other, MultiPoly) and other.registry is not self.registry:
                raise RegistryMismatchError("series belong to different registries")
            return TruncatedSeries(self.body * 0 + other, self.cap, self.variables)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        cap = min(self.cap, other.cap)
        return self._like((self.body + other.body).truncate(self.variables, cap), cap)

    __radd__ = __add__

    def __neg__(self):
        return self._like(-self.body)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        cap = min(self.cap, other.cap)
        return self._like(self.body.mul_truncated(other.body, self.variables, cap), cap)

    __rmul__ = __mul__

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = self._like(self.registry.one())
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        cap = min(self.cap, other.cap)
        return self.body.truncate(self.variables, cap) == other.body.truncate(self.variables, cap)

    def __hash__(self):
        return hash((self.body, self.cap, self.variables))

    def constant_term(self):
        return self.body.homogeneous_parts(self.variables).get(0, self.registry.zero())

    def parts(self):
        """Homogeneous components ``[s_0, ..., s_cap]`` in the series variables."""
        found = self.body.homogeneous_parts(self.variables)
        zero = self.registry.zero()
        return [found.get(d, zero) for d in range(self.cap + 1)]

    def coefficient(self, powers):
        return coefficient_of(self, powers)

    def subs_zero(self, names):
        """Set some series variables to zero (keeps the cap)."""
        return self._like(self.body.subs({n: 0 for n in names}))

    def to_text(self):
        return f"{self.body.to_text()} + O({self.cap + 1})"

    __str__ = to_text

    def __repr__(self):
        return f"TruncatedSeries({self.to_text()!r})"

    @classmethod
    def parse(cls, registry, text, variables):
        body, sep, tail = text.rpartition(" + O(")
        if not sep or not tail.endswith(")"):
            raise ValueError(f"malformed series text {text!r}")
        return cls(MultiPoly.parse(registry, body), int(tail[:-1]) - 1, variables)


def _from_parts(template, parts):
    body = template.registry.zero()
    for p in parts:
        body = body + p
    return template._like(body)


def series_expand_inverse(p, cap=DEFAULT_CAP, variables=None):
    """Series q with p*q = 1 up to degree ``cap``; p must have constant term 1."""
    s = p if isinstance(p, TruncatedSeries) else TruncatedSeries(p, cap, variables)
    if s.constant_term() != 1:
        raise DomainError("series inverse needs constant term 1")
    ps = s.parts()
    out = [s.registry.one()]
    for d in range(1, s.cap + 1):
        acc = s.registry.zero()
        for k in range(1, d + 1):
            if ps[k]:
                acc = acc - ps[k] * out[d - k]
        out.append(acc)
    return _from_parts(s, out)


def series_exp(s):
    """exp(s) for a series with zero constant term, via f_d = (1/d) sum k s_k f_{d-k}."""
    if s.constant_term():
        raise DomainError("series exponential needs zero constant term")
    ps = s.parts()
    out = [s.registry.one()]
    for d in range(1, s.cap + 1):
        acc = s.registry.zero()
        for k in range(1, d + 1):
            if ps[k]:
                acc = acc + ps[k] * out[d - k] * k
        out.append(acc / d)
    return _from_parts(s, out)


def series_power(s, exponent):
    """s**exponent for constant term 1 and a scalar (possibly symbolic) exponent."""
    if s.constant_term() != 1:
        raise DomainError("series power needs constant term 1")
    reg = s.registry
    if not isinstance(exponent, MultiPoly):
        exponent = MultiPoly.const(reg, exponent)
    if set(exponent.free_symbols()) & set(s.variables):
        raise DomainError("exponent may not involve series variables")
    ps = s.parts()
    out = [reg.one()]
    for d in range(1, s.cap + 1):
        acc = reg.zero()
        for k in range(1, d + 1):
            if ps[k]:
                acc = acc + ps[k] * out[d - k] * (exponent * k - (d - k))
        out.append(acc / d)
    return _from_parts(s, out)


def series_log(s):
    """log(s) for constant term 1: integrate the degree derivative of s divided by s."""
    if s.constant_term() != 1:
        raise DomainError("series logarithm needs constant term 1")
    ps = s.parts()
    inv = series_expand_inverse(s).parts()
    out = [s.registry.zero()]
    for d in range(1, s.cap + 1):
        acc = s.registry.zero()
        for k in range(1, d + 1):
            if ps[k]:
                acc = acc + ps[k] * inv[d - k] * k
        out.append(acc / d)
    return _from_parts(s, out)


def coefficient_of(s, powers):
    """Coefficient of the monomial ``powers`` ({series variable: exp})."""
    degree = sum(powers.values())
    if degree > s.cap:
        raise TruncationError(f"monomial degree {degree} exceeds cap {s.cap}")
    full = {v: powers.get(v, 0) for v in s.variables}
    return s.body.coefficient(full)


def compose(target, values, cap=DEFAULT_CAP, variables=None):
    """Evaluate a polynomial or rational function at series arguments.

    ``values`` maps variable names of ``target`` to series (or scalars); a
    rational function needs a denominator with nonzero constant term after
    substitution.
    """
    probe = next((v for v in values.values() if isinstance(v, TruncatedSeries)), None)
    if probe is not None:
        cap, variables = probe.cap, probe.variables
    if isinstance(target, RationalFunction):
        num = compose(target.num, values, cap, variables)
        den = compose(target.den, values, cap, variables)
        c0 = den.constant_term()
        if not c0.is_constant() or c0.constant_term() == 0:
            raise DomainError("denominator must have a nonzero scalar constant term")
        scale = c0.constant_term()
        return num * series_expand_inverse(den * (1 / scale)) * (1 / scale)
    reg = target.registry
    blank = TruncatedSeries(reg.one(), cap, variables)
    lifted = {}
    for name, val in values.items():
        lifted[name] = val if isinstance(val, TruncatedSeries) else blank * val
    powers = {}

    def power(name, e):
        key = (name, e)
        if key not in powers:
            powers[key] = lifted[name] ** e
        return powers[key]

    result = blank * 0
    for exps, coef in target.terms().items():
        rest = {}
        term = blank * coef
        for vname, e in zip(reg.names, exps):
            if not e:
                continue
            if vname in lifted:
                term = term * power(vname, e)
            else:
                rest[vname] = e
        if rest:
            term = term * MultiPoly(reg, {tuple(rest.get(n, 0) for n in reg.names): 1})
        result = result + term
    return result

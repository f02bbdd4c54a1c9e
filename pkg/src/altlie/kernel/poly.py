"""Sparse multivariate polynomials with exact rational coefficients.

Every polynomial lives over a :class:`Registry`, an ordered tuple of variable
names fixed at construction.  Monomials are packed into one integer with a
16-bit field per variable; coefficients are stored as integer numerators over
one positive common denominator, kept in lowest terms.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd
from numbers import Rational

from ..errors import RegistryMismatchError
from . import _backend
from ._sparse_py import FIELD_MASK, WIDTH

MAX_EXPONENT = FIELD_MASK

DEFAULT_VARIABLES = (
    "B1", "B2", "V1", "V2", "β", "γ", "x", "y1", "y2", "v1", "v2", "z1", "z2",
    "t", "r", "ε", "c", "c̄", "a", "u", "λ", "n", "m",
)


class Registry:
    """Ordered, immutable set of variable names shared by a family of polynomials."""

    def __init__(self, names):
        names = tuple(names)
        if len(set(names)) != len(names):
            raise ValueError("duplicate variable names")
        for name in names:
            if not name or re.search(r"[\s+\-*/^()]", name):
                raise ValueError(f"invalid variable name {name!r}")
        self.names = names
        self.index = {name: i for i, name in enumerate(names)}

    def __len__(self):
        return len(self.names)

    def __repr__(self):
        return f"Registry({list(self.names)!r})"

    def offset(self, name):
        try:
            return self.index[name] * WIDTH
        except KeyError:
            raise KeyError(f"variable {name!r} is not in the registry") from None

    def offsets(self, names):
        return tuple(sorted(self.offset(n) for n in names))

    def pack(self, exps):
        key = 0
        for i, e in enumerate(exps):
            if e < 0 or e > MAX_EXPONENT:
                raise ValueError(f"exponent {e} out of range")
            key |= e << (WIDTH * i)
        return key

    def unpack(self, key):
        return tuple((key >> (WIDTH * i)) & FIELD_MASK for i in range(len(self.names)))

    def monomial_key(self, powers):
        """Pack a ``{name: exponent}`` mapping."""
        key = 0
        for name, e in powers.items():
            if e < 0 or e > MAX_EXPONENT:
                raise ValueError(f"exponent {e} out of range")
            key += e << self.offset(name)
        return key

    def var(self, name):
        return MultiPoly._raw(self, {1 << self.offset(name): 1}, 1)

    def vars(self, names):
        if isinstance(names, str):
            names = names.split()
        return tuple(self.var(n) for n in names)

    def const(self, value):
        return MultiPoly.const(self, value)

    def zero(self):
        return MultiPoly._raw(self, {}, 1)

    def one(self):
        return MultiPoly._raw(self, {0: 1}, 1)

    def parse(self, text):
        return MultiPoly.parse(self, text)


DEFAULT = Registry(DEFAULT_VARIABLES)


def var(name, registry=DEFAULT):
    return registry.var(name)


def symbols(names, registry=DEFAULT):
    return registry.vars(names)


def _as_fraction(value):
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, Rational)):
        return Fraction(value)
    raise TypeError(f"cannot use {type(value).__name__} as an exact coefficient")


def format_rational(q):
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class MultiPoly:
    __slots__ = ("_reg", "_num", "_den", "_deg", "_hash")

    def __init__(self, registry, terms=None):
        """Build from ``{exponent tuple or {name: exp}: coefficient}``."""
        if terms is None:
            terms = {}
        den = 1
        fracs = {}
        for mono, coef in terms.items():
            q = _as_fraction(coef)
            if not q:
                continue
            key = registry.monomial_key(mono) if isinstance(mono, dict) else registry.pack(mono)
            fracs[key] = fracs.get(key, 0) + q
            den = den * q.denominator // gcd(den, q.denominator)
        num = {k: int(q * den) for k, q in fracs.items() if q}
        self._set(registry, num, den)

    @classmethod
    def _raw(cls, registry, num, den):
        obj = cls.__new__(cls)
        obj._set(registry, num, den)
        return obj

    def _set(self, registry, num, den):
        if not num:
            den = 1
        else:
            if den < 0:
                num = {k: -c for k, c in num.items()}
                den = -den
            g = gcd(_backend.impl.content(num), den)
            if g > 1:
                num = {k: c // g for k, c in num.items()}
                den //= g
        self._reg = registry
        self._num = num
        self._den = den
        self._deg = None
        self._hash = None

    @classmethod
    def const(cls, registry, value):
        q = _as_fraction(value)
        return cls._raw(registry, {0: q.numerator} if q else {}, q.denominator)

    # -- basic queries -------------------------------------------------
    @property
    def registry(self):
        return self._reg

    def is_zero(self):
        return not self._num

    def __bool__(self):
        return bool(self._num)

    def __len__(self):
        return len(self._num)

    def is_constant(self):
        return not self._num or (len(self._num) == 1 and 0 in self._num)

    def constant_term(self):
        return Fraction(self._num.get(0, 0), self._den)

    def total_degree(self):
        if self._deg is None:
            n = len(self._reg)
            self._deg = max(
                (sum((k >> (WIDTH * i)) & FIELD_MASK for i in range(n)) for k in self._num),
                default=0,
            )
        return self._deg

    def degree_in(self, names):
        offs = self._reg.offsets(names)
        pd = _backend.impl.partial_degree
        return max((pd(k, offs) for k in self._num), default=0)

    def terms(self):
        """``{exponent tuple: Fraction}`` in canonical (graded-lex) order."""
        unpack = self._reg.unpack
        items = [(unpack(k), Fraction(c, self._den)) for k, c in self._num.items()]
        items.sort(key=lambda it: _order_key(it[0]))
        return dict(items)

    def free_symbols(self):
        used = set()
        for k in self._num:
            for i, e in enumerate(self._reg.unpack(k)):
                if e:
                    used.add(self._reg.names[i])
        return tuple(n for n in self._reg.names if n in used)

    def leading_term(self):
        """Largest term under graded-lex order (total degree, then lex)."""
        best = max(self._num, key=lambda k: _lead_key(self._reg.unpack(k)))
        return best, Fraction(self._num[best], self._den)

    # -- coercion ------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, MultiPoly):
            if other._reg is not self._reg:
                raise RegistryMismatchError("polynomials belong to different registries")
            return other
        if isinstance(other, (int, Rational)):
            return MultiPoly.const(self._reg, other)
        return NotImplemented

    # -- ring operations -----------------------------------------------
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if not other._num:
            return self
        if not self._num:
            return other
        d1, d2 = self._den, other._den
        g = gcd(d1, d2)
        lcm = d1 // g * d2
        num = _backend.impl.add_scaled(self._num, lcm // d1, other._num, lcm // d2)
        return MultiPoly._raw(self._reg, num, lcm)

    __radd__ = __add__

    def __neg__(self):
        return MultiPoly._raw(self._reg, {k: -c for k, c in self._num.items()}, self._den)

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
        if not self._num or not other._num:
            return MultiPoly._raw(self._reg, {}, 1)
        if other.is_constant():
            return self._scale(Fraction(other._num[0], other._den))
        if self.is_constant():
            return other._scale(Fraction(self._num[0], self._den))
        _check_degree(self, other)
        num = _backend.impl.mul(self._num, other._num)
        return MultiPoly._raw(self._reg, num, self._den * other._den)

    __rmul__ = __mul__

    def _scale(self, q):
        if not q:
            return MultiPoly._raw(self._reg, {}, 1)
        p = q.numerator
        return MultiPoly._raw(self._reg, {k: c * p for k, c in self._num.items()}, self._den * q.denominator)

    def __truediv__(self, other):
        if isinstance(other, MultiPoly):
            if not other.is_constant():
                raise TypeError("use RationalFunction for division by a non-constant polynomial")
            other = other.constant_term()
        q = _as_fraction(other)
        if not q:
            raise ZeroDivisionError("division by zero")
        return self._scale(1 / q)

    def __pow__(self, e):
        if not isinstance(e, int) or e < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MultiPoly._raw(self._reg, {0: 1}, 1)
        base = self
        while e:
            if e & 1:
                result = result * base
            e >>= 1
            if e:
                base = base * base
        return result

    def mul_truncated(self, other, names, cap):
        """Product dropping monomials of degree > cap in the variables ``names``."""
        other = self._coerce(other)
        _check_degree(self, other)
        num = _backend.impl.mul_truncated(self._num, other._num, self._reg.offsets(names), cap)
        return MultiPoly._raw(self._reg, num, self._den * other._den)

    def truncate(self, names, cap):
        offs = self._reg.offsets(names)
        pd = _backend.impl.partial_degree
        return MultiPoly._raw(self._reg, {k: c for k, c in self._num.items() if pd(k, offs) <= cap}, self._den)

    def homogeneous_parts(self, names):
        """Split by degree in ``names``: ``{degree: MultiPoly}``."""
        offs = self._reg.offsets(names)
        pd = _backend.impl.partial_degree
        buckets = {}
        for k, c in self._num.items():
            buckets.setdefault(pd(k, offs), {})[k] = c
        return {d: MultiPoly._raw(self._reg, b, self._den) for d, b in sorted(buckets.items())}

    # -- equality ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, MultiPoly):
            return self._reg is other._reg and self._den == other._den and self._num == other._num
        if isinstance(other, (int, Rational)):
            return self.is_constant() and self.constant_term() == other
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash((frozenset(self._num.items()), self._den))
        return self._hash

    # -- calculus and substitution ------------------------------------
    def diff(self, name):
        off = self._reg.offset(name)
        step = 1 << off
        num = {}
        for k, c in self._num.items():
            e = (k >> off) & FIELD_MASK
            if e:
                num[k - step] = c * e
        return MultiPoly._raw(self._reg, num, self._den)

    def coefficient(self, powers):
        """Coefficient of the monomial ``powers`` ({name: exp}) as a polynomial in the other variables."""
        offs = [(self._reg.offset(n), e) for n, e in powers.items()]
        strip = sum(e << off for off, e in offs)
        num = {}
        for k, c in self._num.items():
            if all(((k >> off) & FIELD_MASK) == e for off, e in offs):
                num[k - strip] = c
        return MultiPoly._raw(self._reg, num, self._den)

    def subs(self, values):
        """Substitute ``{name: MultiPoly or rational}``; other variables stay symbolic."""
        if not values:
            return self
        reg = self._reg
        targets = []
        for name, val in values.items():
            if not isinstance(val, MultiPoly):
                val = MultiPoly.const(reg, val)
            elif val._reg is not reg:
                raise RegistryMismatchError("substitution value belongs to another registry")
            targets.append((reg.offset(name), val))
        power_cache = {}

        def power(i, base, e):
            key = (i, e)
            if key not in power_cache:
                power_cache[key] = base ** e
            return power_cache[key]

        result = reg.zero()
        for k, c in self._num.items():
            term = MultiPoly._raw(reg, {k - sum(((k >> off) & FIELD_MASK) << off for off, _ in targets): c}, self._den)
            for i, (off, val) in enumerate(targets):
                e = (k >> off) & FIELD_MASK
                if e:
                    term = term * power(i, val, e)
            result = result + term
        return result

    def exact_div(self, other):
        """Quotient if ``other`` divides ``self`` exactly, else ``None``."""
        other = self._coerce(other)
        if not other._num:
            raise ZeroDivisionError("division by zero polynomial")
        if other.is_constant():
            return self / other.constant_term()
        reg = self._reg
        lead_k, lead_c = other.leading_term()
        lead_e = reg.unpack(lead_k)
        rem = self
        quotient = reg.zero()
        while rem._num:
            rk, rc = rem.leading_term()
            re_ = reg.unpack(rk)
            if any(a < b for a, b in zip(re_, lead_e)):
                return None
            t = MultiPoly._raw(reg, {rk - lead_k: 1}, 1)._scale(rc / lead_c)
            quotient = quotient + t
            rem = rem - t * other
        return quotient

    def integer_content(self):
        """Positive rational c with self/c having coprime integer coefficients."""
        if not self._num:
            return Fraction(0)
        return Fraction(_backend.impl.content(self._num), self._den)

    # -- text form -----------------------------------------------------
    def to_text(self):
        if not self._num:
            return "0"
        names = self._reg.names
        out = []
        for exps, q in self.terms().items():
            factors = []
            for name, e in zip(names, exps):
                if e == 1:
                    factors.append(name)
                elif e:
                    factors.append(f"{name}^{e}")
            mag = abs(q)
            if not factors:
                body = format_rational(mag)
            elif mag == 1:
                body = "*".join(factors)
            else:
                body = format_rational(mag) + "*" + "*".join(factors)
            if not out:
                out.append(("-" if q < 0 else "") + body)
            else:
                out.append(("-" if q < 0 else "+") + body)
        return "".join(out)

    __str__ = to_text

    def __repr__(self):
        return f"MultiPoly({self.to_text()!r})"

    @classmethod
    def parse(cls, registry, text):
        text = text.strip().replace("−", "-")
        if not text:
            raise ValueError("empty polynomial text")
        pieces = re.findall(r"[+-]?[^+-]+", text.replace(" ", ""))
        if "".join(pieces) != text.replace(" ", ""):
            raise ValueError(f"malformed polynomial text {text!r}")
        terms = {}
        for piece in pieces:
            sign = -1 if piece.startswith("-") else 1
            piece = piece.lstrip("+-")
            if not piece:
                raise ValueError(f"malformed polynomial text {text!r}")
            coef = Fraction(sign)
            powers = {}
            for factor in piece.split("*"):
                if re.fullmatch(r"\d+(/\d+)?", factor):
                    coef *= Fraction(factor)
                    continue
                name, _, exp = factor.partition("^")
                if name not in registry.index:
                    raise ValueError(f"unknown variable {name!r}")
                powers[name] = powers.get(name, 0) + (int(exp) if exp else 1)
            key = registry.pack(tuple(powers.get(n, 0) for n in registry.names))
            terms[key] = terms.get(key, 0) + coef
        return cls(registry, {registry.unpack(k): q for k, q in terms.items()})


def _order_key(exps):
    return (sum(exps), tuple(-e for e in exps))


def _lead_key(exps):
    return (sum(exps), exps)


def _check_degree(a, b):
    if a.total_degree() + b.total_degree() > MAX_EXPONENT:
        raise OverflowError("exponent field overflow")

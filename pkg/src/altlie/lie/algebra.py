"""Lie algebras given by structure constants or by closed-form graded bracket rules."""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from numbers import Rational

from ..errors import AlgebraMismatchError
from ..kernel.poly import MultiPoly, format_rational


def format_scalar(value):
    if isinstance(value, MultiPoly):
        return value.to_text()
    return format_rational(value)


def _clean(coeffs):
    return {k: v for k, v in coeffs.items() if v}


class FiniteLieAlgebra:
    """Finite-dimensional Lie algebra stored as brackets of basis pairs i < j."""

    is_finite = True

    def __init__(self, name, basis, brackets):
        self.name = name
        self.basis = tuple(basis)
        if len(set(self.basis)) != len(self.basis):
            raise ValueError("basis labels must be distinct")
        self._pos = {b: i for i, b in enumerate(self.basis)}
        table = {}
        for (a, b), value in brackets.items():
            i, j = self._pos[a], self._pos[b]
            if i == j:
                if _clean(value):
                    raise ValueError(f"[{a},{a}] must vanish")
                continue
            value = {self._check(k): _scalar(v) for k, v in value.items()}
            value = _clean(value)
            if i > j:
                i, j = j, i
                value = {k: -v for k, v in value.items()}
            if (i, j) in table and table[(i, j)] != value:
                raise ValueError(f"conflicting brackets for ({a},{b})")
            table[(i, j)] = value
        self._table = table

    def _check(self, label):
        if label not in self._pos:
            raise KeyError(f"{label!r} is not a basis label of {self.name}")
        return label

    @property
    def dim(self):
        return len(self.basis)

    def index(self, label):
        return self._pos[label]

    def bracket_basis(self, a, b):
        i, j = self._pos[a], self._pos[b]
        if i == j:
            return {}
        if i < j:
            return dict(self._table.get((i, j), {}))
        return {k: -v for k, v in self._table.get((j, i), {}).items()}

    def structure_constants(self):
        """Nonzero brackets ``{(a, b): {label: coef}}`` for basis pairs in order."""
        out = {}
        for (i, j) in sorted(self._table):
            value = self._table[(i, j)]
            if value:
                out[(self.basis[i], self.basis[j])] = {
                    k: value[k] for k in self.basis if k in value
                }
        return out

    def with_bracket(self, a, b, value):
        """Copy of the algebra with one bracket overwritten (for fault injection)."""
        table = {(x, y): v for (x, y), v in self.structure_constants().items()}
        table.pop((b, a), None)
        table[(a, b)] = value
        return FiniteLieAlgebra(self.name + "*", self.basis, table)

    def element(self, coeffs=None, **kw):
        return LieElement(self, coeffs if coeffs is not None else kw)

    def __getitem__(self, label):
        return LieElement(self, {self._check(label): Fraction(1)})

    def basis_elements(self):
        return [self[b] for b in self.basis]

    def triples(self):
        return combinations(self.basis, 3)

    def __repr__(self):
        return f"FiniteLieAlgebra({self.name!r}, dim={self.dim})"


def graded_label(family, n):
    return (family, n)


def label_text(label):
    if isinstance(label, tuple):
        family, n = label
        return f"{family}{n}" if n is not None else family
    return str(label)


class GradedBracketRule:
    """Infinite algebra with basis families indexed by integers.

    ``rule(f1, n, f2, m)`` returns ``[(family, index, coef), ...]`` for the
    bracket of ``(f1, n)`` with ``(f2, m)``.  Central families carry the single
    index ``None`` and bracket to zero with everything.
    """

    is_finite = False

    def __init__(self, name, families, rule, central=()):
        self.name = name
        self.families = tuple(families)
        self.central = tuple(central)
        self._rule = rule

    def is_label(self, label):
        if not isinstance(label, tuple) or len(label) != 2:
            return False
        fam, n = label
        if fam in self.central:
            return n is None
        return fam in self.families and isinstance(n, int)

    def bracket_basis(self, a, b):
        if a[0] in self.central or b[0] in self.central:
            return {}
        out = {}
        for fam, idx, coef in self._rule(a[0], a[1], b[0], b[1]):
            key = (fam, None if fam in self.central else idx)
            out[key] = out.get(key, 0) + coef
        return _clean(out)

    def window_basis(self, window, families=None):
        fams = self.families if families is None else families
        labels = [(f, n) for f in fams for n in range(-window, window + 1)]
        if families is None:
            labels += [(c, None) for c in self.central]
        return labels

    def triples(self, window):
        return combinations(self.window_basis(window), 3)

    def element(self, coeffs):
        return LieElement(self, coeffs)

    def __getitem__(self, label):
        if isinstance(label, str):
            label = (label, None)
        if not self.is_label(label):
            raise KeyError(f"{label!r} is not a basis label of {self.name}")
        return LieElement(self, {label: Fraction(1)})

    def gen(self, family, n=None):
        return self[(family, n)]

    def __repr__(self):
        return f"GradedBracketRule({self.name!r}, families={self.families}, central={self.central})"


def _scalar(v):
    if isinstance(v, MultiPoly):
        return v.constant_term() if v.is_constant() else v
    if isinstance(v, (int, Rational)):
        return Fraction(v)
    raise TypeError(f"unsupported coefficient type {type(v).__name__}")


class LieElement:
    """Finite linear combination of basis labels; coefficients may be symbolic."""

    __slots__ = ("algebra", "coeffs")

    def __init__(self, algebra, coeffs):
        self.algebra = algebra
        self.coeffs = _clean({k: _scalar(v) for k, v in coeffs.items()})

    def _same(self, other):
        if not isinstance(other, LieElement):
            raise TypeError("expected a LieElement")
        if other.algebra is not self.algebra:
            raise AlgebraMismatchError(f"elements of {self.algebra.name} and {other.algebra.name}")
        return other

    def __add__(self, other):
        other = self._same(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return LieElement(self.algebra, out)

    def __neg__(self):
        return LieElement(self.algebra, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._same(other))

    def __mul__(self, scalar):
        if isinstance(scalar, LieElement):
            return NotImplemented
        return LieElement(self.algebra, {k: v * scalar for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return self * (1 / Fraction(scalar))

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.coeffs
        if not isinstance(other, LieElement):
            return NotImplemented
        return self.algebra is other.algebra and (self - other).is_zero()

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self):
        return not self.coeffs

    def coefficient(self, label):
        return self.coeffs.get(label, Fraction(0))

    def ordered_items(self):
        alg = self.algebra
        if alg.is_finite:
            return [(b, self.coeffs[b]) for b in alg.basis if b in self.coeffs]

        def key(label):
            fam, n = label
            if fam in alg.central:
                return (1, alg.central.index(fam), 0)
            return (0, alg.families.index(fam), -n)

        return [(lab, self.coeffs[lab]) for lab in sorted(self.coeffs, key=key)]

    def to_text(self):
        if not self.coeffs:
            return "0"
        parts = []
        for label, coef in self.ordered_items():
            name = label_text(label)
            text = format_scalar(coef)
            if text == "1":
                parts.append(name)
            elif text == "-1":
                parts.append("-" + name)
            elif isinstance(coef, MultiPoly) and len(coef) > 1:
                parts.append(f"({text})*{name}")
            else:
                parts.append(f"{text}*{name}")
        return "+".join(parts).replace("+-", "-")

    __str__ = to_text

    def __repr__(self):
        return f"LieElement({self.to_text()!r})"


def bracket(x, y):
    """Bilinear bracket of two elements of the same algebra."""
    x._same(y)
    alg = x.algebra
    out = {}
    for a, ca in x.coeffs.items():
        for b, cb in y.coeffs.items():
            for k, v in alg.bracket_basis(a, b).items():
                out[k] = out.get(k, 0) + ca * cb * v
    return LieElement(alg, out)

"""Chevalley-Eilenberg cochains in degrees 1 and 2, H^2 and central extensions.

Finite algebras are handled exhaustively.  For graded algebras every check
runs on a window of indices; such results are window evidence only.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .errors import CocycleError, NotASubalgebraError
from .kernel import linalg
from .lie.algebra import FiniteLieAlgebra, GradedBracketRule, LieElement, format_scalar, label_text
from .lie.catalog import virasoro_value
from .lie.checks import LieMorphism

DEFAULT_WINDOW = 10


def _labels(alg, window):
    return list(alg.basis) if alg.is_finite else alg.window_basis(window)


class OneCochain:
    """Linear form on the algebra, given on finitely many basis labels."""

    def __init__(self, algebra, values):
        self.algebra = algebra
        self.values = {k: Fraction(v) for k, v in values.items() if v}

    def __call__(self, x):
        if isinstance(x, LieElement):
            return sum((c * self.values.get(k, 0) for k, c in x.coeffs.items()), Fraction(0))
        return self.values.get(x, Fraction(0))


class TwoCochain:
    """Antisymmetric bilinear form, evaluated lazily from a rule on basis labels."""

    def __init__(self, algebra, rule, name="α"):
        self.algebra = algebra
        self._rule = rule
        self.name = name

    @classmethod
    def from_table(cls, algebra, table, name="α"):
        """``table[(a, b)]`` for a before b in basis order; antisymmetry is implied."""
        pos = algebra.index
        store = {}
        for (a, b), v in table.items():
            if pos(a) > pos(b):
                a, b, v = b, a, -Fraction(v)
            store[(a, b)] = Fraction(v)

        def rule(a, b):
            if a == b:
                return Fraction(0)
            if pos(a) < pos(b):
                return store.get((a, b), Fraction(0))
            return -store.get((b, a), Fraction(0))

        return cls(algebra, rule, name)

    def __call__(self, a, b):
        if isinstance(a, LieElement) or isinstance(b, LieElement):
            return self.evaluate(a, b)
        if a == b:
            return Fraction(0)
        return self._rule(a, b)

    def evaluate(self, x, y):
        if not isinstance(x, LieElement):
            x = self.algebra[x]
        if not isinstance(y, LieElement):
            y = self.algebra[y]
        total = Fraction(0)
        for a, ca in x.coeffs.items():
            for b, cb in y.coeffs.items():
                v = self(a, b)
                if v:
                    total = total + ca * cb * v
        return total

    def __add__(self, other):
        return TwoCochain(self.algebra, lambda a, b: self(a, b) + other(a, b), f"{self.name}+{other.name}")

    def __mul__(self, scalar):
        scalar = Fraction(scalar)
        return TwoCochain(self.algebra, lambda a, b: scalar * self(a, b), f"{scalar}*{self.name}")

    __rmul__ = __mul__

    def __neg__(self):
        return self * -1

    def __sub__(self, other):
        return self + (-other)

    def table(self, window=None):
        members = getattr(self, "members", None)
        labels = members if members is not None and window is None else _labels(self.algebra, window)
        out = {}
        for a, b in combinations(labels, 2):
            v = self(a, b)
            if v:
                out[(a, b)] = v
        return out

    def is_zero(self, window=None):
        return not self.table(window)


@dataclass
class ThreeCochainReport:
    cochain: str
    triples_checked: int
    nonzero: list = field(default_factory=list)

    @property
    def is_cocycle(self):
        return not self.nonzero

    def to_dict(self):
        return {
            "cochain": self.cochain,
            "triples_checked": self.triples_checked,
            "is_cocycle": self.is_cocycle,
            "nonzero": [
                {"triple": [label_text(t) for t in tri], "value": format_scalar(v)} for tri, v in self.nonzero
            ],
        }


def d1(lam):
    """Coboundary of a one-form: (x, y) -> lam([x, y])."""
    alg = lam.algebra

    def rule(a, b):
        return sum((c * lam.values.get(k, 0) for k, c in alg.bracket_basis(a, b).items()), Fraction(0))

    return TwoCochain(alg, rule, "dλ")


def d2_value(alpha, a, b, c):
    alg = alpha.algebra
    total = Fraction(0)
    for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
        for k, v in alg.bracket_basis(x, y).items():
            w = alpha(k, z)
            if w:
                total = total + v * w
    return total


def d2(alpha, window=DEFAULT_WINDOW, stop_at_first=False):
    """Evaluate the coboundary of a two-form on all basis triples (window for graded)."""
    alg = alpha.algebra
    triples = alg.triples() if alg.is_finite else alg.triples(window)
    count = 0
    bad = []
    for tri in triples:
        count += 1
        v = d2_value(alpha, *tri)
        if v:
            bad.append((tri, v))
            if stop_at_first:
                break
    return ThreeCochainReport(alpha.name, count, bad)


@dataclass
class H2Result:
    algebra: str
    dim_Z2: int
    dim_B2: int
    cocycle_basis: list
    coboundary_basis: list

    @property
    def dim_H2(self):
        return self.dim_Z2 - self.dim_B2

    def to_dict(self):
        return {"algebra": self.algebra, "dim_Z2": self.dim_Z2, "dim_B2": self.dim_B2, "dim_H2": self.dim_H2}


def _d2_matrix(g):
    pairs = list(combinations(range(g.dim), 2))
    col = {p: i for i, p in enumerate(pairs)}
    rows = []
    for i, j, k in combinations(range(g.dim), 3):
        row = [Fraction(0)] * len(pairs)
        for (x, y, z) in ((i, j, k), (j, k, i), (k, i, j)):
            for lab, v in g.bracket_basis(g.basis[x], g.basis[y]).items():
                p = g.index(lab)
                if p == z:
                    continue
                if p < z:
                    row[col[(p, z)]] += v
                else:
                    row[col[(z, p)]] -= v
        rows.append(row)
    return pairs, rows


def h2_dimension(g):
    """Exact dim Z^2, dim B^2 and dim H^2 of a finite-dimensional algebra."""
    if not g.is_finite:
        raise TypeError("h2_dimension needs a finite-dimensional algebra")
    pairs, rows = _d2_matrix(g)
    z_basis = linalg.nullspace(rows, len(pairs)) if rows else linalg.nullspace([], len(pairs))
    coboundaries = []
    for lab in g.basis:
        lam = OneCochain(g, {lab: 1})
        dl = d1(lam)
        coboundaries.append([dl(g.basis[i], g.basis[j]) for i, j in pairs])
    b_basis = linalg.column_space_basis([v for v in coboundaries if any(v)])

    def as_cochain(vec, name):
        return TwoCochain.from_table(g, {(g.basis[i], g.basis[j]): v for (i, j), v in zip(pairs, vec) if v}, name)

    return H2Result(
        g.name,
        len(z_basis),
        len(b_basis),
        [as_cochain(v, f"z{i}") for i, v in enumerate(z_basis)],
        [as_cochain(v, f"b{i}") for i, v in enumerate(b_basis)],
    )


def central_extend(g, alpha, c=1, label="K", window=6):
    """g (+) R K with [x, y]~ = [x, y] + c*alpha(x, y) K; rejects non-closed forms."""
    report = d2(alpha, window, stop_at_first=True)
    if not report.is_cocycle:
        tri, v = report.nonzero[0]
        raise CocycleError(
            f"two-form is not closed on ({', '.join(label_text(t) for t in tri)}): {format_scalar(v)}",
            witness=tuple(tri),
        )
    c = Fraction(c)
    if g.is_finite:
        basis = list(g.basis) + [label]
        brackets = {}
        for a, b in combinations(g.basis, 2):
            value = dict(g.bracket_basis(a, b))
            w = c * alpha(a, b)
            if w:
                value[label] = w
            brackets[(a, b)] = value
        return FiniteLieAlgebra(f"{g.name}~", basis, brackets)

    base = g._rule

    def rule(f1, n, f2, m):
        out = list(base(f1, n, f2, m))
        w = c * alpha((f1, n), (f2, m))
        if w:
            out.append((label, None, w))
        return out

    return GradedBracketRule(f"{g.name}~", g.families, rule, central=g.central + (label,))


def restrict_cocycle(alpha, subalgebra, window=6):
    """Restrict alpha to a subalgebra given by basis labels or, for graded algebras, family names.

    Closure under the bracket is verified (on the window for families).
    """
    alg = alpha.algebra
    if all(isinstance(s, str) for s in subalgebra) and not alg.is_finite and set(subalgebra) <= set(alg.families):
        families = set(subalgebra)
        members = alg.window_basis(window, tuple(f for f in alg.families if f in families))

        def inside(lab):
            return lab[0] in families or lab[0] in alg.central

        domain = ("families", tuple(sorted(families)))
    else:
        members = list(subalgebra)
        allowed = set(members)

        def inside(lab):
            return lab in allowed or (not alg.is_finite and lab[0] in alg.central)

        domain = ("labels", tuple(members))
    for a, b in combinations(members, 2):
        for k in alg.bracket_basis(a, b):
            if not inside(k):
                raise NotASubalgebraError(f"[{label_text(a)}, {label_text(b)}] leaves the span ({label_text(k)})")

    def rule(a, b):
        if not (inside(a) and inside(b)):
            raise NotASubalgebraError(f"({label_text(a)}, {label_text(b)}) is outside the restriction domain")
        return alpha(a, b)

    restricted = TwoCochain(alg, rule, f"{alpha.name}|")
    restricted.domain = domain
    restricted.members = members
    return restricted


def restricted_table(restricted):
    out = {}
    for a, b in combinations(restricted.members, 2):
        v = restricted(a, b)
        if v:
            out[(a, b)] = v
    return out


# -- the concrete cocycles ---------------------------------------------------

def virasoro_cocycle(alg, family="L"):
    """(L_n, L_m) -> delta_{n+m,0} n(n^2-1) on one family, zero elsewhere."""

    def rule(a, b):
        (f1, n), (f2, m) = a, b
        if n is None or m is None:
            return Fraction(0)
        if f1 == family and f2 == family and n + m == 0:
            return Fraction(virasoro_value(n))
        return Fraction(0)

    return TwoCochain(alg, rule, "vir")


def omega_cocycle(alg, family="L", partner="Le"):
    """(L_n, Le_m) -> delta_{n+m,0} n(n^2-1); zero on L-L and Le-Le pairs."""

    def rule(a, b):
        (f1, n), (f2, m) = a, b
        if n is None or m is None or n + m != 0:
            return Fraction(0)
        if f1 == family and f2 == partner:
            return Fraction(virasoro_value(n))
        if f1 == partner and f2 == family:
            return -Fraction(virasoro_value(m))
        return Fraction(0)

    return TwoCochain(alg, rule, "ω")


def coboundary_shift(g, alpha, lam, label="K"):
    """The map ext(alpha) -> ext(alpha + d lam), X -> X + lam(X) K, K -> K."""
    source = central_extend(g, alpha, label=label)
    target = central_extend(g, alpha + d1(lam), label=label)
    images = {b: {b: 1, **({label: lam(b)} if lam(b) else {})} for b in g.basis}
    images[label] = {label: 1}
    return LieMorphism(source, target, images)


@dataclass
class IndependenceReport:
    window: int
    cocycles: list
    equations: int
    unknowns: int
    relations: list

    @property
    def independent(self):
        return not self.relations

    def to_dict(self):
        return {
            "window": self.window,
            "cocycles": self.cocycles,
            "equations": self.equations,
            "unknowns": self.unknowns,
            "independent": self.independent,
            "relations": [[str(x) for x in r] for r in self.relations],
        }


def cocycle_independence(cocycles, window=6):
    """Is any nontrivial combination of the cocycles a coboundary on the window?

    Unknowns are the combination weights plus a one-form on every basis label
    reached by brackets of window pairs.  Returns the weight vectors of all
    relations found (empty means independent modulo coboundaries).
    """
    alg = cocycles[0].algebra
    labels = alg.window_basis(window)
    pairs = list(combinations(labels, 2))
    reached = []
    seen = set()
    for a, b in pairs:
        for k in alg.bracket_basis(a, b):
            if k not in seen:
                seen.add(k)
                reached.append(k)
    col = {k: len(cocycles) + i for i, k in enumerate(reached)}
    ncols = len(cocycles) + len(reached)
    rows = []
    for a, b in pairs:
        row = [Fraction(0)] * ncols
        for i, alpha in enumerate(cocycles):
            row[i] = alpha(a, b)
        for k, v in alg.bracket_basis(a, b).items():
            row[col[k]] -= v
        if any(row):
            rows.append(row)
    kernel = linalg.nullspace(rows, ncols)
    weights = [v[: len(cocycles)] for v in kernel]
    rel_rank = linalg.rank(weights, len(cocycles)) if weights else 0
    relations = linalg.column_space_basis([w for w in weights if any(w)])[:rel_rank]
    return IndependenceReport(window, [c.name for c in cocycles], len(rows), ncols, relations)

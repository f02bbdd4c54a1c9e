"""Jacobi identity and morphism verification."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from ..kernel import linalg
from .algebra import LieElement, bracket, label_text


@dataclass
class JacobiReport:
    algebra: str
    triples_checked: int
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def to_dict(self):
        return {
            "algebra": self.algebra,
            "triples_checked": self.triples_checked,
            "failures": [
                {"triple": [label_text(t) for t in triple], "residual": str(res)}
                for triple, res in self.failures
            ],
        }


def jacobiator(x, y, z):
    return bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y)


def jacobi_check(alg, window=6):
    """Evaluate the Jacobi identity on every basis triple (graded: inside the window)."""
    triples = alg.triples() if alg.is_finite else alg.triples(window)
    count = 0
    failures = []
    for a, b, c in triples:
        count += 1
        res = jacobiator(alg[a], alg[b], alg[c])
        if not res.is_zero():
            failures.append(((a, b, c), res))
    return JacobiReport(alg.name, count, failures)


class LieMorphism:
    """Linear map given on the source basis by images in the target."""

    def __init__(self, source, target, images):
        missing = set(source.basis) ^ set(images)
        if missing:
            raise ValueError(f"dimension mismatch: images do not match the source basis ({sorted(missing)})")
        self.source = source
        self.target = target
        self.images = {
            a: LieElement(target, {k: Fraction(v) for k, v in img.items()})
            for a, img in images.items()
        }

    def __call__(self, x):
        out = LieElement(self.target, {})
        for label, coef in x.coeffs.items():
            out = out + self.images[label] * coef
        return out

    def matrix(self):
        """Rows indexed by target basis, columns by source basis."""
        return [[self.images[a].coefficient(t) for a in self.source.basis] for t in self.target.basis]


@dataclass
class MorphismReport:
    source: str
    target: str
    pairs_checked: int
    failures: list
    rank: int
    bijective: bool

    @property
    def ok(self):
        return not self.failures

    @property
    def isomorphism(self):
        return self.ok and self.bijective

    def to_dict(self):
        return {
            "source": self.source,
            "target": self.target,
            "pairs_checked": self.pairs_checked,
            "bracket_preserving": self.ok,
            "rank": self.rank,
            "bijective": self.bijective,
            "failures": [
                {"pair": [a, b], "image_of_bracket": str(lhs), "bracket_of_images": str(rhs)}
                for (a, b), lhs, rhs in self.failures
            ],
        }


def check_morphism(phi):
    src = phi.source
    failures = []
    count = 0
    for i, a in enumerate(src.basis):
        for b in src.basis[i + 1:]:
            count += 1
            lhs = phi(bracket(src[a], src[b]))
            rhs = bracket(phi(src[a]), phi(src[b]))
            if not (lhs - rhs).is_zero():
                failures.append(((a, b), lhs, rhs))
    r = linalg.rank(phi.matrix(), src.dim) if phi.target.dim else 0
    bijective = r == src.dim == phi.target.dim
    return MorphismReport(src.name, phi.target.name, count, failures, r, bijective)


def identity_morphism(g):
    return LieMorphism(g, g, {b: {b: 1} for b in g.basis})


def bracket_span_dimension(g):
    """dim [g, g]."""
    rows = []
    for i, a in enumerate(g.basis):
        for b in g.basis[i + 1:]:
            v = g.bracket_basis(a, b)
            rows.append([Fraction(v.get(k, 0)) for k in g.basis])
    return linalg.rank(rows, g.dim) if rows else 0

"""Derived algebras: Grassmann doubling, semidirect products, change of basis."""
from __future__ import annotations

from fractions import Fraction

from ..kernel import linalg
from .algebra import FiniteLieAlgebra


def grassmann_double(g, suffix="e"):
    """g (x) R[e]/e^2: basis b and b+suffix with [a, b^e] = [a, b]^e and [a^e, b^e] = 0."""
    doubled = {b: b + suffix for b in g.basis}
    basis = list(g.basis) + [doubled[b] for b in g.basis]
    brackets = {}
    for i, a in enumerate(g.basis):
        for b in g.basis[i + 1:]:
            value = g.bracket_basis(a, b)
            brackets[(a, b)] = value
            brackets[(doubled[a], doubled[b])] = {}
        for b in g.basis:
            if a != b:
                brackets[(a, doubled[b])] = {doubled[k]: v for k, v in g.bracket_basis(a, b).items()}
    return FiniteLieAlgebra(f"{g.name}{suffix}", basis, brackets)


def semidirect_product(g, module_basis, action, name=None):
    """g acting on an abelian ideal; ``action[(a, m)]`` is a.m in the module basis."""
    basis = list(g.basis) + list(module_basis)
    brackets = {}
    for i, a in enumerate(g.basis):
        for b in g.basis[i + 1:]:
            brackets[(a, b)] = g.bracket_basis(a, b)
        for m in module_basis:
            brackets[(a, m)] = action.get((a, m), {})
    return FiniteLieAlgebra(name or f"{g.name}|x|module", basis, brackets)


def change_basis(g, labels, images, name=None):
    """Re-express g in a new basis; ``images[i]`` is labels[i] in the old basis."""
    if len(labels) != g.dim or len(images) != g.dim:
        raise ValueError("a basis change needs exactly dim(g) vectors")
    cols = [[Fraction(img.get(b, 0)) for b in g.basis] for img in images]
    # rows of the system: old-basis coordinate k  =  sum_i x_i * cols[i][k]
    system = [[cols[i][k] for i in range(g.dim)] for k in range(g.dim)]
    if linalg.rank(system) != g.dim:
        raise ValueError("new vectors are not a basis")
    brackets = {}
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            value = {}
            for a, ca in images[i].items():
                for b, cb in images[j].items():
                    for k, v in g.bracket_basis(a, b).items():
                        value[k] = value.get(k, 0) + Fraction(ca) * Fraction(cb) * v
            rhs = [value.get(b, Fraction(0)) for b in g.basis]
            x = linalg.solve(system, rhs)
            brackets[(labels[i], labels[j])] = {labels[k]: x[k] for k in range(g.dim) if x[k]}
    return FiniteLieAlgebra(name or g.name, labels, brackets)

"""Exact linear algebra over the rationals.

Rows are scaled to integers and reduced with Bareiss fraction-free
elimination; only the final back-substitution touches ``Fraction``.
"""
from __future__ import annotations

from fractions import Fraction
from math import lcm


def _integer_rows(rows):
    out = []
    for row in rows:
        row = [Fraction(v) for v in row]
        scale = lcm(*(v.denominator for v in row)) if row else 1
        out.append([int(v * scale) for v in row])
    return out


def echelon(rows, ncols=None):
    """Fraction-free row echelon form; returns (integer rows, pivot columns)."""
    m = _integer_rows(rows)
    if ncols is None:
        ncols = len(m[0]) if m else 0
    pivots = []
    prev = 1
    r = 0
    for col in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][col]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][col]
        for i in range(r + 1, len(m)):
            f = m[i][col]
            row_i, row_r = m[i], m[r]
            m[i] = [(p * row_i[j] - f * row_r[j]) // prev for j in range(ncols)]
        prev = p
        pivots.append(col)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank(rows, ncols=None):
    return len(echelon(rows, ncols)[1])


def rref(rows, ncols=None):
    """Reduced row echelon form over ``Fraction``; returns (rows, pivots)."""
    ech, pivots = echelon(rows, ncols)
    red = [[Fraction(v) for v in row] for row in ech]
    for i in range(len(red) - 1, -1, -1):
        col = pivots[i]
        p = red[i][col]
        red[i] = [v / p for v in red[i]]
        for k in range(i):
            f = red[k][col]
            if f:
                red[k] = [a - f * b for a, b in zip(red[k], red[i])]
    return red, pivots


def nullspace(rows, ncols):
    """Basis of {v : rows @ v = 0} as lists of ``Fraction``."""
    if not rows:
        return [[Fraction(int(i == j)) for j in range(ncols)] for i in range(ncols)]
    red, pivots = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[f]
        basis.append(v)
    return basis


def solve(rows, rhs):
    """One solution of rows @ v = rhs, or ``None`` if inconsistent."""
    ncols = len(rows[0]) if rows else 0
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    red, pivots = rref(aug, ncols + 1)
    if ncols in pivots:
        return None
    v = [Fraction(0)] * ncols
    for row, pc in zip(red, pivots):
        v[pc] = row[ncols]
    return v


def column_space_basis(vectors):
    """Independent subset (in order) of the given vectors."""
    chosen = []
    current = 0
    for vec in vectors:
        trial = chosen + [vec]
        r = rank(trial)
        if r > current:
            chosen.append(vec)
            current = r
    return chosen

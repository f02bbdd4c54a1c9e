"""W as 2x2 block matrices over Vect(S1): L_n diagonal, L_n^e strictly upper."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product

from ..lie.algebra import LieElement, bracket, label_text
from ..lie.catalog import vect, w_window


def block(label, algebra):
    """2x2 matrix of Vect elements for a W label."""
    fam, n = label
    gen = algebra.gen("L", n)
    zero = LieElement(algebra, {})
    if fam == "L":
        return ((gen, zero), (zero, gen))
    if fam == "Le":
        return ((zero, gen), (zero, zero))
    raise KeyError(f"no block form for {label!r}")


def block_bracket(A, B):
    """[A, B]_ik = sum_j [A_ij, B_jk] computed with the Vect bracket."""
    return tuple(
        tuple(bracket(A[i][0], B[0][k]) + bracket(A[i][1], B[1][k]) for k in range(2))
        for i in range(2)
    )


def block_to_w(M, w):
    """Read a block matrix back as a W element; None if it is not of W shape."""
    (p, q), (r, s) = M
    if not r.is_zero() or p != s:
        return None
    coeffs = {("L", lab[1]): c for lab, c in p.coeffs.items()}
    coeffs.update({("Le", lab[1]): c for lab, c in q.coeffs.items()})
    return LieElement(w, coeffs)


@dataclass
class MatrixReport:
    pairs_checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def to_dict(self):
        return {"pairs_checked": self.pairs_checked, "ok": self.ok,
                "failures": [[label_text(a), label_text(b)] for a, b in self.failures]}


def matrix2x2_check(window=5):
    v, w = vect(), w_window()
    labels = w.window_basis(window, families=w.families)
    report = MatrixReport()
    for a, b in product(labels, repeat=2):
        report.pairs_checked += 1
        got = block_to_w(block_bracket(block(a, v), block(b, v)), w)
        if got is None or got != w.element(w.bracket_basis(a, b)):
            report.failures.append((a, b))
    return report

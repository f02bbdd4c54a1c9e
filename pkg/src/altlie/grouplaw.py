"""4x4 matrix model of alt, nilpotent exponentials and coordinates of the second kind.

Everything is computed with exact rational functions in B1, B2, V1, V2.  The
diagonal factor exp(A4 X0) is represented through lambda = exp(A4/2); A4 itself
only appears as the display token ``2*log(λ)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from math import factorial

from .errors import DomainError, PatternError
from .kernel.poly import DEFAULT, MultiPoly
from .kernel.ratfunc import RationalFunction
from .lie.algebra import bracket
from .lie.catalog import ALT_LABELS, alt

N = 4
ORDER = ("Y1", "X1", "Y0", "X0", "Y-1", "X-1")
A4_TOKEN = "2*log(λ)"


def _rf(value, registry=DEFAULT):
    if isinstance(value, RationalFunction):
        return value
    if isinstance(value, MultiPoly):
        return RationalFunction(value)
    return RationalFunction(MultiPoly.const(registry, Fraction(value)))


class Matrix4:
    """4x4 matrix with RationalFunction entries; ``M[i, j]`` uses 1-based indices."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        if len(rows) != N or any(len(r) != N for r in rows):
            raise ValueError("Matrix4 needs 4 rows of 4 entries")
        self.rows = tuple(tuple(_rf(v) for v in r) for r in rows)

    @classmethod
    def zero(cls):
        return cls([[0] * N for _ in range(N)])

    @classmethod
    def identity(cls):
        return cls([[1 if i == j else 0 for j in range(N)] for i in range(N)])

    @classmethod
    def unit(cls, i, j, coef=1):
        """coef * E_ij with 1-based indices, matching the usual matrix notation."""
        rows = [[0] * N for _ in range(N)]
        rows[i - 1][j - 1] = coef
        return cls(rows)

    @classmethod
    def diagonal(cls, entries):
        return cls([[entries[i] if i == j else 0 for j in range(N)] for i in range(N)])

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i - 1][j - 1]

    def __add__(self, other):
        return Matrix4([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)])

    def __neg__(self):
        return Matrix4([[-a for a in r] for r in self.rows])

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return Matrix4([[a * c for a in r] for r in self.rows])

    def __mul__(self, other):
        if not isinstance(other, Matrix4):
            return self.scale(other)
        cols = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            for col in cols:
                acc = _rf(0)
                for a, b in zip(r, col):
                    if not a.is_zero() and not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Matrix4(out)

    def __rmul__(self, c):
        return self.scale(c)

    def __pow__(self, e):
        out = Matrix4.identity()
        for _ in range(e):
            out = out * self
        return out

    def __eq__(self, other):
        if not isinstance(other, Matrix4):
            return NotImplemented
        return all(a == b for r, s in zip(self.rows, other.rows) for a, b in zip(r, s))

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self):
        return all(a.is_zero() for r in self.rows for a in r)

    def det(self):
        total = _rf(0)
        for perm in permutations(range(N)):
            term = _rf(_sign(perm))
            for i, j in enumerate(perm):
                term = term * self.rows[i][j]
                if term.is_zero():
                    break
            total = total + term
        return total

    def subs(self, values):
        try:
            return Matrix4([[a.subs(values) for a in r] for r in self.rows])
        except ZeroDivisionError:
            raise DomainError("specialization leaves the chart (1-B2*V2 = 0)") from None

    def first_difference(self, other):
        for i in range(N):
            for j in range(N):
                if self.rows[i][j] != other.rows[i][j]:
                    return (i + 1, j + 1)
        return None

    def to_lists(self):
        return [[a.to_text() for a in r] for r in self.rows]

    def __repr__(self):
        return f"Matrix4({self.to_lists()!r})"


def _sign(perm):
    s, seen = 1, list(perm)
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                s = -s
    return s


def commutator(a, b):
    return a * b - b * a


# -- generators --------------------------------------------------------------

_BASE = {
    "Y1": Matrix4.unit(1, 4),
    "X1": Matrix4.unit(1, 2) + Matrix4.unit(3, 4),
    "Y-1": Matrix4.unit(2, 3, -1),
    "X-1": Matrix4.unit(2, 1, -1) + Matrix4.unit(4, 3, -1),
}
_HALF = Fraction(1, 2)
_BASE["X0"] = commutator(_BASE["X1"], _BASE["X-1"]).scale(_HALF)
_BASE["Y0"] = commutator(_BASE["X1"], _BASE["Y-1"]).scale(_HALF)


def rep4(generator):
    """Matrix of an alt basis label; X0 and Y0 come from brackets of the other four."""
    try:
        return _BASE[generator]
    except KeyError:
        raise KeyError(f"{generator!r} is not an alt basis label") from None


def generator_table():
    return {g: rep4(g) for g in ORDER}


def rep4_element(coeffs):
    """Matrix of sum coef * label; coefficients may be numbers or polynomials."""
    out = Matrix4.zero()
    for label, c in coeffs.items():
        out = out + rep4(label).scale(_rf(c))
    return out


@dataclass
class Rep4Report:
    pairs_checked: int
    failures: list = field(default_factory=list)

    @property
    def ok(self):
        return not self.failures

    def to_dict(self):
        return {"pairs_checked": self.pairs_checked, "ok": self.ok, "failures": self.failures}


def verify_rep4():
    """All 15 commutators of the matrices match the alt structure constants."""
    g = alt()
    report = Rep4Report(0)
    for i, a in enumerate(ALT_LABELS):
        for b in ALT_LABELS[i + 1:]:
            report.pairs_checked += 1
            expect = rep4_element(bracket(g[a], g[b]).coeffs)
            if commutator(rep4(a), rep4(b)) != expect:
                report.failures.append([a, b])
    return report


# -- exponentials ------------------------------------------------------------

def nilpotency_index(M, limit=N):
    """Smallest k <= limit with M^k = 0, or None."""
    P = Matrix4.identity()
    for k in range(1, limit + 1):
        P = P * M
        if P.is_zero():
            return k
    return None


def exp_nilpotent(M):
    """exp(M) = sum_{k<4} M^k/k! for a nilpotent 4x4 matrix."""
    k = nilpotency_index(M)
    if k is None:
        raise DomainError("exp_nilpotent needs a nilpotent matrix")
    out, P = Matrix4.identity(), Matrix4.identity()
    for j in range(1, k):
        P = P * M
        out = out + P.scale(Fraction(1, factorial(j)))
    return out


def exp_x0(lam):
    """exp(A4 X0) written through lambda = exp(A4/2)."""
    lam = _rf(lam)
    inv = lam.inverse()
    return Matrix4.diagonal([inv, lam, inv, lam])


def _symbols(*names):
    return [DEFAULT.var(n) for n in names]


def partial_product(B1=None, B2=None, V1=None, V2=None):
    """exp(B1 Y-1 + B2 X-1) exp(V1 Y1 + V2 X1); omitted arguments stay symbolic."""
    b1, b2, v1, v2 = (
        _rf(val) if val is not None else _rf(DEFAULT.var(name))
        for val, name in ((B1, "B1"), (B2, "B2"), (V1, "V1"), (V2, "V2"))
    )
    left = exp_nilpotent(rep4_element({"Y-1": b1, "X-1": b2}))
    right = exp_nilpotent(rep4_element({"Y1": v1, "X1": v2}))
    return left * right


# -- second-kind coordinates -------------------------------------------------

@dataclass
class SecondKindCoords:
    A1: RationalFunction
    A2: RationalFunction
    A3: RationalFunction
    lam: RationalFunction
    A5: RationalFunction
    A6: RationalFunction

    def values(self):
        return {"A1": self.A1, "A2": self.A2, "A3": self.A3, "λ": self.lam,
                "A5": self.A5, "A6": self.A6}

    def to_dict(self):
        out = {k: v.to_text() for k, v in self.values().items()}
        out["A4"] = A4_TOKEN
        return out

    def subs(self, values):
        return SecondKindCoords(*(v.subs(values) for v in
                                  (self.A1, self.A2, self.A3, self.lam, self.A5, self.A6)))


def reexponentiate(c):
    """exp(A1 Y1) exp(A2 X1) exp(A3 Y0) exp(A4 X0) exp(A5 Y-1) exp(A6 X-1)."""
    factors = [
        exp_nilpotent(rep4("Y1").scale(c.A1)),
        exp_nilpotent(rep4("X1").scale(c.A2)),
        exp_nilpotent(rep4("Y0").scale(c.A3)),
        exp_x0(c.lam),
        exp_nilpotent(rep4("Y-1").scale(c.A5)),
        exp_nilpotent(rep4("X-1").scale(c.A6)),
    ]
    out = factors[0]
    for f in factors[1:]:
        out = out * f
    return out


_STRUCTURAL_ZEROS = ((1, 3), (3, 1), (3, 2), (4, 1), (4, 2))


def factor_second_kind(G):
    """Solve G = exp(A1 Y1) ... exp(A6 X-1) entry by entry, then verify by re-exponentiation."""
    for ij in _STRUCTURAL_ZEROS:
        if not G[ij].is_zero():
            raise PatternError(f"entry {ij} must vanish in the product chart", entry=ij)
    lam = G[2, 2]
    if lam.num.constant_term() == 0 or lam.den.constant_term() == 0:
        raise PatternError("entry (2, 2) needs a nonzero constant term", entry=(2, 2))
    A6 = -G[2, 1] / lam
    A2 = G[1, 2] / lam
    half_a3 = G[2, 4] / lam
    A5 = -(G[2, 3] + half_a3 * lam * A6) / lam
    A1 = G[1, 4] / lam - half_a3 * A2
    coords = SecondKindCoords(A1, A2, half_a3 * 2, lam, A5, A6)
    bad = reexponentiate(coords).first_difference(G)
    if bad is not None:
        raise PatternError(f"entry {bad} is not reproduced by the second-kind product", entry=bad)
    return coords


# -- comparison with the printed formula ------------------------------------

def printed_coordinates():
    """The coordinates as printed, with the A4 entry replaced by its lambda."""
    B1, B2, V1, V2 = (_rf(v) for v in _symbols("B1", "B2", "V1", "V2"))
    lam = 1 - B2 * V2
    return SecondKindCoords(
        A1=(B1 * V2 * V2 + V1) / lam,
        A2=V2 / lam,
        A3=-2 * (B1 * V2 + B2 * V1) / lam,
        lam=lam,
        A5=(B1 - 2 * B1 * B2 * V2 - B2 * B2 * V1) / (lam * lam),
        A6=B2 / lam,
    )


@dataclass
class LeibnizReport:
    entries: list
    specialization: dict
    discrepancies: list

    def to_dict(self):
        return {"coordinates": self.entries, "specialization": self.specialization,
                "discrepancies": self.discrepancies}


def _vacuum_factors(c):
    """Data of exp(A1 Y1)exp(A2 X1)exp(A3 Y0)exp(A4 X0) on the vacuum (A5, A6 act trivially)."""
    return {"Y1": c.A1, "X1": c.A2, "Y0": c.A3, "λ": c.lam}


def leibniz_discrepancy_report():
    oracle = factor_second_kind(partial_product())
    printed = printed_coordinates()
    lam = oracle.lam
    entries, discrepancies = [], []
    for name in ("A1", "A2", "A3", "λ", "A5", "A6"):
        o, p = oracle.values()[name], printed.values()[name]
        if o == p:
            verdict = "match"
        elif name == "A1":
            verdict = "typo-suspected"
        else:
            verdict = "mismatch-unresolved"
        row = {"coordinate": "A4" if name == "λ" else name,
               "printed": A4_TOKEN if name == "λ" else p.to_text(),
               "oracle": A4_TOKEN if name == "λ" else o.to_text(),
               "verdict": verdict}
        if name == "A1" and verdict != "match":
            row["note"] = (f"denominator power printed {p.denominator_power(lam.num)}, "
                           f"oracle {o.denominator_power(lam.num)}")
            discrepancies.append({
                "location": "leibniz-formula/A1",
                "printed": p.to_text(),
                "corrected": o.to_text(),
                "kind": "typo-suspected",
            })
        if name == "A5" and verdict != "match":
            row["note"] = "differs for general B1; at B1=0 both act trivially on the vacuum"
        entries.append(row)

    # B1=0, B2=β, V=(z1, z2): the vacuum-visible factors against the generating function
    beta, z1, z2 = _symbols("β", "z1", "z2")
    sub = {"B1": 0, "B2": beta, "V1": z1, "V2": z2}
    lam_z = _rf(1 - beta * z2)
    expected = {"Y1": _rf(z1) / lam_z ** 2, "X1": _rf(z2) / lam_z,
                "Y0": _rf(beta * z1 * -2) / lam_z, "λ": lam_z}
    spec = {}
    for label, got in _vacuum_factors(oracle.subs(sub)).items():
        spec[label] = {"oracle": got.to_text(), "generating_function": expected[label].to_text(),
                       "match": got == expected[label]}
    printed_spec = _vacuum_factors(printed.subs(sub))
    spec["printed_A1_matches"] = printed_spec["Y1"] == expected["Y1"]
    a5o, a5p = oracle.A5.subs(sub), printed.A5.subs(sub)
    spec["A5_at_B1_0"] = {"oracle": a5o.to_text(), "printed": a5p.to_text(),
                          "annihilates_vacuum": True}
    return LeibnizReport(entries, spec, discrepancies)


PRINTED_PRODUCT = (
    ("1", "V2", "0", "V1"),
    ("-B2", "1-B2*V2", "-B1", "-B2*V1-B1*V2"),
    ("0", "0", "1", "V2"),
    ("0", "0", "-B2", "1-B2*V2"),
)


def printed_product_matrix():
    """The displayed product matrix, parsed from its text form."""
    return Matrix4([[DEFAULT.parse(e) for e in row] for row in PRINTED_PRODUCT])

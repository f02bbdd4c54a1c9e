"""Differential-operator representation of W and calibration of its r∂_r sign."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from math import gcd

from ..errors import DomainError
from ..kernel.poly import DEFAULT
from ..lie.algebra import label_text
from ..lie.catalog import w_window
from .diffop import DiffOp, diffop_commutator

MODES = ("printed", "calibrated")


def w_operator(family, n, sign=-1, registry=DEFAULT):
    """L_n or L_n^e as a DiffOp; ``sign`` multiplies the (n+1) t^n r ∂_r term of L_n.

    ``sign`` may be a number or a symbolic polynomial (the calibration unknown).
    """
    x, g = registry.var("x"), registry.var("γ")
    if family == "L":
        return DiffOp({
            (n + 1, 0, 1, 0): -1,
            (n, 1, 0, 1): sign * (n + 1),
            (n, 0, 0, 0): x * (-(n + 1)),
            (n - 1, 1, 0, 0): g * (-n * (n + 1)),
        }, registry)
    if family == "Le":
        return DiffOp({
            (n + 1, 0, 0, 1): -1,
            (n, 0, 0, 0): g * (-(n + 1)),
        }, registry)
    raise KeyError(f"no operator for family {family!r}")


def rep_operators(mode="calibrated", registry=DEFAULT):
    """Return ``label -> DiffOp`` for the W labels ("L", n) and ("Le", n).

    ``mode`` is "printed" (+(n+1) t^n r ∂_r), "calibrated" (-(n+1)) or
    "ansatz" (symbolic a in front of the r ∂_r term).
    """
    if mode == "printed":
        sign = 1
    elif mode == "calibrated":
        sign = -1
    elif mode == "ansatz":
        sign = registry.var("a")
    else:
        raise ValueError(f"unknown mode {mode!r}; expected printed, calibrated or ansatz")
    cache = {}

    def rep(label):
        if label not in cache:
            cache[label] = w_operator(label[0], label[1], sign, registry)
        return cache[label]

    rep.mode = mode
    return rep


@dataclass
class RepresentationReport:
    pairs_checked: int
    residuals: list = field(default_factory=list)  # (a, b, DiffOp)

    @property
    def ok(self):
        return not self.residuals

    def to_dict(self):
        return {
            "pairs_checked": self.pairs_checked,
            "ok": self.ok,
            "residuals": [
                {"pair": [label_text(a), label_text(b)], "residual": r.to_text()}
                for a, b, r in self.residuals
            ],
        }


def _image(rep, element_coeffs, registry):
    out = DiffOp.zero(registry)
    for label, coef in element_coeffs.items():
        out = out + rep(label) * coef
    return out


def residual(rep, rule, a, b, registry=DEFAULT):
    """[rep(a), rep(b)] - rep([a, b])."""
    lhs = diffop_commutator(rep(a), rep(b))
    return lhs - _image(rep, rule.bracket_basis(a, b), registry)


def verify_representation(rep, rule=None, window=5, registry=DEFAULT):
    """Check every unordered pair of window labels (self-pairs included) at operator level."""
    rule = rule or w_window()
    labels = rule.window_basis(window, families=rule.families)
    report = RepresentationReport(0)
    for a, b in combinations_with_replacement(labels, 2):
        report.pairs_checked += 1
        res = residual(rep, rule, a, b, registry)
        if not res.is_zero():
            report.residuals.append((a, b, res))
    return report


# -- calibration ---------------------------------------------------------

@dataclass
class CalibrationResult:
    unknown: str
    admissible: object  # "all" or a sorted list of Fractions
    equations: int

    @property
    def consistent(self):
        return self.admissible == "all" or bool(self.admissible)

    def to_dict(self):
        adm = self.admissible if self.admissible == "all" else [str(q) for q in self.admissible]
        return {"unknown": self.unknown, "admissible": adm,
                "consistent": self.consistent, "equations": self.equations}


def _univariate(poly, name):
    """Split ``poly`` into univariate polynomials in ``name`` (one per monomial in the rest)."""
    idx = poly.registry.names.index(name)
    groups = {}
    for exps, q in poly.terms().items():
        rest = exps[:idx] + (0,) + exps[idx + 1:]
        groups.setdefault(rest, {})[exps[idx]] = q
    return list(groups.values())


def _divisors(k):
    k = abs(k)
    return [d for d in range(1, k + 1) if k % d == 0]


def _eval(coeffs, x):
    return sum(c * x ** e for e, c in coeffs.items())


def _rational_roots(coeffs):
    """Rational roots of a nonzero univariate polynomial {exponent: Fraction}."""
    low = min(coeffs)
    shifted = {e - low: c for e, c in coeffs.items()}
    roots = {Fraction(0)} if low > 0 else set()
    top = max(shifted)
    if top == 0:
        return roots
    den = 1
    for c in shifted.values():
        den = den * c.denominator // gcd(den, c.denominator)
    ints = {e: int(c * den) for e, c in shifted.items()}
    for p in _divisors(ints[0]):
        for q in _divisors(ints[top]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if _eval(ints, cand) == 0:
                    roots.add(cand)
    return roots


def calibrate_rep(rule=None, window=3, ansatz=None, unknown="a", registry=DEFAULT):
    """Values of the unknown for which every window residual of ``ansatz`` vanishes.

    Each residual coefficient is a polynomial in the unknown and the free
    parameters; every coefficient of every parameter monomial must vanish.
    """
    rule = rule or w_window()
    ansatz = ansatz or rep_operators("ansatz", registry)
    labels = rule.window_basis(window, families=rule.families)
    equations = []
    for a, b in combinations_with_replacement(labels, 2):
        for coef in residual(ansatz, rule, a, b, registry).terms.values():
            equations.extend(u for u in _univariate(coef, unknown) if u)
    if not equations:
        return CalibrationResult(unknown, "all", 0)
    candidates = None
    for eq in equations:
        if max(eq) == 0:
            return CalibrationResult(unknown, [], len(equations))
        roots = _rational_roots(eq)
        candidates = roots if candidates is None else candidates & roots
        if not candidates:
            break
    admissible = sorted(r for r in candidates if all(_eval(eq, r) == 0 for eq in equations))
    return CalibrationResult(unknown, admissible, len(equations))


def require_consistent(result):
    if not result.consistent:
        raise DomainError(f"no value of {result.unknown} makes the representation consistent")
    return result

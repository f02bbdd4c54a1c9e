"""Laurent polynomials in z, vector fields f(z) d/dz and alpha-density modules."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..kernel.poly import format_rational


class Laurent:
    """Finite sum of c_k z^k, k in Z, with rational coefficients."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {int(k): Fraction(v) for k, v in (coeffs or {}).items() if v}

    @classmethod
    def monomial(cls, k, c=1):
        return cls({k: c})

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return Laurent(out)

    def __neg__(self):
        return Laurent({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Laurent):
            out = {}
            for i, a in self.coeffs.items():
                for j, b in other.coeffs.items():
                    out[i + j] = out.get(i + j, 0) + a * b
            return Laurent(out)
        return Laurent({k: v * other for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def derivative(self):
        return Laurent({k - 1: k * v for k, v in self.coeffs.items() if k})

    def __eq__(self, other):
        return isinstance(other, Laurent) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def is_zero(self):
        return not self.coeffs

    def to_text(self, var="z"):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            mono = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            mag = format_rational(abs(c))
            body = mag if not mono else (mono if mag == "1" else f"{mag}*{mono}")
            parts.append(("-" if c < 0 else "+") + body)
        text = "".join(parts)
        return text[1:] if text.startswith("+") else text

    __str__ = to_text

    def __repr__(self):
        return f"Laurent({self.to_text()!r})"


@dataclass(frozen=True)
class VectorField:
    """f(z) d/dz."""

    f: Laurent

    def bracket(self, other):
        return VectorField(self.f * other.f.derivative() - other.f * self.f.derivative())

    def __add__(self, other):
        return VectorField(self.f + other.f)

    def __mul__(self, c):
        return VectorField(self.f * c)

    __rmul__ = __mul__


def witt_field(n):
    """L_n = -z^{n+1} d/dz."""
    return VectorField(Laurent.monomial(n + 1, -1))


@dataclass(frozen=True)
class DensityElement:
    """u(z) (dz)^weight."""

    u: Laurent
    weight: Fraction

    def __add__(self, other):
        if self.weight != other.weight:
            raise ValueError("densities of different weights")
        return DensityElement(self.u + other.u, self.weight)

    def __sub__(self, other):
        return self + DensityElement(-other.u, other.weight)

    def __mul__(self, c):
        return DensityElement(self.u * c, self.weight)

    __rmul__ = __mul__

    def to_text(self):
        return f"({self.u.to_text()})*(dz)^{format_rational(self.weight)}"


def density_basis(m, weight=-1):
    """u_m = z^{m+1} (dz)^weight."""
    return DensityElement(Laurent.monomial(m + 1), Fraction(weight))


def density_action(field, u):
    """f d/dz acting on u (dz)^alpha: (f u' + alpha f' u)(dz)^alpha."""
    f = field.f
    return DensityElement(f * u.u.derivative() + f.derivative() * u.u * u.weight, u.weight)

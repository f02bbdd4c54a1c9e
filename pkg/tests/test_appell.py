from __future__ import annotations

from fractions import Fraction
from math import factorial

import pytest

from altlie import appell as A
from altlie.errors import DomainError, TruncationError
from altlie.kernel import DEFAULT, RationalFunction, TruncatedSeries, compose, series_exp, series_power
from altlie.lie import ALT_LABELS, alt, bracket

beta, gamma, x, y1, y2, v1, v2 = DEFAULT.vars(["β", "γ", "x", "y1", "y2", "v1", "v2"])
VAC = A.FockVector.vacuum()
ket = A.FockVector.basis


@pytest.fixture(scope="module")
def levels():
    return A.appell_levels(8)


# -- Fock engine --------------------------------------------------------------------

def test_vacuum_rules():
    assert A.fock_apply("X0", VAC) == VAC.scale(-x)
    assert A.fock_apply("Y0", VAC) == VAC.scale(-gamma)
    assert A.fock_apply("Y-1", VAC).is_zero()
    assert A.fock_apply("X-1", VAC).is_zero()
    # X-1 X1 Ω = [X-1, X1] Ω + X1 X-1 Ω = -2 X0 Ω = 2x Ω
    assert A.fock_apply("X-1", ket(0, 1)) == VAC.scale(2 * x)


def test_raising_and_lowering_contract():
    for j in range(4):
        for k in range(4):
            assert A.fock_apply("Y1", ket(j, k)) == ket(j + 1, k)
            assert A.fock_apply("X1", ket(j, k)) == ket(j, k + 1)
            for g in ("Y-1", "X-1"):
                out = A.fock_apply(g, ket(j, k))
                assert all(a + b < j + k for a, b in out.coeffs)
            for g in ("Y0", "X0"):
                out = A.fock_apply(g, ket(j, k))
                assert all(a + b == j + k for a, b in out.coeffs)


def test_bracket_fidelity():
    g = alt()
    states = [ket(j, k) for j in range(6) for k in range(6 - j)]
    for i, a in enumerate(ALT_LABELS):
        for b in ALT_LABELS[i + 1:]:
            br = bracket(g[a], g[b])
            for s in states:
                lhs = A.fock_apply(a, A.fock_apply(b, s)) - A.fock_apply(b, A.fock_apply(a, s))
                assert lhs == A.fock_apply(br, s), (a, b, s.to_text())


def test_operator_word():
    w = A.OperatorWord(("X-1", "X1"), prefactor=3)
    assert w.apply(VAC) == VAC.scale(6 * x)
    assert w.to_text() == "(3)*X-1*X1"
    with pytest.raises(KeyError):
        A.OperatorWord(("Z",))


def test_fock_vector_validation_and_text():
    with pytest.raises(ValueError):
        A.FockVector({(-1, 0): 1})
    assert (ket(1, 0).scale(2) + VAC).to_text() == "2*|1,0>+|0,0>"


# -- turned plane -----------------------------------------------------------------------

def test_turned_pair():
    ybar, xbar = A.turned_pair()
    g = alt()
    assert ybar == g["Y1"] - g["Y0"] * (2 * beta) + g["Y-1"] * (beta * beta)
    assert xbar == g["X1"] - g["X0"] * (2 * beta) + g["X-1"] * (beta * beta)
    assert A.turned_pair(0) == (g["Y1"], g["X1"])
    assert A.turned_pair_commutes()
    assert A.turned_pair_commutes(Fraction(3, 7))


def test_turned_powers_are_unitriangular():
    T = A.turned_powers(5)
    for (a, b), vec in T.items():
        assert vec.coefficient(a, b) == 1
        assert all(j + k < a + b for j, k in vec.coeffs if (j, k) != (a, b))


# -- Appell table --------------------------------------------------------------------------

def test_table_examples():
    t = A.appell_table(1, 1)
    assert t[(0, 0)] == 1
    assert t[(1, 0)] == y1 - 2 * beta * gamma
    assert t[(0, 1)] == y2 - 2 * beta * x
    assert t.rows()[:3] == [(0, 0, "1"), (0, 1, "y2-2*β*x"), (1, 0, "y1-2*β*γ")]
    with pytest.raises(DomainError):
        A.appell_table(-1, 0)


def test_h10_by_hand():
    # Y1 = Ybar1 + 2βY0 - β²Y-1 on Ω gives |10> = Ybar1 Ω - 2βγ Ω, so h10 = y1 - 2βγ
    ybar, _ = A.turned_pair()
    lhs = A.fock_apply(ybar, VAC)
    assert lhs == ket(1, 0) + VAC.scale(2 * beta * gamma)


def test_leading_terms(levels):
    for (j, k), h in levels.items():
        assert h.degree_in(["y1", "y2"]) == j + k
        top = {e: c for e, c in h.terms().items()
               if e[DEFAULT.index["y1"]] + e[DEFAULT.index["y2"]] == j + k}
        assert h.coefficient({"y1": j, "y2": k}).subs({"β": 0, "γ": 0, "x": 0}) == 1
        assert len(top) == 1


def test_beta_zero_is_plain_monomial():
    h = A.appell_levels(4, beta=0)
    for (j, k), p in h.items():
        assert p == y1**j * y2**k


# -- generating function -------------------------------------------------------------------

def reference_closed_form(cap):
    """exp(y1 v1/(1+βv2)^2 + y2 v2/(1+βv2) - 2γβ v1/(1+βv2)) (1+βv2)^(-2x), built from kernel primitives."""
    names = ("v1", "v2")
    blank = {"v1": TruncatedSeries(v1, cap, names), "v2": TruncatedSeries(v2, cap, names)}
    plus = RationalFunction(1 + beta * v2)
    expo = (RationalFunction(y1 * v1) / (plus * plus) + RationalFunction(y2 * v2) / plus
            - RationalFunction(2 * gamma * beta * v1) / plus)
    return series_exp(compose(expo, blank)) * series_power(compose(plus, blank), -2 * x)


def test_genfun_examples():
    g = A.genfun_expand(4)
    assert g.coefficient(0, 0) == 1
    assert g.coefficient(1, 0) == y1 - 2 * gamma * beta
    comp = g.comparison
    assert comp["y1-exponent"]["matches_printed"]
    assert comp["y2-exponent"]["matches_printed"]
    assert comp["power-base"]["matches_printed"]
    assert not comp["γ-exponent"]["matches_printed"]
    assert comp["γ-exponent"]["matches_corrected"]
    with pytest.raises(DomainError):
        A.genfun_expand(-1)


def test_genfun_equals_closed_forms():
    g = A.genfun_expand(6)
    assert g.series == reference_closed_form(6)
    assert A.closed_form(6) == reference_closed_form(6)


def test_two_routes_agree(levels):
    g = A.genfun_expand(8)
    for j in range(9):
        for k in range(9 - j):
            assert g.coefficient(j, k) * factorial(j) * factorial(k) == levels[(j, k)], (j, k)


def test_consistency_check():
    r = A.consistency_check(1, 1)
    assert r.ok and r.cells == 4
    r = A.consistency_check(6, 6, cap=6, max_total=6)
    assert r.ok and r.cells == 28
    assert A.consistency_check(0, 0).cells == 1
    with pytest.raises(TruncationError):
        A.consistency_check(3, 3, cap=4)


# -- specializations ------------------------------------------------------------------------

def laguerre_explicit(k):
    """(-β)^k L_k^(α)(y2/β) from the explicit finite sum, α = 2x - 1."""
    alpha = 2 * x - 1
    total = DEFAULT.zero()
    for i in range(k + 1):
        binom = DEFAULT.one()
        for l in range(1, k - i + 1):
            binom = binom * (alpha + i + l)
        binom = binom / factorial(k - i)
        total = total + binom * ((-1) ** (k + i)) * y2**i * beta ** (k - i) / factorial(i)
    return total


def test_laguerre_branch(levels):
    rec = A.laguerre_homogenized(8)
    for k in range(9):
        assert rec[k] == laguerre_explicit(k)
        assert levels[(0, k)] == laguerre_explicit(k) * factorial(k)
    # k = 1 by hand: -β (2x - y2/β) = y2 - 2βx
    assert laguerre_explicit(1) == y2 - 2 * beta * x


def test_hermite_branch(levels):
    r = A.laguerre_hermite_specialize(8, levels)
    assert r.ok and r.v2_zero_is_shifted_power
    assert "Hermite" in r.hermite_flag
    assert levels[(2, 0)] == (y1 - 2 * gamma * beta) ** 2
    g = A.genfun_expand(8)
    shifted = series_exp(TruncatedSeries((y1 - 2 * gamma * beta) * v1, 8, ("v1", "v2")))
    assert g.series.subs_zero(["v2"]) == shifted

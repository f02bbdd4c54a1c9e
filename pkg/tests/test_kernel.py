from __future__ import annotations

import random
from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altlie.errors import DomainError, RegistryMismatchError, TruncationError
from altlie.kernel import _backend
from altlie.kernel import (
    DEFAULT,
    MultiPoly,
    Rational,
    RationalFunction,
    Registry,
    TruncatedSeries,
    coefficient_of,
    format_rational,
    linalg,
    poly_arith,
    series_exp,
    series_expand_inverse,
    series_log,
    series_power,
    symbols,
)

B1, B2, V1, V2 = symbols(["B1", "B2", "V1", "V2"])
beta, gamma, x, y1, y2, v1, v2, z1, z2, u = symbols(["β", "γ", "x", "y1", "y2", "v1", "v2", "z1", "z2", "u"])

SMALL = Registry(["a", "b", "c"])
fractions = st.fractions(min_value=-5, max_value=5, max_denominator=4)
monomials = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(monomials, fractions, max_size=5).map(lambda d: MultiPoly(SMALL, d))


def unit_series(cap):
    """Polynomials in a, b with constant term 1."""
    tails = st.dictionaries(st.tuples(st.integers(0, 3), st.integers(0, 3), st.just(0)), fractions, max_size=4)
    return tails.map(lambda d: TruncatedSeries(
        MultiPoly(SMALL, {k: v for k, v in d.items() if any(k)}) + 1, cap, ["a", "b"]))


def nilpotent_series(cap):
    return unit_series(cap).map(lambda s: s - 1)


# -- spec examples -------------------------------------------------------------

def test_poly_arith_examples():
    assert poly_arith(y2, -2 * beta * x, "add") == y2 - 2 * beta * x
    assert poly_arith(1 - B2 * V2, 1 + B2 * V2, "mul") == 1 - B2**2 * V2**2
    # term-by-term hand expansion
    want = V1 - B2 * V1 * V2 + B1 * V2**2 - B1 * B2 * V2**3
    assert poly_arith(V1 + B1 * V2**2, 1 - B2 * V2, "mul") == want
    assert poly_arith(V1, V1, "sub").is_zero()


def test_poly_arith_rejects_mixed_registries():
    other = MultiPoly(SMALL, {(1, 0, 0): 1})
    with pytest.raises(RegistryMismatchError):
        poly_arith(V1, other, "add")
    with pytest.raises(ValueError):
        poly_arith(V1, V2, "div")


def test_series_expand_inverse_examples():
    assert series_expand_inverse(1 - u, 3).body == 1 + u + u**2 + u**3
    assert series_expand_inverse(DEFAULT.one(), 5).body == 1
    q = series_expand_inverse(1 - B2 * V2, 2)
    assert q.body == 1 + B2 * V2
    residual = (1 - B2 * V2) * q.body - 1
    assert residual.total_degree() > 2


def test_series_expand_inverse_needs_unit_constant():
    with pytest.raises(DomainError):
        series_expand_inverse(2 - u, 3)


def test_series_exp_examples():
    assert series_exp(TruncatedSeries(DEFAULT.zero(), 4, ["v1"])).body == 1
    s = series_exp(TruncatedSeries(v1, 3))
    assert s.body == 1 + v1 + v1**2 / 2 + v1**3 / 6
    arg = TruncatedSeries(2 * gamma * beta * z1 * (1 + beta * z2), 2, ["z1", "z2"])
    # brute-force sum of arg^k/k! for k <= 2, then truncated
    brute = (1 + arg.body + arg.body**2 / 2).truncate(["z1", "z2"], 2)
    assert series_exp(arg).body == brute
    assert brute == 1 + 2 * gamma * beta * z1 + 2 * gamma * beta**2 * z1 * z2 + 2 * gamma**2 * beta**2 * z1**2
    with pytest.raises(DomainError):
        series_exp(TruncatedSeries(1 + v1, 3, ["v1"]))


def test_coefficient_of_examples():
    s = TruncatedSeries(1 + v1 + v1**2 / 2, 2, ["v1"])
    assert coefficient_of(s, {"v1": 2}) == Fraction(1, 2)
    e = series_exp(TruncatedSeries((y1 - 2 * gamma * beta) * v1, 4, ["v1"]))
    assert coefficient_of(e, {"v1": 3}) == (y1 - 2 * gamma * beta) ** 3 / 6
    with pytest.raises(TruncationError):
        coefficient_of(e, {"v1": 5})


# -- canonical forms -------------------------------------------------------------

def test_rational_canonical_form():
    q = Rational(6, -4)
    assert (q.numerator, q.denominator) == (-3, 2)
    assert format_rational(Rational(0)) == "0"
    assert format_rational(Rational(4, 2)) == "2"
    assert format_rational(Rational(-1, 3)) == "-1/3"


def test_poly_no_zero_coefficients_and_text():
    p = MultiPoly(DEFAULT, {(0, 0, 1): 2, (0, 0, 2): 0})
    assert len(p) == 1
    assert (V1 + V1 - 2 * V1).to_text() == "0"
    assert (2 * B1 * V2 - Fraction(1, 3)).to_text() == "-1/3+2*B1*V2"


def test_ratfunc_equality_and_sign():
    a = RationalFunction(V2, 1 - B2 * V2)
    b = RationalFunction(-2 * V2, 2 * B2 * V2 - 2)
    assert a == b
    assert a.to_text() == "V2/(1-B2*V2)"
    assert RationalFunction((1 - B2 * V2) * V1, 1 - B2 * V2) == RationalFunction(V1)
    with pytest.raises(ZeroDivisionError):
        RationalFunction(V1, DEFAULT.zero())


def test_ratfunc_arithmetic():
    f = RationalFunction(V1, 1 - B2 * V2)
    g = RationalFunction(B1, 1 + B2 * V2)
    lhs = f + g
    rhs = RationalFunction(V1 * (1 + B2 * V2) + B1 * (1 - B2 * V2), 1 - B2**2 * V2**2)
    assert lhs == rhs
    assert (f * f.inverse()) == 1
    assert (f / f) == 1
    assert f.subs({"B2": 0}) == RationalFunction(V1)


@pytest.mark.parametrize("text", [
    "V2/(1-B2*V2)",
    "(3+1/2*V1)/B2^2",
    "2/3*B1/(3*B2+2*V1)",
    "1/7*V1",
    "-B1*V2-B2*V1",
])
def test_ratfunc_text_round_trip(text):
    f = RationalFunction.parse(DEFAULT, text)
    assert f.to_text() == text
    assert RationalFunction.parse(DEFAULT, f.to_text()) == f


@given(polys)
def test_poly_round_trip(p):
    assert MultiPoly.parse(SMALL, p.to_text()) == p


@given(polys, polys.filter(lambda p: not p.is_zero()))
def test_ratfunc_round_trip(n, d):
    f = RationalFunction(n, d)
    assert RationalFunction.parse(SMALL, f.to_text()) == f


@given(unit_series(4))
def test_series_round_trip(s):
    assert TruncatedSeries.parse(SMALL, s.to_text(), ["a", "b"]) == s


@given(fractions)
def test_rational_round_trip(q):
    assert Fraction(format_rational(q)) == q


# -- ring laws -------------------------------------------------------------------

@settings(max_examples=60)
@given(polys, polys, polys)
def test_ring_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert a - a == 0


@settings(max_examples=40)
@given(unit_series(5))
def test_inverse_property(s):
    q = series_expand_inverse(s)
    assert (s * q).body == 1


@settings(max_examples=40)
@given(nilpotent_series(4), nilpotent_series(4))
def test_exp_is_a_homomorphism(a, b):
    assert series_exp(a + b) == series_exp(a) * series_exp(b)


@settings(max_examples=30)
@given(unit_series(4))
def test_log_inverts_exp_and_power(s):
    assert series_exp(series_log(s)) == s
    assert series_power(s, 3) == s * s * s
    half = series_power(s, Fraction(1, 2))
    assert half * half == s


def test_series_truncation_uses_smaller_cap():
    a = TruncatedSeries(1 + v1, 5, ["v1"])
    b = TruncatedSeries(1 + v1, 2, ["v1"])
    assert (a * b).cap == 2


# -- linear algebra -------------------------------------------------------------

def test_nullspace_and_rank_against_hand_values():
    rows = [[1, 2, 3], [2, 4, 6], [1, 0, 1]]
    assert linalg.rank(rows) == 2
    (v,) = linalg.nullspace(rows, 3)
    assert all(sum(Fraction(r) * w for r, w in zip(row, v)) == 0 for row in rows)
    assert linalg.solve([[2, 1], [1, 3]], [3, 4]) == [1, 1]
    assert linalg.solve([[1, 1], [1, 1]], [0, 1]) is None


@settings(max_examples=30)
@given(st.lists(st.lists(st.integers(-3, 3), min_size=4, max_size=4), min_size=1, max_size=4))
def test_rank_nullity(rows):
    kernel = linalg.nullspace(rows, 4)
    assert linalg.rank(rows) + len(kernel) == 4
    for v in kernel:
        assert all(sum(r * w for r, w in zip(row, v)) == 0 for row in rows)


# -- backends ---------------------------------------------------------------------

def test_backends_agree_on_products(backend):
    p = (1 + B1 - 2 * V2 + Fraction(1, 3) * B2 * V1) ** 4
    q = (V1 - B2 * V2) ** 3
    assert (p * q).to_text() == _reference_product(p, q)


def _reference_product(p, q):
    """Dense schoolbook product over exponent tuples, independent of the packed kernels."""
    out = {}
    for (ea, ca), (eb, cb) in product(p.terms().items(), q.terms().items()):
        key = tuple(i + j for i, j in zip(ea, eb))
        out[key] = out.get(key, 0) + ca * cb
    return MultiPoly(DEFAULT, out).to_text()


raw = st.dictionaries(st.integers(0, 2**70), st.integers(-10**20, 10**20).filter(bool), max_size=6)


@pytest.mark.skipif("compiled" not in _backend.available(), reason="compiled kernel not built")
@settings(max_examples=50)
@given(raw, raw, st.integers(-5, 5), st.integers(-5, 5))
def test_raw_kernels_agree(a, b, sa, sb):
    py, cc = _backend._sparse_py, _backend._compiled
    assert py.mul(a, b) == cc.mul(a, b)
    assert py.add_scaled(a, sa, b, sb) == cc.add_scaled(a, sa, b, sb)
    if a:
        assert py.content(a) == cc.content(a)


def _dense(rng, nvars, terms, degree, coef):
    out = {}
    for _ in range(terms):
        key = 0
        for v in range(nvars):
            key |= rng.randint(0, degree) << (16 * v)
        out[key] = rng.randint(-coef, coef) or 1
    return out


@pytest.mark.skipif("compiled" not in _backend.available(), reason="compiled kernel not built")
@pytest.mark.parametrize("degree, coef", [(6, 50), (40, 2**61), (2**15, 7), (60000, 3)])
def test_packed_product_agrees(degree, coef):
    # large enough to take the packed route, plus inputs that force its fallbacks
    rng = random.Random(degree)
    py, cc = _backend._sparse_py, _backend._compiled
    a, b = _dense(rng, 5, 40, degree, coef), _dense(rng, 5, 40, degree, coef)
    assert py.mul(a, b) == cc.mul(a, b)
    offs = (0, 16)
    assert py.mul_truncated(a, b, offs, degree) == cc.mul_truncated(a, b, offs, degree)


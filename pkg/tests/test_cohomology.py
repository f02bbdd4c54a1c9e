from __future__ import annotations

from fractions import Fraction
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from altlie import cohomology as C
from altlie.errors import CocycleError, NotASubalgebraError
from altlie.kernel import linalg
from altlie.lie import abelian, alt, build_algebra, check_morphism, heis3, jacobi_check, sl2, vect, vir_window, w_window

FINITE = ["alt", "sl2", "p3", "heis3", "abelian(2)", "abelian(3)", "sl2e"]


def brute_h2(g):
    """dim Z2 - dim B2 from an explicit enumeration of antisymmetric forms."""
    pairs = list(combinations(g.basis, 2))

    def form(vec):
        table = dict(zip(pairs, vec))
        return lambda a, b: table.get((a, b), -table.get((b, a), 0)) if a != b else 0

    rows = []
    for x, y, z in combinations(g.basis, 3):
        row = []
        for p in pairs:
            unit = form([int(q == p) for q in pairs])
            v = 0
            for s, t, w in ((x, y, z), (y, z, x), (z, x, y)):
                v += sum(c * unit(k, w) for k, c in g.bracket_basis(s, t).items())
            row.append(v)
        rows.append(row)
    z2 = len(pairs) - (linalg.rank(rows, len(pairs)) if rows else 0)
    cob = [[sum(c for k, c in g.bracket_basis(a, b).items() if k == lab) for a, b in pairs] for lab in g.basis]
    b2 = linalg.rank(cob, len(pairs)) if pairs else 0
    return z2 - b2


@pytest.mark.parametrize("name,expected", [("alt", 0), ("abelian(2)", 1), ("heis3", 2), ("sl2", 0)])
def test_h2_dimensions(name, expected):
    g = build_algebra(name)
    r = C.h2_dimension(g)
    assert r.dim_H2 == expected == brute_h2(g)


def test_h2_details():
    assert C.h2_dimension(alt()).to_dict() == {"algebra": "alt", "dim_Z2": 6, "dim_B2": 6, "dim_H2": 0}
    r = C.h2_dimension(heis3())
    assert (r.dim_Z2, r.dim_B2) == (3, 1)
    for z in r.cocycle_basis:
        assert C.d2(z).is_cocycle


def test_d1_examples():
    assert C.d1(C.OneCochain(abelian(2), {"e1": 3, "e2": -1})).is_zero()
    d = C.d1(C.OneCochain(alt(), {"X0": 1}))
    assert d("X1", "X-1") == 2
    assert d("X-1", "X1") == -2
    assert d("X1", "X0") == 0
    ext = C.central_extend(alt(), C.TwoCochain(alt(), lambda a, b: Fraction(0)))
    assert C.d1(C.OneCochain(ext, {"K": 1})).is_zero()


def test_virasoro_and_omega_closed():
    assert C.d2(C.virasoro_cocycle(vect()), 10).is_cocycle
    W = w_window()
    omega = C.omega_cocycle(W)
    assert C.d2(omega, 10).is_cocycle
    ext = C.central_extend(W, omega)
    assert jacobi_check(ext, window=6).ok


def test_dense_cochain_on_alt_is_not_closed():
    g = alt()
    table = {p: i + 1 for i, p in enumerate(combinations(g.basis, 2))}
    r = C.d2(C.TwoCochain.from_table(g, table))
    assert not r.is_cocycle


def test_central_extend_reproduces_vir():
    ext = C.central_extend(vect(), C.virasoro_cocycle(vect()), c=1)
    ref = vir_window(c=1)
    for n in range(-5, 6):
        for m in range(-5, 6):
            assert ext.bracket_basis(("L", n), ("L", m)) == ref.bracket_basis(("L", n), ("L", m))
    # the modified bracket [L_n, L_-n] = n(n^2-1) K + 2n L_0
    assert ext.bracket_basis(("L", 3), ("L", -3)) == {("L", 0): 6, ("K", None): 24}


def test_central_extend_with_zero_form_is_direct_sum():
    g = alt()
    ext = C.central_extend(g, C.TwoCochain(g, lambda a, b: Fraction(0)))
    assert ext.basis[-1] == "K"
    for a, b in combinations(g.basis, 2):
        assert ext.bracket_basis(a, b) == g.bracket_basis(a, b)
    assert jacobi_check(ext).ok


def test_central_extend_rejects_open_form():
    g = alt()
    bad = C.TwoCochain.from_table(g, {("X1", "Y0"): 1})
    with pytest.raises(CocycleError) as info:
        C.central_extend(g, bad)
    assert len(info.value.witness) == 3


def test_restrict_cocycle():
    alpha = C.virasoro_cocycle(vect())
    sub = C.restrict_cocycle(alpha, [("L", -1), ("L", 0), ("L", 1)])
    assert sub.is_zero()
    W = w_window()
    assert C.restrict_cocycle(C.omega_cocycle(W), ["L"]).is_zero()
    assert alpha(("L", 2), ("L", -2)) == 6
    with pytest.raises(NotASubalgebraError):
        C.restrict_cocycle(alpha, [("L", 1), ("L", 2)])


def test_cocycle_independence():
    W = w_window()
    r = C.cocycle_independence([C.virasoro_cocycle(W), C.omega_cocycle(W)], window=6)
    assert r.independent
    # a coboundary is dependent by construction
    lam = C.OneCochain(W, {("L", 0): 1})
    r = C.cocycle_independence([C.d1(lam)], window=3)
    assert not r.independent


# -- properties ----------------------------------------------------------------------

values = st.fractions(min_value=-4, max_value=4, max_denominator=3)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(FINITE), st.lists(values, min_size=6, max_size=6))
def test_d2_after_d1_is_zero(name, vals):
    g = build_algebra(name)
    lam = C.OneCochain(g, dict(zip(g.basis, vals)))
    assert C.d2(C.d1(lam)).is_cocycle


@settings(max_examples=15, deadline=None)
@given(st.lists(values, min_size=6, max_size=6), st.integers(0, 5))
def test_coboundary_shift_is_isomorphism(vals, pick):
    g = alt() if pick % 2 else heis3()
    h = C.h2_dimension(g)
    alpha = h.cocycle_basis[pick % len(h.cocycle_basis)]
    lam = C.OneCochain(g, dict(zip(g.basis, vals)))
    assert check_morphism(C.coboundary_shift(g, alpha, lam)).isomorphism


def test_h2_sl2_control():
    assert C.h2_dimension(sl2()).dim_H2 == 0

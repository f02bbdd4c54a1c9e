"""Acceptance criteria, one test each.

Every test prints a single ``criterion N: PASS|FAIL ...`` line; the lines are
also collected and repeated in the pytest terminal summary.  Run directly
(``python3 tests/test_acceptance.py``) to get just the thirteen lines.
"""
from __future__ import annotations

import json
import subprocess
import sys
from math import factorial

from altlie import appell, cohomology, grouplaw
from altlie.kernel import DEFAULT, RationalFunction
from altlie.lie import alt, build_algebra, check_morphism, jacobi_check, prop_phi, vect, w_window
from altlie.reps import (
    ContractionFamily,
    DiffOp,
    calibrate_rep,
    contraction_limit,
    density_action,
    density_basis,
    rep_operators,
    verify_representation,
    witt_field,
)
from altlie.reps.representation import residual

RESULTS = []


def report(number, ok, summary):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {summary}"
    RESULTS.append(line)
    print(line)
    assert ok, line


def test_criterion_01_jacobi():
    r_alt = jacobi_check(alt())
    r_w = jacobi_check(w_window(), window=6)
    caught = not jacobi_check(alt().with_bracket("X1", "Y-1", {"Y0": 3})).ok
    ok = r_alt.ok and r_alt.triples_checked == 20 and r_w.ok and caught
    report(1, ok, f"Jacobi: alt {r_alt.triples_checked} triples, W |n|<=6 {r_w.triples_checked} triples, tamper caught={caught}")


def test_criterion_02_morphism():
    good = check_morphism(prop_phi())
    bad = check_morphism(prop_phi(half=False))
    ok = good.ok and good.pairs_checked == 15 and good.bijective and not bad.ok
    report(2, ok, f"alt -> sl2(x)R[e]/e^2: {good.pairs_checked} pairs preserved, bijective={good.bijective}, "
                  f"missing 1/2 detected={not bad.ok}")


def test_criterion_03_h2():
    dims = {n: cohomology.h2_dimension(build_algebra(n)).dim_H2 for n in ("alt", "abelian(2)", "heis3", "sl2")}
    ok = dims == {"alt": 0, "abelian(2)": 1, "heis3": 2, "sl2": 0}
    report(3, ok, f"dim H2: {dims}")


def test_criterion_04_virasoro_cocycle():
    alpha = cohomology.virasoro_cocycle(vect())
    r = cohomology.d2(alpha, 10)
    sub = cohomology.restrict_cocycle(alpha, [("L", -1), ("L", 0), ("L", 1)])
    ok = r.is_cocycle and sub.is_zero()
    report(4, ok, f"Virasoro cocycle closed on {r.triples_checked} triples |n|<=10, zero on sl2={sub.is_zero()}")


def test_criterion_05_omega():
    W = w_window()
    omega = cohomology.omega_cocycle(W)
    r = cohomology.d2(omega, 10)
    ext = jacobi_check(cohomology.central_extend(W, omega), window=6)
    indep = cohomology.cocycle_independence([cohomology.virasoro_cocycle(W), omega], window=6)
    ok = r.is_cocycle and ext.ok and indep.independent
    report(5, ok, f"omega closed on {r.triples_checked} triples, extension Jacobi={ext.ok}, "
                  f"independent mod coboundaries={indep.independent}")


def test_criterion_06_density():
    bad = [(n, m) for n in range(-10, 11) for m in range(-10, 11)
           if density_action(witt_field(n), density_basis(m, -1)) != density_basis(n + m, -1) * (n - m)]
    report(6, not bad, f"L_n u_m = (n-m) u_(n+m) on 441 pairs, failures={len(bad)}")


def test_criterion_07_representation():
    printed = residual(rep_operators("printed"), w_window(), ("L", 0), ("Le", 0))
    calibrated = verify_representation(rep_operators("calibrated"), window=5)
    calib = calibrate_rep(window=3)
    ok = (printed == DiffOp({(1, 0, 0, 1): 2}) and calibrated.ok
          and calib.admissible == [-1])
    report(7, ok, f"printed residual [L0,Le0] = {printed.to_text()}, calibrated holds on "
                  f"{calibrated.pairs_checked} pairs, calibration a={[str(a) for a in calib.admissible]}")


def test_criterion_08_contraction():
    rep = contraction_limit(ContractionFamily.standard(), window=6)
    eps = DEFAULT.var("ε")
    shape = True
    for ((f1, n), (f2, m)), value in rep.constants.items():
        if n == m:
            continue
        if (f1, f2) == ("L", "M"):
            shape &= value == {("M", n + m): (n - m) * DEFAULT.one()}
        elif (f1, f2) == ("M", "M"):
            shape &= value == {("L", n + m): eps**2 * (n - m)}
    ok = rep.ok and shape
    report(8, ok, f"contraction: {len(rep.constants)} pairs, [L,M] and [M,M] shapes={shape}, "
                  f"limit equals W={rep.limit_matches_w}")


def test_criterion_09_group_law():
    B1, B2, V1, V2 = DEFAULT.vars(["B1", "B2", "V1", "V2"])
    displayed = [
        [1, V2, 0, V1],
        [-B2, 1 - B2 * V2, -B1, -B2 * V1 - B1 * V2],
        [0, 0, 1, V2],
        [0, 0, -B2, 1 - B2 * V2],
    ]
    P = grouplaw.partial_product()
    entries_ok = all(P[i + 1, j + 1] == RationalFunction.of(displayed[i][j], DEFAULT)
                     for i in range(4) for j in range(4))
    r = grouplaw.verify_rep4()
    ok = entries_ok and r.ok and r.pairs_checked == 15
    report(9, ok, f"product matrix matches the display on 16 entries={entries_ok}, "
                  f"4x4 commutators {r.pairs_checked} pairs ok={r.ok}")


def test_criterion_10_leibniz():
    P = grouplaw.partial_product()
    c = grouplaw.factor_second_kind(P)
    replay = grouplaw.reexponentiate(c) == P
    rep = grouplaw.leibniz_discrepancy_report()
    verdicts = {row["coordinate"]: row["verdict"] for row in rep.entries}
    a5 = next(row for row in rep.entries if row["coordinate"] == "A5")
    spec = all(rep.specialization[k]["match"] for k in ("Y1", "X1", "Y0", "λ"))
    ok = (replay
          and all(verdicts[k] == "match" for k in ("A2", "A3", "A4", "A6"))
          and verdicts["A1"] == "typo-suspected"
          and c.A1.denominator_power(1 - DEFAULT.var("B2") * DEFAULT.var("V2")) == 2
          and bool(a5["oracle"]) and bool(a5.get("note"))
          and spec)
    report(10, ok, f"re-exponentiation exact={replay}, verdicts={verdicts}, B1=0,B2=β factors match={spec}")


def test_criterion_11_appell_consistency():
    levels = appell.appell_levels(6)
    g = appell.genfun_expand(6)
    bad = [(j, k) for j in range(7) for k in range(7 - j)
           if g.coefficient(j, k) * factorial(j) * factorial(k) != levels[(j, k)]]
    beta, gamma, x, y1, y2 = DEFAULT.vars(["β", "γ", "x", "y1", "y2"])
    low = levels[(1, 0)] == y1 - 2 * beta * gamma and levels[(0, 1)] == y2 - 2 * beta * x
    report(11, not bad and low, f"28 cells j+k<=6 agree (mismatches={len(bad)}), h10/h01 as expected={low}")


def test_criterion_12_laguerre():
    levels = appell.appell_levels(8)
    r = appell.laguerre_hermite_specialize(8, levels)
    ok = r.ok and not r.laguerre_mismatches and r.v2_zero_is_shifted_power and bool(r.hermite_flag)
    report(12, ok, f"h_0k Laguerre for k<=8 mismatches={r.laguerre_mismatches}, "
                   f"v2=0 shifted powers={r.v2_zero_is_shifted_power}, Hermite flag raised")


def test_criterion_13_cli():
    cmd = [sys.executable, "-m", "altlie", "verify-all"]
    runs = [subprocess.run(cmd, capture_output=True, check=False) for _ in range(2)]


    data = json.loads(runs[0].stdout)
    ok = (all(p.returncode == 0 for p in runs)
          and runs[0].stdout == runs[1].stdout
          and len(data["discrepancies"]) == 3)
    report(13, ok, f"verify-all exit={runs[0].returncode}, discrepancies={len(data['discrepancies'])}, "
                   f"byte-identical reruns={runs[0].stdout == runs[1].stdout}")


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)

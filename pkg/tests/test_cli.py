from __future__ import annotations

import csv
import io
import json
import subprocess
import sys

import pytest

from altlie.cli import main
from altlie.kernel import _backend
from altlie.suite import SuiteConfig, run_suite


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


@pytest.fixture(scope="module")
def default_report():
    return run_suite(SuiteConfig())


def test_suite_default_passes_with_three_discrepancies(default_report):
    r = default_report
    assert r.status == "pass"
    assert [c.name for c in r.checks] == [
        "jacobi", "morphism", "h2", "cocycles", "density", "rep-check",
        "contraction", "grouplaw", "appell", "laguerre"]
    locations = sorted(d["location"] for d in r.discrepancies)
    assert locations == [
        "appell-generating-function/third factor",
        "differential-operator-representation/L_n r∂_r term",
        "leibniz-formula/A1",
    ]
    for d in r.discrepancies:
        assert set(d) == {"location", "printed", "oracle", "method"}
    verdicts = {c.name: c.verdict for c in r.checks}
    assert verdicts["rep-check"] == verdicts["grouplaw"] == verdicts["appell"] == "discrepancy"


def test_suite_window_one_passes():
    assert run_suite(SuiteConfig(window=1, cap=8)).ok


def test_suite_printed_mode_fails_with_witness():
    r = run_suite(SuiteConfig(mode="printed"))
    rep = next(c for c in r.checks if c.name == "rep-check")
    assert rep.verdict == "fail"
    assert rep.witness == {"pair": ["L0", "Le0"], "residual": "2*t*∂_r"}
    assert r.status == "fail"


@pytest.mark.parametrize("kw", [{"window": 0}, {"cap": 3}, {"mode": "other"}, {"format": "xml"}, {"max_j": -1}])
def test_suite_config_validation(kw):
    with pytest.raises(ValueError):
        SuiteConfig(**kw).validate()


def test_render_formats(default_report):
    text = default_report.render("text")
    assert text.endswith("\n") and "overall        pass" in text
    rows = list(csv.reader(io.StringIO(default_report.render("csv"))))
    assert rows[0] == ["check", "verdict"] and rows[-1] == ["overall", "pass"]
    data = json.loads(default_report.render("json"))
    assert "seconds" not in json.dumps(data)


def test_verify_all_exit_and_determinism(capsys):
    code1, out1, _ = run(capsys, "verify-all")
    code2, out2, _ = run(capsys, "verify-all")
    assert code1 == code2 == 0
    assert out1 == out2
    assert len(json.loads(out1)["discrepancies"]) == 3


def test_verify_all_printed_mode_exit(capsys):
    code, _, _ = run(capsys, "verify-all", "--mode", "printed", "--format", "csv")
    assert code == 1


def test_verify_all_bad_config(capsys):
    with pytest.raises(SystemExit) as info:
        main(["verify-all", "--cap", "2"])
    assert info.value.code == 2


@pytest.mark.parametrize("argv,code", [
    (["jacobi"], 0),
    (["iso"], 0),
    (["iso", "--drop-half"], 1),
    (["h2"], 0),
    (["cocycle", "--window", "4"], 0),
    (["rep-check", "--window", "2"], 0),
    (["rep-check", "--window", "1", "--mode", "printed"], 1),
    (["contract", "--window", "2"], 0),
    (["grouplaw", "--check"], 0),
])
def test_subcommand_exit_codes(capsys, argv, code):
    got, out, _ = run(capsys, *argv)
    assert got == code
    json.loads(out)


def test_h2_output(capsys):
    _, out, _ = run(capsys, "h2")
    assert json.loads(out) == {"algebra": "alt", "dim_Z2": 6, "dim_B2": 6, "dim_H2": 0}


def test_grouplaw_symbolic(capsys):
    _, out, _ = run(capsys, "grouplaw", "--symbolic")
    coords = json.loads(out)["coordinates"]
    assert coords["A2"] == "V2/(1-B2*V2)"
    assert coords["A4"] == "2*log(λ)"


def test_appell_csv(capsys):
    _, out, _ = run(capsys, "appell", "--max-j", "1", "--max-k", "1", "--format", "csv")
    rows = list(csv.reader(io.StringIO(out)))
    assert rows[0] == ["j", "k", "h_jk"]
    assert ["1", "0", "y1-2*β*γ"] in rows and ["0", "1", "y2-2*β*x"] in rows


def test_appell_json_and_text(capsys):
    code, out, _ = run(capsys, "appell", "--max-j", "2", "--max-k", "1")
    assert code == 0 and json.loads(out)["consistency"]["ok"]
    code, out, _ = run(capsys, "appell", "--format", "text", "--max-j", "1", "--max-k", "0")
    assert out == "h[0,0] = 1\nh[1,0] = y1-2*β*γ\nconsistency: pass\n"


def test_appell_negative_bounds(capsys):
    code, _, err = run(capsys, "appell", "--max-j", "-1")
    assert code == 2 and "non-negative" in err


def test_export_structure(capsys):
    _, out, _ = run(capsys, "export", "structure")
    data = json.loads(out)
    assert len(data["basis"]) == 6 and data["brackets"]


def test_export_appell_single_row(capsys, tmp_path):
    target = tmp_path / "h.csv"
    code, out, _ = run(capsys, "export", "appell", "--max-j", "0", "--max-k", "0",
                       "--format", "csv", "-o", str(target))
    assert code == 0 and out == ""
    assert target.read_text(encoding="utf-8") == "j,k,h_jk\n0,0,1\n"


def test_export_is_byte_deterministic(capsys, tmp_path):
    paths = [tmp_path / "a.json", tmp_path / "b.json"]
    for p in paths:
        assert run(capsys, "export", "grouplaw", "-o", str(p))[0] == 0
    assert paths[0].read_bytes() == paths[1].read_bytes()


def test_export_unwritable(capsys, tmp_path):
    code, _, err = run(capsys, "export", "h2", "-o", str(tmp_path / "missing" / "x.json"))
    assert code == 2 and "cannot write" in err


def test_unknown_algebra_is_an_error(capsys):
    code, _, err = run(capsys, "jacobi", "--algebra", "e8")
    assert code == 2 and "unknown algebra" in err


@pytest.mark.parametrize("name", _backend.available())
def test_backend_flag_gives_identical_output(capsys, name):
    previous = _backend.NAME
    try:
        _, ref, _ = run(capsys, "appell", "--max-j", "2", "--max-k", "2", "--backend", "python")
        _, got, _ = run(capsys, "appell", "--max-j", "2", "--max-k", "2", "--backend", name)
    finally:
        _backend.use(previous)
    assert got == ref


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "altlie", "h2", "--algebra", "heis3"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert json.loads(proc.stdout)["dim_H2"] == 2

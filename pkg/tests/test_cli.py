"""Command-line interface: payloads, formats, exit codes, and artifacts."""

import json

import numpy as np
import pytest

from conftest import field
from dlct import (
    Inverse,
    PointModified,
    Power,
    boomerang_uniformity,
    build,
    ddt_uniformity,
    dlct_spectrum,
    dlu,
    dlu_witness,
    kloosterman_profile,
    load_table,
    nonlinearity,
)
from dlct.cli import main
from dlct.data import TABLE_IDS


def _run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def _run_json(capsys, *argv):
    code, out, err = _run(capsys, *argv)
    assert code == 0, err
    return json.loads(out)


# -- analyze ---------------------------------------------------------------------


def test_analyze_dlu_payload_matches_the_library(capsys):
    payload = _run_json(
        capsys, "analyze", "dlu", "--n", "6", "--construction", "power", "--d", "7"
    )
    table = build(field(6), Power(7))
    value, wu, wv = dlu_witness(table)
    assert payload["result"] == {"dlu": value, "witness_u": wu, "witness_v": wv}
    meta = payload["meta"]
    assert meta["tool"] == "dlct"
    assert meta["kind"] == "dlu"
    assert meta["backend"] in ("compiled", "fallback")
    assert meta["field"] == {"n": 6, "poly": "0x5b", "generator": "0x2"}
    assert meta["construction"] == "power[d=7]"


def test_analyze_spectrum_payload(capsys):
    payload = _run_json(
        capsys, "analyze", "spectrum", "--n", "5", "--construction", "inverse"
    )
    table = build(field(5), Inverse())
    spectrum = dlct_spectrum(table)
    assert payload["result"]["dlu"] == spectrum.max_abs
    assert payload["result"]["spectrum"] == [list(p) for p in spectrum.counts]
    total = sum(c for _, c in payload["result"]["spectrum"])
    assert total == 31 * 31


def test_analyze_ddt_lat_and_bct(capsys):
    table = build(field(5), Power(3))
    ddt = _run_json(
        capsys, "analyze", "ddt", "--n", "5", "--construction", "power", "--d", "3"
    )
    assert ddt["result"]["differential_uniformity"] == ddt_uniformity(table)
    lat = _run_json(
        capsys, "analyze", "lat", "--n", "5", "--construction", "power", "--d", "3"
    )
    assert lat["result"]["nonlinearity"] == nonlinearity(table)
    bct = _run_json(
        capsys, "analyze", "bct", "--n", "5", "--construction", "power", "--d", "3"
    )
    assert bct["result"]["boomerang_uniformity"] == boomerang_uniformity(table)


def test_analyze_kloosterman_profile_and_single_value(capsys):
    spec = field(5)
    profile = kloosterman_profile(spec)
    payload = _run_json(capsys, "analyze", "kloosterman", "--n", "5")
    assert payload["result"]["k_max"] == profile.k_max
    assert payload["result"]["k_min"] == profile.k_min
    assert len(payload["result"]["profile"]) == spec.order
    for gamma_hex, value in payload["result"]["profile"]:
        assert profile.value(int(gamma_hex, 16)) == value
    single = _run_json(capsys, "analyze", "kloosterman", "--n", "5", "--gamma", "7")
    assert single["result"] == {"gamma": "0x7", "value": profile.value(7)}


def test_analyze_csv_format(capsys):
    code, out, err = _run(
        capsys, "analyze", "dlu", "--n", "4", "--construction", "power", "--d", "7",
        "--format", "csv",
    )
    assert code == 0
    lines = out.splitlines()
    meta_lines = [ln for ln in lines if ln.startswith("# ")]
    assert "# kind: dlu" in meta_lines
    assert "# field.n: 4" in meta_lines
    body = [ln for ln in lines if not ln.startswith("#")]
    assert body[0] == "metric,value"
    table = build(field(4), Power(7))
    assert body[1] == f"dlu,{dlu(table)}"


def test_analyze_point_modifications(capsys):
    spec = field(6)
    payload = _run_json(
        capsys, "analyze", "dlu", "--n", "6", "--construction", "inverse",
        "--points", "0:2",
    )
    modified = build(spec, PointModified(Inverse(), ((0, 2),)))
    assert payload["result"]["dlu"] == dlu(modified)
    assert "~mod[" in payload["meta"]["construction"]


def test_analyze_seeded_point_modifications_are_reproducible(capsys):
    args = (
        "analyze", "dlu", "--n", "5", "--construction", "inverse",
        "--t", "2", "--seed", "11",
    )
    first = _run_json(capsys, *args)
    second = _run_json(capsys, *args)
    assert first == second
    assert "~mod[" in first["meta"]["construction"]


def test_analyze_runs_are_deterministic_across_threads(capsys, tmp_path):
    out_a = tmp_path / "a.json"
    out_b = tmp_path / "b.json"
    base = ("analyze", "spectrum", "--n", "6", "--construction", "cubic", "--k", "1")
    code, _, _ = _run(capsys, *base, "--threads", "1", "--out", str(out_a))
    assert code == 0
    code, _, _ = _run(capsys, *base, "--threads", "3", "--out", str(out_b))
    assert code == 0
    a = json.loads(out_a.read_text())
    b = json.loads(out_b.read_text())
    assert a["result"] == b["result"]


def test_analyze_field_overrides_and_files(capsys, tmp_path):
    # an explicit non-Conway model: x^4 + x^3 + 1 with generator class of x
    payload = _run_json(
        capsys, "analyze", "dlu", "--n", "4", "--poly", "19", "--generator", "2",
        "--construction", "power", "--d", "7",
    )
    assert payload["meta"]["field"]["poly"] == "0x19"
    spec_file = tmp_path / "f.field"
    spec_file.write_text("n=4\npoly=0x19\ngenerator=0x2\n")
    via_file = _run_json(
        capsys, "analyze", "dlu", "--field", str(spec_file),
        "--construction", "power", "--d", "7",
    )
    assert via_file["result"] == payload["result"]


# -- failure modes ------------------------------------------------------------------


def test_usage_error_exits_2(capsys):
    with pytest.raises(SystemExit) as exc:
        main(["analyze", "nonsense", "--n", "4"])
    assert exc.value.code == 2


def test_missing_field_is_a_clean_error(capsys):
    code, out, err = _run(capsys, "analyze", "dlu", "--construction", "inverse")
    assert code == 2
    assert "error:" in err


def test_bct_on_a_non_permutation_is_a_clean_error(capsys):
    code, out, err = _run(
        capsys, "analyze", "bct", "--n", "4", "--construction", "power", "--d", "3"
    )
    assert code == 2
    assert "not a permutation" in err


def test_over_budget_run_requires_long_flag(capsys):
    code, out, err = _run(
        capsys, "analyze", "ddt", "--n", "20", "--construction", "power", "--d", "7"
    )
    assert code == 2
    assert "--long" in err


def test_conflicting_field_sources_error(capsys, tmp_path):
    spec_file = tmp_path / "f.field"
    spec_file.write_text("n=4\npoly=0x13\ngenerator=0x2\n")
    code, out, err = _run(
        capsys, "analyze", "dlu", "--field", str(spec_file), "--n", "5",
        "--construction", "inverse",
    )
    assert code == 2
    assert "conflict" in err


@pytest.mark.parametrize("bad", ["3-8", "x", "4,,6", "8..3"])
def test_malformed_degree_range_exits_2(capsys, bad):
    code, out, err = _run(capsys, "verify", "kloosterman", "--n", bad)
    assert code == 2
    assert "degree" in err


# -- reproduce ------------------------------------------------------------------------


@pytest.mark.parametrize("table_id", TABLE_IDS)
def test_reproduce_reports_success_on_every_table(capsys, table_id):
    code, out, err = _run(capsys, "reproduce", table_id)
    assert code == 0, out + err
    assert out.strip().endswith(f"table {table_id}: REPRODUCED")
    assert "MISMATCH" not in out


def test_reproduce_gates_long_rows_without_failing(capsys):
    code, out, err = _run(capsys, "reproduce", "dlu-x7")
    assert code == 0
    assert "skipped (requires --long)" in out


def test_reproduce_detects_a_planted_mismatch(capsys, monkeypatch):
    import dlct.cli as cli
    from dlct.data import load_expected

    record = json.loads(json.dumps(load_expected("dlu-x7")))
    record["rows"][0][1] += 2  # corrupt the first expected value
    monkeypatch.setattr(cli, "load_expected", lambda table_id: record)
    code, out, err = _run(capsys, "reproduce", "dlu-x7")
    assert code == 1
    assert "MISMATCH" in out


def test_reproduce_writes_an_artifact(capsys, tmp_path):
    out_path = tmp_path / "artifact.json"
    code, out, err = _run(
        capsys, "reproduce", "properties-f-vs-inverse", "--out", str(out_path)
    )
    assert code == 0
    artifact = json.loads(out_path.read_text())
    assert artifact["meta"]["table"] == "properties-f-vs-inverse"
    assert artifact["result"]["ok"] is True
    assert artifact["result"]["rows"]


# -- verify ----------------------------------------------------------------------------


def test_verify_suite_prints_verdict_lines(capsys):
    code, out, err = _run(capsys, "verify", "unit-circle", "--n", "4,6")
    assert code == 0
    lines = out.splitlines()
    assert all("predicted=" in ln and "measured=" in ln for ln in lines[:-1])
    assert lines[-1] == "2 checks, 0 violated"


def test_verify_accepts_ranges_and_writes_json(capsys, tmp_path):
    out_path = tmp_path / "verify.json"
    code, out, err = _run(
        capsys, "verify", "inverse-formula", "--n", "3..5", "--out", str(out_path)
    )
    assert code == 0
    artifact = json.loads(out_path.read_text())
    assert len(artifact["reports"]) == 3
    assert {r["params"]["n"] for r in artifact["reports"]} == {3, 4, 5}
    assert all(r["verdict"] != "violated" for r in artifact["reports"])


def test_verify_flags_violations_with_exit_1(capsys, monkeypatch):
    import dlct.cli as cli
    from dlct.theorems import TheoremReport

    def fake_suite(ns, threads, seed):
        return [
            TheoremReport(
                theorem="planted", params={}, predicted=0, measured=1,
                verdict="violated",
            )
        ]

    monkeypatch.setitem(cli._SUITES, "unit-circle", (fake_suite, [4]))
    code, out, err = _run(capsys, "verify", "unit-circle")
    assert code == 1
    assert "1 checks, 1 violated" in out


# -- export-sbox -------------------------------------------------------------------------


def test_export_sbox_roundtrip(capsys, tmp_path):
    path = tmp_path / "cube.sbox"
    code, out, err = _run(
        capsys, "export-sbox", "--n", "5", "--construction", "cubic", "--k", "1",
        "--out", str(path),
    )
    assert code == 0
    from dlct import CubicGold

    table = build(field(5), CubicGold(1))
    loaded = load_table(path, spec=field(5))
    assert np.array_equal(loaded.values, table.values)
    payload = _run_json(capsys, "analyze", "dlu", "--n", "5", "--sbox", str(path))
    assert payload["result"]["dlu"] == dlu(table)


def test_export_sbox_to_stdout(capsys):
    code, out, err = _run(
        capsys, "export-sbox", "--n", "3", "--construction", "power", "--d", "6"
    )
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "n=3"
    table = build(field(3), Power(6))
    assert [int(tok, 16) for tok in lines[1:]] == table.values.tolist()

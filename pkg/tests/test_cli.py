"""End-to-end tests for the ``stablepairs`` command line interface.

Every invocation goes through :func:`stablepairs.cli.main` in process, so the
exit codes, stdout payloads, and stderr diagnostics asserted here are exactly
what a shell user sees.  Exit code contract: 0 success, 1 mismatch against a
golden file or a failed identity, 2 usage/input error, 3 internal error.
"""

import io
import json
from contextlib import redirect_stdout, redirect_stderr

import pytest

from stablepairs.cli import main
from stablepairs.equivariant import TrivialWeightError


def run(argv):
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        code = main(argv)
    return code, out.getvalue(), err.getvalue()


def write_local_p2(path):
    path.write_text(json.dumps({
        "rank": 1, "omega": [1],
        "n0": {"[1]": "1", "[4]": "2"},
        "p0": {"[0]": "1", "[3]": "1"},
        "nmin": {"[1]": "1", "[2]": "1", "[3]": "0"},
    }))
    return path


# -- js: pinned values and validation ------------------------------------------------


def test_js_pinned_values():
    assert run(["js", "--n", "1", "--d", "1"])[:2] == (0, "(1)/(l3)\n")
    assert run(["js", "--n", "3", "--d", "3"])[:2] == (0, "(1/6)/(l3^3)\n")
    assert run(["js", "--n", "5", "--d", "2"])[:2] == (0, "0\n")


def test_js_geometry_flags():
    code, out, _ = run(["js", "--n", "1", "--d", "1",
                        "--l1", "0", "--l2", "-1", "--l3", "-1"])
    assert (code, out) == (0, "(1)/(l1)\n")


def test_js_rejects_non_calabi_yau_degrees():
    code, _, err = run(["js", "--n", "1", "--d", "1",
                        "--l1", "1", "--l2", "1", "--l3", "1"])
    assert code == 2
    assert "Calabi-Yau" in err


def test_js_higher_degree_needs_standard_geometry():
    code, _, _ = run(["js", "--n", "2", "--d", "2",
                      "--l1", "0", "--l2", "-1", "--l3", "-1"])
    assert code == 2


def test_js_closed_method():
    code, out, _ = run(["js", "--n", "2", "--d", "2", "--method", "closed"])
    assert (code, out) == (0, "(1/2)/(l3^2)\n")
    # only defined on the standard geometry ...
    assert run(["js", "--n", "2", "--d", "2", "--method", "closed",
                "--l1", "0", "--l2", "-1", "--l3", "-1"])[0] == 2
    # ... and only when d divides n
    assert run(["js", "--n", "3", "--d", "2", "--method", "closed"])[0] == 2


def test_js_rejects_bad_jobs():
    assert run(["js", "--n", "1", "--d", "1", "--jobs", "0"])[0] == 2


def test_js_audit_text_lists_fixed_points():
    code, out, _ = run(["js", "--n", "1", "--d", "1", "--audit"])
    assert code == 0
    assert out == "(a=0,b=0): (1)/(l3)\n(1)/(l3)\n"


def test_js_json_report():
    code, out, _ = run(["js", "--n", "4", "--d", "2", "--format", "json", "--audit"])
    assert code == 0
    rep = json.loads(out)
    assert rep["value"] == "0"
    assert rep["n"] == 4 and rep["d"] == 2
    assert rep["geometry"] == [-1, -1, 0]
    assert rep["fixed_point_count"] == 3
    assert rep["elapsed_ms"] == 0
    assert rep["conjecture_status"] == "match"
    labels = [c["fixed_point"] for c in rep["contributions"]]
    assert labels == ["(2,0)", "(1,1)", "(0,2)"]


def test_js_json_without_audit_has_no_contributions():
    code, out, _ = run(["js", "--n", "1", "--d", "1", "--format", "json"])
    assert code == 0
    rep = json.loads(out)
    assert "contributions" not in rep
    assert rep["value"] == "(1)/(l3)"


def test_js_timings_flag_reports_measured_time():
    code, out, _ = run(["js", "--n", "1", "--d", "1", "--format", "json",
                        "--timings"])
    assert code == 0
    elapsed = json.loads(out)["elapsed_ms"]
    assert isinstance(elapsed, int) and elapsed >= 0


def test_js_output_is_identical_across_job_counts():
    runs = [run(["js", "--n", "4", "--d", "2", "--format", "json", "--audit",
                 "--jobs", str(j)]) for j in (1, 4)]
    assert runs[0] == runs[1]
    assert runs[0][0] == 0


def test_internal_errors_exit_3(monkeypatch):
    def boom(*args, **kwargs):
        raise TrivialWeightError("synthetic zero weight")

    monkeypatch.setattr("stablepairs.cli.js_invariant_enumerated", boom)
    code, _, err = run(["js", "--n", "1", "--d", "1"])
    assert code == 3
    assert "internal" in err


# -- argparse plumbing ---------------------------------------------------------------


def test_missing_required_argument_exits_2():
    assert run(["js", "--n", "1"])[0] == 2


def test_help_exits_0():
    code, out, _ = run(["--help"])
    assert code == 0
    assert "stablepairs" in out


def test_unknown_subcommand_exits_2():
    assert run(["nonsense"])[0] == 2


def test_jobs_default_comes_from_environment(monkeypatch):
    monkeypatch.setenv("STABLEPAIRS_JOBS", "4")
    code, out, _ = run(["js", "--n", "2", "--d", "1"])
    assert (code, out) == (0, "0\n")
    monkeypatch.setenv("STABLEPAIRS_JOBS", "not a number")
    code, out, _ = run(["js", "--n", "1", "--d", "1"])
    assert (code, out) == (0, "(1)/(l3)\n")


# -- golden files --------------------------------------------------------------------


def test_golden_file_bless_then_compare(tmp_path):
    golden = tmp_path / "g.txt"
    code, _, err = run(["js", "--n", "1", "--d", "1", "--golden", str(golden)])
    assert code == 0
    assert "created" in err
    assert golden.read_text() == "(1)/(l3)\n"

    code, _, err = run(["js", "--n", "1", "--d", "1", "--golden", str(golden)])
    assert code == 0
    assert "golden" not in err


def test_golden_comparison_is_semantic_not_textual(tmp_path):
    golden = tmp_path / "g.txt"
    golden.write_text("(  1 ) / ( l3 )\n")
    assert run(["js", "--n", "1", "--d", "1", "--golden", str(golden)])[0] == 0


def test_golden_mismatch_exits_1(tmp_path):
    golden = tmp_path / "g.txt"
    golden.write_text("(1)/(l3)\n")
    code, _, err = run(["js", "--n", "2", "--d", "1", "--golden", str(golden)])
    assert code == 1
    assert "golden" in err


def test_unparseable_golden_exits_2(tmp_path):
    golden = tmp_path / "g.txt"
    golden.write_text("three over ell\n")
    assert run(["js", "--n", "1", "--d", "1", "--golden", str(golden)])[0] == 2


# -- verify --------------------------------------------------------------------------


def test_verify_text_summary():
    code, out, _ = run(["verify", "--d-max", "2", "--ratio-max", "10"])
    assert code == 0
    assert out.endswith("checked 20 invariants: OK\n")


def test_verify_json_report():
    code, out, _ = run(["verify", "--d-max", "1", "--ratio-max", "3",
                        "--format", "json"])
    assert code == 0
    rep = json.loads(out)
    assert rep["ok"] is True
    assert rep["counterexamples"] == []
    assert rep["rows"][0] == {
        "n": 1, "d": 1, "geometry": [-1, -1, 0], "value": "(1)/(l3)",
        "conjecture_status": "match", "fixed_point_count": 1, "elapsed_ms": 0,
    }


def test_verify_checkpoint_resume(tmp_path):
    ck = tmp_path / "rows.jsonl"
    code, out, _ = run(["verify", "--d-max", "2", "--ratio-max", "3",
                        "--checkpoint", str(ck), "--format", "json"])
    assert code == 0
    lines = ck.read_text().strip().splitlines()
    assert len(lines) == 6
    first_report = json.loads(out)

    # complete checkpoint: nothing recomputed or appended, identical report
    code, out, _ = run(["verify", "--d-max", "2", "--ratio-max", "3",
                        "--checkpoint", str(ck), "--format", "json"])
    assert code == 0
    assert json.loads(out) == first_report
    assert ck.read_text().strip().splitlines() == lines

    # partial checkpoint: only the missing rows are appended
    ck.write_text("\n".join(lines[:4]) + "\n")
    code, _, _ = run(["verify", "--d-max", "2", "--ratio-max", "3",
                      "--checkpoint", str(ck)])
    assert code == 0
    resumed = ck.read_text().strip().splitlines()
    assert len(resumed) == 6
    assert resumed[:4] == lines[:4]


# -- residues ------------------------------------------------------------------------


def test_residues_text_summary():
    code, out, _ = run(["residues", "--d", "2"])
    assert code == 0
    assert out.endswith("residue check for n=4, d=2: OK\n")


def test_residues_json_report():
    code, out, _ = run(["residues", "--d", "1", "--format", "json"])
    assert code == 0
    rep = json.loads(out)
    assert rep["n"] == 2 and rep["d"] == 1
    assert rep["ok"] is True and rep["phi_is_zero"] is True
    assert [row["m"] for row in rep["poles"]] == [-1, 0, 1]
    assert all(row["residue"] == "0" and row["ok"] for row in rep["poles"])


def test_residues_rejects_nonpositive_degree():
    assert run(["residues", "--d", "0"])[0] == 2


# -- series pt -----------------------------------------------------------------------


def test_series_pt_empty_table_gives_unit_series(tmp_path):
    f = tmp_path / "empty.json"
    f.write_text(json.dumps({"rank": 1, "omega": [1], "n0": {}}))
    code, out, _ = run(["series", "pt", "--gv-file", str(f),
                        "--n-max", "3", "--t", "inf"])
    assert code == 0
    rep = json.loads(out)
    assert rep["ok"] is True
    assert rep["coefficients"] == [
        {"n": 0, "beta": [0], "invariant": "1", "series_product": "1", "ok": True}
    ]


def test_series_pt_chamber_values(tmp_path):
    p2 = write_local_p2(tmp_path / "p2.json")

    code, out, _ = run(["series", "pt", "--gv-file", str(p2),
                        "--n-max", "2", "--t", "2"])
    assert code == 0
    rep = json.loads(out)
    assert rep["ok"] is True and rep["t"] == "2"
    by = {(r["n"], tuple(r["beta"])): r["invariant"] for r in rep["coefficients"]}
    assert by[(1, (4,))] == "3"

    code, out, _ = run(["series", "pt", "--gv-file", str(p2),
                        "--n-max", "2", "--t", "1/2"])
    assert code == 0
    by = {(r["n"], tuple(r["beta"])): r["invariant"]
          for r in json.loads(out)["coefficients"]}
    assert by[(1, (4,))] == "2"


def test_series_pt_zero_plus_chamber_keeps_only_pair_classes(tmp_path):
    p2 = write_local_p2(tmp_path / "p2.json")
    code, out, _ = run(["series", "pt", "--gv-file", str(p2),
                        "--n-max", "2", "--t", "0+"])
    assert code == 0
    rep = json.loads(out)
    assert rep["t"] == "0+" and rep["ok"] is True
    rows = {(r["n"], tuple(r["beta"])): r["invariant"] for r in rep["coefficients"]}
    assert rows == {(0, (0,)): "1", (0, (3,)): "1"}


def test_series_pt_on_a_wall_needs_a_side(tmp_path):
    p2 = write_local_p2(tmp_path / "p2.json")
    code, _, err = run(["series", "pt", "--gv-file", str(p2),
                        "--n-max", "2", "--t", "1"])
    assert code == 2
    assert "--side" in err
    code, _, _ = run(["series", "pt", "--gv-file", str(p2),
                      "--n-max", "2", "--t", "1", "--side", "plus"])
    assert code == 0


# -- series wallcheck ----------------------------------------------------------------


def test_series_wallcheck_local_p2_wall(tmp_path):
    p2 = write_local_p2(tmp_path / "p2.json")
    code, out, _ = run(["series", "wallcheck", "--gv-file", str(p2),
                        "--t0", "1", "--n-max", "2"])
    assert code == 0
    rep = json.loads(out)
    assert rep["ok"] is True and rep["series_identity_ok"] is True
    assert rep["t0"] == "1"
    assert rep["wall_classes"] == [[1]]
    row = [r for r in rep["coefficients"] if r["n"] == 1 and r["beta"] == [4]][0]
    assert row["jump"] == "1"
    assert row["simple_wall"] is True
    assert row["mspace"] == "1"
    assert row["ok"] is True


def test_series_wallcheck_rejects_nonpositive_t0(tmp_path):
    p2 = write_local_p2(tmp_path / "p2.json")
    assert run(["series", "wallcheck", "--gv-file", str(p2),
                "--t0", "-1", "--n-max", "2"])[0] == 2


# -- series gvinvert -----------------------------------------------------------------


def test_series_gvinvert_pinned_inversion(tmp_path):
    gw = tmp_path / "gw.json"
    gw.write_text(json.dumps({"rank": 1, "omega": [1],
                              "gw0": {"[1]": "1", "[2]": "1"}}))
    code, out, _ = run(["series", "gvinvert", "--gv-file", str(gw)])
    assert code == 0
    rep = json.loads(out)
    assert rep["round_trip_ok"] is True
    assert rep["n0"] == {"[1]": "1", "[2]": "3/4"}


def test_series_gvinvert_genus_one_path(tmp_path):
    gw = tmp_path / "gw.json"
    gw.write_text(json.dumps({
        "rank": 1, "omega": [1],
        "gw1": {"[1]": "1", "[2]": "3/2"},
        "n0_c2": {"[1]": "3"},
        "meeting": {"[1]|[1]": "1"},
    }))
    code, out, _ = run(["series", "gvinvert", "--gv-file", str(gw)])
    assert code == 0
    assert json.loads(out)["round_trip_ok"] is True


# -- malformed input files -----------------------------------------------------------


@pytest.mark.parametrize("argv_tail", [
    ["pt", "--n-max", "1", "--t", "inf"],
    ["wallcheck", "--t0", "1", "--n-max", "1"],
    ["gvinvert"],
])
def test_series_malformed_gv_file_exits_2(tmp_path, argv_tail):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    argv = ["series", argv_tail[0], "--gv-file", str(bad)] + argv_tail[1:]
    assert run(argv)[0] == 2


def test_series_missing_gv_file_exits_2(tmp_path):
    missing = tmp_path / "absent.json"
    assert run(["series", "pt", "--gv-file", str(missing),
                "--n-max", "1", "--t", "inf"])[0] == 2

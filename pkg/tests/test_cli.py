"""End-to-end command line runs, in process via run(argv)."""

import json
import random
from fractions import Fraction

import pytest

from keisler_lab.cli import run
from keisler_lab.coloring import weighted_hypergraph
from keisler_lab.serialize import (canonical_dumps, load_structure,
                                   structure_to_json, weighted_to_json)
from keisler_lab.structures import Hypergraph, build_tp2_grid, cyclic_graph

HEADLINE_FAM = ["fam", "--phi", "!E(x1,y1) & x1 != y1", "--epsilon", "4/5",
                "--graph", "circulant:13:1,5",
                "--ambient", "gen:200:2:3:seed=9"]


def read_report(path):
    return json.loads(path.read_text())


def write_weighted(tmp_path, name="weights.json"):
    wh = weighted_hypergraph(4, 2, [((0, 1), Fraction(2, 3)),
                                    ((1, 2), Fraction(1, 2)),
                                    ((2, 3), Fraction(3, 1))])
    path = tmp_path / name
    path.write_text(canonical_dumps(weighted_to_json(wh)))
    return path


# ---------------------------------------------------------------------------
# gen
# ---------------------------------------------------------------------------

def test_gen_to_stdout(capsys):
    assert run(["gen", "circulant:13:1,5"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["theorem"] == "gen"
    assert data["config"] == {"subcommand": "gen", "spec": "circulant:13:1,5"}
    assert [c["name"] for c in data["certified"]] == ["digest-match",
                                                      "embedded-match"]
    assert all(c["holds"] for c in data["certified"])


def test_gen_maximal_adds_freeness_certs(tmp_path):
    out = tmp_path / "r.json"
    assert run(["gen", "gen:20:2:3:seed=1", "--output", str(out)]) == 0
    names = [c["name"] for c in read_report(out)["certified"]]
    assert names == ["digest-match", "embedded-match", "free", "maximal-free"]


def test_gen_searchalpha_certs(tmp_path):
    out = tmp_path / "r.json"
    assert run(["gen", "searchalpha:13:3:4:60:seed=0",
                "--output", str(out)]) == 0
    data = read_report(out)
    by_name = {c["name"]: c for c in data["certified"]}
    assert by_name["alpha-target"]["rhs"]["num"] == 4
    assert by_name["alpha-target"]["holds"]


def test_gen_structure_out(tmp_path):
    sout = tmp_path / "structure.json"
    assert run(["gen", "circulant:13:1,5", "--output",
                str(tmp_path / "r.json"), "--structure-out", str(sout)]) == 0
    assert load_structure(str(sout)) == cyclic_graph(13, [1, 5])


def test_gen_bad_spec_is_usage_error(capsys):
    assert run(["gen", "circulant:13"]) == 1
    assert "error" in capsys.readouterr().err


def test_unknown_flag_raises_usage_exit():
    with pytest.raises(SystemExit) as info:
        run(["gen", "circulant:13:1,5", "--nope"])
    assert info.value.code == 1


# ---------------------------------------------------------------------------
# color
# ---------------------------------------------------------------------------

def test_color_with_brute_and_verify(tmp_path, capsys):
    wfile = write_weighted(tmp_path)
    out = tmp_path / "color.json"
    assert run(["color", "--input", str(wfile), "--brute",
                "--output", str(out)]) == 0
    data = read_report(out)
    assert data["theorem"] == "coloring-bound"
    by_name = {c["name"]: c for c in data["certified"]}
    assert by_name["greedy-bound"]["holds"]
    assert by_name["average-identity"]["holds"]
    assert data["witness"]["brute"]["colorings"] == 16
    assert run(["verify", str(out)]) == 0
    assert "3 certifications reproduced" in capsys.readouterr().out


def test_color_input_override(tmp_path):
    wfile = write_weighted(tmp_path)
    out = tmp_path / "color.json"
    assert run(["color", "--input", str(wfile), "--output", str(out)]) == 0
    moved = tmp_path / "elsewhere.json"
    moved.write_text(wfile.read_text())
    wfile.unlink()
    assert run(["verify", str(out)]) == 1  # recorded source is gone
    assert run(["verify", str(out), "--input",
                f"weighted={moved}"]) == 0


# ---------------------------------------------------------------------------
# fam
# ---------------------------------------------------------------------------

def test_fam_headline_and_verify(tmp_path, capsys):
    out = tmp_path / "fam.json"
    assert run(HEADLINE_FAM + ["--output", str(out)]) == 0
    data = read_report(out)
    assert data["theorem"] == "famnotfim"
    assert data["witness"]["sup"]["sup_error"]["num"] == 5
    assert data["witness"]["sup"]["sup_error"]["den"] == 13
    assert data["witness"]["violation_max"]["count"] == 5
    assert run(["verify", str(out)]) == 0
    assert "verified: 7 certifications reproduced" in capsys.readouterr().out


def test_fam_precondition_report_and_verify(tmp_path, capsys):
    out = tmp_path / "fam5.json"
    code = run(["fam", "--phi", "!E(x1,y1) & x1 != y1", "--epsilon", "4/5",
                "--graph", "circulant:5:1",
                "--ambient", "gen:200:2:3:seed=9", "--output", str(out)])
    assert code == 2
    data = read_report(out)
    assert data["witness"]["precondition_failed"] == "alpha-bound"
    (cert,) = data["certified"]
    assert cert["holds"] is False
    capsys.readouterr()
    assert run(["verify", str(out)]) == 2
    assert "failed certification" in capsys.readouterr().err


def test_fam_bad_formula_is_usage_error(tmp_path):
    assert run(["fam", "--phi", "E(x1", "--epsilon", "4/5",
                "--graph", "circulant:13:1,5",
                "--ambient", "gen:30:2:3:seed=1"]) == 1


def test_fam_budget_miss_is_usage_error(capsys):
    code = run(HEADLINE_FAM + ["--budget", "3"])
    assert code == 1
    assert "embedding" in capsys.readouterr().err.lower()


# ---------------------------------------------------------------------------
# verify hardening
# ---------------------------------------------------------------------------

def test_verify_detects_certified_tamper(tmp_path, capsys):
    out = tmp_path / "fam.json"
    run(HEADLINE_FAM + ["--output", str(out)])
    data = read_report(out)
    for cert in data["certified"]:
        if cert["name"] == "sup-error":
            cert["lhs"] = {"num": 4, "den": 13, "decimal": 4 / 13}
    out.write_text(canonical_dumps(data))
    assert run(["verify", str(out)]) == 2
    assert "does not reproduce" in capsys.readouterr().err


def test_verify_detects_input_tamper(tmp_path, capsys):
    out = tmp_path / "order.json"
    run(["order", "--ambient", "gen:20:2:3:seed=1", "--q", "2",
         "--output", str(out)])
    data = read_report(out)
    data["inputs"]["ambient"]["source"] = "gen:20:2:3:seed=2"
    out.write_text(canonical_dumps(data))
    assert run(["verify", str(out)]) == 2
    assert "digest mismatch" in capsys.readouterr().err


def test_verify_rejects_malformed_reports(tmp_path):
    missing = tmp_path / "missing.json"
    missing.write_text(canonical_dumps({"theorem": "order", "inputs": {},
                                        "witness": {}, "certified": []}))
    assert run(["verify", str(missing)]) == 1
    unknown = tmp_path / "unknown.json"
    unknown.write_text(canonical_dumps({"theorem": "zzz", "inputs": {},
                                        "witness": {}, "certified": [],
                                        "log": []}))
    assert run(["verify", str(unknown)]) == 1


# ---------------------------------------------------------------------------
# adversary / satprobe
# ---------------------------------------------------------------------------

def test_adversary_byte_identity(tmp_path):
    out = tmp_path / "adv.json"
    argv = ["adversary", "--ambient", "gen:25:3:4:seed=2", "--n", "10",
            "--seed", "7", "--s", "4", "--output", str(out)]
    assert run(argv) == 0
    first = out.read_bytes()
    assert run(argv) == 0
    assert out.read_bytes() == first


def test_adversary_arity_mismatch(capsys):
    assert run(["adversary", "--ambient", "gen:25:3:4:seed=2", "--n", "5",
                "--seed", "1", "--r", "2", "--s", "4"]) == 1
    assert run(["adversary", "--ambient", "circulant:13:1,5", "--n", "5",
                "--seed", "1", "--s", "4"]) == 1
    err = capsys.readouterr().err
    assert "arity" in err


def test_satprobe_aggregate_csv(tmp_path):
    out = tmp_path / "probe.csv"
    assert run(["satprobe", "--ambient", "gen:20:3:4:seed=3", "--m-size",
                "12", "--seed", "9", "--trials", "5", "--n-params", "2",
                "--format", "csv", "--output", str(out)]) == 0
    lines = out.read_text().splitlines()
    assert lines[0] == "trial,found,witness"
    assert len(lines) == 6
    assert [line.split(",")[0] for line in lines[1:]] == list("01234")


def test_satprobe_single_miss_exits_zero(tmp_path):
    k6 = Hypergraph(2, 6, frozenset((a, b) for a in range(6)
                                    for b in range(a + 1, 6)))
    afile = tmp_path / "k6.json"
    afile.write_text(canonical_dumps(structure_to_json(k6)))
    subset = sorted(random.Random(4).sample(range(6), 3))
    param = min(set(range(6)) - set(subset))
    out = tmp_path / "probe.json"
    assert run(["satprobe", "--ambient", str(afile), "--m-size", "3",
                "--seed", "4", "--params", str(param),
                "--output", str(out)]) == 0
    data = read_report(out)
    assert data["witness"]["found"] is False
    assert data["certified"] == []


def test_satprobe_flag_conflicts():
    base = ["satprobe", "--ambient", "gen:20:3:4:seed=3", "--m-size", "5",
            "--seed", "1"]
    assert run(base + ["--params", "1", "--trials", "3"]) == 1
    assert run(base) == 1  # neither explicit params nor aggregate size
    assert run(base + ["--params", "1", "--format", "csv"]) == 1


# ---------------------------------------------------------------------------
# tp2 / order / check-measures
# ---------------------------------------------------------------------------

def test_tp2_cli(tmp_path):
    out = tmp_path / "tp2.json"
    assert run(["tp2", "--k", "2", "--output", str(out)]) == 0
    data = read_report(out)
    assert data["inputs"]["structure"]["source"] == "tp2grid:2"
    assert all(c["holds"] for c in data["certified"])


def test_tp2_grid_too_small_is_usage_error(tmp_path, capsys):
    sfile = tmp_path / "grid2.json"
    sfile.write_text(canonical_dumps(structure_to_json(build_tp2_grid(2))))
    assert run(["tp2", "--k", "3", "--input", str(sfile)]) == 1
    assert "needs" in capsys.readouterr().err


def test_order_cli_and_verify(tmp_path):
    out = tmp_path / "order.json"
    assert run(["order", "--ambient", "gen:30:2:3:seed=1", "--q", "4",
                "--output", str(out)]) == 0
    assert read_report(out)["witness"]["witness_vertex"] == 38
    assert run(["verify", str(out)]) == 0


def test_check_measures_json_and_csv(tmp_path):
    out = tmp_path / "m.json"
    argv = ["check-measures", "--seed", "5", "--cases", "10",
            "--output", str(out)]
    assert run(argv) == 0
    first = out.read_bytes()
    assert run(argv) == 0
    assert out.read_bytes() == first
    data = read_report(out)
    assert all(c["holds"] for c in data["certified"])
    csv_out = tmp_path / "m.csv"
    assert run(["check-measures", "--seed", "5", "--cases", "10",
                "--format", "csv", "--output", str(csv_out)]) == 0
    lines = csv_out.read_text().splitlines()
    assert lines[0] == "check,passed,cases"
    assert len(lines) == 5
    assert all(line.endswith(",10,10") for line in lines[1:])


def test_check_measures_verify(tmp_path):
    out = tmp_path / "m.json"
    assert run(["check-measures", "--seed", "5", "--cases", "10",
                "--output", str(out)]) == 0
    assert run(["verify", str(out)]) == 0


# ---------------------------------------------------------------------------
# environment knob
# ---------------------------------------------------------------------------

def test_threads_env_is_echoed(tmp_path, monkeypatch):
    monkeypatch.setenv("KEISLER_LAB_THREADS", "3")
    out = tmp_path / "r.json"
    assert run(["gen", "circulant:13:1,5", "--output", str(out)]) == 0
    assert read_report(out)["config"]["threads"] == 3


def test_threads_env_is_validated(monkeypatch, capsys):
    monkeypatch.setenv("KEISLER_LAB_THREADS", "zero")
    assert run(["gen", "circulant:13:1,5"]) == 1
    monkeypatch.setenv("KEISLER_LAB_THREADS", "0")
    assert run(["gen", "circulant:13:1,5"]) == 1
    assert "KEISLER_LAB_THREADS" in capsys.readouterr().err

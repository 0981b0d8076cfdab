import json

import pytest

from conftest import planted_ffl_graph
from hypermotifs.cli import main
from hypermotifs.graph import save_edge_list


@pytest.fixture
def toy_edge_list(tmp_path):
    path = tmp_path / "toy.tsv"
    path.write_text("a\tb\nb\tc\nc\ta\n")
    return path


@pytest.fixture
def planted_edge_list(tmp_path):
    g = planted_ffl_graph(70, 160, 18, seed=51, self_loops_on="intermediate")
    path = tmp_path / "planted.tsv"
    save_edge_list(g, path)
    return path


def test_census_counts_only(toy_edge_list, tmp_path):
    out = tmp_path / "o"
    assert main(["census", str(toy_edge_list), "--out", str(out), "--ensemble", "0"]) == 0
    doc = json.loads((out / "census.json").read_text())
    cycle_rows = [r for r in doc["census"] if r["size"] == 3 and r["count"] == 1]
    assert len(cycle_rows) == 1
    assert doc["n_nodes"] == 3 and doc["n_edges"] == 3
    assert doc["version"] and "seed" in doc


def test_census_with_ensemble_flags_planted_ffl(planted_edge_list, tmp_path):
    from hypermotifs.motifs import NAMED_MOTIFS

    out = tmp_path / "o"
    rc = main(
        [
            "census", str(planted_edge_list), "--out", str(out),
            "--ensemble", "20", "--seed", "3",
        ]
    )
    assert rc == 0
    doc = json.loads((out / "census.json").read_text())
    ffl_row = [r for r in doc["census"] if r["class_code"] == NAMED_MOTIFS["ffl"].code]
    assert ffl_row and ffl_row[0]["significant"]


def test_census_missing_file(tmp_path):
    assert main(["census", str(tmp_path / "nope.tsv"), "--out", str(tmp_path)]) == 2


def test_census_empty_file(tmp_path):
    empty = tmp_path / "empty.tsv"
    empty.write_text("# nothing\n")
    assert main(["census", str(empty), "--out", str(tmp_path / "o")]) == 2


def test_usage_error_exit_code():
    assert main(["census"]) == 1
    assert main(["no-such-command"]) == 1
    assert main([]) == 1


def test_detect_outputs_and_determinism(planted_edge_list, tmp_path):
    args = [
        "detect", str(planted_edge_list), "--seed", "5",
        "--ensemble", "12", "--motif-ensemble", "12",
    ]
    assert main(args + ["--out", str(tmp_path / "a")]) == 0
    assert main(args + ["--out", str(tmp_path / "b")]) == 0
    ja = (tmp_path / "a" / "detect.json").read_bytes()
    jb = (tmp_path / "b" / "detect.json").read_bytes()
    assert ja == jb
    ca = (tmp_path / "a" / "detect.csv").read_bytes()
    cb = (tmp_path / "b" / "detect.csv").read_bytes()
    assert ca == cb
    doc = json.loads(ja)
    assert {"version", "seed", "config", "stats", "significant_motifs"} <= set(doc)
    assert doc["seed"] == 5


def test_detect_no_motifs_exits_zero(toy_edge_list, tmp_path):
    out = tmp_path / "o"
    rc = main(
        [
            "detect", str(toy_edge_list), "--out", str(out),
            "--ensemble", "4", "--motif-ensemble", "4",
        ]
    )
    assert rc == 0
    doc = json.loads((out / "detect.json").read_text())
    assert doc["stats"] == []


def test_enumerate_combine_json(tmp_path):
    out = tmp_path / "o"
    assert main(["enumerate", "ffl", "ffl", "--mode", "combine", "--out", str(out)]) == 0
    doc = json.loads((out / "enumerate.json").read_text())
    assert doc["n_topologies"] == 12
    assert len(doc["topologies"]) == 12


def test_enumerate_interact_count(capsys, tmp_path):
    assert main(["enumerate", "ffl", "ffl", "--mode", "interact", "--count-only",
                 "--out", str(tmp_path)]) == 0
    assert capsys.readouterr().out.strip() == "262144"


def test_enumerate_sl_ffl(capsys, tmp_path):
    assert main(["enumerate", "sl", "ffl", "--mode", "combine", "--count-only",
                 "--out", str(tmp_path)]) == 0
    assert capsys.readouterr().out.strip() == "3"


def test_enumerate_unknown_motif(tmp_path):
    assert main(["enumerate", "blorp", "ffl", "--out", str(tmp_path)]) == 2


def test_simulate_catalog_model(tmp_path):
    out = tmp_path / "sim"
    rc = main(
        [
            "simulate", "M14-16", "--out", str(out),
            "--init", "X=0,Y=0,Z=0", "--horizon", "50",
        ]
    )
    assert rc == 0
    doc = json.loads((out / "classification_m14-16.json").read_text())
    assert doc["classification"] == "ON"
    assert doc["per_variable"]["Z"]["response_delay"] is not None
    csv_lines = (out / "traj_m14-16.csv").read_text().splitlines()
    assert csv_lines[0] == "t,X,Y,Z"
    assert len(csv_lines) == 5002


def test_simulate_m66_69_reports_anti_phase(tmp_path):
    out = tmp_path / "sim"
    assert main(["simulate", "M66-69", "--out", str(out), "--horizon", "200"]) == 0
    doc = json.loads((out / "classification_m66-69.json").read_text())
    assert doc["classification"] == "SUSTAINED_OSCILLATION"
    rel = {
        (r["variable_a"], r["variable_b"]): r["relation"]
        for r in doc["phase_relations"]
    }
    assert rel[("Z", "W")] == "anti-phase"


def test_simulate_topology_file(tmp_path):
    topo = tmp_path / "topo.json"
    topo.write_text(
        json.dumps(
            {
                "variables": ["A", "B"],
                "edges": [{"source": "A", "target": "B", "sign": 1, "n": 1, "k": 0.5}],
                "constants": {"A": 1.0},
                "init": [0.0, 0.0],
            }
        )
    )
    out = tmp_path / "sim"
    assert main(["simulate", str(topo), "--out", str(out), "--horizon", "30"]) == 0
    doc = json.loads((out / "classification_topo.json").read_text())
    assert doc["per_variable"]["A"]["label"] == "ON"


def test_simulate_bad_init(tmp_path):
    assert main(["simulate", "M3", "--out", str(tmp_path), "--init", "Q=1"]) == 2
    assert main(["simulate", "M3", "--out", str(tmp_path), "--init", "X:1"]) == 2


def test_portrait_outputs(tmp_path):
    out = tmp_path / "p"
    rc = main(["portrait", "M4-5", "--out", str(out), "--nx", "50", "--ny", "50"])
    assert rc == 0
    doc = json.loads((out / "portrait_m4-5.json").read_text())
    assert len(doc["nullcline_intersections"]) == 3
    field = (out / "portrait_m4-5.csv").read_text().splitlines()
    assert field[0] == "X,Y,dX,dY"
    assert len(field) == 1 + 50 * 50
    assert (out / "nullclines_m4-5_X.csv").exists()
    assert (out / "nullclines_m4-5_Y.csv").exists()


def test_portrait_degenerate_grid(tmp_path):
    assert main(["portrait", "M4-5", "--out", str(tmp_path), "--nx", "1"]) == 2


def test_downsample_cli(planted_edge_list, tmp_path):
    out_a, out_b = tmp_path / "a", tmp_path / "b"
    args = ["downsample", str(planted_edge_list), "--sz", "45", "--seed", "11"]
    assert main(args + ["--out", str(out_a)]) == 0
    assert main(args + ["--out", str(out_b)]) == 0
    assert (out_a / "downsampled.tsv").read_bytes() == (out_b / "downsampled.tsv").read_bytes()
    report = json.loads((out_a / "downsample_report.json").read_text())
    assert report["sampled"]["n_nodes"] <= report["original"]["n_nodes"]


def test_env_seed_fallback(toy_edge_list, tmp_path, monkeypatch):
    monkeypatch.setenv("HYPERMOTIF_SEED", "321")
    out = tmp_path / "o"
    assert main(["census", str(toy_edge_list), "--out", str(out), "--ensemble", "0"]) == 0
    doc = json.loads((out / "census.json").read_text())
    assert doc["seed"] == 321

import csv
import io
import json

import networkx as nx
import pytest

from degsplit.cli import main
from degsplit.generators import gen_random_multigraph, gen_random_regular, gen_shannon
from degsplit.harness import CSV_COLUMNS, ExperimentConfig, Report, run_experiment
from degsplit.undirected import undirected_split


def test_random_regular_examples():
    k4 = gen_random_regular(4, 3, 0)
    assert sorted((u, v) for _, u, v in k4.edges()) == [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
    g = gen_random_regular(10, 3, 1)
    assert all(g.degree(v) == 3 for v in g.vertices)
    with pytest.raises(ValueError):
        gen_random_regular(5, 3, 0)
    with pytest.raises(ValueError):
        gen_random_regular(4, 4, 0)


@pytest.mark.parametrize("n,d", [(50, 8), (1000, 3), (200, 32)])
def test_random_regular_simple_and_seeded(n, d):
    g = gen_random_regular(n, d, 5)
    assert g.multiplicity() == 1
    assert {g.degree(v) for v in g.vertices} == {d}
    assert gen_random_regular(n, d, 5) == g
    assert nx.is_regular(nx.Graph([(u, v) for _, u, v in g.edges()]))


def test_random_multigraph_has_no_loops():
    g = gen_random_multigraph(30, 5, 2)
    assert all(u != v for _, u, v in g.edges())
    assert {g.degree(v) for v in g.vertices} == {5}


def test_shannon_examples():
    assert gen_shannon(1).m == 3
    g = gen_shannon(2)
    assert g.max_degree == 4 and g.m == 6
    for mu in (1, 2, 3, 4):
        assert gen_shannon(mu).m == 3 * mu
    with pytest.raises(ValueError):
        gen_shannon(0.5)


def test_directed_grid_passes():
    cfg = ExperimentConfig("directed", n=500, d=16, seeds=[0], eps=[0.5, 0.25, 0.1])
    rep = run_experiment(cfg)
    assert len(rep.records) == 3 and rep.passed
    for r in rep.records:
        assert r["violations"] == 0 and r["hso_condition"] and r["hso_valid"]
        assert r["max_component_weak_diameter"] <= r["locality_bound"]


def test_mend_config():
    rep = run_experiment(ExperimentConfig("mend", eps=[0.5], delta=4, layers=6))
    (r,) = rep.records
    assert r["certificate"] and r["validate_partial"] and rep.passed


def test_empty_grid():
    rep = run_experiment(ExperimentConfig("directed", n=10, d=3, eps=[]))
    assert rep.records == [] and rep.passed


def test_report_deterministic_and_parallel_equal():
    cfg = dict(algorithm="undirected", n=200, d=5, seeds=[0, 1], eps=[0.5, 0.25])
    a = run_experiment(ExperimentConfig(**cfg))
    b = run_experiment(ExperimentConfig(**cfg, workers=4))
    assert json.dumps(a.body(), sort_keys=True) == json.dumps(b.body(), sort_keys=True)


def test_csv_columns_and_output(tmp_path):
    out = tmp_path / "r.csv"
    rep = run_experiment(ExperimentConfig("edge-color", n=100, d=8, eps=[0.5], output=str(out)))
    rows = list(csv.DictReader(io.StringIO(out.read_text())))
    assert list(rows[0]) == CSV_COLUMNS
    assert rows[0]["passed"] == "True" and int(rows[0]["palette"]) <= int(rows[0]["bound"])
    assert rep.to_csv() == out.read_text()


def test_config_validation_and_error_context():
    with pytest.raises(ValueError):
        ExperimentConfig("nope")
    with pytest.raises(ValueError):
        ExperimentConfig("directed", eps=[0])
    with pytest.raises(RuntimeError, match="seed=0"):
        run_experiment(ExperimentConfig("directed", n=5, d=3, eps=[0.5]))


def test_report_pass_requires_all_records():
    assert not Report([{"passed": True}, {"passed": False}]).passed


# -- CLI ------------------------------------------------------------------

@pytest.fixture
def graph_file(tmp_path):
    p = tmp_path / "g.edges"
    assert main(["gen", "--n", "120", "--d", "8", "--seed", "3", "--output", str(p)]) == 0
    return p


@pytest.mark.parametrize("cmd", [["split-directed"], ["split-undirected"], ["color-edges"], ["multiway", "--k", "2"]])
def test_cli_commands_pass(graph_file, tmp_path, cmd):
    rep = tmp_path / "out.json"
    code = main(cmd + ["--input", str(graph_file), "--epsilon", "0.5", "--report", str(rep)])
    data = json.loads(rep.read_text())
    assert code == 0 and data["passed"]


def test_cli_split_directed_report_fields(graph_file, capsys):
    assert main(["split-directed", "--input", str(graph_file), "--epsilon", "0.25", "--seed", "7"]) == 0
    rec = json.loads(capsys.readouterr().out)["records"][0]
    for key in ("per_vertex_discrepancy", "max_value", "mean_value", "ell", "bucket_stats",
                "component_diameter_histogram"):
        assert key in rec


def test_cli_csv(graph_file, capsys):
    assert main(["color-edges", "--input", str(graph_file), "--epsilon", "0.5", "--format", "csv"]) == 0
    header = capsys.readouterr().out.splitlines()[0]
    assert header.split(",") == CSV_COLUMNS


def test_cli_mend_check(capsys):
    code = main(["mend-check", "--epsilon", "0.5", "--delta", "4", "--layers", "5", "--brute-radius", "0"])
    rec = json.loads(capsys.readouterr().out)["records"][0]
    assert code == 0
    assert rec["layer_sizes"] == [2, 6, 18, 54, 162]
    assert rec["brute_force"]["verdict"] == "impossible"


def test_cli_validate(graph_file, tmp_path):
    from degsplit.graph import read_graph

    g = read_graph(str(graph_file))
    good = tmp_path / "good.json"
    good.write_text(json.dumps({"labels": {e: int(c) for e, c in undirected_split(g, 0.5).items()}}))
    args = ["validate", "--input", str(graph_file), "--epsilon", "0.5", "--kind", "undirected", "--report",
            str(tmp_path / "r.json")]
    assert main(args + ["--labels", str(good)]) == 0
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"labels": {e: 1 for e in g.edge_ids}}))
    assert main(args + ["--labels", str(bad)]) == 1
    rec = json.loads((tmp_path / "r.json").read_text())["records"][0]
    assert rec["violations"] > 0 and not rec["passed"]


def test_cli_run_config(tmp_path, capsys):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"algorithm": "multiway", "n": 100, "d": 16, "eps": [0.5], "k": 2}))
    assert main(["run", "--config", str(cfg)]) == 0
    assert json.loads(capsys.readouterr().out)["passed"]


def test_cli_gen_json(capsys):
    assert main(["gen", "--family", "shannon", "--mu", "3", "--json"]) == 0
    data = json.loads(capsys.readouterr().out)
    assert data["n"] == 3 and len(data["edges"]) == 9

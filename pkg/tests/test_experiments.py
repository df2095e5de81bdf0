import csv
import io as _io

import pytest

import ktd.cli as cli
from ktd.cli import main
from ktd.experiments import CAMPAIGNS, COLUMNS, RunConfig, run_campaign, run_suite
from ktd.graphs import GeoGraph, build_ktd_cones


def drop_edges(points, k):
    graph = build_ktd_cones(points, k)
    return GeoGraph(graph.n, graph.edges[::2], graph.points, k)


@pytest.mark.parametrize("name", sorted(CAMPAIGNS))
def test_every_campaign_passes_a_few_trials(name):
    report = run_campaign(RunConfig(name, seed=3, trials=4))
    assert report.ok, report.to_markdown()
    assert len(report.rows) == 4


def test_rows_do_not_depend_on_trial_count():
    short = run_campaign(RunConfig("connectivity", seed=1, trials=3))
    long = run_campaign(RunConfig("connectivity", seed=1, trials=6))
    assert short.rows == long.rows[:3]


def test_even_campaigns_draw_even_n():
    report = run_campaign(RunConfig("perfect-matching-2td", seed=0, trials=20, n_range=(5, 21)))
    assert all(r.n % 2 == 0 and 6 <= r.n <= 20 for r in report.rows)


def test_csv_layout():
    report = run_campaign(RunConfig("matching-ratio-0td", seed=0, trials=3))
    rows = list(csv.reader(_io.StringIO(report.to_csv())))
    assert tuple(rows[0]) == COLUMNS and len(rows) == 4
    assert "Claim checked" in report.to_markdown()


def test_corrupted_builder_is_detected():
    report = run_campaign(RunConfig("connectivity", seed=0, trials=10, k_range=(2, 2), builder=drop_edges))
    assert not report.ok


def test_corrupted_builder_gives_nonzero_exit(monkeypatch, tmp_path):
    real = cli.RunConfig

    def corrupted(*args, **kwargs):
        return real(*args, builder=drop_edges, **kwargs)

    monkeypatch.setattr(cli, "RunConfig", corrupted)
    rc = main(["experiment", "connectivity", "--trials", "5", "--k", "2:2", "--out", str(tmp_path / "c.csv")])
    assert rc != 0


def test_unknown_campaign():
    with pytest.raises(ValueError):
        run_campaign(RunConfig("nope"))


def test_suite_writes_all_artifacts(tmp_path):
    reports = run_suite(tmp_path, seed=2, trials=2, campaigns=["connectivity", "hamiltonian-λ"])
    assert set(reports) == {"connectivity", "hamiltonian-λ"}
    names = sorted(p.name for p in tmp_path.iterdir())
    assert names == sorted(["connectivity.csv", "connectivity.md", "connectivity.json", "hamiltonian-lambda.csv",
                            "hamiltonian-lambda.md", "hamiltonian-lambda.json", "sample_graph.json",
                            "sample_graph.svg"])


def test_ascii_campaign_names():
    a = run_campaign(RunConfig("matching-lambda", seed=1, trials=2))
    b = run_campaign(RunConfig("matching-λ", seed=1, trials=2))
    assert a.rows == b.rows and a.campaign.name == "matching-λ"

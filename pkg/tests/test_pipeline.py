import json

import numpy as np
import pytest

from datlas.pipeline import (PipelineError, compute_centrality, default_k,
                             export_report, load_bundle, materialize_config,
                             run_pipeline)
from conftest import complete_graph, random_connected_graph

ER_CONFIG = {"generator": {"family": "erdos_renyi", "n": 60, "p": 0.15,
                           "seed": 1}}


def test_materialize_config_defaults():
    cfg = materialize_config(dict(ER_CONFIG))
    assert cfg["seed"] == 0 and cfg["restarts"] == 8
    with pytest.raises(PipelineError):
        materialize_config({})


def test_default_k():
    assert default_k(500) == 4
    assert default_k(20000) == 100


def test_run_pipeline_bundle_contents(tmp_path):
    out = run_pipeline(dict(ER_CONFIG), tmp_path / "b")
    bundle = json.loads((out / "bundle.json").read_text())
    assert (out / "graph.edges").exists()
    assert bundle["n"] > 0 and bundle["tau"] > 0
    assert "k4_seed0" in bundle["partitions"]
    feats = bundle["features"]["k4"]
    assert len(feats["communities"]) == 4
    assert "max_sd_p_in" in feats["summary"]
    assert bundle["provenance"]["config_echo"]["generator"]["family"] == \
        "erdos_renyi"
    g, basis, loaded = load_bundle(out)
    assert loaded["fingerprint"] == g.fingerprint()
    assert basis.K == bundle["K"]


def test_run_pipeline_cache_hit(tmp_path, caplog):
    import logging
    run_pipeline(dict(ER_CONFIG), tmp_path / "b")
    with caplog.at_level(logging.INFO, logger="datlas.pipeline"):
        run_pipeline(dict(ER_CONFIG), tmp_path / "b")
    assert any("cache hit" in r.message for r in caplog.records)


def test_reports_deterministic(tmp_path):
    for d in ("b1", "b2"):
        out = run_pipeline(dict(ER_CONFIG), tmp_path / d)
        export_report(out, fmt="json")
        export_report(out, fmt="csv")
    assert (tmp_path / "b1" / "report.json").read_bytes() == \
        (tmp_path / "b2" / "report.json").read_bytes()
    assert (tmp_path / "b1" / "report_k4.csv").read_bytes() == \
        (tmp_path / "b2" / "report_k4.csv").read_bytes()


def test_report_csv_rows(tmp_path):
    out = run_pipeline(dict(ER_CONFIG), tmp_path / "b")
    paths = export_report(out, fmt="csv")
    lines = paths[0].read_text().strip().splitlines()
    assert lines[0].startswith("community,size,volume,mean_degree,cheeger")
    assert len(lines) == 5  # header + one row per community


def test_missing_input_names_path(tmp_path):
    with pytest.raises(PipelineError, match="no/such/file.edges"):
        run_pipeline({"input": "no/such/file.edges"}, tmp_path / "b")


def test_unknown_report_format(tmp_path):
    out = run_pipeline(dict(ER_CONFIG), tmp_path / "b")
    with pytest.raises(PipelineError):
        export_report(out, fmt="xml")


def test_compute_centrality_dispatch():
    g = random_connected_graph(30, 0.2, seed=50)
    for measure in ("betweenness", "closeness", "max_remoteness",
                    "eigenvector", "gmfpt"):
        s = compute_centrality(g, measure)
        assert s.raw.shape == (g.n,)
    with pytest.raises(PipelineError):
        compute_centrality(g, "pagerank")


def test_cache_dir_env_override(tmp_path, monkeypatch):
    cache = tmp_path / "shared_cache"
    monkeypatch.setenv("DATLAS_CACHE_DIR", str(cache))
    run_pipeline(dict(ER_CONFIG), tmp_path / "b")
    assert any(cache.glob("*.datl"))


def test_pipeline_error_names_stage(tmp_path):
    cfg = {"generator": {"family": "erdos_renyi", "n": 40, "p": 0.2},
           "K": 999}  # K > n
    with pytest.raises(PipelineError, match="build_basis"):
        run_pipeline(cfg, tmp_path / "b")

import json

import numpy as np
import pytest

from datlas.cli import main


def _run(capsys, argv):
    main(argv)
    return json.loads(capsys.readouterr().out.strip().splitlines()[-1])


@pytest.fixture
def k4_edges(tmp_path):
    path = tmp_path / "k4.edges"
    path.write_text("".join(f"{i} {j}\n" for i in range(4)
                            for j in range(i + 1, 4)))
    return path


def test_generate(tmp_path, capsys):
    out = _run(capsys, ["generate", "--family", "city", "--seed", "0",
                        "--params", '{"subdivisions": 10}',
                        "--output-dir", str(tmp_path)])
    assert out["n"] == 24 and out["m"] == 34
    assert (tmp_path / "city.edges").exists()
    assert (tmp_path / "city.coords").exists()
    assert (tmp_path / "city.config.json").exists()


def test_decompose(tmp_path, capsys, k4_edges):
    out = _run(capsys, ["decompose", "--input", str(k4_edges),
                        "--K", "4", "--output-dir", str(tmp_path)])
    assert out["n"] == 4 and out["K"] == 4
    assert abs(out["tau"] - 1.5) < 1e-9
    assert (tmp_path / "basis.datl").exists()


def test_communities_and_features(tmp_path, capsys, k4_edges):
    out = _run(capsys, ["communities", "--input", str(k4_edges), "--K", "4",
                        "--k", "2", "--output-dir", str(tmp_path)])
    part = json.loads((tmp_path / "partition_k2.json").read_text())
    assert sorted(set(part["labels"])) == [0, 1]
    out = _run(capsys, ["features", "--input", str(k4_edges), "--K", "4",
                        "--k", "2", "--output-dir", str(tmp_path)])
    feats = json.loads((tmp_path / "features_k2.json").read_text())
    assert len(feats["communities"]) == 2


def test_centrality(tmp_path, capsys, k4_edges):
    out = _run(capsys, ["centrality", "--input", str(k4_edges), "--K", "4",
                        "--measure", "gmfpt", "--output-dir", str(tmp_path)])
    scores = json.loads((tmp_path / "centrality_gmfpt.json").read_text())
    assert np.allclose(scores["raw"], 2.25, atol=1e-6)


def test_field(tmp_path, capsys, k4_edges):
    _run(capsys, ["field", "--input", str(k4_edges), "--K", "4",
                  "--source", "0", "--t", "1", "--output-dir", str(tmp_path)])
    f = json.loads((tmp_path / "field_s0_t1.json").read_text())
    assert f["values"] == pytest.approx([0, 1 / 3, 1 / 3, 1 / 3])


def test_error_certificate(tmp_path, capsys, k4_edges):
    out = _run(capsys, ["error", "--input", str(k4_edges), "--K", "4",
                        "--t", "3"])
    assert out["relative_error"] <= 1e-8
    assert out["converged"] is True


def test_oracle(tmp_path, capsys, k4_edges):
    out = _run(capsys, ["oracle", "--input", str(k4_edges),
                        "--what", "dense-power", "--source", "0", "--t", "2"])
    assert out["row"] == pytest.approx([1 / 3, 2 / 9, 2 / 9, 2 / 9])
    out = _run(capsys, ["oracle", "--input", str(k4_edges),
                        "--what", "walkers", "--source", "0", "--t", "0",
                        "--walkers", "10"])
    assert out["occupancy"] == [1.0, 0, 0, 0]


def test_report(tmp_path, capsys, k4_edges):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"input": str(k4_edges), "k": 2}))
    out = _run(capsys, ["report", "--config", str(cfg),
                        "--output-dir", str(tmp_path / "bundle"),
                        "--format", "json"])
    report = json.loads((tmp_path / "bundle" / "report.json").read_text())
    assert report["n"] == 4
    assert "k2" in report["features"]


def test_entry_point_installed():
    import subprocess
    proc = subprocess.run(["datlas", "--help"], capture_output=True, text=True)
    assert proc.returncode == 0
    for cmd in ("generate", "decompose", "communities", "features",
                "centrality", "field", "error", "oracle", "report", "serve"):
        assert cmd in proc.stdout

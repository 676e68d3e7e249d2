"""End-to-end analysis pipeline and bundle persistence.

A bundle directory holds everything derived from one graph: the canonical
edge list, optional coordinates, the cached spectral basis, partitions,
features, centralities, and a config echo.  Every artifact records the
graph fingerprint; stages are skipped when outputs with a matching
fingerprint already exist (unless forced).
"""
from __future__ import annotations

import json
import logging
import os
import time
from pathlib import Path

import numpy as np

from . import __version__
from .centrality import (betweenness, closeness, eigenvector_centrality,
                         gmfpt, max_remoteness)
from .communities import (community_features, kmeans_diffusion, time_grid)
from .diffusion import embed
from .generators import generate
from .graph import (SparseGraph, build_graph, largest_connected_component,
                    load_coords, load_edge_list, save_coords, save_edge_list)
from .spectral import (build_basis, load_basis, relaxation_time, save_basis)

logger = logging.getLogger(__name__)

DEFAULTS = {
    "K": None,              # min(n, 2000) at build time
    "tol": 1e-10,
    "k": None,              # 4 for n < 1e4 else 100
    "seed": 0,
    "restarts": 8,
    "grid_points": 50,
}


class PipelineError(RuntimeError):
    pass


def materialize_config(config: dict) -> dict:
    cfg = dict(DEFAULTS)
    cfg.update(config)
    if "input" not in cfg and "generator" not in cfg:
        raise PipelineError("config needs an 'input' edge list or a 'generator'")
    return cfg


def default_k(n):
    return 4 if n < 10_000 else 100


def cache_dir(output_dir) -> Path:
    env = os.environ.get("DATLAS_CACHE_DIR")
    d = Path(env) if env else Path(output_dir) / "cache"
    d.mkdir(parents=True, exist_ok=True)
    return d


def load_input_graph(cfg) -> SparseGraph:
    if "generator" in cfg:
        gen = dict(cfg["generator"])
        family = gen.pop("family")
        seed = gen.pop("seed", cfg["seed"])
        return generate(family, seed=seed, **gen)
    path = cfg["input"]
    if not Path(path).exists():
        raise PipelineError(f"input file not found: {path}")
    edges = load_edge_list(path)
    coords = None
    cpath = cfg.get("coords")
    if cpath:
        if not Path(cpath).exists():
            raise PipelineError(f"coordinates file not found: {cpath}")
        coords = load_coords(cpath)
    return build_graph(edges, coords=coords)


def run_pipeline(config: dict, output_dir, force=False) -> Path:
    """Run load/generate -> largest component -> basis -> tau -> embed ->
    k-means -> features -> summary; write the bundle directory.

    Idempotent given seed; stages with fingerprint-matching cached outputs
    are skipped unless ``force``.
    """
    cfg = materialize_config(config)
    out = Path(output_dir)
    out.mkdir(parents=True, exist_ok=True)

    stage = "load"
    try:
        g0 = load_input_graph(cfg)
        stage = "largest_component"
        g, _ = largest_connected_component(g0)
        fp = g.fingerprint()
        save_edge_list(g, out / "graph.edges")
        if g.coords is not None:
            save_coords(g, out / "graph.coords")

        stage = "build_basis"
        K = cfg["K"] or min(g.n, 2000)
        basis_path = cache_dir(out) / f"{fp[:16]}_K{K}.datl"
        basis = None
        if basis_path.exists() and not force:
            try:
                basis = load_basis(basis_path, g)
                logger.info("basis cache hit: %s", basis_path)
            except Exception:
                basis = None
        if basis is None:
            basis = build_basis(g, K=K, tol=cfg["tol"])
            save_basis(basis, basis_path)

        stage = "relaxation_time"
        tau, tau_ceil = relaxation_time(basis)

        stage = "embed"
        emb = embed(basis, tau_ceil)

        stage = "kmeans"
        k = cfg["k"] or default_k(g.n)
        part = kmeans_diffusion(emb, k, seed=cfg["seed"],
                                restarts=cfg["restarts"])

        stage = "features"
        grid = time_grid(tau_ceil, cfg["grid_points"])
        feats = community_features(g, basis, part, grid)

        stage = "write_bundle"
        bundle = {
            "fingerprint": fp,
            "n": g.n, "m": g.m,
            "K": basis.K, "tol": cfg["tol"],
            "tau": tau, "tau_ceil": tau_ceil,
            "nodes_dropped": g.build_info.get("nodes_dropped", 0),
            "partitions": {f"k{k}_seed{cfg['seed']}": json.loads(part.to_json())},
            "features": {f"k{k}": json.loads(feats.to_json())},
            "centralities": {},
            "provenance": {
                "tool_version": __version__,
                "config_echo": cfg,
                "timestamp": time.strftime("%Y-%m-%dT%H:%M:%S"),
            },
        }
        with open(out / "bundle.json", "w") as f:
            json.dump(bundle, f, indent=1)
    except Exception as exc:
        raise PipelineError(f"pipeline stage '{stage}' failed: {exc}") from exc
    return out


CENTRALITY_FUNCS = {
    "betweenness": betweenness,
    "closeness": closeness,
    "max_remoteness": max_remoteness,
    "eigenvector": eigenvector_centrality,
}


def compute_centrality(g: SparseGraph, measure: str, basis=None):
    if measure == "gmfpt":
        return gmfpt(g=g, basis=basis)
    if measure not in CENTRALITY_FUNCS:
        raise PipelineError(f"unknown centrality measure {measure!r}")
    return CENTRALITY_FUNCS[measure](g)


def load_bundle(bundle_dir):
    """Read back a bundle directory: (graph, basis, bundle dict)."""
    out = Path(bundle_dir)
    with open(out / "bundle.json") as f:
        bundle = json.load(f)
    edges = load_edge_list(out / "graph.edges")
    coords = None
    if (out / "graph.coords").exists():
        coords = load_coords(out / "graph.coords")
    g = build_graph(edges, coords=coords)
    if g.fingerprint() != bundle["fingerprint"]:
        raise PipelineError("bundle fingerprint mismatch")
    basis_path = cache_dir(out) / f"{bundle['fingerprint'][:16]}_K{bundle['K']}.datl"
    basis = load_basis(basis_path, g)
    return g, basis, bundle


# fixed CSV column order for feature reports
CSV_COLUMNS = ["community", "size", "volume", "mean_degree", "cheeger",
               "p_in_limit", "p_out_limit"]


def export_report(bundle_dir, fmt="json"):
    """Write feature tables and the summary from a bundle; returns paths.

    Reports are deterministic: provenance timestamps are excluded.
    """
    out = Path(bundle_dir)
    with open(out / "bundle.json") as f:
        bundle = json.load(f)
    paths = []
    if fmt == "json":
        path = out / "report.json"
        report = {"fingerprint": bundle["fingerprint"],
                  "n": bundle["n"], "m": bundle["m"], "tau": bundle["tau"],
                  "features": bundle.get("features", {})}
        with open(path, "w") as f:
            json.dump(report, f, indent=1, sort_keys=True)
        paths.append(path)
    elif fmt == "csv":
        for name, feats in bundle.get("features", {}).items():
            path = out / f"report_{name}.csv"
            with open(path, "w") as f:
                f.write(",".join(CSV_COLUMNS) + ",summary_max_sd_p_in\n")
                for rec in feats["communities"]:
                    row = [str(rec[c]) for c in CSV_COLUMNS]
                    f.write(",".join(row) +
                            f",{feats['summary']['max_sd_p_in']}\n")
            paths.append(path)
        if not bundle.get("features"):
            path = out / "report_summary.csv"
            with open(path, "w") as f:
                f.write("fingerprint,n,m,tau\n")
                f.write(f"{bundle['fingerprint']},{bundle['n']},"
                        f"{bundle['m']},{bundle['tau']}\n")
            paths.append(path)
    else:
        raise PipelineError(f"unknown report format {fmt!r}")
    return paths

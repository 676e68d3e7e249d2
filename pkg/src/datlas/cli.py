"""Command-line pipeline: generate, decompose, analyze, serve."""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

import numpy as np

from .communities import community_features, kmeans_diffusion, time_grid
from .diffusion import embed
from .generators import generate
from .graph import (build_graph, largest_connected_component, load_coords,
                    load_edge_list, save_coords, save_edge_list)
from .oracle import dense_chain, dense_power, simulate_walkers
from .pipeline import compute_centrality, export_report, load_bundle, run_pipeline
from .spectral import (build_basis, estimate_truncation_error, load_basis,
                       propagate, relaxation_time, save_basis)


def _load_graph(args):
    edges = load_edge_list(args.input)
    coords = load_coords(args.coords) if getattr(args, "coords", None) else None
    g = build_graph(edges, coords=coords)
    g, _ = largest_connected_component(g)
    return g


def _out(args):
    out = Path(args.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_generate(args):
    params = json.loads(args.params) if args.params else {}
    g = generate(args.family, seed=args.seed, **params)
    out = _out(args)
    save_edge_list(g, out / f"{args.family}.edges")
    if g.coords is not None:
        save_coords(g, out / f"{args.family}.coords")
    echo = {"family": args.family, "seed": args.seed, **params,
            "n": g.n, "m": g.m}
    with open(out / f"{args.family}.config.json", "w") as f:
        json.dump(echo, f, indent=1)
    print(json.dumps(echo))


def cmd_decompose(args):
    g = _load_graph(args)
    basis = build_basis(g, K=args.K)
    out = _out(args)
    path = out / "basis.datl"
    save_basis(basis, path)
    tau, tau_ceil = relaxation_time(basis)
    print(json.dumps({"n": g.n, "m": g.m, "K": basis.K,
                      "tau": tau, "tau_ceil": tau_ceil,
                      "basis": str(path)}))


def cmd_communities(args):
    g = _load_graph(args)
    basis = _basis_for(args, g)
    _, tau_ceil = relaxation_time(basis)
    emb = embed(basis, args.t if args.t is not None else tau_ceil)
    part = kmeans_diffusion(emb, args.k, seed=args.seed)
    out = _out(args)
    path = out / f"partition_k{args.k}.json"
    path.write_text(part.to_json())
    print(json.dumps({"k": args.k, "t_ref": part.t_ref,
                      "inertia": part.inertia, "partition": str(path)}))


def cmd_features(args):
    g = _load_graph(args)
    basis = _basis_for(args, g)
    _, tau_ceil = relaxation_time(basis)
    emb = embed(basis, tau_ceil)
    part = kmeans_diffusion(emb, args.k, seed=args.seed)
    feats = community_features(g, basis, part, time_grid(tau_ceil))
    out = _out(args)
    path = out / f"features_k{args.k}.json"
    path.write_text(feats.to_json())
    print(json.dumps({"k": args.k, "summary": feats.summary,
                      "features": str(path)}))


def cmd_centrality(args):
    g = _load_graph(args)
    basis = _basis_for(args, g) if args.measure == "gmfpt" else None
    scores = compute_centrality(g, args.measure, basis=basis)
    out = _out(args)
    path = out / f"centrality_{args.measure}.json"
    path.write_text(json.dumps(scores.to_json_dict()))
    print(json.dumps({"measure": args.measure, "output": str(path)}))


def cmd_field(args):
    g = _load_graph(args)
    basis = _basis_for(args, g)
    raw = propagate(basis, args.source, args.t)
    from .diffusion import make_field
    f = make_field(raw, args.t, args.source)
    out = _out(args)
    path = out / f"field_s{args.source}_t{args.t}.json"
    path.write_text(f.to_json())
    print(json.dumps({"source": args.source, "t": args.t, "output": str(path)}))


def cmd_error(args):
    g = _load_graph(args)
    basis = _basis_for(args, g)
    est, converged = estimate_truncation_error(g, basis, args.t)
    print(json.dumps({"t": args.t, "K": basis.K,
                      "relative_error": est, "converged": converged}))


def cmd_oracle(args):
    g = _load_graph(args)
    if args.what == "dense-power":
        chain = dense_chain(g)
        row = dense_power(chain, args.t)[args.source]
        print(json.dumps({"t": args.t, "source": args.source,
                          "row": row.tolist()}))
    elif args.what == "walkers":
        emp = simulate_walkers(g, args.source, args.t, args.walkers,
                               seed=args.seed)
        print(json.dumps({"t": args.t, "source": args.source,
                          "occupancy": emp.tolist()}))
    else:
        raise SystemExit(f"unknown oracle {args.what!r}")


def cmd_report(args):
    if args.config:
        with open(args.config) as f:
            config = json.load(f)
        run_pipeline(config, args.output_dir, force=args.force)
    paths = export_report(args.output_dir, fmt=args.format)
    print(json.dumps({"reports": [str(p) for p in paths]}))


def cmd_serve(args):
    from .service import serve
    serve(args.bundle, port=args.port)


def _basis_for(args, g):
    if getattr(args, "basis", None):
        return load_basis(args.basis, g)
    return build_basis(g, K=args.K)


def _add_graph_args(p, basis=True):
    p.add_argument("--input", required=True, help="edge-list file")
    p.add_argument("--coords", help="optional coordinates file")
    p.add_argument("--output-dir", default=".", help="output directory")
    if basis:
        p.add_argument("--K", type=int, default=None, help="truncation rank")
        p.add_argument("--basis", help="cached basis file (.datl)")


def main(argv=None):
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    ap = argparse.ArgumentParser(prog="datlas")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="generate a toy network family")
    p.add_argument("--family", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--params", help="JSON dict of family parameters")
    p.add_argument("--output-dir", default=".")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("decompose", help="truncated spectral decomposition")
    _add_graph_args(p)
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("communities", help="k-means diffusion communities")
    _add_graph_args(p)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t", type=int, default=None,
                   help="embedding time (default ceil(tau))")
    p.set_defaults(func=cmd_communities)

    p = sub.add_parser("features", help="per-community mixing features")
    _add_graph_args(p)
    p.add_argument("--k", type=int, default=4)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_features)

    p = sub.add_parser("centrality", help="centrality measures")
    _add_graph_args(p)
    p.add_argument("--measure", required=True,
                   choices=["betweenness", "closeness", "max_remoteness",
                            "eigenvector", "gmfpt"])
    p.set_defaults(func=cmd_centrality)

    p = sub.add_parser("field", help="probability field from a start node")
    _add_graph_args(p)
    p.add_argument("--source", type=int, required=True)
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_field)

    p = sub.add_parser("error", help="truncation error certificate")
    _add_graph_args(p)
    p.add_argument("--t", type=int, required=True)
    p.set_defaults(func=cmd_error)

    p = sub.add_parser("oracle", help="brute-force reference computations")
    _add_graph_args(p, basis=False)
    p.add_argument("--what", required=True, choices=["dense-power", "walkers"])
    p.add_argument("--source", type=int, default=0)
    p.add_argument("--t", type=int, default=1)
    p.add_argument("--walkers", type=int, default=100000)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("report", help="run the pipeline and export reports")
    p.add_argument("--config", help="pipeline config JSON")
    p.add_argument("--output-dir", required=True)
    p.add_argument("--format", default="json", choices=["json", "csv"])
    p.add_argument("--force", action="store_true")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("serve", help="HTTP field service over a bundle")
    p.add_argument("--bundle", required=True, help="bundle directory")
    p.add_argument("--port", type=int, default=8000)
    p.set_defaults(func=cmd_serve)

    args = ap.parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

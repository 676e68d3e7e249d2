"""Read-only HTTP API over a loaded analysis bundle.

One bundle per process.  All endpoints are pure reads of immutable state;
the only synchronized structure is a small LRU cache of computed fields.
"""
from __future__ import annotations

import json
import threading
from collections import OrderedDict

import numpy as np
from fastapi import FastAPI, Query, Response
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from .communities import community_features, kmeans_diffusion, time_grid
from .diffusion import aggregate_field, embed, probability_field
from .pipeline import compute_centrality, load_bundle

FIELD_CACHE_SIZE = 64
CENTRALITY_MEASURES = {"betweenness", "closeness", "max_remoteness",
                       "eigenvector", "gmfpt"}


class ServiceState:
    def __init__(self, bundle_dir=None, allow_compute=True):
        self.graph = None
        self.basis = None
        self.bundle = None
        self.allow_compute = allow_compute
        self._field_cache = OrderedDict()
        self._lock = threading.Lock()
        if bundle_dir is not None:
            self.load(bundle_dir)

    def load(self, bundle_dir):
        self.graph, self.basis, self.bundle = load_bundle(bundle_dir)

    @property
    def loaded(self):
        return self.bundle is not None

    def field(self, source, t):
        key = (source, t)
        with self._lock:
            if key in self._field_cache:
                self._field_cache.move_to_end(key)
                return self._field_cache[key]
        if source == "aggregate":
            f = aggregate_field(self.basis, t)
        else:
            f = probability_field(self.basis, source, t)
        with self._lock:
            self._field_cache[key] = f
            if len(self._field_cache) > FIELD_CACHE_SIZE:
                self._field_cache.popitem(last=False)
        return f


def create_app(bundle_dir=None, allow_compute=True) -> FastAPI:
    app = FastAPI(title="datlas field service")
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["GET"], allow_headers=["*"])
    state = ServiceState(bundle_dir, allow_compute=allow_compute)
    app.state.datlas = state

    def need_bundle():
        if not state.loaded:
            return JSONResponse({"detail": "no bundle loaded"}, status_code=503)
        return None

    @app.get("/api/summary")
    def summary():
        if (err := need_bundle()) is not None:
            return err
        g = state.graph
        hist = np.bincount(g.degrees).tolist()
        out = {"n": g.n, "m": g.m, "degree_histogram": hist,
               "tau": state.bundle["tau"], "K": state.bundle["K"],
               "fingerprint": state.bundle["fingerprint"]}
        gen = state.bundle["provenance"]["config_echo"].get("generator")
        if gen:
            out["families"] = [gen.get("family")]
        return out

    @app.get("/api/field")
    def field(source: str = Query(default="aggregate"),
              t: int = Query(...), top: int | None = Query(default=None)):
        if (err := need_bundle()) is not None:
            return err
        if t < 0:
            return JSONResponse({"detail": "t must be >= 0"}, status_code=400)
        if source != "aggregate":
            try:
                src = int(source)
            except ValueError:
                return JSONResponse({"detail": "source must be a node id or "
                                     "'aggregate'"}, status_code=400)
            if not 0 <= src < state.graph.n:
                return JSONResponse({"detail": f"unknown node {src}"},
                                    status_code=404)
            source = src
        f = state.field(source, t)
        if top is not None:
            if top < 1:
                return JSONResponse({"detail": "top must be >= 1"},
                                    status_code=400)
            idx = np.argsort(f.values)[::-1][:top]
            return {"t": t, "source": f.source,
                    "indices": idx.tolist(),
                    "values": f.values[idx].tolist(),
                    "mass_covered": float(f.values[idx].sum())}
        return json.loads(f.to_json())

    @app.get("/api/communities")
    def communities(k: int = Query(...), seed: int | None = Query(default=None)):
        if (err := need_bundle()) is not None:
            return err
        default_seed = state.bundle["provenance"]["config_echo"].get("seed", 0)
        seed = default_seed if seed is None else seed
        key = f"k{k}_seed{seed}"
        parts = state.bundle.setdefault("partitions", {})
        if key not in parts:
            if not state.allow_compute:
                return JSONResponse({"detail": f"partition {key} not in bundle"},
                                    status_code=404)
            emb = embed(state.basis, state.bundle["tau_ceil"])
            part = kmeans_diffusion(emb, k, seed=seed)
            parts[key] = json.loads(part.to_json())
        return parts[key]

    @app.get("/api/features")
    def features(k: int = Query(...)):
        if (err := need_bundle()) is not None:
            return err
        key = f"k{k}"
        feats = state.bundle.setdefault("features", {})
        if key not in feats:
            if not state.allow_compute:
                return JSONResponse({"detail": f"features {key} not in bundle"},
                                    status_code=404)
            seed = state.bundle["provenance"]["config_echo"].get("seed", 0)
            emb = embed(state.basis, state.bundle["tau_ceil"])
            part = kmeans_diffusion(emb, k, seed=seed)
            grid = time_grid(state.bundle["tau_ceil"])
            f = community_features(state.graph, state.basis, part, grid)
            feats[key] = json.loads(f.to_json())
        return feats[key]

    @app.get("/api/centrality")
    def centrality(measure: str = Query(...)):
        if (err := need_bundle()) is not None:
            return err
        if measure not in CENTRALITY_MEASURES:
            return JSONResponse({"detail": f"unknown measure {measure!r}"},
                                status_code=400)
        cents = state.bundle.setdefault("centralities", {})
        if measure not in cents:
            if not state.allow_compute:
                return JSONResponse({"detail": f"{measure} not in bundle"},
                                    status_code=404)
            scores = compute_centrality(state.graph, measure,
                                        basis=state.basis)
            cents[measure] = scores.to_json_dict()
        return cents[measure]

    @app.get("/api/coords")
    def coords():
        if (err := need_bundle()) is not None:
            return err
        if state.graph.coords is None:
            return Response(status_code=204)
        return {"coords": np.asarray(state.graph.coords).tolist()}

    return app


def serve(bundle_dir, port=8000, host="127.0.0.1"):
    import uvicorn
    uvicorn.run(create_app(bundle_dir), host=host, port=port)

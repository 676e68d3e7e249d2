"""End-to-end pipeline and the HTTP field service.

Runs the full analysis pipeline on a generated network, then queries the
resulting bundle through the HTTP API in-process.
"""
import json
import tempfile

from fastapi.testclient import TestClient

from datlas.pipeline import export_report, run_pipeline
from datlas.service import create_app

out = run_pipeline(
    {"generator": {"family": "voronoi3d_homogeneous", "grid_side": 7,
                   "seed": 0}, "k": 4},
    tempfile.mkdtemp())
bundle = json.loads((out / "bundle.json").read_text())
print(f"bundle: n={bundle['n']} m={bundle['m']} tau={bundle['tau']:.1f} "
      f"K={bundle['K']}")

export_report(out, fmt="json")
export_report(out, fmt="csv")
print("reports written:", sorted(p.name for p in out.glob("report*")))

client = TestClient(create_app(out))
print("GET /api/summary ->", client.get("/api/summary").json()["n"], "nodes")

field = client.get("/api/field?source=0&t=3&top=5").json()
print("GET /api/field top-5 ->", field["indices"],
      f"mass covered {field['mass_covered']:.3f}")

feats = client.get("/api/features?k=4").json()
print("GET /api/features k=4 -> communities",
      [c["size"] for c in feats["communities"]])

cent = client.get("/api/centrality?measure=closeness").json()
print("GET /api/centrality closeness -> max normalized",
      max(cent["normalized"]))

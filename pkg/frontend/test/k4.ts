/**
 * Mock fetch serving a complete-graph K4 analysis bundle, with an audit log
 * of every request URL.
 */
import type { FetchFn } from "../src/api.js";

export const K4_LABELS = [0, 1, 2, 3];

function json(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export function k4Fetch(): { fetchFn: FetchFn; audit: string[] } {
  const audit: string[] = [];
  const fetchFn: FetchFn = async (url) => {
    audit.push(url);
    const u = new URL(url);
    const q = u.searchParams;
    switch (u.pathname) {
      case "/api/summary":
        return json({
          n: 4,
          m: 6,
          degree_histogram: [0, 0, 0, 4],
          tau: 1.5,
          K: 4,
          fingerprint: "k4test",
        });
      case "/api/field": {
        const t = Number(q.get("t"));
        const source = q.get("source");
        if (source === "aggregate" || t >= 50) {
          return json({ t, source, values: [0.25, 0.25, 0.25, 0.25] });
        }
        const values = [0, 0, 0, 0];
        if (t === 0) values[Number(source)] = 1;
        else values.fill(0.25);
        return json({ t, source: Number(source), values });
      }
      case "/api/communities":
        return json({
          k: Number(q.get("k")),
          t_ref: 2,
          seed: 0,
          labels: K4_LABELS.slice(0, 4),
        });
      case "/api/features":
        return json({
          k: 4,
          times: [1, 2],
          communities: K4_LABELS.map((c) => ({
            community: c,
            size: 1,
            volume: 3,
            mean_degree: 3,
            cheeger: 2 / 3,
            p_in: [0, 0.25],
            p_out: [1 / 3, 0.25],
            p_in_limit: 0.25,
            p_out_limit: 0.25,
          })),
          summary: { max_sd_p_in: 0 },
        });
      case "/api/centrality":
        return json({
          measure: q.get("measure"),
          raw: [1, 1, 1, 1],
          normalized: [0, 0, 0, 0],
        });
      case "/api/coords":
        return new Response(null, { status: 204 });
      default:
        return json({ detail: "not found" }, 404);
    }
  };
  return { fetchFn, audit };
}

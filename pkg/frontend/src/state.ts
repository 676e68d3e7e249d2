/**
 * ViewState: the single piece of mutable UI state, URL-encodable so any
 * view can be reproduced by reloading the page.
 */

export type Overlay =
  | { kind: "field" }
  | { kind: "aggregate" }
  | { kind: "communities"; k: number }
  | { kind: "centrality"; measure: string };

export interface ColorScale {
  mode: "linear" | "log";
  range: "auto" | [number, number];
}

export interface Camera {
  x: number;
  y: number;
  zoom: number;
}

export interface ViewState {
  source: number | "aggregate";
  t: number;
  playbackRate: number; // time steps per second; 0 means paused
  overlay: Overlay;
  scale: ColorScale;
  camera: Camera;
}

export function defaultViewState(): ViewState {
  return {
    source: 0,
    t: 0,
    playbackRate: 0,
    overlay: { kind: "field" },
    scale: { mode: "linear", range: "auto" },
    camera: { x: 0, y: 0, zoom: 1 },
  };
}

function checkT(t: number): number {
  if (!Number.isInteger(t) || t < 0) {
    throw new Error(`t must be a nonnegative integer, got ${t}`);
  }
  return t;
}

/** Serialize to a URL query string (no leading "?"). */
export function encodeViewState(s: ViewState): string {
  const q = new URLSearchParams();
  q.set("source", String(s.source));
  q.set("t", String(checkT(s.t)));
  q.set("rate", String(s.playbackRate));
  q.set("overlay", s.overlay.kind);
  if (s.overlay.kind === "communities") q.set("k", String(s.overlay.k));
  if (s.overlay.kind === "centrality") q.set("measure", s.overlay.measure);
  q.set("scale", s.scale.mode);
  if (s.scale.range !== "auto") {
    q.set("lo", String(s.scale.range[0]));
    q.set("hi", String(s.scale.range[1]));
  }
  q.set("cam", `${s.camera.x},${s.camera.y},${s.camera.zoom}`);
  return q.toString();
}

/** Inverse of encodeViewState; unknown/missing params keep their defaults. */
export function decodeViewState(query: string): ViewState {
  const q = new URLSearchParams(query);
  const s = defaultViewState();

  const source = q.get("source");
  if (source === "aggregate") s.source = "aggregate";
  else if (source !== null && /^\d+$/.test(source)) s.source = Number(source);

  const t = Number(q.get("t"));
  if (Number.isInteger(t) && t >= 0) s.t = t;
  const rate = Number(q.get("rate"));
  if (Number.isFinite(rate) && rate >= 0) s.playbackRate = rate;

  switch (q.get("overlay")) {
    case "aggregate":
      s.overlay = { kind: "aggregate" };
      break;
    case "communities": {
      const k = Number(q.get("k"));
      if (Number.isInteger(k) && k >= 1) s.overlay = { kind: "communities", k };
      break;
    }
    case "centrality": {
      const measure = q.get("measure");
      if (measure) s.overlay = { kind: "centrality", measure };
      break;
    }
  }

  if (q.get("scale") === "log") s.scale.mode = "log";
  const lo = Number(q.get("lo"));
  const hi = Number(q.get("hi"));
  if (Number.isFinite(lo) && Number.isFinite(hi) && q.has("lo") && q.has("hi")) {
    s.scale.range = [lo, hi];
  }

  const cam = (q.get("cam") ?? "").split(",").map(Number);
  if (cam.length === 3 && cam.every(Number.isFinite) && cam[2] > 0) {
    s.camera = { x: cam[0], y: cam[1], zoom: cam[2] };
  }
  return s;
}

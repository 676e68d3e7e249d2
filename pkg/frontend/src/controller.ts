/**
 * Headless explorer controller: owns the ViewState, talks to the API, and
 * exposes the current node coloring and side-panel data for the renderer.
 *
 * Every quantity on screen is fetched; the controller only maps values to
 * colors.  Stale field responses (superseded by a newer request) are
 * dropped via the Api's single-in-flight cancellation.
 */
import { Api, type Features, type Summary } from "./api.js";
import {
  colorCentrality,
  colorCommunities,
  colorField,
  type NodeColoring,
} from "./render.js";
import {
  decodeViewState,
  encodeViewState,
  type Overlay,
  type ViewState,
} from "./state.js";

export class Explorer {
  state: ViewState;
  summary: Summary | null = null;
  coloring: NodeColoring = { colors: [] };
  features: Features | null = null;
  /** set after a failed fetch; playback pauses until retry() */
  retryBanner: string | null = null;

  constructor(
    private api: Api,
    initial?: ViewState,
  ) {
    this.state = initial ?? decodeViewState("");
  }

  async load(): Promise<void> {
    this.summary = await this.api.summary();
    await this.refresh();
  }

  /** Re-fetch whatever the current overlay needs and recolor. */
  async refresh(): Promise<void> {
    try {
      this.coloring = await this.fetchColoring();
      this.retryBanner = null;
    } catch (err) {
      if ((err as Error).name === "AbortError") return; // superseded
      this.retryBanner = String((err as Error).message ?? err);
      this.state.playbackRate = 0;
    }
  }

  private async fetchColoring(): Promise<NodeColoring> {
    const n = this.summary?.n ?? 0;
    const o = this.state.overlay;
    switch (o.kind) {
      case "field": {
        const f = await this.api.field(this.state.source, this.state.t);
        return colorField(this.dense(f.values, f.indices, n), this.state.scale,
                          f.mass_covered);
      }
      case "aggregate": {
        const f = await this.api.field("aggregate", this.state.t);
        return colorField(this.dense(f.values, f.indices, n), this.state.scale,
                          f.mass_covered);
      }
      case "communities": {
        const part = await this.api.communities(o.k);
        return colorCommunities(part.labels);
      }
      case "centrality": {
        const c = await this.api.centrality(o.measure);
        return colorCentrality(c.normalized, this.state.scale);
      }
    }
  }

  private dense(values: number[] | undefined, indices: number[] | undefined,
                n: number): number[] {
    if (values !== undefined && indices === undefined) return values;
    const out = new Array<number>(n).fill(0);
    indices?.forEach((idx, j) => (out[idx] = values?.[j] ?? 0));
    return out;
  }

  async setSource(source: number | "aggregate"): Promise<void> {
    // switching source mid-playback keeps the current t
    this.state.source = source;
    await this.refresh();
  }

  async setT(t: number): Promise<void> {
    if (!Number.isInteger(t) || t < 0) {
      throw new Error(`t must be a nonnegative integer, got ${t}`);
    }
    this.state.t = t;
    await this.refresh();
  }

  async setOverlay(overlay: Overlay): Promise<void> {
    this.state.overlay = overlay;
    this.features = null;
    await this.refresh();
    if (overlay.kind === "communities") {
      try {
        this.features = await this.api.features(overlay.k);
      } catch {
        this.features = null; // panel shows a placeholder with a fetch hint
      }
    }
  }

  async retry(): Promise<void> {
    await this.refresh();
  }

  /** One playback step: advance t and fetch the new field. */
  async tick(): Promise<void> {
    if (this.state.playbackRate <= 0 || this.retryBanner !== null) return;
    await this.setT(this.state.t + 1);
  }

  urlQuery(): string {
    return encodeViewState(this.state);
  }
}

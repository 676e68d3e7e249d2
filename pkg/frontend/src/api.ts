/**
 * Typed client for the datlas field-service JSON API.
 *
 * All numbers shown in the UI come from these endpoints; the client never
 * derives quantities itself.  Field requests are cancelable and at most one
 * is in flight at a time.
 */

export const API_BASE_URL: string =
  (typeof process !== "undefined" && process.env?.DATLAS_API_URL) ||
  "http://127.0.0.1:8000";

export interface Summary {
  n: number;
  m: number;
  degree_histogram: number[];
  tau: number;
  K: number;
  fingerprint: string;
  families?: string[];
}

export interface Field {
  t: number;
  source: number | "aggregate";
  values?: number[];       // dense form
  indices?: number[];      // sparsified (top-k) form
  mass_covered?: number;
}

export interface Partition {
  k: number;
  t_ref: number;
  seed: number;
  labels: number[];
}

export interface CommunityRow {
  community: number;
  size: number;
  volume: number;
  mean_degree: number;
  cheeger: number;
  p_in: number[];
  p_out: number[];
  p_in_limit: number;
  p_out_limit: number;
}

export interface Features {
  k: number;
  times: number[];
  communities: CommunityRow[];
  summary: Record<string, number>;
}

export interface Centrality {
  measure: string;
  raw: number[];
  normalized: number[];
}

export type FetchFn = (url: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

export class Api {
  private inflightField: AbortController | null = null;

  constructor(
    private baseUrl: string = API_BASE_URL,
    private fetchFn: FetchFn = (...a) => globalThis.fetch(...a),
  ) {}

  private async get<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(this.baseUrl + path, init);
    if (!resp.ok) {
      let detail = resp.statusText;
      try {
        detail = (await resp.json()).detail ?? detail;
      } catch {
        /* non-JSON error body */
      }
      throw new ApiError(resp.status, detail);
    }
    if (resp.status === 204) return null as T;
    return (await resp.json()) as T;
  }

  summary(): Promise<Summary> {
    return this.get("/api/summary");
  }

  /** Cancels any previous still-running field request. */
  field(source: number | "aggregate", t: number, top?: number): Promise<Field> {
    this.inflightField?.abort();
    const ctl = new AbortController();
    this.inflightField = ctl;
    const topQ = top === undefined ? "" : `&top=${top}`;
    return this.get<Field>(`/api/field?source=${source}&t=${t}${topQ}`, {
      signal: ctl.signal,
    }).finally(() => {
      if (this.inflightField === ctl) this.inflightField = null;
    });
  }

  communities(k: number, seed?: number): Promise<Partition> {
    const seedQ = seed === undefined ? "" : `&seed=${seed}`;
    return this.get(`/api/communities?k=${k}${seedQ}`);
  }

  features(k: number): Promise<Features> {
    return this.get(`/api/features?k=${k}`);
  }

  centrality(measure: string): Promise<Centrality> {
    return this.get(`/api/centrality?measure=${measure}`);
  }

  /** Resolves to null when the bundle carries no coordinates (HTTP 204). */
  coords(): Promise<{ coords: number[][] } | null> {
    return this.get("/api/coords");
  }
}

// Typed client for the analysis service. The client renders what the
// API returns and computes no spectroscopy math of its own.

export type Mode = "standard" | "multi";

export interface SessionSummary {
  id: string;
  mode: Mode;
  records: number;
  references: number;
}

export interface SpectrogramRow {
  year: number;
  count: number;
  deviation: number;
}

export interface Spectrogram {
  range: { from: number; to: number };
  rows: SpectrogramRow[];
}

export interface HeatmapCell {
  cpy: number;
  rpy: number;
  count: number;
  deviation: number;
  rank: number;
}

export interface Heatmap {
  range: { from: number; to: number };
  cpys: number[];
  rows: HeatmapCell[];
}

export interface TableRow {
  author: string;
  rpy: string;
  source: string;
  times: number;
  cpy: string | null;
  link: { kind: "doi" | "scholar"; url: string };
}

export interface TableResult {
  total_matches: number;
  rows: TableRow[];
}

export interface TableQuery {
  q?: string;
  sort?: string;
  dir?: "asc" | "desc";
  limit?: number;
}

export class ApiError extends Error {
  constructor(public status: number, public errorCode: string, detail: string) {
    super(detail);
  }
}

async function errorFrom(resp: Response): Promise<ApiError> {
  let code = "error";
  let detail = resp.statusText;
  try {
    const body = await resp.json();
    code = body.error ?? code;
    detail = typeof body.detail === "string" ? body.detail : JSON.stringify(body.detail);
  } catch {
    // non-JSON error body; keep the status text
  }
  return new ApiError(resp.status, code, detail);
}

export function tableUrl(base: string, sessionId: string, query: TableQuery): string {
  const params = new URLSearchParams();
  if (query.q) params.set("q", query.q);
  if (query.sort) params.set("sort", query.sort);
  if (query.dir) params.set("dir", query.dir);
  if (query.limit !== undefined) params.set("limit", String(query.limit));
  const qs = params.toString();
  return `${base}/api/sessions/${sessionId}/table${qs ? "?" + qs : ""}`;
}

export class ApiClient {
  // at most one table query in flight: a newer keystroke aborts the older
  private tableAbort: AbortController | null = null;

  constructor(
    private base: string = "",
    private fetchFn: typeof fetch = fetch.bind(globalThis),
  ) {}

  private async getJson<T>(url: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchFn(url, init);
    if (!resp.ok) throw await errorFrom(resp);
    return (await resp.json()) as T;
  }

  async createSession(file: File | Blob, mode: Mode): Promise<SessionSummary> {
    const body = new FormData();
    body.append("file", file);
    const resp = await this.fetchFn(`${this.base}/api/sessions?mode=${mode}`, {
      method: "POST",
      body,
    });
    if (!resp.ok) throw await errorFrom(resp);
    return (await resp.json()) as SessionSummary;
  }

  spectrogram(sessionId: string): Promise<Spectrogram> {
    return this.getJson(`${this.base}/api/sessions/${sessionId}/spectrogram`);
  }

  heatmap(sessionId: string): Promise<Heatmap> {
    return this.getJson(`${this.base}/api/sessions/${sessionId}/heatmap`);
  }

  /** Query the table; any still-pending previous query is aborted so
   * responses can never render out of order. Returns null when this
   * call was itself superseded. */
  async table(sessionId: string, query: TableQuery): Promise<TableResult | null> {
    this.tableAbort?.abort();
    const abort = new AbortController();
    this.tableAbort = abort;
    try {
      return await this.getJson<TableResult>(
        tableUrl(this.base, sessionId, query),
        { signal: abort.signal },
      );
    } catch (err) {
      if (abort.signal.aborted) return null;
      throw err;
    } finally {
      if (this.tableAbort === abort) this.tableAbort = null;
    }
  }

  async deleteSession(sessionId: string): Promise<void> {
    await this.fetchFn(`${this.base}/api/sessions/${sessionId}`, { method: "DELETE" });
  }
}

/** Typed client for the session service.
 *
 * Every read returns the parsed body together with the exact response text;
 * the console renders only from these traced payloads and never computes
 * scores, indices or allocations on its own.
 */
import type {
  AllocationDoc, AppraisalChange, Group, RankingDoc, ScriPoint, ScriSweepRow,
  SessionCreated, SessionSummary, Traced, WeightChange,
} from "./types.js";

export class ApiError extends Error {
  constructor(public status: number, public body: string) {
    super(`service responded ${status}: ${body.slice(0, 200)}`);
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class Client {
  constructor(
    private baseUrl: string,
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<string> {
    const resp = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    const text = await resp.text();
    if (!resp.ok) {
      throw new ApiError(resp.status, text);
    }
    return text;
  }

  private async get<T>(path: string, signal?: AbortSignal): Promise<Traced<T>> {
    const raw = await this.request(path, { signal });
    return { value: JSON.parse(raw) as T, raw };
  }

  private async send<T>(method: string, path: string, body: unknown,
                        etag?: string): Promise<Traced<T>> {
    const headers: Record<string, string> = { "content-type": "application/json" };
    if (etag) {
      headers["If-Match"] = etag;
    }
    const raw = await this.request(path, {
      method,
      headers,
      body: JSON.stringify(body),
    });
    return { value: JSON.parse(raw) as T, raw };
  }

  createSession(document: unknown): Promise<Traced<SessionCreated>> {
    return this.send("POST", "/sessions", document);
  }

  summary(id: string): Promise<Traced<SessionSummary>> {
    return this.get(`/sessions/${id}`);
  }

  ranking(id: string, group: Group = "all"): Promise<Traced<RankingDoc>> {
    return this.get(`/sessions/${id}/ranking?group=${group}`);
  }

  scri(id: string, alpha: number, signal?: AbortSignal): Promise<Traced<ScriPoint>> {
    return this.get(`/sessions/${id}/scri?alpha=${alpha}`, signal);
  }

  scriSweep(id: string, step = 0.1): Promise<Traced<ScriSweepRow[]>> {
    return this.get(`/sessions/${id}/scri/sweep?step=${step}`);
  }

  allocation(id: string, tvp?: number, signal?: AbortSignal): Promise<Traced<AllocationDoc>> {
    const query = tvp === undefined ? "" : `?tvp=${tvp}`;
    return this.get(`/sessions/${id}/allocation${query}`, signal);
  }

  patchAppraisals(id: string, changes: AppraisalChange[],
                  etag: string): Promise<Traced<SessionCreated>> {
    return this.send("PATCH", `/sessions/${id}/appraisals`, { changes }, etag);
  }

  patchWeights(id: string, changes: WeightChange[],
               etag: string): Promise<Traced<SessionCreated>> {
    return this.send("PATCH", `/sessions/${id}/weights`, { changes }, etag);
  }

  patchMcgp(id: string, fields: Record<string, unknown>,
            etag: string): Promise<Traced<SessionCreated>> {
    return this.send("PATCH", `/sessions/${id}/mcgp`, fields, etag);
  }
}

/** Base URL comes from the page environment (one knob, no routing). */
export function baseUrlFromEnvironment(): string {
  const w = globalThis as { FUZZYDSS_BASE_URL?: string };
  return w.FUZZYDSS_BASE_URL ?? "http://127.0.0.1:8000";
}

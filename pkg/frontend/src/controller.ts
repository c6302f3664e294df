/** Console state and interaction logic, kept free of DOM so it can be
 * driven directly in tests.
 *
 * Grid edits are staged locally and only reach the service on commit;
 * slider moves are read-only what-ifs (plain GETs) and cancel any
 * in-flight request they supersede.  Every artifact on display carries the
 * etag it was computed under.
 */
import { ApiError, Client } from "./api.js";
import type {
  AllocationDoc, AppraisalChange, RankingDoc, ScriPoint, ScriSweepRow, Traced,
  WeightChange,
} from "./types.js";

export interface CellError {
  key: string;
  message: string;
}

export interface ConsoleState {
  sessionId: string;
  etag: string;
  stagedAppraisals: Map<string, AppraisalChange>;
  stagedWeights: Map<string, WeightChange>;
  ranking: Traced<RankingDoc> | null;
  scri: Traced<ScriPoint> | null;
  scriSweep: Traced<ScriSweepRow[]> | null;
  allocation: Traced<AllocationDoc> | null;
  alpha: number;
  tvp: number | undefined;
  stale: boolean;            // staged edits not yet committed
  reloadRequired: boolean;   // concurrent edit detected (409)
  cellErrors: CellError[];
  lastError: string | null;
}

export const appraisalKey = (c: AppraisalChange) =>
  `${c.supplier}|${c.attribute}|${c.dm}`;
export const weightKey = (c: WeightChange) => `${c.attribute}|${c.dm}`;

export class ConsoleController {
  readonly state: ConsoleState;
  private inflight: { scri?: AbortController; allocation?: AbortController } = {};

  constructor(private api: Client, sessionId: string, etag: string,
              private onChange: (state: ConsoleState) => void = () => {}) {
    this.state = {
      sessionId,
      etag,
      stagedAppraisals: new Map(),
      stagedWeights: new Map(),
      ranking: null,
      scri: null,
      scriSweep: null,
      allocation: null,
      alpha: 0.5,
      tvp: undefined,
      stale: false,
      reloadRequired: false,
      cellErrors: [],
      lastError: null,
    };
  }

  private notify() {
    this.onChange(this.state);
  }

  /** Fetch the artifacts the page shows on load. */
  async refresh(): Promise<void> {
    this.state.ranking = await this.api.ranking(this.state.sessionId);
    this.state.scriSweep = await this.api.scriSweep(this.state.sessionId);
    this.state.scri = await this.api.scri(this.state.sessionId, this.state.alpha);
    this.state.allocation = await this.api.allocation(this.state.sessionId, this.state.tvp);
    this.state.stale = false;
    this.notify();
  }

  /** Stage one appraisal cell; nothing is sent until commit. */
  stageAppraisal(change: AppraisalChange): void {
    this.state.stagedAppraisals.set(appraisalKey(change), change);
    this.state.stale = true;
    this.state.cellErrors = this.state.cellErrors.filter(
      (e) => e.key !== appraisalKey(change));
    this.notify();
  }

  stageWeight(change: WeightChange): void {
    this.state.stagedWeights.set(weightKey(change), change);
    this.state.stale = true;
    this.notify();
  }

  /** Push staged edits; on success the artifacts are refetched under the
   * new etag.  422 messages land on the offending cell, 409 flips the
   * reload flag instead of clobbering someone else's edit. */
  async commit(): Promise<boolean> {
    const appraisals = [...this.state.stagedAppraisals.values()];
    const weights = [...this.state.stagedWeights.values()];
    try {
      if (appraisals.length > 0) {
        const created = await this.api.patchAppraisals(
          this.state.sessionId, appraisals, this.state.etag);
        this.state.etag = created.value.etag;
      }
      if (weights.length > 0) {
        const created = await this.api.patchWeights(
          this.state.sessionId, weights, this.state.etag);
        this.state.etag = created.value.etag;
      }
    } catch (err) {
      if (err instanceof ApiError && err.status === 409) {
        this.state.reloadRequired = true;
        this.state.lastError = "session changed elsewhere; reload before editing";
      } else if (err instanceof ApiError && err.status === 422) {
        const key = appraisals.length === 1 ? appraisalKey(appraisals[0]!) : "";
        this.state.cellErrors.push({ key, message: err.body });
        this.state.lastError = err.body;
      } else {
        this.state.lastError = String(err);
      }
      this.notify();
      return false;
    }
    this.state.stagedAppraisals.clear();
    this.state.stagedWeights.clear();
    this.state.cellErrors = [];
    this.state.lastError = null;
    await this.refresh();
    return true;
  }

  /** Read-only what-if: the session etag must come back unchanged. */
  async setAlpha(alpha: number): Promise<void> {
    this.state.alpha = alpha;
    this.inflight.scri?.abort();
    const controller = new AbortController();
    this.inflight.scri = controller;
    try {
      const point = await this.api.scri(this.state.sessionId, alpha, controller.signal);
      if (this.inflight.scri === controller) {
        this.state.scri = point;
        this.notify();
      }
    } catch (err) {
      if (!controller.signal.aborted) {
        this.state.lastError = String(err);
        this.notify();
      }
    }
  }

  async setTvp(tvp: number): Promise<void> {
    this.state.tvp = tvp;
    this.inflight.allocation?.abort();
    const controller = new AbortController();
    this.inflight.allocation = controller;
    try {
      const plan = await this.api.allocation(this.state.sessionId, tvp, controller.signal);
      if (this.inflight.allocation === controller) {
        this.state.allocation = plan;
        this.notify();
      }
    } catch (err) {
      if (!controller.signal.aborted) {
        this.state.lastError = String(err);
        this.notify();
      }
    }
  }
}

/** Alpha values where the sweep's argmax supplier changes hands, marked on
 * the trade-off chart.  Derived from service rows only. */
export function crossoverAlphas(rows: ScriSweepRow[]): number[] {
  const byAlpha = new Map<number, string>();
  for (const row of rows) {
    if (row.is_argmax) {
      byAlpha.set(row.alpha, row.supplier);
    }
  }
  const alphas = [...byAlpha.keys()].sort((a, b) => a - b);
  const out: number[] = [];
  for (let i = 1; i < alphas.length; i += 1) {
    if (byAlpha.get(alphas[i]!) !== byAlpha.get(alphas[i - 1]!)) {
      out.push(alphas[i]!);
    }
  }
  return out;
}

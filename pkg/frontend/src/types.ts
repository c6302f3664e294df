/** Wire types mirroring the service responses. */

export interface SupplierScore {
  supplier: string;
  d_plus: number;
  d_minus: number;
  closeness: number;
  rank: number;
}

export interface RankingDoc {
  variant: string;
  pis: Record<string, number>;
  nis: Record<string, number>;
  scores: SupplierScore[];
  normalized_closeness: number[];
}

export interface ScriPoint {
  alpha: number;
  scri: Record<string, number>;
  argmax: string;
  etag: string;
}

export interface ScriSweepRow {
  alpha: number;
  supplier: string;
  scri: number;
  is_argmax: boolean;
}

export interface AllocationDoc {
  mode: string;
  solver_status: string;
  objective: number;
  quantities: Record<string, number>;
  achieved: Record<string, number>;
  deviations: Record<string, number>;
  converged: boolean;
  coefficients: Record<string, number>;
  goals: Record<string, number>;
  oracle_total?: number;
  reference_plan?: { quantities: number[]; oracle_total: number };
}

export interface SessionCreated {
  id: string;
  etag: string;
  artifact_hash: string;
}

export interface SessionSummary extends SessionCreated {
  name: string;
  stage_hashes: Record<string, string>;
}

export interface AppraisalChange {
  supplier: string;
  attribute: string;
  dm: string;
  term: string;
}

export interface WeightChange {
  attribute: string;
  dm: string;
  term: string;
}

export type Group = "all" | "resilience" | "cost";

/** A service response together with its exact body bytes, so callers can
 * prove everything rendered derives from the wire payload. */
export interface Traced<T> {
  value: T;
  raw: string;
}

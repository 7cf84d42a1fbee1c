/**
 * Wire types for the goalrank service API.
 *
 * These mirror the service's JSON responses exactly; every score arrives
 * pre-formatted (exact rationals as strings like "24" or "64/3") and is
 * displayed verbatim — the workbench never computes scores itself.
 */

export type Severity = 'error' | 'warning';

/** One validation finding, optionally anchored to a file position. */
export interface Diagnostic {
  rule: string;
  message: string;
  severity: Severity;
  file?: string;
  line?: number;
  column?: number;
}

/** A context element and its finite value domain (drives one dropdown). */
export interface SchemaElement {
  name: string;
  values: string[];
}

/** A concrete situation: one value per schema element. */
export type SituationValues = Record<string, string>;

/** One ranked solution with its score breakdown. */
export interface RankedSolution {
  tasks: string[];
  perSoftgoal: Record<string, string>;
  perHardgoal: Record<string, number>;
  sps: string;
  hps: number;
  psd: string;
  /** [numerator, denominator] for clients that want machine arithmetic. */
  psdExact: [number, number];
}

/** The ranking body shared by rank and compare responses. */
export interface RankingBody {
  mode: string;
  situation: SituationValues;
  relevant: string[];
  solutions: RankedSolution[];
}

/** POST /workspaces/{id}/rank response. */
export interface RankingReport extends RankingBody {
  version: number;
}

/** Per-solution pairing of the two compared rankings. */
export interface CompareDelta {
  tasks: string[];
  psdLeft: string;
  psdRight: string;
  delta: string;
  rankLeft: number;
  rankRight: number;
}

/** POST /workspaces/{id}/compare response. */
export interface CompareReport {
  version: number;
  left: RankingBody;
  right: RankingBody;
  deltas: CompareDelta[];
}

/** GET /workspaces entry. */
export interface WorkspaceInfo {
  id: string;
  version: number;
  root: string;
}

/** POST /workspaces response. */
export interface CreateWorkspaceResult {
  id: string;
  version: number;
  diagnostics: Diagnostic[];
}

/** GET /workspaces/{id}/schema response. */
export interface SchemaResponse {
  version: number;
  elements: SchemaElement[];
}

/** GET /workspaces/{id}/catalogue response. */
export interface CatalogueState {
  version: number;
  catalogue: string;
}

/** PUT /workspaces/{id}/catalogue response. */
export interface CatalogueUpdateResult {
  version: number;
  diagnostics: Diagnostic[];
}

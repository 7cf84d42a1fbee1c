/**
 * Pure view-model layer: turns service responses into the exact rows and
 * labels the panels display. No DOM access and no arithmetic on scores —
 * every number shown is a string taken verbatim from the service (signs
 * are read off the string, never recomputed).
 */

import type {
  CompareDelta,
  CompareReport,
  Diagnostic,
  RankedSolution,
  RankingBody,
  SchemaElement,
  SituationValues,
} from './types.js';

/** One entry of an expandable per-softgoal / per-hardgoal breakdown. */
export interface BreakdownEntry {
  id: string;
  score: string;
}

/** One row of the ranking table. */
export interface RankRow {
  rank: number;
  tasks: string;
  sps: string;
  hps: string;
  psd: string;
  softgoals: BreakdownEntry[];
  hardgoals: BreakdownEntry[];
}

export type Movement = 'up' | 'down' | 'same';

/** One row of the comparison table. */
export interface CompareRow {
  tasks: string;
  psdLeft: string;
  psdRight: string;
  delta: string;
  rankLeft: number;
  rankRight: number;
  movement: Movement;
}

/** One formatted line of the diagnostics list. */
export interface DiagnosticLine {
  severity: 'error' | 'warning';
  line?: number;
  text: string;
}

/** Initial situation for a freshly loaded schema: first value of each element. */
export function defaultSituation(elements: SchemaElement[]): SituationValues {
  const situation: SituationValues = {};
  for (const element of elements) situation[element.name] = element.values[0];
  return situation;
}

/** "patient_illness=dementia, weather=good" — stable order of the schema. */
export function situationLabel(
  elements: SchemaElement[],
  situation: SituationValues
): string {
  return elements.map((e) => `${e.name}=${situation[e.name]}`).join(', ');
}

export function taskLabel(tasks: string[]): string {
  return tasks.join(', ');
}

/** Prefix positive rationals with '+'; leave zero and negatives as sent. */
export function signed(value: string): string {
  if (value === '0' || value.startsWith('-')) return value;
  return `+${value}`;
}

function breakdown(scores: Record<string, string | number>, sign: boolean): BreakdownEntry[] {
  return Object.entries(scores).map(([id, score]) => ({
    id,
    score: sign ? signed(String(score)) : String(score),
  }));
}

/** Table rows in service order; ranks are positions, scores verbatim. */
export function rankingRows(report: RankingBody): RankRow[] {
  return report.solutions.map((sol: RankedSolution, i: number) => ({
    rank: i + 1,
    tasks: taskLabel(sol.tasks),
    sps: sol.sps,
    hps: String(sol.hps),
    psd: sol.psd,
    softgoals: breakdown(sol.perSoftgoal, true),
    hardgoals: breakdown(sol.perHardgoal, false),
  }));
}

function movementOf(delta: CompareDelta): Movement {
  if (delta.rankRight < delta.rankLeft) return 'up';
  if (delta.rankRight > delta.rankLeft) return 'down';
  return 'same';
}

/** Comparison rows in left-ranking order, movement read from the rank pair. */
export function compareRows(report: CompareReport): CompareRow[] {
  return report.deltas.map((d) => ({
    tasks: taskLabel(d.tasks),
    psdLeft: d.psdLeft,
    psdRight: d.psdRight,
    delta: signed(d.delta),
    rankLeft: d.rankLeft,
    rankRight: d.rankRight,
    movement: movementOf(d),
  }));
}

/** "catalogue.prefs:4:1 error DuplicatePreferenceId: ..." — mirrors the CLI. */
export function diagnosticLines(diagnostics: Diagnostic[]): DiagnosticLine[] {
  return diagnostics.map((d) => {
    const where = d.file !== undefined ? `${d.file}:${d.line}:${d.column} ` : '';
    return {
      severity: d.severity,
      line: d.line,
      text: `${where}${d.severity} ${d.rule}: ${d.message}`,
    };
  });
}

/** Error markers keyed by 1-based line, for inline editor gutters. */
export function markersByLine(diagnostics: Diagnostic[]): Map<number, Diagnostic[]> {
  const markers = new Map<number, Diagnostic[]>();
  for (const d of diagnostics) {
    if (d.line === undefined) continue;
    const bucket = markers.get(d.line);
    if (bucket) bucket.push(d);
    else markers.set(d.line, [d]);
  }
  return markers;
}

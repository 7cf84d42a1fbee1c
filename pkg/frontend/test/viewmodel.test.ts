/**
 * View-model layer: service JSON in, display rows out — numbers must
 * survive verbatim (the workbench never recomputes a score).
 */

import { describe, expect, it } from 'vitest';

import type { CompareReport, Diagnostic, RankingBody, SchemaElement } from '../src/types.js';
import {
  compareRows,
  defaultSituation,
  diagnosticLines,
  markersByLine,
  rankingRows,
  signed,
  situationLabel,
  taskLabel,
} from '../src/viewmodel.js';

const ELEMENTS: SchemaElement[] = [
  { name: 'patient_illness', values: ['dementia', 'MCI', 'normal'] },
  { name: 'weather', values: ['bad', 'good'] },
];

// The dementia ranking of the track-medication fragment, as the service
// sends it (psd column 24, 14, 11, 1).
const DEMENTIA_RANKING: RankingBody = {
  mode: 'proportional',
  situation: { patient_illness: 'dementia', weather: 'good' },
  relevant: ['p1', 'p6', 'p7', 'p8', 'p9'],
  solutions: [
    {
      tasks: ['t5', 't7', 't9'],
      perSoftgoal: { sg1: '6', sg5: '2', sg6: '-2' },
      perHardgoal: { t5: 9, t7: 9 },
      sps: '6',
      hps: 18,
      psd: '24',
      psdExact: [24, 1],
    },
    {
      tasks: ['t5', 't8', 't9'],
      perSoftgoal: { sg1: '2', sg5: '-2', sg6: '-2' },
      perHardgoal: { t5: 9, t8: 7 },
      sps: '-2',
      hps: 16,
      psd: '14',
      psdExact: [14, 1],
    },
    {
      tasks: ['t6', 't7', 't9'],
      perSoftgoal: { sg1: '2', sg5: '2', sg6: '-2' },
      perHardgoal: { t7: 9 },
      sps: '2',
      hps: 9,
      psd: '11',
      psdExact: [11, 1],
    },
    {
      tasks: ['t6', 't8', 't9'],
      perSoftgoal: { sg1: '-2', sg5: '-2', sg6: '-2' },
      perHardgoal: { t8: 7 },
      sps: '-6',
      hps: 7,
      psd: '1',
      psdExact: [1, 1],
    },
  ],
};

// Dementia (left) vs normal illness + bad weather (right): psd lists
// 24,14,11,1 vs 6,-2,2,-6, so the deltas are 18,16,9,7.
const COMPARE: CompareReport = {
  version: 1,
  left: DEMENTIA_RANKING,
  right: { ...DEMENTIA_RANKING, solutions: [] },
  deltas: [
    { tasks: ['t5', 't7', 't9'], psdLeft: '24', psdRight: '6', delta: '18', rankLeft: 1, rankRight: 1 },
    { tasks: ['t5', 't8', 't9'], psdLeft: '14', psdRight: '-2', delta: '16', rankLeft: 2, rankRight: 3 },
    { tasks: ['t6', 't7', 't9'], psdLeft: '11', psdRight: '2', delta: '9', rankLeft: 3, rankRight: 2 },
    { tasks: ['t6', 't8', 't9'], psdLeft: '1', psdRight: '-6', delta: '7', rankLeft: 4, rankRight: 4 },
  ],
};

describe('defaultSituation', () => {
  it('picks the first value of every element', () => {
    expect(defaultSituation(ELEMENTS)).toEqual({
      patient_illness: 'dementia',
      weather: 'bad',
    });
  });

  it('labels situations in schema order', () => {
    const situation = { weather: 'good', patient_illness: 'normal' };
    expect(situationLabel(ELEMENTS, situation)).toBe('patient_illness=normal, weather=good');
  });
});

describe('signed', () => {
  it.each([
    ['6', '+6'],
    ['64/3', '+64/3'],
    ['0', '0'],
    ['-2', '-2'],
    ['-5/6', '-5/6'],
  ])('formats %s as %s', (raw, shown) => {
    expect(signed(raw)).toBe(shown);
  });
});

describe('rankingRows', () => {
  const rows = rankingRows(DEMENTIA_RANKING);

  it('numbers ranks by position and keeps score strings verbatim', () => {
    expect(rows.map((r) => r.rank)).toEqual([1, 2, 3, 4]);
    expect(rows.map((r) => r.psd)).toEqual(['24', '14', '11', '1']);
    expect(rows.map((r) => r.sps)).toEqual(['6', '-2', '2', '-6']);
    expect(rows.map((r) => r.hps)).toEqual(['18', '16', '9', '7']);
    expect(rows[0].tasks).toBe('t5, t7, t9');
  });

  it('signs softgoal breakdown entries but not hardgoal ones', () => {
    expect(rows[0].softgoals).toEqual([
      { id: 'sg1', score: '+6' },
      { id: 'sg5', score: '+2' },
      { id: 'sg6', score: '-2' },
    ]);
    expect(rows[0].hardgoals).toEqual([
      { id: 't5', score: '9' },
      { id: 't7', score: '9' },
    ]);
  });

  it('joins task sets with commas', () => {
    expect(taskLabel(['t6', 't8', 't9'])).toBe('t6, t8, t9');
  });
});

describe('compareRows', () => {
  const rows = compareRows(COMPARE);

  it('keeps the left ranking order and the verbatim psd strings', () => {
    expect(rows.map((r) => r.rankLeft)).toEqual([1, 2, 3, 4]);
    expect(rows.map((r) => r.psdLeft)).toEqual(['24', '14', '11', '1']);
    expect(rows.map((r) => r.psdRight)).toEqual(['6', '-2', '2', '-6']);
    expect(rows.map((r) => r.delta)).toEqual(['+18', '+16', '+9', '+7']);
  });

  it('classifies rank movement from the rank pair', () => {
    expect(rows.map((r) => r.movement)).toEqual(['same', 'down', 'up', 'same']);
  });
});

describe('diagnostics', () => {
  const diags: Diagnostic[] = [
    {
      rule: 'DuplicatePreferenceId',
      message: 'p2 declared twice',
      severity: 'error',
      file: 'catalogue.prefs',
      line: 4,
      column: 1,
    },
    { rule: 'UnknownActionTarget', message: 'p1 targets unknown node t1', severity: 'warning' },
    {
      rule: 'ScoreOutOfRange',
      message: 'score 99 outside 0..10',
      severity: 'error',
      file: 'catalogue.prefs',
      line: 4,
      column: 30,
    },
  ];

  it('formats lines like the command-line validator', () => {
    const lines = diagnosticLines(diags);
    expect(lines[0].text).toBe('catalogue.prefs:4:1 error DuplicatePreferenceId: p2 declared twice');
    expect(lines[0].line).toBe(4);
    expect(lines[1].text).toBe('warning UnknownActionTarget: p1 targets unknown node t1');
    expect(lines[1].line).toBeUndefined();
  });

  it('groups markers by 1-based line, skipping unanchored ones', () => {
    const markers = markersByLine(diags);
    expect([...markers.keys()]).toEqual([4]);
    expect(markers.get(4)).toHaveLength(2);
  });
});

/**
 * Thin DOM builders for the workbench panels. All content comes from the
 * view-model layer already formatted; this file only places it.
 */

import type { CompareRow, DiagnosticLine, RankRow } from './viewmodel.js';
import type { SchemaElement, SituationValues } from './types.js';

type Child = Node | string;

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  children: Child[] = []
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) node.setAttribute(key, value);
  node.append(...children);
  return node;
}

export function clear(node: HTMLElement): void {
  node.replaceChildren();
}

/** One labelled dropdown per context element; onChange fires per selection. */
export function renderSituationPanel(
  container: HTMLElement,
  elements: SchemaElement[],
  situation: SituationValues,
  onChange: (name: string, value: string) => void
): void {
  clear(container);
  for (const element of elements) {
    const select = el('select', { 'data-element': element.name });
    for (const value of element.values) {
      const option = el('option', { value }, [value]);
      if (situation[element.name] === value) option.selected = true;
      select.append(option);
    }
    select.addEventListener('change', () => onChange(element.name, select.value));
    container.append(
      el('label', { class: 'situation-field' }, [
        el('span', { class: 'situation-name' }, [element.name]),
        select,
      ])
    );
  }
}

function breakdownCell(row: RankRow): HTMLElement {
  const softgoals = row.softgoals
    .map((entry) => `${entry.id}: ${entry.score}`)
    .join('   ');
  const hardgoals = row.hardgoals
    .map((entry) => `${entry.id}: ${entry.score}`)
    .join('   ');
  return el('div', { class: 'breakdown' }, [
    el('div', {}, [`softgoals:  ${softgoals || '(none)'}`]),
    el('div', {}, [`hardgoals:  ${hardgoals || '(none)'}`]),
  ]);
}

/** Ranked table with a click-to-expand breakdown row per solution. */
export function renderRankingTable(container: HTMLElement, rows: RankRow[]): void {
  clear(container);
  const table = el('table', { class: 'ranking' });
  table.append(
    el('thead', {}, [
      el('tr', {}, ['rank', 'tasks', 'sps', 'hps', 'psd'].map((h) => el('th', {}, [h]))),
    ])
  );
  const body = el('tbody');
  for (const row of rows) {
    const main = el('tr', { class: 'solution-row' }, [
      el('td', { class: 'num' }, [String(row.rank)]),
      el('td', { class: 'tasks' }, [row.tasks]),
      el('td', { class: 'num' }, [row.sps]),
      el('td', { class: 'num' }, [row.hps]),
      el('td', { class: 'num psd' }, [row.psd]),
    ]);
    const detail = el('tr', { class: 'detail-row hidden' }, [
      el('td', { colspan: '5' }, [breakdownCell(row)]),
    ]);
    main.addEventListener('click', () => detail.classList.toggle('hidden'));
    body.append(main, detail);
  }
  table.append(body);
  container.append(table);
}

/** Comparison table; rank movement colours the row. */
export function renderCompareTable(container: HTMLElement, rows: CompareRow[]): void {
  clear(container);
  const table = el('table', { class: 'ranking compare' });
  const headers = ['tasks', 'psd A', 'psd B', 'delta (A−B)', 'rank A', 'rank B'];
  table.append(el('thead', {}, [el('tr', {}, headers.map((h) => el('th', {}, [h])))]));
  const body = el('tbody');
  for (const row of rows) {
    const move =
      row.movement === 'same' ? '' : row.movement === 'up' ? ' ↑' : ' ↓';
    body.append(
      el('tr', { class: `moved-${row.movement}` }, [
        el('td', { class: 'tasks' }, [row.tasks]),
        el('td', { class: 'num' }, [row.psdLeft]),
        el('td', { class: 'num' }, [row.psdRight]),
        el('td', { class: 'num' }, [row.delta]),
        el('td', { class: 'num' }, [String(row.rankLeft)]),
        el('td', { class: 'num' }, [`${row.rankRight}${move}`]),
      ])
    );
  }
  table.append(body);
  container.append(table);
}

export function renderDiagnostics(container: HTMLElement, lines: DiagnosticLine[]): void {
  clear(container);
  if (lines.length === 0) {
    container.append(el('div', { class: 'diag ok' }, ['catalogue ok']));
    return;
  }
  for (const line of lines) {
    container.append(el('div', { class: `diag ${line.severity}` }, [line.text]));
  }
}

export function renderRelevant(container: HTMLElement, relevant: string[]): void {
  clear(container);
  container.append(`relevant preferences: ${relevant.join(', ') || '(none)'}`);
}

export function setStatus(container: HTMLElement, text: string, kind = ''): void {
  container.textContent = text;
  container.className = `status ${kind}`.trim();
}

/**
 * Workbench wiring: connects the situation panels, ranking view,
 * catalogue editor, and compare view to the service client.
 *
 * Each data panel owns a LatestRequest, so a quick succession of
 * dropdown changes cancels superseded rank/compare calls and only the
 * newest response is ever rendered.
 */

import { ApiError, LatestRequest, WorkbenchClient } from './api.js';
import type { SchemaElement, SituationValues } from './types.js';
import {
  compareRows,
  defaultSituation,
  diagnosticLines,
  rankingRows,
} from './viewmodel.js';
import {
  renderCompareTable,
  renderDiagnostics,
  renderRankingTable,
  renderRelevant,
  renderSituationPanel,
  setStatus,
} from './render.js';

function must(doc: Document, id: string): HTMLElement {
  const node = doc.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node;
}

export class Workbench {
  private workspaceId = '';
  private version = 0;
  private elements: SchemaElement[] = [];
  private situationA: SituationValues = {};
  private situationB: SituationValues = {};

  private readonly rankRequest = new LatestRequest();
  private readonly compareRequest = new LatestRequest();

  private readonly workspaceSelect: HTMLSelectElement;
  private readonly modeSelect: HTMLSelectElement;
  private readonly versionBadge: HTMLElement;
  private readonly situationPanelA: HTMLElement;
  private readonly situationPanelB: HTMLElement;
  private readonly rankStatus: HTMLElement;
  private readonly relevantBox: HTMLElement;
  private readonly rankingBox: HTMLElement;
  private readonly catalogueText: HTMLTextAreaElement;
  private readonly catalogueStatus: HTMLElement;
  private readonly catalogueDiags: HTMLElement;
  private readonly compareStatus: HTMLElement;
  private readonly compareBox: HTMLElement;

  constructor(
    private readonly client: WorkbenchClient,
    doc: Document
  ) {
    this.workspaceSelect = must(doc, 'workspace-select') as HTMLSelectElement;
    this.modeSelect = must(doc, 'mode-select') as HTMLSelectElement;
    this.versionBadge = must(doc, 'version-badge');
    this.situationPanelA = must(doc, 'situation-a');
    this.situationPanelB = must(doc, 'situation-b');
    this.rankStatus = must(doc, 'rank-status');
    this.relevantBox = must(doc, 'relevant');
    this.rankingBox = must(doc, 'ranking');
    this.catalogueText = must(doc, 'catalogue-text') as HTMLTextAreaElement;
    this.catalogueStatus = must(doc, 'catalogue-status');
    this.catalogueDiags = must(doc, 'catalogue-diags');
    this.compareStatus = must(doc, 'compare-status');
    this.compareBox = must(doc, 'compare-table');

    this.workspaceSelect.addEventListener('change', () => {
      void this.loadWorkspace(this.workspaceSelect.value);
    });
    this.modeSelect.addEventListener('change', () => {
      void this.refreshRanking();
      void this.refreshCompare();
    });
    must(doc, 'apply-catalogue').addEventListener('click', () => {
      void this.applyCatalogue();
    });
    must(doc, 'reload-catalogue').addEventListener('click', () => {
      void this.reloadCatalogue();
    });
  }

  async boot(): Promise<void> {
    const workspaces = await this.client.listWorkspaces();
    if (workspaces.length === 0) {
      setStatus(this.rankStatus, 'no workspaces on the server — create one first', 'error');
      return;
    }
    this.workspaceSelect.replaceChildren(
      ...workspaces.map((ws) => {
        const option = document.createElement('option');
        option.value = ws.id;
        option.textContent = `${ws.id} (root ${ws.root})`;
        return option;
      })
    );
    await this.loadWorkspace(workspaces[0].id);
  }

  private setVersion(version: number): void {
    this.version = version;
    this.versionBadge.textContent = `v${version}`;
  }

  private async loadWorkspace(workspaceId: string): Promise<void> {
    this.workspaceId = workspaceId;
    const schema = await this.client.getSchema(workspaceId);
    this.elements = schema.elements;
    this.setVersion(schema.version);
    this.situationA = defaultSituation(this.elements);
    this.situationB = defaultSituation(this.elements);
    renderSituationPanel(this.situationPanelA, this.elements, this.situationA, (name, value) => {
      this.situationA[name] = value;
      void this.refreshRanking();
      void this.refreshCompare();
    });
    renderSituationPanel(this.situationPanelB, this.elements, this.situationB, (name, value) => {
      this.situationB[name] = value;
      void this.refreshCompare();
    });
    await this.reloadCatalogue();
    await Promise.all([this.refreshRanking(), this.refreshCompare()]);
  }

  private async refreshRanking(): Promise<void> {
    setStatus(this.rankStatus, 'ranking…');
    try {
      const report = await this.rankRequest.run((signal) =>
        this.client.rank(this.workspaceId, this.situationA, {
          mode: this.modeSelect.value,
          signal,
        })
      );
      if (report === undefined) return; // superseded by a newer selection
      this.setVersion(report.version);
      renderRelevant(this.relevantBox, report.relevant);
      renderRankingTable(this.rankingBox, rankingRows(report));
      setStatus(this.rankStatus, `${report.solutions.length} solutions, mode ${report.mode}`);
    } catch (err) {
      setStatus(this.rankStatus, describe(err), 'error');
    }
  }

  private async refreshCompare(): Promise<void> {
    setStatus(this.compareStatus, 'comparing…');
    try {
      const report = await this.compareRequest.run((signal) =>
        this.client.compare(this.workspaceId, this.situationA, this.situationB, {
          mode: this.modeSelect.value,
          signal,
        })
      );
      if (report === undefined) return;
      renderCompareTable(this.compareBox, compareRows(report));
      setStatus(this.compareStatus, 'A = ranking situation, B = alternative');
    } catch (err) {
      setStatus(this.compareStatus, describe(err), 'error');
    }
  }

  private async reloadCatalogue(): Promise<void> {
    const state = await this.client.getCatalogue(this.workspaceId);
    this.catalogueText.value = state.catalogue;
    this.setVersion(state.version);
    renderDiagnostics(this.catalogueDiags, []);
    setStatus(this.catalogueStatus, `loaded v${state.version}`);
  }

  private async applyCatalogue(): Promise<void> {
    setStatus(this.catalogueStatus, 'validating…');
    try {
      const result = await this.client.putCatalogue(
        this.workspaceId,
        this.catalogueText.value,
        this.version
      );
      this.setVersion(result.version);
      renderDiagnostics(this.catalogueDiags, diagnosticLines(result.diagnostics));
      setStatus(this.catalogueStatus, `applied as v${result.version}`, 'ok');
      await Promise.all([this.refreshRanking(), this.refreshCompare()]);
    } catch (err) {
      if (err instanceof ApiError && err.status === 422) {
        renderDiagnostics(this.catalogueDiags, diagnosticLines(err.diagnostics));
        setStatus(this.catalogueStatus, 'rejected — workspace unchanged', 'error');
      } else if (err instanceof ApiError && err.status === 409) {
        setStatus(
          this.catalogueStatus,
          `workspace changed elsewhere (now v${err.serverVersion}) — reload before editing`,
          'error'
        );
      } else {
        setStatus(this.catalogueStatus, describe(err), 'error');
      }
    }
  }
}

function describe(err: unknown): string {
  if (err instanceof ApiError) return `${err.status}: ${err.message}`;
  return err instanceof Error ? err.message : String(err);
}

/**
 * Typed client for the goalrank workspace service.
 *
 * All methods reject with ApiError on non-2xx responses, carrying the
 * parsed diagnostics (422) or the server's current workspace version
 * (409) so callers can surface conflicts precisely. Abort errors from
 * cancelled requests pass through untouched.
 */

import type {
  CatalogueState,
  CatalogueUpdateResult,
  CompareReport,
  CreateWorkspaceResult,
  Diagnostic,
  RankingReport,
  SchemaResponse,
  SituationValues,
  WorkspaceInfo,
} from './types.js';

export class ApiError extends Error {
  constructor(
    readonly status: number,
    message: string,
    readonly diagnostics: Diagnostic[] = [],
    readonly serverVersion?: number
  ) {
    super(message);
    this.name = 'ApiError';
  }
}

/** True when an exception came from an aborted request. */
export function isAbort(err: unknown): boolean {
  return err instanceof DOMException && err.name === 'AbortError';
}

export interface RankOptions {
  mode?: string;
  top?: number;
  signal?: AbortSignal;
}

export interface CompareOptions {
  mode?: string;
  signal?: AbortSignal;
}

export class WorkbenchClient {
  private readonly base: string;

  constructor(
    baseUrl: string,
    private readonly fetchFn: typeof fetch = (...args) => fetch(...args)
  ) {
    this.base = baseUrl.replace(/\/+$/, '');
  }

  async createWorkspace(texts: {
    model: string;
    schema: string;
    catalogue: string;
  }): Promise<CreateWorkspaceResult> {
    return this.request('POST', '/workspaces', { body: texts });
  }

  async listWorkspaces(): Promise<WorkspaceInfo[]> {
    const data = await this.request<{ workspaces: WorkspaceInfo[] }>('GET', '/workspaces');
    return data.workspaces;
  }

  async getSchema(workspaceId: string): Promise<SchemaResponse> {
    return this.request('GET', `/workspaces/${workspaceId}/schema`);
  }

  async getCatalogue(workspaceId: string): Promise<CatalogueState> {
    return this.request('GET', `/workspaces/${workspaceId}/catalogue`);
  }

  /** Replace the whole catalogue text; ifMatchVersion guards against lost updates. */
  async putCatalogue(
    workspaceId: string,
    catalogue: string,
    ifMatchVersion?: number
  ): Promise<CatalogueUpdateResult> {
    return this.request('PUT', `/workspaces/${workspaceId}/catalogue`, {
      body: { catalogue },
      ifMatchVersion,
    });
  }

  async rank(
    workspaceId: string,
    situation: SituationValues,
    opts: RankOptions = {}
  ): Promise<RankingReport> {
    const body: Record<string, unknown> = { situation };
    if (opts.mode !== undefined) body.mode = opts.mode;
    if (opts.top !== undefined) body.top = opts.top;
    return this.request('POST', `/workspaces/${workspaceId}/rank`, {
      body,
      signal: opts.signal,
    });
  }

  async compare(
    workspaceId: string,
    left: SituationValues,
    right: SituationValues,
    opts: CompareOptions = {}
  ): Promise<CompareReport> {
    const body: Record<string, unknown> = { left, right };
    if (opts.mode !== undefined) body.mode = opts.mode;
    return this.request('POST', `/workspaces/${workspaceId}/compare`, {
      body,
      signal: opts.signal,
    });
  }

  private async request<T>(
    method: string,
    path: string,
    opts: {
      body?: unknown;
      ifMatchVersion?: number;
      signal?: AbortSignal;
    } = {}
  ): Promise<T> {
    const headers: Record<string, string> = {};
    if (opts.body !== undefined) headers['Content-Type'] = 'application/json';
    if (opts.ifMatchVersion !== undefined) {
      headers['If-Match-Version'] = String(opts.ifMatchVersion);
    }
    const response = await this.fetchFn(this.base + path, {
      method,
      headers,
      body: opts.body !== undefined ? JSON.stringify(opts.body) : undefined,
      signal: opts.signal,
    });
    if (!response.ok) {
      throw await toApiError(response);
    }
    return (await response.json()) as T;
  }
}

async function toApiError(response: Response): Promise<ApiError> {
  let detail: Record<string, unknown> = {};
  try {
    const parsed = (await response.json()) as { detail?: unknown };
    if (parsed && typeof parsed.detail === 'object' && parsed.detail !== null) {
      detail = parsed.detail as Record<string, unknown>;
    }
  } catch {
    // non-JSON error body; fall through to the status line
  }
  const diagnostics = Array.isArray(detail.diagnostics)
    ? (detail.diagnostics as Diagnostic[])
    : [];
  const serverVersion = typeof detail.version === 'number' ? detail.version : undefined;
  const message =
    typeof detail.error === 'string'
      ? detail.error
      : diagnostics.length > 0
        ? diagnostics[0].message
        : `request failed with status ${response.status}`;
  return new ApiError(response.status, message, diagnostics, serverVersion);
}

/**
 * At most one in-flight request per panel: starting a new run aborts the
 * previous one, and a superseded run resolves to undefined so stale
 * responses are never rendered.
 */
export class LatestRequest {
  private controller: AbortController | null = null;
  private seq = 0;

  async run<T>(task: (signal: AbortSignal) => Promise<T>): Promise<T | undefined> {
    this.controller?.abort();
    const controller = new AbortController();
    this.controller = controller;
    const ticket = ++this.seq;
    try {
      const result = await task(controller.signal);
      return ticket === this.seq ? result : undefined;
    } catch (err) {
      if (controller.signal.aborted || isAbort(err)) return undefined;
      throw err;
    }
  }

  cancel(): void {
    this.controller?.abort();
    this.controller = null;
    this.seq++;
  }
}

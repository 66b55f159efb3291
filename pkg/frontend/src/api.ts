/**
 * Thin client over the annotation service's REST API. All annotation
 * semantics live on the server; this module only moves JSON.
 */

import type { DiagnosticJson, SentenceJson, StateJson } from './types.js';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(
    message: string,
    public readonly status: number,
    public readonly code: string | null = null
  ) {
    super(message);
  }
}

async function failFrom(response: Response): Promise<never> {
  let code: string | null = null;
  let detail = `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as { error?: string; detail?: string };
    code = body.error ?? null;
    detail = body.detail ?? detail;
  } catch {
    // non-JSON error body; keep the status text
  }
  throw new ApiError(detail, response.status, code);
}

export class ApiClient {
  constructor(
    private readonly fetchImpl: FetchLike = (input, init) => fetch(input, init),
    private readonly base: string = ''
  ) {}

  async createSession(file: Blob | string): Promise<{ session_id: string; sentence_count: number }> {
    const response = await this.fetchImpl(`${this.base}/api/sessions`, {
      method: 'POST',
      body: file,
    });
    if (response.status !== 201) await failFrom(response);
    return response.json();
  }

  async getSentence(sessionId: string, sentenceId: string): Promise<SentenceJson> {
    const response = await this.fetchImpl(
      `${this.base}/api/sessions/${sessionId}/sentences/${sentenceId}`
    );
    if (!response.ok) await failFrom(response);
    return response.json();
  }

  /** Returns the parsed state plus the raw bytes, for staleness detection. */
  async getState(sessionId: string): Promise<{ state: StateJson; raw: string }> {
    const response = await this.fetchImpl(`${this.base}/api/sessions/${sessionId}/state`);
    if (!response.ok) await failFrom(response);
    const raw = await response.text();
    return { state: JSON.parse(raw) as StateJson, raw };
  }

  async putState(sessionId: string, state: StateJson): Promise<void> {
    const response = await this.fetchImpl(`${this.base}/api/sessions/${sessionId}/state`, {
      method: 'PUT',
      body: JSON.stringify(state),
    });
    if (response.status !== 204) await failFrom(response);
  }

  async lint(sessionId: string): Promise<DiagnosticJson[]> {
    const response = await this.fetchImpl(`${this.base}/api/sessions/${sessionId}/lint`);
    if (!response.ok) await failFrom(response);
    const body = (await response.json()) as { diagnostics: DiagnosticJson[] };
    return body.diagnostics;
  }

  exportUrl(sessionId: string, format: 'tsv' | 'json'): string {
    return `${this.base}/api/sessions/${sessionId}/export?format=${format}`;
  }
}

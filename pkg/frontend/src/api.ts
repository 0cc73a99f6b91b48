/** Typed client for the puzzle server endpoints. */

import type { CheckResult, PuzzleDoc, PuzzleSummary, Violation } from './types';

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

export class Api {
  constructor(
    private baseUrl: string = '',
    private fetchImpl: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const resp = await this.fetchImpl(this.baseUrl + path, init);
    const body = await resp.json().catch(() => ({}));
    if (!resp.ok) {
      const message = (body as { error?: string }).error ?? `HTTP ${resp.status}`;
      throw new ApiError(resp.status, message);
    }
    return body as T;
  }

  private post<T>(path: string, payload: unknown): Promise<T> {
    return this.request<T>(path, {
      method: 'POST',
      headers: { 'Content-Type': 'application/json' },
      body: JSON.stringify(payload),
    });
  }

  async listPuzzles(): Promise<PuzzleSummary[]> {
    const doc = await this.request<{ puzzles: PuzzleSummary[] }>('/puzzles');
    return doc.puzzles;
  }

  loadPuzzle(id: string): Promise<PuzzleDoc> {
    return this.request<PuzzleDoc>(`/puzzle/${id}`);
  }

  async validate(id: string, entries: Record<number, string>): Promise<Violation[]> {
    const doc = await this.post<{ violations: Violation[] }>('/validate', {
      id,
      assignment: stringKeys(entries),
    });
    return doc.violations;
  }

  async hint(id: string, point: number): Promise<string> {
    const doc = await this.post<{ point: number; symbol: string }>('/hint', { id, point });
    return doc.symbol;
  }

  checkComplete(id: string, entries: Record<number, string>): Promise<CheckResult> {
    return this.post<CheckResult>('/check-complete', {
      id,
      assignment: stringKeys(entries),
    });
  }
}

function stringKeys(entries: Record<number, string>): Record<string, string> {
  const out: Record<string, string> = {};
  for (const [key, value] of Object.entries(entries)) out[key] = value;
  return out;
}

/** Thin typed client for the session service. */

import type {
  HistoryView,
  ParetoView,
  ProblemDoc,
  RefinementEventBody,
  SessionCreated,
  SessionDelta,
  SessionSnapshot,
  SuggestionView,
} from "./types.js";

/** A structured error body from the service (code + message). */
export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function parseError(response: Response): Promise<ApiError> {
  let code = "INTERNAL";
  let message = `HTTP ${response.status}`;
  try {
    const body = (await response.json()) as { code?: string; message?: string };
    if (body.code) code = body.code;
    if (body.message) message = body.message;
  } catch {
    // non-JSON error body; keep the generic message
  }
  return new ApiError(response.status, code, message);
}

/** The service surface the views depend on; `Client` is the real one. */
export interface SessionApi {
  createSession(problem: ProblemDoc, baseline?: string[]): Promise<SessionCreated>;
  snapshot(id: string): Promise<SessionSnapshot>;
  postEvent(id: string, event: RefinementEventBody): Promise<SessionDelta>;
  undo(id: string): Promise<{ pareto: string[] }>;
  history(id: string): Promise<HistoryView>;
  suggestions(id: string, limit: number): Promise<SuggestionView[]>;
}

export class Client implements SessionApi {
  constructor(readonly baseUrl: string) {}

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? {} : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    if (!response.ok) throw await parseError(response);
    return (await response.json()) as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("GET", "/healthz");
  }

  createSession(problem: ProblemDoc, baseline?: string[]): Promise<SessionCreated> {
    const body: Record<string, unknown> = { problem };
    if (baseline) body.baseline = baseline;
    return this.request("POST", "/api/v1/sessions", body);
  }

  snapshot(id: string): Promise<SessionSnapshot> {
    return this.request("GET", `/api/v1/sessions/${id}`);
  }

  postEvent(id: string, event: RefinementEventBody): Promise<SessionDelta> {
    return this.request("POST", `/api/v1/sessions/${id}/events`, event);
  }

  undo(id: string): Promise<{ pareto: string[] }> {
    return this.request("POST", `/api/v1/sessions/${id}/undo`);
  }

  pareto(id: string): Promise<ParetoView> {
    return this.request("GET", `/api/v1/sessions/${id}/pareto`);
  }

  history(id: string): Promise<HistoryView> {
    return this.request("GET", `/api/v1/sessions/${id}/history`);
  }

  suggestions(id: string, limit: number): Promise<SuggestionView[]> {
    return this.request("GET", `/api/v1/sessions/${id}/suggestions?limit=${limit}`);
  }
}

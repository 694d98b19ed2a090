// Thin typed client for the session API. All domain numbers come from the
// server; this layer only moves JSON.

export interface TracePoint {
  iteration: number;
  lb: number;
  ub: number;
  queries: number;
  elapsed_seconds: number;
}

export interface SessionStateDto {
  status: string;
  reason: string | null;
  variables: string[];
  epsilon: number;
  lb: number | null;
  ub: number | null;
  gap: number | null;
  iteration: number;
  learned_constraints: string[];
  basis_size: number;
  queries_asked: number;
  queries_by_kind: Record<string, number>;
  lower_witness: Record<string, number> | null;
  upper_witness: Record<string, number> | null;
  trace: TracePoint[];
  error?: string;
}

export interface PendingQueryDto {
  query_id: number;
  kind: string;
  bindings: Record<string, number>;
  partial: boolean;
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(readonly status: number, message: string) {
    super(message);
  }
}

export class ApiClient {
  constructor(
    private readonly baseUrl: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private url(path: string): string {
    return `${this.baseUrl}${path}`;
  }

  async createSession(problem: unknown): Promise<string> {
    const resp = await this.fetchFn(this.url("/sessions"), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(problem),
    });
    if (!resp.ok) {
      throw new ApiError(resp.status, await resp.text());
    }
    const body = (await resp.json()) as { session_id: string };
    return body.session_id;
  }

  async getState(sessionId: string): Promise<SessionStateDto> {
    const resp = await this.fetchFn(this.url(`/sessions/${sessionId}`));
    if (!resp.ok) {
      throw new ApiError(resp.status, await resp.text());
    }
    return (await resp.json()) as SessionStateDto;
  }

  /** Pending query, or null when the engine is working / finished (204). */
  async getPendingQuery(sessionId: string): Promise<PendingQueryDto | null> {
    const resp = await this.fetchFn(this.url(`/sessions/${sessionId}/query`));
    if (resp.status === 204) {
      return null;
    }
    if (!resp.ok) {
      throw new ApiError(resp.status, await resp.text());
    }
    return (await resp.json()) as PendingQueryDto;
  }

  /** "ok", or "conflict" when the query id went stale (someone answered first). */
  async postAnswer(
    sessionId: string,
    queryId: number,
    answer: "yes" | "no",
  ): Promise<"ok" | "conflict"> {
    const resp = await this.fetchFn(this.url(`/sessions/${sessionId}/answer`), {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify({ query_id: queryId, answer }),
    });
    if (resp.status === 409) {
      return "conflict";
    }
    if (!resp.ok) {
      throw new ApiError(resp.status, await resp.text());
    }
    return "ok";
  }

  async getLog(sessionId: string): Promise<string> {
    const resp = await this.fetchFn(this.url(`/sessions/${sessionId}/log`));
    if (!resp.ok) {
      throw new ApiError(resp.status, await resp.text());
    }
    return resp.text();
  }
}

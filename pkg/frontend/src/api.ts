/* Typed client for the arena's JSON session service.  All numeric
 * values stay rational strings; nothing here interprets them. */

export interface Bounds {
  lo: string;
  hi: string;
}

export interface SessionView {
  id: string;
  config: { a0: string; b0: string };
  human_side: "A" | "B";
  engine: string;
  target: string | null;
  status: string;
  rounds: [string, string][];
  pending_a: string | null;
  turn: "A" | "B";
  legal_bounds: Bounds;
  last_engine_move: string | null;
  accepted_move?: string;
  engine_move?: string | null;
}

export interface ArenaError {
  error: string;
  detail: string;
  bound?: Bounds;
}

export interface TargetOverlay {
  depth: number;
  intervals: [string, string][];
}

export type MoveOutcome =
  | { ok: true; view: SessionView }
  | { ok: false; error: ArenaError };

export interface NewSessionRequest {
  config: { a0: string; b0: string };
  human_side: "A" | "B";
  engine: string;
  target?: string | object | null;
}

export class ArenaClient {
  constructor(readonly base: string) {}

  private async post(path: string, body: unknown): Promise<Response> {
    return fetch(`${this.base}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
  }

  async createSession(request: NewSessionRequest): Promise<SessionView> {
    const response = await this.post("/session", request);
    if (!response.ok) {
      const err = (await response.json()) as ArenaError;
      throw new Error(`${err.error}: ${err.detail}`);
    }
    return (await response.json()) as SessionView;
  }

  async getSession(id: string): Promise<SessionView> {
    const response = await fetch(`${this.base}/session/${id}`);
    if (!response.ok) {
      throw new Error(`session ${id} not found`);
    }
    return (await response.json()) as SessionView;
  }

  async postMove(id: string, value: string): Promise<MoveOutcome> {
    const response = await this.post(`/session/${id}/move`, { value });
    const body = await response.json();
    if (!response.ok) {
      return { ok: false, error: body as ArenaError };
    }
    return { ok: true, view: body as SessionView };
  }

  async targetTree(id: string, depth: number): Promise<TargetOverlay> {
    const response = await fetch(`${this.base}/session/${id}/target-tree?depth=${depth}`);
    if (!response.ok) {
      const err = (await response.json()) as ArenaError;
      throw new Error(`${err.error}: ${err.detail}`);
    }
    return (await response.json()) as TargetOverlay;
  }
}

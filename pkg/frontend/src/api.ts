// Typed client for the game service. All game logic stays on the server;
// this module only moves JSON.

export interface CreateGameOptions {
  mode?: string;
  variant?: string;
  seed?: number;
  encounter_prob?: number;
}

export interface GameSummary {
  session_id: string;
  player_name: string;
  mode: string;
  variant: string;
  seed: number;
  goal: number;
  shots: number;
  altitude: number;
}

export interface EncounterView {
  round: number;
  outcome: "ongoing" | "player_won" | "computer_won";
  jewels: string[];
  player_guess: string | null;
  computer_guess: string | null;
  grover_counts: Record<string, number> | null;
  grover_argmax: number | null;
  grover_argmax_bits?: string;
  altitude_delta: number | null;
  altitude_after: number | null;
  secret?: number;
  secret_jewel?: string;
}

export interface TurnView {
  turn: number;
  action: string;
  frac: number | null;
  counts: Record<string, number>;
  altitude: number;
  message: string;
  encounter: EncounterView | null;
}

export interface GameView {
  session_id: string;
  player_name: string;
  mode: string;
  variant: string;
  seed: number;
  goal: number;
  shots: number;
  altitude: number;
  turn: number;
  status: "in_progress" | "won" | "quit";
  pending_encounter: EncounterView | null;
  turns: TurnView[];
}

export interface GuessResult extends EncounterView {
  altitude: number;
  goal: number;
  status: string;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    message: string,
  ) {
    super(message);
  }
}

async function parse<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    throw new ApiError(
      response.status,
      (body as { code?: string }).code ?? "unknown",
      (body as { error?: string }).error ?? `HTTP ${response.status}`,
    );
  }
  return body as T;
}

export class ApiClient {
  constructor(readonly baseUrl: string) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await fetch(`${this.baseUrl}${path}`, {
      headers: { "Content-Type": "application/json" },
      ...init,
    });
    return parse<T>(response);
  }

  health(): Promise<{ status: string; version: string }> {
    return this.request("/health");
  }

  createGame(options: CreateGameOptions): Promise<GameSummary> {
    return this.request("/games", {
      method: "POST",
      body: JSON.stringify(options),
    });
  }

  getGame(sessionId: string): Promise<GameView> {
    return this.request(`/games/${sessionId}`);
  }

  postAction(sessionId: string, action: "up" | "down"): Promise<TurnView> {
    return this.request(`/games/${sessionId}/action`, {
      method: "POST",
      body: JSON.stringify({ action }),
    });
  }

  postGuess(sessionId: string, jewel: string): Promise<GuessResult> {
    return this.request(`/games/${sessionId}/guess`, {
      method: "POST",
      body: JSON.stringify({ jewel }),
    });
  }
}

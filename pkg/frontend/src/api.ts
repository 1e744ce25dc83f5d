import type { Answer, Edge, GameView, HintView, PropertySpec, Role } from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiError extends Error {
  constructor(public status: number, detail: string) {
    super(detail);
  }
}

async function parse<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const detail = typeof body?.detail === "string" ? body.detail : `HTTP ${response.status}`;
    throw new ApiError(response.status, detail);
  }
  return body as T;
}

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  private post<T>(path: string, body: unknown): Promise<T> {
    return this.fetchFn(`${this.base}${path}`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    }).then((r) => parse<T>(r));
  }

  private get<T>(path: string): Promise<T> {
    return this.fetchFn(`${this.base}${path}`).then((r) => parse<T>(r));
  }

  createGame(n: number, property: PropertySpec, humanRole: Role): Promise<GameView> {
    return this.post<GameView>("/api/game", { n, property, human_role: humanRole });
  }

  ask(id: string, edge: Edge): Promise<GameView> {
    return this.post<GameView>(`/api/game/${id}/ask`, { edge });
  }

  answer(id: string, answer: Answer): Promise<GameView> {
    return this.post<GameView>(`/api/game/${id}/answer`, { answer });
  }

  state(id: string): Promise<GameView> {
    return this.get<GameView>(`/api/game/${id}`);
  }

  hint(id: string): Promise<HintView> {
    return this.get<HintView>(`/api/game/${id}/hint`);
  }
}

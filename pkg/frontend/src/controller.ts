import { ApiClient, ApiError } from "./api.js";
import type { Answer, Edge, GameView, HintView, PropertySpec, Role } from "./types.js";

// Holds the latest server view and forwards user intents. All game logic
// lives on the server; the controller only guards against requests that
// cannot be valid (no session, game over, edge already asked, request in
// flight) so that e.g. double-clicking an edge issues a single request.
export class GameController {
  view: GameView | null = null;
  hint: HintView | null = null;
  error: string | null = null;
  busy = false;
  readonly states: GameView[] = [];

  constructor(
    private readonly api: ApiClient,
    private readonly onChange: () => void = () => {},
  ) {}

  private record(view: GameView): void {
    this.view = view;
    this.states.push(view);
    this.onChange();
  }

  private async run(action: () => Promise<GameView>): Promise<void> {
    this.busy = true;
    this.error = null;
    try {
      this.record(await action());
    } catch (err) {
      this.error = err instanceof ApiError ? err.message : String(err);
      this.onChange();
    } finally {
      this.busy = false;
    }
  }

  async start(n: number, property: PropertySpec, role: Role): Promise<void> {
    this.states.length = 0;
    this.view = null;
    this.hint = null;
    await this.run(() => this.api.createGame(n, property, role));
  }

  edgeState(edge: Edge): string | null {
    const entry = this.view?.edges.find((e) => e.edge[0] === edge[0] && e.edge[1] === edge[1]);
    return entry ? entry.state : null;
  }

  async clickEdge(edge: Edge): Promise<void> {
    const view = this.view;
    if (!view || this.busy || view.human_role !== "bob" || view.status !== "ongoing") return;
    if (this.edgeState(edge) !== "unknown") return; // clicks on answered edges are ignored
    this.hint = null;
    await this.run(() => this.api.ask(view.id, edge));
  }

  async giveAnswer(answer: Answer): Promise<void> {
    const view = this.view;
    if (!view || this.busy || view.human_role !== "alice" || view.pending_question === null) return;
    await this.run(() => this.api.answer(view.id, answer));
  }

  async refresh(): Promise<void> {
    const view = this.view;
    if (!view) return;
    await this.run(() => this.api.state(view.id));
  }

  async requestHint(): Promise<void> {
    const view = this.view;
    if (!view || this.busy || view.status !== "ongoing" || view.human_role !== "bob") return;
    try {
      this.hint = await this.api.hint(view.id);
      this.error = null;
    } catch (err) {
      this.error = err instanceof ApiError ? err.message : String(err);
    }
    this.onChange();
  }
}

import type { Edge, EdgeState, GameView } from "./types.js";

// Pure geometry and render-model helpers for the circular board.
// Vertex 1 sits at the top and numbering runs clockwise, so boards are
// directly comparable between screenshots.

export interface Point {
  x: number;
  y: number;
}

export interface EdgeSegment {
  edge: Edge;
  state: EdgeState;
  highlighted: boolean;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface BoardModel {
  vertices: Point[];
  segments: EdgeSegment[];
  counterText: string;
  candidateText: string;
  banner: string | null;
}

export function vertexPositions(n: number, cx: number, cy: number, radius: number): Point[] {
  const points: Point[] = [];
  for (let i = 0; i < n; i++) {
    const angle = -Math.PI / 2 + (2 * Math.PI * i) / n; // vertex 1 at the top, clockwise
    points.push({ x: cx + radius * Math.cos(angle), y: cy + radius * Math.sin(angle) });
  }
  return points;
}

export function statusBanner(view: GameView): string | null {
  switch (view.status) {
    case "decided_in":
      return `Decided after ${view.questions_used} questions: the graph HAS the property`;
    case "decided_out":
      return `Decided after ${view.questions_used} questions: the graph does NOT have the property`;
    case "exhausted":
      return "Every edge was asked";
    default:
      return null;
  }
}

export function boardModel(view: GameView, cx: number, cy: number, radius: number): BoardModel {
  const vertices = vertexPositions(view.n, cx, cy, radius);
  const pending = view.pending_question;
  const segments: EdgeSegment[] = view.edges.map(({ edge, state }) => {
    const [u, v] = edge;
    const a = vertices[u - 1]!;
    const b = vertices[v - 1]!;
    return {
      edge,
      state,
      highlighted: pending !== null && pending[0] === u && pending[1] === v,
      x1: a.x,
      y1: a.y,
      x2: b.x,
      y2: b.y,
    };
  });
  return {
    vertices,
    segments,
    counterText: `${view.questions_used} of ${view.total_questions}`,
    candidateText: `${view.reachable_in} in / ${view.reachable_out} out`,
    banner: statusBanner(view),
  };
}

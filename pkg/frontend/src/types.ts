// Wire types of the game service. The client renders these verbatim and
// never derives game facts on its own.

export type Role = "bob" | "alice";
export type Answer = "present" | "absent";
export type EdgeState = "present" | "absent" | "unknown";
export type Status = "ongoing" | "decided_in" | "decided_out" | "exhausted";

export type Edge = [number, number];

export interface EdgeEntry {
  edge: Edge;
  state: EdgeState;
}

export interface HistoryEntry {
  edge: Edge;
  answer: Answer;
}

export interface GameView {
  id: string;
  n: number;
  status: Status;
  human_role: Role;
  total_questions: number;
  questions_used: number;
  history: HistoryEntry[];
  edges: EdgeEntry[];
  reachable_in: number;
  reachable_out: number;
  pending_question: Edge | null;
}

export interface HintView {
  edge: Edge;
  worst_case_remaining: number;
}

export type PropertySpec = string | { n?: number; classes?: number[]; graphs?: number[][][] };

import type { FetchLike } from "../src/api.js";

export interface Exchange {
  request: { method: string; path: string; body?: unknown };
  response: unknown;
}

// Serves a recorded transcript in order, failing fast on any divergence
// between what the client sends and what the real server was asked.
export function transcriptFetch(exchanges: Exchange[]): { fetchFn: FetchLike; remaining: () => number } {
  const queue = [...exchanges];
  const fetchFn: FetchLike = async (input, init) => {
    const expected = queue.shift();
    if (!expected) throw new Error(`unexpected request ${input}`);
    const method = init?.method ?? "GET";
    if (method !== expected.request.method || input !== expected.request.path) {
      throw new Error(
        `transcript divergence: got ${method} ${input}, expected ` +
          `${expected.request.method} ${expected.request.path}`,
      );
    }
    if (expected.request.body !== undefined) {
      const sent = JSON.parse((init?.body as string) ?? "null");
      if (JSON.stringify(sent) !== JSON.stringify(expected.request.body)) {
        throw new Error(`transcript divergence on body of ${input}: ${init?.body}`);
      }
    }
    return new Response(JSON.stringify(expected.response), {
      status: 200,
      headers: { "content-type": "application/json" },
    });
  };
  return { fetchFn, remaining: () => queue.length };
}

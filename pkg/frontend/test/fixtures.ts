/** Canned snapshots and a scriptable fake service for view tests. */

import type { SessionApi } from "../src/api.js";
import type {
  ProblemDoc,
  RefinementEventBody,
  SessionDelta,
  SessionSnapshot,
} from "../src/types.js";

export const INTERVAL_SNAPSHOT: SessionSnapshot = {
  id: "fixture",
  kind: "interval",
  alternatives: ["x1", "x2", "x3"],
  criteria: ["K1", "K2"],
  initial: [
    [[4, 6], [4, 6]],
    [[1, 2], [1, 2]],
    [[0, 3], [7, 9]],
  ],
  working: [
    [[4, 6], [4, 6]],
    [[1, 2], [1, 2]],
    [[0, 3], [7, 9]],
  ],
  result: {
    pareto: ["x1", "x3"],
    dominations: [["x1", "x2"]],
    witnesses: { x2: { by: "x1", margins: { K1: 2, K2: 2 } } },
  },
  history: { chain: [["x1", "x3"]], nesting_ok: true, baseline_ok: null },
  suggestions: [
    { kind: "tighten", alt: "x3", criterion: "K1", width: 3, score: 3 },
    { kind: "tighten", alt: "x1", criterion: "K1", width: 2, score: 2 },
  ],
  next_sequence: 1,
  baseline: null,
};

export const RELATION_SNAPSHOT: SessionSnapshot = {
  id: "fixture-rel",
  kind: "relation",
  alternatives: ["x1", "x2", "x3"],
  criteria: ["K1"],
  initial: [[[1, 2]], [[0, 1]], [[0, 2]]],
  working: [[[1, 2]], [[0, 1]], [[0, 2]]],
  result: { pareto: ["x1", "x2", "x3"], dominations: [], witnesses: {} },
  history: { chain: [["x1", "x2", "x3"]], nesting_ok: true, baseline_ok: null },
  suggestions: [
    { kind: "compare", x: "x1", y: "x3", criteria: ["K1"], multiplicity: 1, score: 1 },
    { kind: "compare", x: "x2", y: "x3", criteria: ["K1"], multiplicity: 1, score: 1 },
  ],
  next_sequence: 1,
  baseline: null,
  relations: [{ criterion: "K1", pairs: [["x1", "x2"]] }],
};

/** In-memory SessionApi whose responses the test scripts control. */
export class FakeApi implements SessionApi {
  snapshots: SessionSnapshot[];
  events: RefinementEventBody[] = [];
  undos = 0;
  failNext: Error | null = null;

  constructor(...snapshots: SessionSnapshot[]) {
    this.snapshots = snapshots;
  }

  private current(): SessionSnapshot {
    if (this.snapshots.length === 0) throw new Error("fake has no snapshot");
    return this.snapshots[0]!;
  }

  /** Advance to the next scripted snapshot, as a real event would. */
  private step(): void {
    if (this.snapshots.length > 1) this.snapshots.shift();
  }

  async createSession(_problem: ProblemDoc) {
    const snap = this.current();
    return { session_id: snap.id, pareto: snap.result.pareto, suggestions: snap.suggestions };
  }

  async snapshot(): Promise<SessionSnapshot> {
    return this.current();
  }

  async postEvent(_id: string, event: RefinementEventBody): Promise<SessionDelta> {
    if (this.failNext) {
      const error = this.failNext;
      this.failNext = null;
      throw error;
    }
    this.events.push(event);
    this.step();
    const snap = this.current();
    return {
      new_pareto: snap.result.pareto,
      removed: [],
      changed_intervals: [],
      nesting_ok: true,
    };
  }

  async undo(): Promise<{ pareto: string[] }> {
    this.undos += 1;
    this.step();
    return { pareto: this.current().result.pareto };
  }

  async history() {
    return this.current().history;
  }

  async suggestions() {
    return this.current().suggestions;
  }
}

export function flush(): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, 0));
}

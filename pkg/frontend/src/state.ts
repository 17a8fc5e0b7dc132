/** Session view state: server-acknowledged snapshots only.
 *
 * Every user action maps to exactly one POST, guarded by a pending
 * flag, and is followed by a snapshot refetch; nothing shown in the UI
 * is computed locally.  The nesting re-check below mirrors the engine's
 * certificate as defense in depth, it never replaces it.
 */

import { ApiError, SessionApi } from "./api.js";
import type {
  IntervalBounds,
  ProblemDoc,
  SessionSnapshot,
} from "./types.js";

export interface ViewState {
  snapshot: SessionSnapshot | null;
  pending: boolean;
  error: string | null;
  /** Client-side mirror of the server's nesting certificate. */
  chainVerified: boolean;
}

export type Listener = (state: ViewState) => void;

/** True when every later Pareto set is contained in the one before it. */
export function recheckNesting(chain: string[][]): boolean {
  for (let k = 0; k + 1 < chain.length; k++) {
    const earlier = new Set(chain[k]);
    if (!chain[k + 1]!.every((member) => earlier.has(member))) return false;
  }
  return true;
}

/** Clamp proposed bounds so they never escape the current interval. */
export function clampInward(
  current: IntervalBounds,
  proposed: IntervalBounds,
): IntervalBounds {
  let [lo, hi] = proposed;
  lo = Math.max(current[0], Math.min(lo, current[1]));
  hi = Math.max(current[0], Math.min(hi, current[1]));
  if (lo > hi) [lo, hi] = [hi, lo];
  return [lo, hi];
}

export class SessionStore {
  private state: ViewState = {
    snapshot: null,
    pending: false,
    error: null,
    chainVerified: true,
  };
  private listeners: Listener[] = [];
  private sessionId: string | null = null;

  constructor(readonly client: SessionApi) {}

  get view(): ViewState {
    return this.state;
  }

  get id(): string | null {
    return this.sessionId;
  }

  onChange(listener: Listener): void {
    this.listeners.push(listener);
  }

  private emit(patch: Partial<ViewState>): void {
    this.state = { ...this.state, ...patch };
    for (const listener of this.listeners) listener(this.state);
  }

  async open(problem: ProblemDoc, baseline?: string[]): Promise<void> {
    const created = await this.guarded(() => this.client.createSession(problem, baseline));
    this.sessionId = created.session_id;
    await this.refresh();
  }

  async attach(sessionId: string): Promise<void> {
    this.sessionId = sessionId;
    await this.refresh();
  }

  /** Refetch the snapshot; leaves any error banner in place. */
  async refresh(): Promise<void> {
    if (!this.sessionId) return;
    const snapshot = await this.client.snapshot(this.sessionId);
    this.emit({
      snapshot,
      chainVerified: recheckNesting(snapshot.history.chain),
    });
  }

  /** One POST per action; refuses to fire while another is in flight. */
  private async guarded<T>(action: () => Promise<T>): Promise<T> {
    if (this.state.pending) throw new Error("an action is already in flight");
    this.emit({ pending: true, error: null });
    try {
      return await action();
    } finally {
      this.emit({ pending: false });
    }
  }

  private async act(action: () => Promise<unknown>): Promise<boolean> {
    try {
      await this.guarded(action);
      await this.refresh();
      return true;
    } catch (error) {
      if (error instanceof ApiError) {
        this.emit({ error: `${error.code}: ${error.message}` });
        // the server may have moved on (stale sequence after a double
        // submit); refetch so the view shows acknowledged state
        await this.refresh().catch(() => undefined);
        return false;
      }
      throw error;
    }
  }

  submitTighten(alt: string, criterion: string, bounds: IntervalBounds): Promise<boolean> {
    const snapshot = this.requireSnapshot();
    return this.act(() =>
      this.client.postEvent(this.requireId(), {
        sequence: snapshot.next_sequence,
        kind: "tighten",
        alt,
        criterion,
        interval: bounds,
      }),
    );
  }

  submitComparison(criterion: string, preferred: string, other: string): Promise<boolean> {
    const snapshot = this.requireSnapshot();
    return this.act(() =>
      this.client.postEvent(this.requireId(), {
        sequence: snapshot.next_sequence,
        kind: "compare",
        criterion,
        preferred,
        other,
      }),
    );
  }

  undo(): Promise<boolean> {
    return this.act(() => this.client.undo(this.requireId()));
  }

  dismissError(): void {
    this.emit({ error: null });
  }

  private requireId(): string {
    if (!this.sessionId) throw new Error("no session attached");
    return this.sessionId;
  }

  private requireSnapshot(): SessionSnapshot {
    if (!this.state.snapshot) throw new Error("no snapshot loaded yet");
    return this.state.snapshot;
  }
}

/** Wire formats of the session service, mirrored field for field. */

export type IntervalBounds = [number, number];

export interface WitnessView {
  by: string;
  margins: Record<string, number>;
}

export interface ParetoView {
  pareto: string[];
  dominations: [string, string][];
  witnesses: Record<string, WitnessView>;
}

export interface HistoryView {
  chain: string[][];
  nesting_ok: boolean;
  baseline_ok: boolean | null;
}

export interface CompareSuggestionView {
  kind: "compare";
  x: string;
  y: string;
  criteria: string[];
  multiplicity: number;
  score: number;
}

export interface TightenSuggestionView {
  kind: "tighten";
  alt: string;
  criterion: string;
  width: number;
  score: number;
}

export type SuggestionView = CompareSuggestionView | TightenSuggestionView;

export interface RelationView {
  criterion: string;
  pairs: [string, string][];
}

export interface SessionSnapshot {
  id: string;
  kind: "interval" | "relation";
  alternatives: string[];
  criteria: string[];
  initial: IntervalBounds[][];
  working: IntervalBounds[][];
  result: ParetoView;
  history: HistoryView;
  suggestions: SuggestionView[];
  next_sequence: number;
  baseline: string[] | null;
  relations?: RelationView[];
}

export interface SessionDelta {
  new_pareto: string[];
  removed: string[];
  changed_intervals: {
    alt: string;
    criterion: string;
    old: IntervalBounds;
    new: IntervalBounds;
  }[];
  nesting_ok: boolean;
}

export interface SessionCreated {
  session_id: string;
  pareto: string[];
  suggestions: SuggestionView[];
}

export type RefinementEventBody =
  | {
      sequence: number;
      kind: "tighten";
      alt: string;
      criterion: string;
      interval: IntervalBounds;
    }
  | {
      sequence: number;
      kind: "compare";
      criterion: string;
      preferred: string;
      other: string;
    };

/** Problem document accepted by POST /api/v1/sessions. */
export interface ProblemDoc {
  alternatives: string[];
  criteria: string[];
  structure: unknown;
}

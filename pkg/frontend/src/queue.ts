/** Comparison queue: one prompt card per unmatched (pair, criterion).
 *
 * Prompts follow the engine's suggestion order (most unmatched criteria
 * first).  Answering posts one comparison event; skipping only hides
 * the prompt locally and posts nothing.
 */

import { clear, el } from "./dom.js";
import { SessionStore } from "./state.js";
import type { SessionSnapshot } from "./types.js";

export interface Prompt {
  x: string;
  y: string;
  criterion: string;
}

export function promptKey(prompt: Prompt): string {
  return `${prompt.x}|${prompt.y}|${prompt.criterion}`;
}

/** Flatten compare suggestions into per-criterion prompts, in order. */
export function buildPrompts(snapshot: SessionSnapshot, skipped: Set<string>): Prompt[] {
  const prompts: Prompt[] = [];
  for (const suggestion of snapshot.suggestions) {
    if (suggestion.kind !== "compare") continue;
    for (const criterion of suggestion.criteria) {
      const prompt = { x: suggestion.x, y: suggestion.y, criterion };
      if (!skipped.has(promptKey(prompt))) prompts.push(prompt);
    }
  }
  return prompts;
}

export function renderComparisonQueue(
  container: HTMLElement,
  snapshot: SessionSnapshot,
  store: SessionStore,
  skipped: Set<string>,
  onSkip: () => void,
): void {
  clear(container);
  const prompts = buildPrompts(snapshot, skipped);
  const head = prompts[0];
  if (!head) {
    container.appendChild(el("p", { className: "queue-done" }, "No questions remain."));
    return;
  }
  const ask = (preferred: string, other: string) => () => {
    if (store.view.pending) return;
    void store.submitComparison(head.criterion, preferred, other);
  };
  const card = el(
    "div",
    { className: "prompt", "data-prompt": promptKey(head) },
    el("p", {}, `Is ${head.x} preferred to ${head.y} on ${head.criterion}?`),
    el(
      "div",
      { className: "prompt-buttons" },
      el("button", { "data-answer": "x", onclick: ask(head.x, head.y) }, `${head.x} better`),
      el("button", { "data-answer": "y", onclick: ask(head.y, head.x) }, `${head.y} better`),
      el(
        "button",
        {
          "data-answer": "skip",
          onclick: () => {
            skipped.add(promptKey(head));
            onSkip();
          },
        },
        "skip",
      ),
    ),
    el("p", { className: "prompt-note" }, `${prompts.length} question(s) queued`),
  );
  container.appendChild(card);
}

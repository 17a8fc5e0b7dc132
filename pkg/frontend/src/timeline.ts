/** History timeline: one row per Pareto set, oldest first.
 *
 * The engine's nesting certificate is displayed next to the client's
 * own subset re-check; they should never disagree, and a disagreement
 * is rendered loudly rather than hidden.
 */

import { clear, el } from "./dom.js";
import { recheckNesting, SessionStore } from "./state.js";
import type { SessionSnapshot } from "./types.js";

export function renderHistoryTimeline(
  container: HTMLElement,
  snapshot: SessionSnapshot,
  store: SessionStore,
): void {
  clear(container);
  const { chain, nesting_ok, baseline_ok } = snapshot.history;
  const verified = recheckNesting(chain);
  const timeline = el("div", { className: "timeline" });

  chain.forEach((members, step) => {
    const previous = step > 0 ? new Set(chain[step - 1]) : null;
    const row = el(
      "div",
      { className: "timeline-row", "data-step": String(step) },
      el("span", { className: "timeline-step" }, step === 0 ? "start" : `#${step}`),
    );
    const chips = el("div", { className: "timeline-chips" });
    for (const member of members) chips.appendChild(el("span", { className: "chip" }, member));
    if (previous) {
      for (const gone of [...previous].filter((m) => !members.includes(m))) {
        chips.appendChild(el("span", { className: "chip dropped" }, gone));
      }
    }
    row.appendChild(chips);
    timeline.appendChild(row);
  });

  const badges = el(
    "div",
    { className: "timeline-badges" },
    badge("engine certificate", nesting_ok),
    badge("client re-check", verified),
    baseline_ok === null ? null : badge("baseline contained", baseline_ok),
  );
  const undo = el(
    "button",
    {
      className: "undo",
      disabled: snapshot.next_sequence === 1 || store.view.pending,
      onclick: () => {
        if (!store.view.pending) void store.undo();
      },
    },
    "undo last step",
  );
  container.appendChild(timeline);
  container.appendChild(badges);
  container.appendChild(undo);
}

function badge(label: string, ok: boolean): HTMLElement {
  return el(
    "span",
    { className: ok ? "badge ok" : "badge broken" },
    `${label}: ${ok ? "ok" : "VIOLATED"}`,
  );
}

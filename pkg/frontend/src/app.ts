/** Dialogue console wiring: open a session, render panels, surface errors.
 *
 * Rendering is a pure function of the last server-acknowledged
 * snapshot; every action round-trips through the service and refetches.
 */

import { Client } from "./api.js";
import { renderParetoBoard } from "./board.js";
import { clear, el } from "./dom.js";
import { renderComparisonQueue } from "./queue.js";
import { SessionStore } from "./state.js";
import { renderIntervalChart } from "./sliders.js";
import { renderHistoryTimeline } from "./timeline.js";
import type { ProblemDoc } from "./types.js";

export interface App {
  store: SessionStore;
  root: HTMLElement;
}

export function mountApp(root: HTMLElement, baseUrl: string): App {
  const store = new SessionStore(new Client(baseUrl));
  const skipped = new Set<string>();

  const banner = el("div", { className: "banner hidden" });
  const opener = renderOpener(store);
  const panels = {
    board: el("section", { className: "panel board-panel" }),
    chart: el("section", { className: "panel chart-panel" }),
    queue: el("section", { className: "panel queue-panel" }),
    timeline: el("section", { className: "panel timeline-panel" }),
  };

  clear(root);
  root.appendChild(banner);
  root.appendChild(opener);
  for (const panel of Object.values(panels)) root.appendChild(panel);

  function render(): void {
    const { snapshot, error, pending } = store.view;
    banner.className = error ? "banner" : "banner hidden";
    banner.textContent = error ?? "";
    root.classList.toggle("pending", pending);
    if (!snapshot) return;
    opener.classList.add("hidden");
    renderParetoBoard(panels.board, snapshot);
    if (snapshot.kind === "interval") {
      renderIntervalChart(panels.chart, snapshot, store);
      clear(panels.queue);
    } else {
      renderComparisonQueue(panels.queue, snapshot, store, skipped, render);
      renderIntervalChart(panels.chart, snapshot, store);
    }
    renderHistoryTimeline(panels.timeline, snapshot, store);
  }

  store.onChange(render);
  return { store, root };
}

function renderOpener(store: SessionStore): HTMLElement {
  const input = el("textarea", {
    className: "problem-input",
    placeholder: "paste a problem JSON document",
    rows: "10",
  }) as HTMLTextAreaElement;
  const open = el(
    "button",
    {
      onclick: () => {
        let problem: ProblemDoc;
        try {
          problem = JSON.parse(input.value) as ProblemDoc;
        } catch (error) {
          window.alert(`not valid JSON: ${String(error)}`);
          return;
        }
        void store.open(problem);
      },
    },
    "open session",
  );
  return el("section", { className: "panel opener" }, input, open);
}

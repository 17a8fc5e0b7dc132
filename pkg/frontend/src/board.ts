/** Pareto board: one card per alternative, winners highlighted,
 * eliminated cards greyed with the engine's elimination witness. */

import { clear, el } from "./dom.js";
import type { SessionSnapshot } from "./types.js";

export function witnessText(snapshot: SessionSnapshot, alt: string): string {
  const witness = snapshot.result.witnesses[alt];
  if (!witness) return "";
  const margins = Object.entries(witness.margins)
    .map(([criterion, value]) => `${criterion} ${value >= 0 ? "+" : ""}${round3(value)}`)
    .join(", ");
  return `dominated by ${witness.by} (${margins})`;
}

function round3(value: number): number {
  return Math.round(value * 1000) / 1000;
}

export function renderParetoBoard(container: HTMLElement, snapshot: SessionSnapshot): void {
  clear(container);
  const members = new Set(snapshot.result.pareto);
  const board = el("div", { className: "board" });
  for (const alt of snapshot.alternatives) {
    const inPareto = members.has(alt);
    const card = el(
      "div",
      {
        className: inPareto ? "card pareto" : "card eliminated",
        "data-alt": alt,
        title: inPareto ? "" : witnessText(snapshot, alt),
      },
      el("div", { className: "card-name" }, alt),
      el(
        "div",
        { className: "card-status" },
        inPareto ? "Pareto" : witnessText(snapshot, alt),
      ),
    );
    board.appendChild(card);
  }
  container.appendChild(board);
}

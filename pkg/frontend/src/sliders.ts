/** Per-criterion interval chart with inward-only draggable endpoints.
 *
 * Each cell draws the initial interval as the track and the current
 * working interval as the filled bar with two handles.  Handles clamp
 * to the current interval while dragging (the client mirror of the
 * engine's contraction rule); the event posted on release can only
 * narrow, and the server stays the authority.
 */

import { clear, el } from "./dom.js";
import { clampInward, SessionStore } from "./state.js";
import type { IntervalBounds, SessionSnapshot } from "./types.js";

interface Scale {
  toFraction(value: number): number;
  fromClientX(clientX: number, rect: DOMRect): number;
}

function makeScale(initial: IntervalBounds): Scale {
  const [lo, hi] = initial;
  const span = hi - lo || 1;
  return {
    toFraction: (value) => (value - lo) / span,
    fromClientX: (clientX, rect) => {
      const fraction = Math.min(1, Math.max(0, (clientX - rect.left) / (rect.width || 1)));
      return lo + fraction * span;
    },
  };
}

/** Next bounds after dragging one handle to `value`, never widening. */
export function dragTarget(
  current: IntervalBounds,
  handle: "lo" | "hi",
  value: number,
): IntervalBounds {
  const proposed: IntervalBounds =
    handle === "lo" ? [value, current[1]] : [current[0], value];
  return clampInward(current, proposed);
}

function formatBounds([lo, hi]: IntervalBounds): string {
  const fmt = (v: number) => String(Math.round(v * 100) / 100);
  return `[${fmt(lo)}, ${fmt(hi)}]`;
}

export function renderIntervalChart(
  container: HTMLElement,
  snapshot: SessionSnapshot,
  store: SessionStore,
): void {
  clear(container);
  const chart = el("div", { className: "chart" });
  snapshot.alternatives.forEach((alt, i) => {
    const group = el("div", { className: "chart-row" }, el("h4", {}, alt));
    snapshot.criteria.forEach((criterion, j) => {
      group.appendChild(
        renderCell(snapshot, store, alt, criterion, snapshot.initial[i]![j]!, snapshot.working[i]![j]!),
      );
    });
    chart.appendChild(group);
  });
  container.appendChild(chart);
}

function renderCell(
  snapshot: SessionSnapshot,
  store: SessionStore,
  alt: string,
  criterion: string,
  initial: IntervalBounds,
  working: IntervalBounds,
): HTMLElement {
  const scale = makeScale(initial);
  const track = el("div", { className: "track", "data-cell": `${alt}/${criterion}` });
  const bar = el("div", { className: "bar" });
  const handles = {
    lo: el("div", { className: "handle lo", "data-handle": "lo" }),
    hi: el("div", { className: "handle hi", "data-handle": "hi" }),
  };
  const label = el("span", { className: "bounds" }, formatBounds(working));

  let shown: IntervalBounds = [...working] as IntervalBounds;

  function paint(): void {
    const left = scale.toFraction(shown[0]) * 100;
    const right = scale.toFraction(shown[1]) * 100;
    bar.style.left = `${left}%`;
    bar.style.width = `${Math.max(0, right - left)}%`;
    handles.lo.style.left = `${left}%`;
    handles.hi.style.left = `${right}%`;
    label.textContent = formatBounds(shown);
  }

  function startDrag(handle: "lo" | "hi", down: PointerEvent): void {
    if (store.view.pending) return;
    down.preventDefault();
    const move = (event: PointerEvent) => {
      const value = scale.fromClientX(event.clientX, track.getBoundingClientRect());
      shown = dragTarget(working, handle, value);
      paint();
    };
    const up = () => {
      window.removeEventListener("pointermove", move);
      window.removeEventListener("pointerup", up);
      const changed = shown[0] !== working[0] || shown[1] !== working[1];
      if (changed) {
        void store.submitTighten(alt, criterion, shown).then((accepted) => {
          if (!accepted) {
            shown = [...working] as IntervalBounds;
            paint();
          }
        });
      }
    };
    window.addEventListener("pointermove", move);
    window.addEventListener("pointerup", up);
  }

  handles.lo.addEventListener("pointerdown", (e) => startDrag("lo", e as PointerEvent));
  handles.hi.addEventListener("pointerdown", (e) => startDrag("hi", e as PointerEvent));

  track.appendChild(bar);
  track.appendChild(handles.lo);
  track.appendChild(handles.hi);
  paint();
  return el(
    "div",
    { className: "cell" },
    el("span", { className: "cell-name" }, criterion),
    track,
    label,
  );
}

/*
 * Number-line layout: nested bracket pairs, target overlay shading, and
 * the auto-zoom rule.
 *
 * FLOAT QUARANTINE: this module is the only place in the client where
 * floating point exists, and only for pixel placement (the final map
 * from an exact position ratio to a canvas x coordinate).  All game
 * arithmetic - zoom thresholds, window halving, clipping - is exact
 * Rational work.
 */

import { Rational, midpoint } from "./rational.js";

export interface ZoomState {
  lo: Rational;
  hi: Rational;
  events: number;
}

export function initialZoom(a0: string, b0: string): ZoomState {
  return { lo: Rational.parse(a0), hi: Rational.parse(b0), events: 0 };
}

/**
 * Double the magnification while the bracket is under a tenth of the
 * window: halve the window around the bracket's center, clamped to stay
 * inside the previous window.  Brackets shrink geometrically, so this
 * fires repeatedly as play deepens; each firing counts one zoom event.
 */
export function autoZoom(state: ZoomState, bracketLo: Rational, bracketHi: Rational): ZoomState {
  let { lo, hi, events } = state;
  let width = hi.sub(lo);
  const bracketWidth = bracketHi.sub(bracketLo);
  while (bracketWidth.scale(10n, 1n).lt(width)) {
    const half = width.scale(1n, 4n); // half of the halved window
    const center = midpoint(bracketLo, bracketHi);
    let nextLo = center.sub(half);
    let nextHi = center.add(half);
    if (nextLo.lt(lo)) {
      nextHi = nextHi.add(lo.sub(nextLo));
      nextLo = lo;
    } else if (hi.lt(nextHi)) {
      nextLo = nextLo.sub(nextHi.sub(hi));
      nextHi = hi;
    }
    lo = nextLo;
    hi = nextHi;
    width = hi.sub(lo);
    events += 1;
  }
  return { lo, hi, events };
}

export interface BracketMark {
  round: number;
  loX: number | null; // null when off-window
  hiX: number | null;
  lo: string;
  hi: string;
}

export interface Box {
  loX: number;
  hiX: number;
}

export interface Drawing {
  window: { lo: string; hi: string };
  zoomEvents: number;
  brackets: BracketMark[];
  overlay: Box[];
  legal: Box | null;
}

/** Exact position ratio within the window, then one float per pixel. */
function toX(value: Rational, window: ZoomState, widthPx: number): number {
  const t = value.sub(window.lo); // numerator of the ratio
  const span = window.hi.sub(window.lo);
  // ratio = t / span in [0, 1]; take 6 exact decimal digits, then float
  const scaled = (t.num * span.den * 1000000n) / (t.den * span.num);
  return (Number(scaled) / 1000000) * widthPx;
}

function clippedBox(
  lo: Rational,
  hi: Rational,
  window: ZoomState,
  widthPx: number,
): Box | null {
  if (hi.le(window.lo) || window.hi.le(lo)) {
    return null;
  }
  const left = window.lo.lt(lo) ? lo : window.lo;
  const right = hi.lt(window.hi) ? hi : window.hi;
  return { loX: toX(left, window, widthPx), hiX: toX(right, window, widthPx) };
}

export interface ViewForLayout {
  config: { a0: string; b0: string };
  rounds: [string, string][];
  pending_a: string | null;
  legal_bounds: { lo: string; hi: string };
}

/**
 * Lay out a session view: every round's bracket pair, the current legal
 * interval, and the target overlay cells, all relative to the zoom
 * window.  Pure data in, draw list out; the canvas renderer only paints.
 */
export function layout(
  view: ViewForLayout,
  overlayIntervals: [string, string][],
  window: ZoomState,
  widthPx: number,
): Drawing {
  const brackets: BracketMark[] = view.rounds.map(([a, b], i) => {
    const lo = Rational.parse(a);
    const hi = Rational.parse(b);
    const visible = (v: Rational) =>
      window.lo.le(v) && v.le(window.hi) ? toX(v, window, widthPx) : null;
    return { round: i + 1, loX: visible(lo), hiX: visible(hi), lo: a, hi: b };
  });
  const overlay: Box[] = [];
  for (const [a, b] of overlayIntervals) {
    const box = clippedBox(Rational.parse(a), Rational.parse(b), window, widthPx);
    if (box !== null) {
      overlay.push(box);
    }
  }
  const legal = clippedBox(
    Rational.parse(view.legal_bounds.lo),
    Rational.parse(view.legal_bounds.hi),
    window,
    widthPx,
  );
  return {
    window: { lo: window.lo.toString(), hi: window.hi.toString() },
    zoomEvents: window.events,
    brackets,
    overlay,
    legal,
  };
}

/*
 * Client-side move handling: exact optimistic validation against the
 * server's legal-bounds hint.  The server stays the validator of
 * record; a locally accepted move is sent verbatim and must echo back
 * byte-identically.
 */

import { Rational, midpoint } from "./rational.js";
import type { Bounds } from "./api.js";

export type LocalCheck =
  | { ok: true; value: string }
  | { ok: false; code: "ParseError" | "OutOfBounds"; message: string };

/** Exact pre-check of a typed move against the current bounds hint. */
export function validateMove(input: string, bounds: Bounds): LocalCheck {
  const trimmed = input.trim();
  const value = Rational.tryParse(trimmed);
  if (value === null) {
    return {
      ok: false,
      code: "ParseError",
      message: 'enter an exact fraction in lowest terms, like "5/8"',
    };
  }
  const lo = Rational.parse(bounds.lo);
  const hi = Rational.parse(bounds.hi);
  if (!lo.lt(value)) {
    return {
      ok: false,
      code: "OutOfBounds",
      message: `move must be greater than ${bounds.lo}`,
    };
  }
  if (!value.lt(hi)) {
    return {
      ok: false,
      code: "OutOfBounds",
      message: `move must be less than ${bounds.hi}`,
    };
  }
  return { ok: true, value: trimmed };
}

/** The exact midpoint of the bounds hint, as a wire string. */
export function midpointMove(bounds: Bounds): string {
  return midpoint(Rational.parse(bounds.lo), Rational.parse(bounds.hi)).toString();
}

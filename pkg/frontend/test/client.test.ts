import { describe, expect, it } from "vitest";

import { midpointMove, validateMove } from "../src/client.js";

const BOUNDS = { lo: "0/1", hi: "1/2" };

describe("local move validation", () => {
  it("accepts an in-bounds fraction verbatim", () => {
    const check = validateMove("1/3", BOUNDS);
    expect(check).toEqual({ ok: true, value: "1/3" });
  });

  it("rejects out-of-bounds input showing the exact bound", () => {
    const check = validateMove("2/3", BOUNDS);
    expect(check.ok).toBe(false);
    if (!check.ok) {
      expect(check.code).toBe("OutOfBounds");
      expect(check.message).toContain("1/2");
    }
  });

  it("treats the bounds as strict", () => {
    for (const boundary of ["0/1", "1/2"]) {
      const check = validateMove(boundary, BOUNDS);
      expect(check.ok).toBe(false);
    }
  });

  it("demands the p/q form", () => {
    const check = validateMove("0.5", BOUNDS);
    expect(check.ok).toBe(false);
    if (!check.ok) {
      expect(check.code).toBe("ParseError");
      expect(check.message).toMatch(/fraction/);
    }
  });

  it("trims surrounding whitespace only", () => {
    expect(validateMove(" 1/3 ", BOUNDS)).toEqual({ ok: true, value: "1/3" });
    expect(validateMove("1 /3", BOUNDS).ok).toBe(false);
  });
});

describe("midpoint helper", () => {
  it("is exact", () => {
    expect(midpointMove(BOUNDS)).toBe("1/4");
    expect(midpointMove({ lo: "1/3", hi: "1/2" })).toBe("5/12");
  });
});

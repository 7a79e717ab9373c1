import { describe, expect, it } from "vitest";

import { Rational, RationalParseError, midpoint } from "../src/rational.js";

describe("wire format", () => {
  it("round-trips lowest-term fractions", () => {
    for (const text of ["0/1", "1/1", "-3/7", "2/1", "355/113", "174535/262144"]) {
      expect(Rational.parse(text).toString()).toBe(text);
    }
  });

  it("rejects anything the server would reject", () => {
    for (const bad of ["3/6", "0.5", "1/-2", "-0/1", "03/7", "1/0", "5", "", "1 /2"]) {
      expect(() => Rational.parse(bad)).toThrow(RationalParseError);
      expect(Rational.tryParse(bad)).toBeNull();
    }
  });

  it("normalizes construction", () => {
    expect(Rational.of(2n, 6n).toString()).toBe("1/3");
    expect(Rational.of(1n, -2n).toString()).toBe("-1/2");
  });
});

describe("ordering and arithmetic", () => {
  it("compares by cross multiplication", () => {
    expect(Rational.parse("7/12").cmp(Rational.parse("4/7"))).toBe(1);
    expect(Rational.parse("1/3").cmp(Rational.of(2n, 6n))).toBe(0);
    expect(Rational.parse("0/1").lt(Rational.parse("1/1"))).toBe(true);
  });

  it("computes exact midpoints", () => {
    const mid = midpoint(Rational.parse("1/2"), Rational.parse("2/3"));
    expect(mid.toString()).toBe("7/12");
  });

  it("handles big denominators exactly", () => {
    const tiny = Rational.of(1n, 2n ** 200n);
    const sum = tiny.add(tiny);
    expect(sum.toString()).toBe(`1/${(2n ** 199n).toString()}`);
  });
});

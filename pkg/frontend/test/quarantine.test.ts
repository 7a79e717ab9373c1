/* The float quarantine is a hard module boundary: game-logic sources
 * must not touch floating point in any form; only the number-line
 * renderer may, and only for pixel placement. */

import { readFileSync } from "node:fs";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

const FORBIDDEN = [/\bNumber\s*\(/, /\bparseFloat\b/, /\bMath\./, /\btoFloat\b/];
const LOGIC_MODULES = ["rational.ts", "api.ts", "client.ts"];

function source(name: string): string {
  return readFileSync(
    fileURLToPath(new URL(`../src/${name}`, import.meta.url)),
    "utf-8",
  );
}

describe("float quarantine", () => {
  for (const name of LOGIC_MODULES) {
    it(`${name} is float-free`, () => {
      const text = source(name);
      for (const pattern of FORBIDDEN) {
        expect(text).not.toMatch(pattern);
      }
    });
  }

  it("numberline.ts declares the quarantine", () => {
    expect(source("numberline.ts")).toMatch(/FLOAT QUARANTINE/);
  });
});

/*
 * Exact rationals over BigInt for the play console.
 *
 * Game-logic decisions in the client (move legality, zoom thresholds,
 * bracket widths) must never touch floating point; everything here is
 * exact integer arithmetic.  The wire format mirrors the server: the
 * string "num/den" in lowest terms with a positive denominator and an
 * optional leading minus sign, so an accepted move echoes back from the
 * server byte-for-byte identical.
 */

const WIRE_RE = /^-?(0|[1-9][0-9]*)\/([1-9][0-9]*)$/;

function gcd(a: bigint, b: bigint): bigint {
  a = a < 0n ? -a : a;
  b = b < 0n ? -b : b;
  while (b !== 0n) {
    [a, b] = [b, a % b];
  }
  return a;
}

export class RationalParseError extends Error {}

export class Rational {
  readonly num: bigint;
  readonly den: bigint;

  private constructor(num: bigint, den: bigint) {
    this.num = num;
    this.den = den;
  }

  static of(num: bigint, den: bigint = 1n): Rational {
    if (den === 0n) {
      throw new RationalParseError("denominator must be nonzero");
    }
    if (den < 0n) {
      num = -num;
      den = -den;
    }
    const g = gcd(num, den);
    return g > 1n ? new Rational(num / g, den / g) : new Rational(num, den);
  }

  /** Strict wire-format parse; rejects anything not in lowest terms. */
  static parse(text: string): Rational {
    if (!WIRE_RE.test(text)) {
      throw new RationalParseError(`not a num/den fraction: ${JSON.stringify(text)}`);
    }
    const [numText, denText] = text.split("/") as [string, string];
    const value = Rational.of(BigInt(numText), BigInt(denText));
    if (value.toString() !== text) {
      throw new RationalParseError(`not in lowest terms: ${JSON.stringify(text)}`);
    }
    return value;
  }

  static tryParse(text: string): Rational | null {
    try {
      return Rational.parse(text);
    } catch {
      return null;
    }
  }

  toString(): string {
    return `${this.num}/${this.den}`;
  }

  cmp(other: Rational): -1 | 0 | 1 {
    const lhs = this.num * other.den;
    const rhs = other.num * this.den;
    if (lhs < rhs) return -1;
    if (lhs > rhs) return 1;
    return 0;
  }

  lt(other: Rational): boolean {
    return this.cmp(other) < 0;
  }

  le(other: Rational): boolean {
    return this.cmp(other) <= 0;
  }

  eq(other: Rational): boolean {
    return this.cmp(other) === 0;
  }

  add(other: Rational): Rational {
    return Rational.of(this.num * other.den + other.num * this.den, this.den * other.den);
  }

  sub(other: Rational): Rational {
    return Rational.of(this.num * other.den - other.num * this.den, this.den * other.den);
  }

  /** Scale by an integer ratio p/q (exact). */
  scale(p: bigint, q: bigint): Rational {
    return Rational.of(this.num * p, this.den * q);
  }
}

export function midpoint(a: Rational, b: Rational): Rational {
  return a.add(b).scale(1n, 2n);
}

"""Generalized Cantor sets as lazily expanded binary interval trees.

A tree assigns to every finite bit string p a closed rational interval
I_p = [c_p, d_p] such that, for every depth n >= 1,

  (1) 0 < d_p - c_p < e_n        (widths beaten by a fixed decreasing
                                  positive bound sequence e_n -> 0),
  (2) I_p is contained in its parent interval,
  (3) sibling intervals are disjoint.

The set carved out is C = intersection over n of the union of all
depth-n intervals.  Distinct same-depth intervals are pairwise disjoint
(two same-depth nodes have a strict common ancestor between them whose
children separate them), every point of C corresponds to a unique
infinite 0/1 code, and C is perfect: flipping one code bit beyond any
depth N produces a different point of C at distance below e_N.

``expand`` materializes nodes on demand through a caller-supplied child
generator and memoizes them; the defining clauses (1)-(3) are checked
locally at every expansion, and ``validate_tree`` re-checks them plus
full same-depth pairwise disjointness to a requested depth.

Subset containment here is inclusive: children may share endpoints
with their parents.  Trees where every 0-child keeps its parent's left
endpoint are "left-anchored"; their trailing-zero codes name exact
rational members (``anchored_value``), which is what makes membership
certificates and the chaser strategy possible with exact arithmetic.

``avoid_open_cover_tree`` builds a witness tree inside the complement
of a finite open cover of bounded total length: each node splits at its
midpoint, keeps the largest uncovered closed piece of each half, and
shrinks it to its middle half so siblings stay strictly disjoint.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable

from .rationals import Rat, format_rat

Interval = tuple[Rat, Rat]


class GeneratorViolationError(ValueError):
    """A child generator broke one of the tree clauses at some node."""

    def __init__(self, path: str, clause: int, detail: str):
        super().__init__(f"clause ({clause}) violated under node {path!r}: {detail}")
        self.path = path
        self.clause = clause
        self.detail = detail


class NotAnchoredError(ValueError):
    """Operation requires a left-anchored tree and an all-zeros tail."""


class CoverTooLargeError(ValueError):
    """Open cover mass exceeds the allowed fraction of the host interval."""


class ConstructionStuckError(RuntimeError):
    """A branch of the cover-avoiding construction has no uncovered room."""

    def __init__(self, path: str):
        super().__init__(f"no positive-width uncovered piece under node {path!r}")
        self.path = path


@dataclass(frozen=True)
class HalvingRule:
    """Width bounds e_n = base / 2^n."""

    base: Rat

    def __call__(self, n: int) -> Rat:
        if n < 1:
            raise ValueError("bound sequence is indexed from 1")
        return self.base / (1 << n)


class CantorTree:
    """Lazily expanded binary interval tree with exact endpoints.

    ``generator(path, parent_interval)`` must return the pair of child
    intervals (left, right).  Expansion is memoized; expanding the same
    path twice yields identical endpoints without re-invoking the
    generator.  Concurrent expansion must be serialized by the caller;
    a fully expanded tree is immutable and safe to share.
    """

    def __init__(
        self,
        root: Interval,
        e_rule: Callable[[int], Rat],
        generator: Callable[[str, Interval], tuple[Interval, Interval]],
        *,
        left_anchored: bool = False,
        descriptor: str = "custom",
    ):
        c, d = root
        if not c < d:
            raise ValueError("root interval requires c < d")
        self.e_rule = e_rule
        self.left_anchored = left_anchored
        self.descriptor = descriptor
        self._generator = generator
        self._nodes: dict[str, Interval] = {"": (c, d)}

    @property
    def root(self) -> Interval:
        return self._nodes[""]

    def e_bound(self, n: int) -> Rat:
        return self.e_rule(n)

    def interval(self, path: str) -> Interval:
        """Exact endpoints of node ``path``, expanding as needed."""
        if path in self._nodes:
            return self._nodes[path]
        if path.strip("01"):
            raise ValueError(f"paths are 0/1 strings, got {path!r}")
        # Find the deepest materialized ancestor, then expand downward.
        k = len(path)
        while path[:k] not in self._nodes:
            k -= 1
        for depth in range(k, len(path)):
            self._expand_children(path[:depth])
        return self._nodes[path]

    def _expand_children(self, path: str) -> None:
        parent = self._nodes[path]
        left, right = self._generator(path, parent)
        n = len(path) + 1
        bound = self.e_rule(n)
        for bit, (c, d) in (("0", left), ("1", right)):
            child = path + bit
            if not c < d or not d - c < bound:
                raise GeneratorViolationError(
                    path,
                    1,
                    f"node {child!r} width {format_rat(d - c)} not in "
                    f"(0, {format_rat(bound)})",
                )
            if not (parent[0] <= c and d <= parent[1]):
                raise GeneratorViolationError(
                    path, 2, f"node {child!r} escapes its parent"
                )
        if not _disjoint(left, right):
            raise GeneratorViolationError(path, 3, "sibling intervals intersect")
        if self.left_anchored and left[0] != parent[0]:
            raise NotAnchoredError(
                f"tree declared left-anchored but node {path + '0'!r} moved "
                "off its parent's left endpoint"
            )
        self._nodes[path + "0"] = left
        self._nodes[path + "1"] = right

    def subtree(self, path: str) -> "CantorTree":
        """The tree rooted at ``path`` (bound sequence shifted to match)."""
        root = self.interval(path)
        offset = len(path)
        outer = self

        def gen(p: str, _parent: Interval) -> tuple[Interval, Interval]:
            return outer.interval(path + p + "0"), outer.interval(path + p + "1")

        return CantorTree(
            root,
            lambda n: outer.e_rule(offset + n),
            gen,
            left_anchored=self.left_anchored,
            descriptor=f"{self.descriptor}/subtree[{path}]",
        )


def _disjoint(p: Interval, q: Interval) -> bool:
    return p[1] < q[0] or q[1] < p[0]


@dataclass(frozen=True)
class Violation:
    clause: str
    paths: tuple[str, ...]
    detail: str


@dataclass(frozen=True)
class ValidationReport:
    nodes_checked: int
    violations: tuple[Violation, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_tree(tree: CantorTree, depth: int) -> ValidationReport:
    """Expand all nodes to ``depth`` and check every clause exactly.

    Checks width clause (1), nesting clause (2), sibling disjointness
    (3), and pairwise disjointness of ALL same-depth intervals, not just
    siblings.  Violations are report entries, never exceptions.
    """
    if depth < 1:
        raise ValueError("validation depth must be >= 1")
    violations: list[Violation] = []
    levels: list[list[tuple[str, Interval]]] = [[("", tree.root)]]
    checked = 0
    for n in range(1, depth + 1):
        level: list[tuple[str, Interval]] = []
        bound = tree.e_bound(n)
        for path, parent in levels[n - 1]:
            try:
                children = [
                    (path + "0", tree.interval(path + "0")),
                    (path + "1", tree.interval(path + "1")),
                ]
            except GeneratorViolationError as err:
                violations.append(
                    Violation(f"({err.clause})", (err.path,), err.detail)
                )
                continue
            for child_path, (c, d) in children:
                checked += 1
                if not (c < d and d - c < bound):
                    violations.append(
                        Violation(
                            "(1)",
                            (child_path,),
                            f"width {format_rat(d - c)} not in (0, {format_rat(bound)})",
                        )
                    )
                if not (parent[0] <= c and d <= parent[1]):
                    violations.append(
                        Violation("(2)", (child_path,), "escapes parent interval")
                    )
            if not _disjoint(children[0][1], children[1][1]):
                violations.append(
                    Violation(
                        "(3)", (children[0][0], children[1][0]), "siblings intersect"
                    )
                )
            level.extend(children)
        # Same-depth pairwise disjointness; 2^depth stays desk-sized here.
        for i in range(len(level)):
            for j in range(i + 1, len(level)):
                if not _disjoint(level[i][1], level[j][1]):
                    violations.append(
                        Violation(
                            "pairwise",
                            (level[i][0], level[j][0]),
                            "same-depth intervals intersect",
                        )
                    )
        levels.append(level)
    return ValidationReport(checked, tuple(violations))


# ---------------------------------------------------------------------------
# Codes: infinite 0/1 branch words with finitely presented tails.


def _minimal_period(word: str) -> str:
    for p in range(1, len(word) + 1):
        if len(word) % p == 0 and word == word[:p] * (len(word) // p):
            return word[:p]
    return word


@dataclass(frozen=True, eq=False)
class Code:
    """A point of the tree's set: finite prefix plus a periodic tail word.

    ``tail`` is the infinitely repeated word after the prefix ("0" for
    an all-zeros tail, "1" for all-ones), or None when the continuation
    is unspecified (then only prefix-depth questions are answerable).
    """

    tree: CantorTree
    prefix: str
    tail: str | None

    def __post_init__(self) -> None:
        if self.prefix.strip("01"):
            raise ValueError("code prefix must be a 0/1 string")
        if self.tail is not None and (not self.tail or self.tail.strip("01")):
            raise ValueError("tail must be a nonempty 0/1 word or None")

    @staticmethod
    def zeros(tree: CantorTree, prefix: str = "") -> "Code":
        return Code(tree, prefix, "0")

    @staticmethod
    def ones(tree: CantorTree, prefix: str = "") -> "Code":
        return Code(tree, prefix, "1")

    @property
    def definite(self) -> bool:
        return self.tail is not None

    def bit(self, n: int) -> int:
        """The n-th code bit, 1-indexed."""
        if n < 1:
            raise ValueError("code bits are indexed from 1")
        if n <= len(self.prefix):
            return int(self.prefix[n - 1])
        if self.tail is None:
            raise ValueError("code tail is unspecified beyond its prefix")
        return int(self.tail[(n - len(self.prefix) - 1) % len(self.tail)])

    def path(self, k: int) -> str:
        return "".join(str(self.bit(i)) for i in range(1, k + 1))

    def canonical(self) -> tuple[str, str | None]:
        """Normal form (prefix, tail): maximally stripped, minimal period."""
        if self.tail is None:
            return self.prefix, None
        word = _minimal_period(self.tail)
        prefix = self.prefix
        while prefix:
            rotated = word[-1] + word[:-1]
            if prefix[-1] == rotated[0]:
                prefix = prefix[:-1]
                word = rotated
            else:
                break
        return prefix, word

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Code):
            return NotImplemented
        return self.tree is other.tree and self.canonical() == other.canonical()

    def __hash__(self) -> int:
        return hash((id(self.tree), self.canonical()))

    def __repr__(self) -> str:
        tail = "?" if self.tail is None else f"({self.tail})*"
        return f"Code({self.prefix!r}+{tail})"


def point_bounds(code: Code, k: int) -> Interval:
    """The depth-k interval containing the coded point; width < e_k."""
    if not code.definite and k > len(code.prefix):
        raise ValueError("unspecified tail: bounds only known to prefix depth")
    return code.tree.interval(code.path(k))


def anchored_value(code: Code) -> Rat:
    """Exact rational value of a trailing-zeros code on a left-anchored tree.

    The 0-descent below the prefix keeps the left endpoint fixed, so the
    nested intervals I_(prefix 0^k) intersect exactly in c_prefix, which
    is therefore a certified member of the tree's set.
    """
    if not code.tree.left_anchored:
        raise NotAnchoredError("tree is not left-anchored")
    _, word = code.canonical()
    if word != "0":
        raise NotAnchoredError("code tail is not all zeros")
    return code.tree.interval(code.prefix)[0]


def flip_witness(code: Code, n: int) -> Code:
    """The code that agrees with ``code`` except at bit n+1, which flips.

    The result names a different point (their depth-(n+1) intervals are
    disjoint siblings) within e_n of the original (both lie in the shared
    depth-n interval).  Flipping twice at the same depth is the identity.
    """
    if not code.definite:
        raise ValueError("flip requires a definite tail")
    if n < 0:
        raise ValueError("flip depth must be >= 0")
    k = n + 1
    if k <= len(code.prefix):
        flipped = str(1 - int(code.prefix[k - 1]))
        return Code(code.tree, code.prefix[:k - 1] + flipped + code.prefix[k:], code.tail)
    bits = [code.bit(i) for i in range(1, k + 1)]
    bits[-1] = 1 - bits[-1]
    rot = (k - len(code.prefix)) % len(code.tail)
    word = code.tail[rot:] + code.tail[:rot]
    return Code(code.tree, "".join(map(str, bits)), word)


# ---------------------------------------------------------------------------
# Membership probing.


@dataclass(frozen=True)
class In:
    """Certified member: x is the anchored value of this prefix."""

    prefix: str


@dataclass(frozen=True)
class Out:
    """Certified non-member: x lies in no depth-``level`` interval."""

    level: int


@dataclass(frozen=True)
class Undetermined:
    """x survives to ``prefix`` at the probe depth; no certificate either way."""

    prefix: str


def membership_probe(tree: CantorTree, x: Rat, depth: int) -> In | Out | Undetermined:
    """Decide membership of x as far as depth-``depth`` expansion allows.

    Out is definitive (the set is contained in every depth-k union); In
    is only claimed for anchored exact matches; everything else stays
    Undetermined with the deepest containing path.
    """
    path = ""
    interval = tree.root
    if x < interval[0] or x > interval[1]:
        return Out(1)
    if tree.left_anchored and x == interval[0]:
        return In("")
    for level in range(1, depth + 1):
        for bit in ("0", "1"):
            c, d = tree.interval(path + bit)
            if c <= x <= d:
                path += bit
                break
        else:
            return Out(level)
        if tree.left_anchored and x == tree.interval(path)[0]:
            return In(path)
    return Undetermined(path)


# ---------------------------------------------------------------------------
# Built-in constructions.


def middle_thirds(lo: Rat = Fraction(0), hi: Rat = Fraction(1)) -> CantorTree:
    """The middle-thirds tree on [lo, hi]; left- (and right-) anchored."""

    def gen(_path: str, parent: Interval) -> tuple[Interval, Interval]:
        c, d = parent
        w = (d - c) / 3
        return (c, c + w), (d - w, d)

    return CantorTree(
        (lo, hi),
        HalvingRule(hi - lo),
        gen,
        left_anchored=True,
        descriptor=f"middle-thirds[{format_rat(lo)},{format_rat(hi)}]",
    )


def _uncovered_pieces(
    lo: Rat, hi: Rat, cover: Iterable[Interval]
) -> list[Interval]:
    """Maximal closed positive-width pieces of [lo, hi] minus the open cover."""
    clipped = sorted(
        (max(l, lo), min(r, hi)) for l, r in cover if l < hi and r > lo
    )
    pieces: list[Interval] = []
    cursor = lo
    for l, r in clipped:
        if l > cursor:
            pieces.append((cursor, l))
        cursor = max(cursor, r)
    if hi > cursor:
        pieces.append((cursor, hi))
    return [p for p in pieces if p[1] > p[0]]


def avoid_open_cover_tree(
    cover: list[Interval],
    host: Interval,
    depth: int,
    max_fraction: Rat = Fraction(1, 2),
) -> CantorTree:
    """A validated tree inside ``host`` avoiding every open cover interval.

    Requires the cover's total clipped length to be at most
    ``max_fraction`` of the host (so both halves of any split retain
    uncovered mass whenever the bound is strict).  Each node bisects,
    keeps the widest uncovered closed piece of each half (leftmost on
    ties), and shrinks it to its middle half, which keeps siblings
    strictly disjoint and widths strictly under the halving bounds.
    Returns the tree expanded and validated through ``depth``.
    """
    c, d = host
    if not c < d:
        raise ValueError("host interval requires c < d")
    for l, r in cover:
        if not l < r:
            raise ValueError("cover intervals must be nonempty open intervals")
    mass = sum(
        (min(r, d) - max(l, c) for l, r in cover if l < d and r > c),
        Fraction(0),
    )
    budget = (d - c) * max_fraction
    if mass > budget:
        raise CoverTooLargeError(
            f"cover mass {format_rat(mass)} exceeds {format_rat(budget)}"
        )

    frozen_cover = tuple(cover)

    def middle_half(piece: Interval) -> Interval:
        x, y = piece
        w = y - x
        return (x + w / 4, y - w / 4)

    def gen(path: str, parent: Interval) -> tuple[Interval, Interval]:
        lo, hi = parent
        mid = (lo + hi) / 2
        halves = ((lo, mid), (mid, hi))
        children = []
        for half in halves:
            pieces = _uncovered_pieces(half[0], half[1], frozen_cover)
            if not pieces:
                raise ConstructionStuckError(path)
            best = max(pieces, key=lambda p: p[1] - p[0])
            children.append(middle_half(best))
        return children[0], children[1]

    tree = CantorTree(
        host,
        HalvingRule(d - c),
        gen,
        descriptor=f"avoid-cover[{format_rat(c)},{format_rat(d)};{len(cover)} intervals]",
    )
    report = validate_tree(tree, depth)
    if not report.ok:
        raise GeneratorViolationError("", 0, f"construction failed: {report.violations[0]}")
    for n in range(1, depth + 1):
        for idx in range(1 << n):
            path = format(idx, f"0{n}b")
            node = tree.interval(path)
            for l, r in frozen_cover:
                if not (node[1] <= l or node[0] >= r):
                    raise GeneratorViolationError(
                        path, 0, "node intersects a cover interval"
                    )
    return tree

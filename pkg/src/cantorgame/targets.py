"""Target-set expressions, certificates, and the determinacy classifier.

A target is a finite union of three kinds of atoms, each carrying its
own evidence discipline:

* ``ClosedInterval`` - membership decided exactly; positive length is a
  ready-made perfect subset.
* ``CantorTreeSet`` - a generalized Cantor set; membership is
  semi-decided (exclusion certificates are definitive, inclusion only
  via anchored exact matches) and the tree itself is a perfect subset.
* ``CountableEnum`` - an injective enumeration; membership scans are
  only ever "found" or "undetermined", never a certified absence.

Uncountability is represented ONLY by perfect-subset witnesses and
countability only by covering enumerations, so every classifier verdict
is certificate-backed: a target whose atoms supply a perfect subset is
a win for the accumulating side A (a winning strategy can chase into
the witness), a target that is a finite union of enumerations is a win
for the avoiding side B (an excluding strategy processes one enumerated
point per round), and anything the engine cannot certify stays Unknown.
Sets that provably defeat both certificates exist under the axiom of
choice (Bernstein-type constructions) but admit no computable
representation; they are exactly what Unknown is for.

The condensation-point calculus works per atom: an interval's right
condensation points are [lo, hi); an enumeration has none (a countable
set meets every interval countably); a tree point is a right
condensation point exactly when its code carries infinitely many 0s,
because each 0 bit puts the sibling 1-subtree (an uncountable set)
strictly to the point's right within a shrinking width bound, and a
tail of 1s leaves only finitely many subtrees on the right, all at
positive distance.  The same with 0/1 and left/right swapped.

``complement_certificate`` is the one place complements enter: given a
finite open cover of bounded total mass, it builds a perfect witness
tree inside the cover's complement, which classifies targets presented
as "everything outside this cover" (e.g. the irrationals presented by
shrinking open neighborhoods around an enumeration of the rationals).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Iterator, Union

from .rationals import Rat, RatEnumeration, format_rat
from .trees import (
    CantorTree,
    Code,
    CoverTooLargeError,
    ConstructionStuckError,
    GeneratorViolationError,
    In,
    Interval,
    Out,
    anchored_value,
    avoid_open_cover_tree,
    membership_probe,
    point_bounds,
    validate_tree,
)


class UnsupportedAtomError(TypeError):
    """Operation not defined for this atom kind."""


class ProbeFailedError(RuntimeError):
    """No certificate found within the configured search depth."""


@dataclass(frozen=True)
class ClosedInterval:
    lo: Rat
    hi: Rat

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError("closed interval requires lo <= hi")

    @property
    def degenerate(self) -> bool:
        return self.lo == self.hi


@dataclass(frozen=True)
class CantorTreeSet:
    tree: CantorTree


@dataclass(frozen=True)
class CountableEnum:
    """Deterministic injective enumeration k -> value within [lo, hi]."""

    at: Callable[[int], Rat]
    lo: Rat
    hi: Rat
    descriptor: str

    @staticmethod
    def rationals(lo: Rat, hi: Rat) -> "CountableEnum":
        enum = RatEnumeration(lo, hi)
        return CountableEnum(enum.at, lo, hi, enum.descriptor)


@dataclass(frozen=True)
class FiniteUnion:
    parts: tuple["SetExpr", ...]


SetExpr = Union[ClosedInterval, CantorTreeSet, CountableEnum, FiniteUnion]
Atom = Union[ClosedInterval, CantorTreeSet, CountableEnum]


@dataclass(frozen=True)
class CoverComplement:
    """Classifier-level target: the complement of a finite open cover.

    Not a set expression (complements are not first-class, so membership
    and condensation queries are not offered), only a certificate recipe.
    """

    host: Interval
    cover: tuple[Interval, ...]


def atoms(s: SetExpr) -> tuple[Atom, ...]:
    if isinstance(s, FiniteUnion):
        out: list[Atom] = []
        for part in s.parts:
            out.extend(atoms(part))
        return tuple(out)
    return (s,)


def atoms_within(s: SetExpr, lo: Rat, hi: Rat) -> bool:
    """True when every atom lies inside [lo, hi]."""
    for atom in atoms(s):
        if isinstance(atom, ClosedInterval):
            if atom.lo < lo or atom.hi > hi:
                return False
        elif isinstance(atom, CantorTreeSet):
            c, d = atom.tree.root
            if c < lo or d > hi:
                return False
        else:
            if atom.lo < lo or atom.hi > hi:
                return False
    return True


class Membership(Enum):
    IN = "in"
    OUT = "out"
    UNDETERMINED = "undetermined"


def member(s: SetExpr, x: Rat, depth: int) -> Membership:
    """Membership of x, combined over atoms with IN dominating.

    Interval atoms decide exactly; tree atoms probe to ``depth``;
    enumeration atoms scan indices <= depth and can only answer IN or
    UNDETERMINED (absence from an infinite list is not finitely
    decidable).
    """
    verdicts = []
    for atom in atoms(s):
        if isinstance(atom, ClosedInterval):
            verdicts.append(
                Membership.IN if atom.lo <= x <= atom.hi else Membership.OUT
            )
        elif isinstance(atom, CantorTreeSet):
            result = membership_probe(atom.tree, x, depth)
            if isinstance(result, In):
                verdicts.append(Membership.IN)
            elif isinstance(result, Out):
                verdicts.append(Membership.OUT)
            else:
                verdicts.append(Membership.UNDETERMINED)
        else:
            hit = any(atom.at(k) == x for k in range(depth + 1))
            verdicts.append(Membership.IN if hit else Membership.UNDETERMINED)
    if Membership.IN in verdicts:
        return Membership.IN
    if Membership.UNDETERMINED in verdicts:
        return Membership.UNDETERMINED
    return Membership.OUT


# ---------------------------------------------------------------------------
# Certificates and the classifier.


@dataclass(frozen=True)
class PerfectWitness:
    """A perfect subset of the target: a validated tree or a fat interval."""

    body: Union[CantorTree, ClosedInterval]


PointRepr = Union[Rat, Code]


@dataclass(frozen=True)
class CountableWitness:
    """Enumeration covering the target; items are rationals or tree codes."""

    at: Callable[[int], PointRepr]
    descriptor: str
    count: int | None = None  # None = infinite


@dataclass(frozen=True)
class AWins:
    witness: PerfectWitness


@dataclass(frozen=True)
class BWins:
    witness: CountableWitness


@dataclass(frozen=True)
class Unknown:
    reason: str


Classification = Union[AWins, BWins, Unknown]


class _MergedEnum:
    """Round-robin merge of countable parts, deduplicated, deterministic."""

    def __init__(self, parts: list[tuple[str, object]]):
        # parts: ("point", Rat) or ("enum", CountableEnum)
        self._parts = parts
        self._cache: list[Rat] = []
        self._seen: set[Rat] = set()
        self._cursor = 0  # next round-robin step

    def _step_values(self) -> Iterator[Rat]:
        for step in itertools.count(self._cursor):
            self._cursor = step + 1
            kind, payload = self._parts[step % len(self._parts)]
            local = step // len(self._parts)
            if kind == "point":
                if local == 0:
                    yield payload  # type: ignore[misc]
            else:
                yield payload.at(local)  # type: ignore[union-attr]

    def at(self, k: int) -> Rat:
        while len(self._cache) <= k:
            for value in self._step_values():
                if value not in self._seen:
                    self._seen.add(value)
                    self._cache.append(value)
                    break
        return self._cache[k]


def classify_determinacy(
    target: Union[SetExpr, CoverComplement], *, witness_depth: int = 6
) -> Classification:
    """Certificate-backed determinacy verdict for a target.

    AWins carries a perfect witness (validated tree or positive-length
    interval inside the target); BWins carries an enumeration covering
    the target; Unknown means no certificate could be derived, never
    that none exists.
    """
    if isinstance(target, CoverComplement):
        return _classify_cover_complement(target, witness_depth)
    countable_parts: list[tuple[str, object]] = []
    part_names: list[str] = []
    failed_tree = None
    for atom in atoms(target):
        if isinstance(atom, CantorTreeSet):
            report = validate_tree(atom.tree, witness_depth)
            if report.ok:
                return AWins(PerfectWitness(atom.tree))
            failed_tree = atom
        elif isinstance(atom, ClosedInterval) and not atom.degenerate:
            return AWins(PerfectWitness(atom))
    if failed_tree is not None:
        return Unknown(
            f"tree atom {failed_tree.tree.descriptor!r} failed validation; "
            "no certificate either way"
        )
    for atom in atoms(target):
        if isinstance(atom, CountableEnum):
            countable_parts.append(("enum", atom))
            part_names.append(atom.descriptor)
        elif isinstance(atom, ClosedInterval):
            countable_parts.append(("point", atom.lo))
            part_names.append(f"point {format_rat(atom.lo)}")
    if not countable_parts:
        return BWins(CountableWitness(lambda k: _empty_at(k), "empty", count=0))
    descriptor = "merge(" + ";".join(part_names) + ")"
    if all(kind == "point" for kind, _ in countable_parts):
        points: list[Rat] = []
        for _, value in countable_parts:
            if value not in points:
                points.append(value)  # type: ignore[arg-type]
        return BWins(
            CountableWitness(lambda k: points[k], descriptor, count=len(points))
        )
    # At least one infinite enumeration part: the deduplicating
    # round-robin always finds a fresh value, so merging terminates.
    merged = _MergedEnum(countable_parts)
    return BWins(CountableWitness(merged.at, descriptor, count=None))


def _empty_at(k: int) -> Rat:
    raise IndexError("empty enumeration has no elements")


def _classify_cover_complement(
    target: CoverComplement, witness_depth: int
) -> Classification:
    try:
        tree = avoid_open_cover_tree(list(target.cover), target.host, witness_depth)
    except (CoverTooLargeError, ConstructionStuckError, GeneratorViolationError) as err:
        return Unknown(f"no complement witness derivable: {err}")
    return AWins(PerfectWitness(tree))


def complement_certificate(
    cover: list[Interval], host: Interval, depth: int = 6
) -> PerfectWitness:
    """Perfect witness inside the complement of a finite open cover."""
    return PerfectWitness(avoid_open_cover_tree(cover, host, depth))


def builtin_target(name: str, lo: Rat, hi: Rat) -> SetExpr:
    """Named targets for the arena: "middle-thirds" (the tree on [lo, hi])
    or "rationals" (the fixed enumeration of Q cap [lo, hi])."""
    from .trees import middle_thirds

    if name == "middle-thirds":
        return CantorTreeSet(middle_thirds(lo, hi))
    if name == "rationals":
        return CountableEnum.rationals(lo, hi)
    raise ValueError(f"unknown builtin target {name!r}")


def shrinking_cover(enum: CountableEnum, count: int) -> list[Interval]:
    """Open neighborhoods (q_n - 1/2^(n+2), q_n + 1/2^(n+2)), n = 1..count.

    Centered on the first ``count`` enumeration values; total length is
    at most 1/2 before clipping, so the complement retains at least half
    of a unit host and a perfect witness survives inside it.
    """
    cover = []
    for n in range(1, count + 1):
        q = enum.at(n - 1)
        radius = Fraction(1, 1 << (n + 2))
        cover.append((q - radius, q + radius))
    return cover


# ---------------------------------------------------------------------------
# Condensation-point calculus.


VerdictValue = str  # "yes" | "no" | "unknown"


@dataclass(frozen=True)
class CondensationVerdict:
    point: PointRepr
    side: str  # "plus" | "minus"
    verdict: VerdictValue
    note: str = ""


def _code_exact_value(code: Code) -> Rat | None:
    if code.definite and code.tree.left_anchored:
        _, word = code.canonical()
        if word == "0":
            return anchored_value(code)
    return None


def _interval_cond(atom: ClosedInterval, x: PointRepr, side: str, depth_cap: int):
    if atom.degenerate:
        return "no", "single point"
    if isinstance(x, Code):
        exact = _code_exact_value(x)
        if exact is not None:
            x = exact
        else:
            return _interval_cond_bounds(atom, x, side, depth_cap)
    if side == "plus":
        inside = atom.lo <= x < atom.hi
    else:
        inside = atom.lo < x <= atom.hi
    return ("yes", "interval interior") if inside else ("no", "outside half-open range")


def _interval_cond_bounds(
    atom: ClosedInterval, code: Code, side: str, depth_cap: int
):
    # Narrow the coded point until the half-open test is decided exactly.
    for k in range(1, depth_cap + 1):
        if not code.definite and k > len(code.prefix):
            break
        lo_b, hi_b = point_bounds(code, k)
        if side == "plus":
            if lo_b >= atom.lo and hi_b < atom.hi:
                return "yes", f"bounded inside at depth {k}"
            if hi_b < atom.lo or lo_b >= atom.hi:
                return "no", f"bounded outside at depth {k}"
        else:
            if lo_b > atom.lo and hi_b <= atom.hi:
                return "yes", f"bounded inside at depth {k}"
            if hi_b <= atom.lo or lo_b > atom.hi:
                return "no", f"bounded outside at depth {k}"
    return "unknown", "bounds never decided the half-open test"


def _tree_cond(atom: CantorTreeSet, x: PointRepr, side: str, depth_cap: int):
    tree = atom.tree
    if isinstance(x, Code):
        if x.tree is not tree:
            exact = _code_exact_value(x)
            if exact is None:
                return "unknown", "code belongs to a different tree"
            x = exact
        else:
            if not x.definite:
                return "unknown", "unspecified tail"
            _, word = x.canonical()
            wanted = "0" if side == "plus" else "1"
            if wanted in word:
                return "yes", f"tail repeats {word!r}: infinitely many {wanted}s"
            return "no", f"tail repeats {word!r}: finitely many {wanted}s"
    result = membership_probe(tree, x, depth_cap)
    if isinstance(result, Out):
        return "no", f"excluded at level {result.level}; closed set, positive gap"
    if isinstance(result, In):
        return _tree_cond(atom, Code.zeros(tree, result.prefix), side, depth_cap)
    return "unknown", f"membership undetermined to depth {depth_cap}"


def cond_point(
    s: SetExpr, x: PointRepr, side: str, *, depth_cap: int = 24
) -> CondensationVerdict:
    """Is x a right ("plus") or left ("minus") condensation point of s?

    Verdicts combine over atoms: a union condenses at x exactly when
    some atom does.  Enumeration atoms never condense.  Tree points must
    be presented as codes with definite tails (or rationals that probe
    to a certificate) for a decision; everything else is Unknown.
    """
    if side not in ("plus", "minus"):
        raise ValueError("side must be 'plus' or 'minus'")
    results = []
    for atom in atoms(s):
        if isinstance(atom, ClosedInterval):
            results.append(_interval_cond(atom, x, side, depth_cap))
        elif isinstance(atom, CantorTreeSet):
            results.append(_tree_cond(atom, x, side, depth_cap))
        else:
            results.append(("no", "countable atom has no condensation points"))
    for verdict, note in results:
        if verdict == "yes":
            return CondensationVerdict(x, side, "yes", note)
    if any(v == "unknown" for v, _ in results):
        note = next(n for v, n in results if v == "unknown")
        return CondensationVerdict(x, side, "unknown", note)
    return CondensationVerdict(x, side, "no", results[0][1] if results else "empty set")


def condensation_partition_probe(atom: Atom) -> CountableWitness:
    """Countable witness for the atom minus its right condensation points.

    Interval: only the right endpoint fails to condense rightward.
    Tree: exactly the eventually-all-ones codes fail (finitely many 0s),
    enumerated by their canonical finite prefixes.  Enumeration atoms
    are their own witness (nothing condenses).
    """
    if isinstance(atom, ClosedInterval):
        hi = atom.hi
        return CountableWitness(
            lambda k: _single(hi, k), f"point {format_rat(hi)}", count=1
        )
    if isinstance(atom, CantorTreeSet):
        tree = atom.tree

        def code_at(k: int) -> Code:
            # Canonical prefixes for all-ones tails: "" or ending in "0";
            # BFS over bit strings appended with a 0 keeps codes distinct.
            if k == 0:
                return Code.ones(tree, "")
            return Code.ones(tree, _bfs_bitstring(k - 1) + "0")

        return CountableWitness(code_at, f"all-ones codes of {tree.descriptor}")
    if isinstance(atom, CountableEnum):
        return CountableWitness(atom.at, atom.descriptor)
    raise UnsupportedAtomError(f"unsupported atom {atom!r}")


def _single(value: Rat, k: int) -> Rat:
    if k != 0:
        raise IndexError("single-point witness has one element")
    return value


def _bfs_bitstring(k: int) -> str:
    """k-th bit string in breadth-first order: "", "0", "1", "00", ..."""
    h = k + 1
    return bin(h)[3:]


def t15_probe(
    s: SetExpr, x: PointRepr, y: Rat, *, max_depth: int = 64
) -> PerfectWitness:
    """A perfect subset of s strictly inside (x, y), given x condenses right.

    For an interval atom any centered closed subinterval works; for a
    tree atom, descend x's code until the width bound drops below y - x
    and the next bit is a 0, then the sibling 1-subtree lies strictly
    between x and y.  Raises ProbeFailedError when no certificate is
    found within ``max_depth`` (which never asserts falsity).
    """
    for atom in atoms(s):
        if isinstance(atom, ClosedInterval):
            verdict, _ = _interval_cond(atom, x, "plus", 24)
            if verdict != "yes":
                continue
            x_val = x if isinstance(x, Fraction) else _code_exact_value(x)
            if x_val is None:
                continue
            z = min(y, atom.hi)
            if z <= x_val:
                continue
            w = z - x_val
            return PerfectWitness(ClosedInterval(x_val + w / 4, x_val + 3 * w / 4))
        if isinstance(atom, CantorTreeSet):
            witness = _t15_tree(atom.tree, x, y, max_depth)
            if witness is not None:
                return witness
    raise ProbeFailedError(
        f"no perfect subset witness found inside ({x!r}, {format_rat(y)}) "
        f"to depth {max_depth}"
    )


def _t15_tree(
    tree: CantorTree, x: PointRepr, y: Rat, max_depth: int
) -> PerfectWitness | None:
    if isinstance(x, Fraction):
        probe = membership_probe(tree, x, max_depth)
        if not isinstance(probe, In):
            return None
        code = Code.zeros(tree, probe.prefix)
    else:
        if x.tree is not tree or not x.definite:
            return None
        code = x
    for n in range(1, max_depth + 1):
        if code.bit(n + 1) != 0:
            continue
        # x sits in the 0-child at depth n+1, so the sibling 1-subtree is
        # strictly to x's right; it certifies as inside (x, y) exactly
        # when its left end clears the 0-child and its right end clears y.
        sibling = code.path(n) + "1"
        c_q, d_q = tree.interval(sibling)
        zero_child_hi = tree.interval(code.path(n + 1))[1]
        if c_q > zero_child_hi and d_q < y:
            return PerfectWitness(tree.subtree(sibling))
    return None


@dataclass(frozen=True)
class DensityCell:
    interval: Interval
    hit: Rat | None
    presumed_out: Rat | None


@dataclass(frozen=True)
class DensityReport:
    cells: tuple[DensityCell, ...]

    @property
    def hits(self) -> int:
        return sum(1 for c in self.cells if c.hit is not None)

    @property
    def presumed(self) -> int:
        return sum(
            1 for c in self.cells if c.hit is None and c.presumed_out is not None
        )

    @property
    def misses(self) -> int:
        return sum(
            1 for c in self.cells if c.hit is None and c.presumed_out is None
        )


def density_probe(
    s: SetExpr, sub: ClosedInterval, samples: int, *, member_depth: int = 12
) -> DensityReport:
    """Finite falsifiable proxy for density of the complement in ``sub``.

    Splits ``sub`` into ``samples`` equal cells and hunts each cell for
    a point certified OUT of the target; points that are merely
    UNDETERMINED (enumeration atoms cannot certify absence) are reported
    separately as presumed-out, and a cell with neither is a miss.
    """
    if samples < 1:
        raise ValueError("need at least one cell")
    if sub.degenerate:
        raise ValueError("probe interval must have positive length")
    width = (sub.hi - sub.lo) / samples
    cells = []
    for i in range(samples):
        lo = sub.lo + i * width
        hi = lo + width
        candidates = [
            lo + width / 2,
            lo + width / 4,
            lo + 3 * width / 4,
            lo + width / 8,
            lo + 7 * width / 8,
        ]
        hit = None
        presumed = None
        for x in candidates:
            verdict = member(s, x, member_depth)
            if verdict is Membership.OUT:
                hit = x
                break
            if verdict is Membership.UNDETERMINED and presumed is None:
                presumed = x
        cells.append(DensityCell((lo, hi), hit, presumed))
    return DensityReport(tuple(cells))

"""Domain model: segments, elastic-degenerate texts, source sets and validation."""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Sequence

DEFAULT_ALPHABET = frozenset(b"ACGTN")
MAX_INDIVIDUALS = 16_383


@dataclass(frozen=True)
class Segment:
    """One position of the ED text: a single string or a set of variants.

    A segment with exactly one variant is deterministic; anything larger is
    non-deterministic (ND). The empty byte string stands for the empty variant.
    """

    variants: tuple[bytes, ...]

    def __post_init__(self):
        if not isinstance(self.variants, tuple):
            object.__setattr__(self, "variants", tuple(self.variants))

    @classmethod
    def deterministic(cls, text: bytes) -> "Segment":
        return cls((bytes(text),))

    @property
    def is_deterministic(self) -> bool:
        return len(self.variants) == 1

    @property
    def kind(self) -> str:
        return "deterministic" if self.is_deterministic else "non-deterministic"

    @property
    def size(self) -> int:
        return sum(max(len(v), 1) for v in self.variants)


@dataclass(frozen=True)
class EDText:
    segments: tuple[Segment, ...]
    alphabet: frozenset = DEFAULT_ALPHABET

    def __post_init__(self):
        if not isinstance(self.segments, tuple):
            object.__setattr__(self, "segments", tuple(self.segments))

    def __len__(self) -> int:
        return len(self.segments)

    @cached_property
    def nd_segments(self) -> tuple[int, ...]:
        """Text indexes of the ND segments, in order."""
        return tuple(i for i, s in enumerate(self.segments) if not s.is_deterministic)

    @cached_property
    def nd_ordinal(self) -> tuple[int, ...]:
        """For each segment, its ordinal among ND segments (-1 if deterministic)."""
        out = [-1] * len(self.segments)
        for k, i in enumerate(self.nd_segments):
            out[i] = k
        return tuple(out)

    @cached_property
    def size(self) -> int:
        return sum(s.size for s in self.segments)


@dataclass(frozen=True)
class SourceSet:
    """Immutable set of individual indexes backed by an r-bit integer."""

    bits: int
    width: int

    @classmethod
    def of(cls, indices: Iterable[int], width: int) -> "SourceSet":
        bits = 0
        for i in indices:
            bits |= 1 << i
        return cls(bits, width)

    @classmethod
    def full(cls, width: int) -> "SourceSet":
        return cls((1 << width) - 1, width)

    @classmethod
    def empty(cls, width: int) -> "SourceSet":
        return cls(0, width)

    def __iter__(self) -> Iterator[int]:
        b = self.bits
        while b:
            low = b & -b
            yield low.bit_length() - 1
            b ^= low

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __bool__(self) -> bool:
        return self.bits != 0

    def __contains__(self, i: int) -> bool:
        return i >= 0 and (self.bits >> i) & 1 == 1

    def __and__(self, other: "SourceSet") -> "SourceSet":
        return SourceSet(self.bits & other.bits, self.width)

    def __or__(self, other: "SourceSet") -> "SourceSet":
        return SourceSet(self.bits | other.bits, self.width)

    def __sub__(self, other: "SourceSet") -> "SourceSet":
        return SourceSet(self.bits & ~other.bits, self.width)

    def complement(self) -> "SourceSet":
        return SourceSet(~self.bits & ((1 << self.width) - 1), self.width)

    def isdisjoint(self, other: "SourceSet") -> bool:
        return not self.bits & other.bits

    def indices(self) -> tuple[int, ...]:
        return tuple(self)

    def __repr__(self) -> str:
        return f"SourceSet({set(self) or '{}'}, r={self.width})"


@dataclass(frozen=True)
class SourceSequence:
    """Explicit source sets for each ND segment; the last variant's set is implied.

    ``entries[k]`` belongs to the k-th ND segment of the companion text and
    holds one set per variant except the last (the reference).
    """

    r: int
    entries: tuple[tuple[SourceSet, ...], ...] = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(tuple(e) for e in self.entries))

    @classmethod
    def from_indices(cls, r: int, entries: Sequence[Sequence[Iterable[int]]]) -> "SourceSequence":
        return cls(r, tuple(tuple(SourceSet.of(s, r) for s in e) for e in entries))

    def reference_set(self, nd_index: int) -> SourceSet:
        if not 0 <= nd_index < len(self.entries):
            raise IndexError(f"ND segment ordinal {nd_index} out of range [0, {len(self.entries)})")
        used = 0
        for s in self.entries[nd_index]:
            used |= s.bits
        return SourceSet(~used & ((1 << self.r) - 1), self.r)

    def variant_sets(self, nd_index: int) -> tuple[SourceSet, ...]:
        """All variant sets of one ND segment, reference complement last."""
        return self.entries[nd_index] + (self.reference_set(nd_index),)

    @cached_property
    def variant_bits(self) -> tuple[tuple[int, ...], ...]:
        # raw ints for the hot verification loop
        return tuple(tuple(s.bits for s in self.variant_sets(k)) for k in range(len(self.entries)))


def reference_set(sources: SourceSequence, nd_index: int) -> SourceSet:
    return sources.reference_set(nd_index)


@dataclass(frozen=True)
class Stats:
    n: int
    N: int
    n_prime: int
    n_double_prime: int


def ed_stats(text: EDText) -> Stats:
    nd = len(text.nd_segments)
    return Stats(n=len(text.segments), N=text.size, n_prime=nd, n_double_prime=len(text.segments) - nd)


@dataclass(frozen=True)
class Violation:
    segment: int | None
    message: str

    def __str__(self) -> str:
        where = "global" if self.segment is None else f"segment {self.segment}"
        return f"{where}: {self.message}"


@dataclass
class ValidationReport:
    violations: list[Violation] = field(default_factory=list)
    warnings: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations

    def messages(self) -> list[str]:
        return [v.message for v in self.violations]


def validate_text(text: EDText, report: ValidationReport | None = None) -> ValidationReport:
    report = report if report is not None else ValidationReport()
    bad = report.violations
    for i, seg in enumerate(text.segments):
        vs = seg.variants
        if not vs:
            bad.append(Violation(i, "empty segment"))
            continue
        if len(set(vs)) != len(vs):
            bad.append(Violation(i, "duplicate variant"))
        if seg.is_deterministic and not vs[0]:
            bad.append(Violation(i, "empty variant in deterministic segment"))
        for v in vs:
            stray = set(v) - text.alphabet
            if stray:
                bad.append(Violation(i, f"illegal symbol {bytes(sorted(stray))!r}"))
                break
    return report


def validate(text: EDText, sources: SourceSequence) -> ValidationReport:
    """Check a text/sources pair; every broken invariant becomes a Violation.

    Empty explicit sets and empty reference sets are legal but reported as
    warnings.
    """
    report = validate_text(text)
    bad, warn = report.violations, report.warnings
    r = sources.r
    if not 1 <= r <= MAX_INDIVIDUALS:
        bad.append(Violation(None, f"individual count {r} outside [1, {MAX_INDIVIDUALS}]"))
    nd = text.nd_segments
    if len(sources.entries) != len(nd):
        bad.append(Violation(None, f"entry count mismatch: {len(sources.entries)} entries for {len(nd)} ND segments"))
    universe = (1 << r) - 1 if r > 0 else 0
    for k, (seg_index, entry) in enumerate(zip(nd, sources.entries)):
        want = len(text.segments[seg_index].variants) - 1
        if len(entry) != want:
            bad.append(Violation(seg_index, f"entry arity mismatch: {len(entry)} explicit sets, expected {want}"))
        used = 0
        disjoint = True
        for s in entry:
            if s.bits < 0 or s.bits & ~universe:
                bad.append(Violation(seg_index, "index out of range"))
            if s.width != r:
                bad.append(Violation(seg_index, f"source set width {s.width} != r={r}"))
            if used & s.bits:
                disjoint = False
            used |= s.bits
            if not s.bits:
                warn.append(Violation(seg_index, "empty explicit source set"))
        if not disjoint:
            bad.append(Violation(seg_index, "explicit sets not disjoint"))
        if not (universe & ~used):
            warn.append(Violation(seg_index, "empty reference set"))
    return report

"""Bit-parallel Shift-Or over an ED text (candidate generation).

State convention: bit ``i`` of the state word is clear when the pattern
prefix of length ``i + 1`` matches the text ending at the current symbol.
At an ND segment every variant continues from a copy of the incoming state
and the outgoing state is the AND of all copies, so a prefix stays active
if it is active along at least one variant.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .core import DEFAULT_ALPHABET, EDText

WORD_SIZE = 64


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class Pattern:
    symbols: bytes

    def __post_init__(self):
        s = self.symbols
        if isinstance(s, str):
            s = s.encode("ascii")
        object.__setattr__(self, "symbols", bytes(s).upper())

    @property
    def m(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)


def as_pattern(p) -> Pattern:
    return p if isinstance(p, Pattern) else Pattern(p)


class MatchCandidate(NamedTuple):
    """End position of an occurrence: segment, variant (None when deterministic), offset."""

    segment: int
    variant: int | None
    offset: int

    def sort_key(self) -> tuple[int, int, int]:
        return (self.segment, -1 if self.variant is None else self.variant, self.offset)


@dataclass(frozen=True)
class MaskTable:
    """Shift-Or masks indexed by byte value (256 entries)."""

    masks: tuple[int, ...]
    m: int
    word_size: int

    def __getitem__(self, symbol) -> int:
        if isinstance(symbol, (bytes, str)):
            symbol = ord(symbol)
        return self.masks[symbol]


def build_masks(pattern, alphabet: frozenset = DEFAULT_ALPHABET, word_size: int = WORD_SIZE) -> MaskTable:
    p = as_pattern(pattern).symbols
    m = len(p)
    if m == 0:
        raise PatternError("empty pattern")
    if m > word_size:
        raise PatternError(f"pattern length {m} exceeds word size {word_size}")
    stray = set(p) - set(alphabet)
    if stray:
        raise PatternError(f"illegal pattern symbol(s) {bytes(sorted(stray))!r}")
    ones = (1 << word_size) - 1
    masks = [ones] * 256
    for i, c in enumerate(p):
        masks[c] &= ~(1 << i)
    return MaskTable(tuple(masks), m, word_size)


def search_ed(text: EDText, pattern, word_size: int = WORD_SIZE) -> list[MatchCandidate]:
    """All end positions of the pattern along any path of the ED text.

    Candidates come out in text order, then variant order, then offset order.
    Paths not realized by any individual are included.
    """
    table = build_masks(pattern, text.alphabet, word_size)
    B = table.masks
    ones = (1 << word_size) - 1
    hit = 1 << (table.m - 1)
    out: list[MatchCandidate] = []
    emit = out.append
    D = ones
    for si, seg in enumerate(text.segments):
        vs = seg.variants
        if len(vs) == 1:
            for off, c in enumerate(vs[0]):
                D = ((D << 1) | B[c]) & ones
                if not D & hit:
                    emit(MatchCandidate(si, None, off))
            continue
        acc = ones
        for vi, v in enumerate(vs):
            d = D
            for off, c in enumerate(v):
                d = ((d << 1) | B[c]) & ones
                if not d & hit:
                    emit(MatchCandidate(si, vi, off))
            acc &= d
        D = acc
    return out

"""Seeded synthetic pan-genomes.

Positions are either a single reference letter or an ND segment. Consecutive
letters are stored as one deterministic segment, so ``len(text)`` is smaller
than ``positions``; the ND count is exact. Variant counts and lengths are
uniform; every individual independently picks a uniform variant per ND
segment.

Each ND position draws from its own stream keyed by ``(seed, position)``:
stream 0 builds the variants, stream 1 assigns individuals. The text therefore
does not depend on ``individuals``, which lets the same text be paired with
source sets of different widths.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import MAX_INDIVIDUALS, EDText, Segment, SourceSequence, SourceSet

DNA = np.frombuffer(b"ACGT", dtype=np.uint8)


@dataclass(frozen=True)
class SynthParams:
    positions: int = 100_000
    nd_fraction: float = 0.10
    max_variants: int = 10
    max_variant_len: int = 10
    individuals: int = 128
    seed: int = 0
    empty_variant_prob: float = 0.1

    def check(self) -> None:
        if self.positions < 1:
            raise ValueError("positions must be >= 1")
        if not 0 < self.nd_fraction < 1:
            raise ValueError("nd_fraction must be in (0, 1)")
        if self.max_variants < 2:
            raise ValueError("max_variants must be >= 2")
        if self.max_variant_len < 1:
            raise ValueError("max_variant_len must be >= 1")
        if not 1 <= self.individuals <= MAX_INDIVIDUALS:
            raise ValueError(f"individuals must be in [1, {MAX_INDIVIDUALS}] (two-byte varint limit)")
        if not 0 <= self.empty_variant_prob <= 1:
            raise ValueError("empty_variant_prob must be in [0, 1]")


def _stream(seed: int, position: int, which: int) -> np.random.Generator:
    return np.random.default_rng(np.random.SeedSequence([seed & (2**64 - 1), position, which]))


def _variants(rng: np.random.Generator, params: SynthParams) -> tuple[bytes, ...]:
    distinct = sum(4**ln for ln in range(1, params.max_variant_len + 1))
    u = int(rng.integers(2, params.max_variants + 1))
    u = min(u, distinct + 1)
    with_empty = rng.random() < params.empty_variant_prob
    want = u - 1 if with_empty else min(u, distinct)
    seen: list[bytes] = []
    while len(seen) < want:
        ln = int(rng.integers(1, params.max_variant_len + 1))
        v = DNA[rng.integers(0, 4, size=ln)].tobytes()
        if v not in seen:
            seen.append(v)
    if with_empty:
        seen.insert(int(rng.integers(0, len(seen) + 1)), b"")
    return tuple(seen)


def _bits(mask: np.ndarray) -> int:
    return int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")


def assign_sources(variant_count: int, rng: np.random.Generator, r: int) -> tuple[SourceSet, ...]:
    pick = rng.integers(0, variant_count, size=r)
    return tuple(SourceSet(_bits(pick == v), r) for v in range(variant_count - 1))


def _layout(params: SynthParams) -> tuple[list[int], bytes]:
    """Sorted ND positions and the letter drawn for every position."""
    rng = np.random.default_rng(np.random.SeedSequence([params.seed & (2**64 - 1), 2**32]))
    n_nd = round(params.positions * params.nd_fraction)
    nd_at = np.zeros(params.positions, dtype=bool)
    nd_at[rng.choice(params.positions, size=n_nd, replace=False)] = True
    letters = DNA[rng.integers(0, 4, size=params.positions)].tobytes()
    return np.flatnonzero(nd_at).tolist(), letters


def generate_ed(params: SynthParams) -> tuple[EDText, SourceSequence]:
    params.check()
    nd_positions, letters = _layout(params)
    segments: list[Segment] = []
    entries: list[tuple[SourceSet, ...]] = []
    prev = 0
    for pos in nd_positions:
        if pos > prev:
            segments.append(Segment.deterministic(letters[prev:pos]))
        variants = _variants(_stream(params.seed, pos, 0), params)
        segments.append(Segment(variants))
        entries.append(assign_sources(len(variants), _stream(params.seed, pos, 1), params.individuals))
        prev = pos + 1
    if prev < params.positions:
        segments.append(Segment.deterministic(letters[prev:]))
    return EDText(tuple(segments)), SourceSequence(params.individuals, tuple(entries))


def sources_for(text: EDText, params: SynthParams) -> SourceSequence:
    """Regenerate only the sources for a text made by ``generate_ed`` with another width ``params.individuals``."""
    params.check()
    nd_positions, _ = _layout(params)
    if len(nd_positions) != len(text.nd_segments):
        raise ValueError("text was not generated with these layout parameters")
    entries = []
    for pos, si in zip(nd_positions, text.nd_segments):
        u = len(text.segments[si].variants)
        entries.append(assign_sources(u, _stream(params.seed, pos, 1), params.individuals))
    return SourceSequence(params.individuals, tuple(entries))

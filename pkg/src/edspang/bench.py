"""Throughput measurement for baseline, verify and full search.

Only in-memory search is timed; loading, decompression and parsing happen
before. Both stages are timed separately on the same candidates: stage 1
(Shift-Or) once per repetition, stage 2 (verification) with
``timeit.Timer.autorange`` because it is orders of magnitude shorter. A
mode's time is median(stage 1) + median(stage 2 for that mode).
"""

from __future__ import annotations

import random
import statistics
import time
import timeit
from dataclasses import astuple, dataclass, fields

from .core import EDText, SourceSequence
from .search import WORD_SIZE, search_ed
from .verify import Mode, verify_candidates

DEFAULT_LENGTHS = (8, 16, 32, 64)


@dataclass(frozen=True)
class BenchRow:
    dataset: str
    m: int
    mode: str
    bytes_N: int
    seconds: float  # per pattern
    MB_per_s: float
    occ_prime: int
    verified_count: int
    slowdown_vs_baseline: float

    @classmethod
    def header(cls) -> str:
        return "\t".join(f.name for f in fields(cls))

    def tsv(self) -> str:
        out = []
        for v in astuple(self):
            out.append(f"{v:.6g}" if isinstance(v, float) else str(v))
        return "\t".join(out)


def haplotype_sequence(text: EDText, sources: SourceSequence, individual: int) -> bytes:
    parts = []
    for si, seg in enumerate(text.segments):
        if seg.is_deterministic:
            parts.append(seg.variants[0])
            continue
        k = text.nd_ordinal[si]
        entry = sources.entries[k]
        vi = next((v for v, s in enumerate(entry) if individual in s), len(entry))
        parts.append(seg.variants[vi])
    return b"".join(parts)


def sample_patterns(
    text: EDText,
    sources: SourceSequence,
    m: int,
    count: int,
    seed: int = 0,
    haplotypes: int = 4,
) -> list[bytes]:
    """Windows of length ``m`` cut from a few random haplotypes (so every pattern occurs somewhere)."""
    rng = random.Random(seed * 1_000_003 + m)
    pool = [haplotype_sequence(text, sources, rng.randrange(sources.r)) for _ in range(haplotypes)]
    out = []
    for _ in range(count):
        seq = rng.choice(pool)
        if len(seq) < m:
            raise ValueError(f"haplotype shorter than pattern length {m}")
        i = rng.randrange(len(seq) - m + 1)
        out.append(seq[i : i + m])
    return out


def time_stage2(text, sources, patterns, candidates, mode: Mode) -> float:
    """Seconds for one verification pass over all candidates of all patterns."""

    def run():
        for p, c in zip(patterns, candidates):
            verify_candidates(text, sources, p, c, mode)

    loops, total = timeit.Timer(run).autorange()
    return total / loops


def measure(
    text: EDText,
    sources: SourceSequence,
    patterns_by_m: dict[int, list[bytes]],
    reps: int = 5,
    modes=(Mode.VERIFY, Mode.FULL),
    word_size: int = WORD_SIZE,
) -> dict[int, dict]:
    """Raw per-repetition timings, keyed by pattern length.

    Repetitions are interleaved across lengths (and modes alternate order)
    so that background load spikes hit every configuration alike.
    """
    modes = [Mode(md) for md in modes]
    raw = {m: {"stage1": [], "stage2": {md: [] for md in modes}} for m in patterns_by_m}
    candidates: dict[int, list] = {}
    for _ in range(reps):
        for m, patterns in patterns_by_m.items():
            t0 = time.perf_counter()
            candidates[m] = [search_ed(text, p, word_size) for p in patterns]
            raw[m]["stage1"].append(time.perf_counter() - t0)
    for rep in range(reps):
        for m, patterns in patterns_by_m.items():
            for md in modes if rep % 2 == 0 else modes[::-1]:
                raw[m]["stage2"][md].append(time_stage2(text, sources, patterns, candidates[m], md))
    for m, patterns in patterns_by_m.items():
        raw[m]["occ_prime"] = sum(len(c) for c in candidates[m])
        raw[m]["verified"] = {
            md: sum(len(verify_candidates(text, sources, p, c, md)) for p, c in zip(patterns, candidates[m]))
            for md in modes
        }
    return raw


def run_bench(
    text: EDText,
    sources: SourceSequence,
    patterns_by_m: dict[int, list[bytes]],
    reps: int = 5,
    modes=(Mode.BASELINE, Mode.VERIFY, Mode.FULL),
    dataset: str = "dataset",
    word_size: int = WORD_SIZE,
) -> list[BenchRow]:
    modes = [Mode(md) for md in modes]
    rows: list[BenchRow] = []
    n_bytes = text.size
    timed = measure(text, sources, patterns_by_m, reps, [md for md in modes if md is not Mode.BASELINE], word_size)
    for m, patterns in patterns_by_m.items():
        raw = timed[m]
        base = statistics.median(raw["stage1"]) / len(patterns)
        for md in modes:
            if md is Mode.BASELINE:
                secs, verified = base, raw["occ_prime"]
            else:
                secs = base + statistics.median(raw["stage2"][md]) / len(patterns)
                verified = raw["verified"][md]
            rows.append(
                BenchRow(
                    dataset=dataset,
                    m=m,
                    mode=md.value,
                    bytes_N=n_bytes,
                    seconds=secs,
                    MB_per_s=n_bytes / 1e6 / secs,
                    occ_prime=raw["occ_prime"],
                    verified_count=verified,
                    slowdown_vs_baseline=secs / base - 1.0,
                )
            )
    return rows

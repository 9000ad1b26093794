#!/usr/bin/env python3
"""Verification time as the number of individuals grows, on a fixed text.

The text and the patterns stay fixed while the sources are regenerated for
each r, so the candidate set is identical across rows and only the width
of the source bitsets changes. Prints a TSV and the fitted log-log slope
against ceil(r/64).
"""

from __future__ import annotations

import argparse
import math
import statistics
from dataclasses import dataclass, replace

from edspang import Mode, SynthParams, generate_ed, search_ed
from edspang.bench import sample_patterns, time_stage2
from edspang.synth import sources_for


@dataclass
class ScalingConfig:
    positions: int = 20_000
    r_values: tuple[int, ...] = (64, 256, 512, 1024, 4096, 16_383)
    m: int = 8
    patterns: int = 8
    reps: int = 5
    seed: int = 13


def run(cfg: ScalingConfig) -> float:
    params = SynthParams(positions=cfg.positions, individuals=cfg.r_values[0], seed=cfg.seed)
    text, first = generate_ed(params)
    patterns = sample_patterns(text, first, cfg.m, cfg.patterns, cfg.seed)
    candidates = [search_ed(text, p) for p in patterns]
    print(f"# candidates={sum(map(len, candidates))}")
    print("r\twords\tverify_s\tfull_s")
    xs, ys = [], []
    for r in cfg.r_values:
        sources = sources_for(text, replace(params, individuals=r))
        med = {
            md: statistics.median(time_stage2(text, sources, patterns, candidates, md) for _ in range(cfg.reps))
            for md in (Mode.VERIFY, Mode.FULL)
        }
        words = math.ceil(r / 64)
        print(f"{r}\t{words}\t{med[Mode.VERIFY]:.6g}\t{med[Mode.FULL]:.6g}")
        xs.append(math.log(words))
        ys.append(math.log(med[Mode.FULL]))
    mx, my = statistics.fmean(xs), statistics.fmean(ys)
    slope = sum((x - mx) * (y - my) for x, y in zip(xs, ys)) / sum((x - mx) ** 2 for x in xs)
    print(f"# full-mode log-log slope vs words: {slope:.3f}")
    return slope


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--positions", type=int, default=ScalingConfig.positions)
    ap.add_argument("--r", type=int, nargs="+", default=list(ScalingConfig.r_values))
    ap.add_argument("-m", type=int, default=ScalingConfig.m)
    a = ap.parse_args()
    run(ScalingConfig(positions=a.positions, r_values=tuple(a.r), m=a.m))


if __name__ == "__main__":
    main()

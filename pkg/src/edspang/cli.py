"""Command-line front end: ``edspang search|gen|convert|recode|bench``."""

from __future__ import annotations

import argparse
import logging
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import bench as benchmod
from .core import validate
from .files import atomic_write, load_sources, load_text, save_sources_binary, save_sources_text, save_text
from .ingest import IngestError, convert_files
from .search import WORD_SIZE, PatternError, search_ed
from .synth import SynthParams, generate_ed
from .verify import Mode, verify_candidates

log = logging.getLogger("edspang")

EXIT_OK, EXIT_IO, EXIT_PATTERN = 0, 1, 2


class _ColorFormatter(logging.Formatter):
    COLORS = {"WARNING": "\033[33m", "ERROR": "\033[31m", "INFO": "\033[36m", "DEBUG": "\033[2m"}

    def format(self, record):
        msg = super().format(record)
        color = self.COLORS.get(record.levelname)
        return f"{color}{msg}\033[0m" if color else msg


def _setup_logging(verbose: bool) -> None:
    handler = logging.StreamHandler(sys.stderr)
    fmt = "%(levelname)s %(message)s"
    plain = os.environ.get("EDSPANG_NO_COLOR") or not sys.stderr.isatty()
    handler.setFormatter(logging.Formatter(fmt) if plain else _ColorFormatter(fmt))
    root = logging.getLogger("edspang")
    root.handlers[:] = [handler]
    root.setLevel(logging.DEBUG if verbose else logging.INFO)
    root.propagate = False


def _read_patterns(path) -> list[bytes]:
    raw = Path(path).read_bytes().splitlines()
    return [line.strip().upper() for line in raw if line.strip()]


def _load_pair(args, need_sources: bool):
    text = load_text(args.text)
    sources = None
    if need_sources:
        if not args.sources:
            raise ValueError("--sources is required unless --mode baseline")
        sources = load_sources(args.sources, text, getattr(args, "individuals", None))
        report = validate(text, sources)
        if not report.ok:
            raise ValueError("invalid sources: " + "; ".join(map(str, report.violations[:5])))
        for w in report.warnings[:3]:
            log.debug("sources: %s", w)
    return text, sources


def format_match(cand, sources=None) -> str:
    var = "-" if cand.variant is None else str(cand.variant)
    s = f"{cand.segment}:{var}:{cand.offset}"
    if sources is not None:
        s += ":" + ",".join(map(str, sources))
    return s


def search_line(text, sources, pattern: bytes, mode: Mode, word_size: int) -> str:
    cands = search_ed(text, pattern, word_size)
    if mode is Mode.BASELINE:
        matches = [format_match(c) for c in cands]
    else:
        verified = verify_candidates(text, sources, pattern, cands, mode)
        matches = [format_match(v.candidate, v.result.sources) for v in verified]
    return pattern.decode("ascii") + "\t" + ";".join(matches)


def cmd_search(args) -> int:
    mode = Mode(args.mode)
    text, sources = _load_pair(args, need_sources=mode is not Mode.BASELINE)
    patterns = _read_patterns(args.patterns)

    def one(p):
        try:
            return search_line(text, sources, p, mode, args.word_size), None
        except PatternError as exc:
            return None, f"pattern {p.decode('ascii', 'replace')!r}: {exc}"

    with ThreadPoolExecutor(max_workers=max(1, args.threads)) as pool:
        results = list(pool.map(one, patterns))
    status = EXIT_OK
    lines = []
    for line, err in results:
        if err:
            log.error(err)
            status = EXIT_PATTERN
        else:
            lines.append(line)
    out = "".join(line + "\n" for line in lines).encode("ascii")
    if args.out in (None, "-"):
        sys.stdout.buffer.write(out)
        sys.stdout.flush()
    else:
        atomic_write(args.out, out)
    return status


def _synth_params(args) -> SynthParams:
    return SynthParams(
        positions=args.positions,
        nd_fraction=args.nd_fraction,
        max_variants=args.max_variants,
        max_variant_len=args.max_variant_len,
        individuals=args.individuals if args.individuals is not None else 128,
        seed=args.seed,
    )


def cmd_gen(args) -> int:
    text, sources = generate_ed(_synth_params(args))
    prefix = args.out
    save_text(prefix + ".eds", text)
    save_sources_text(prefix + ".edss", sources)
    save_sources_binary(prefix + ".edsc", sources)
    log.info(
        "wrote %s.{eds,edss,edsc}: n=%d N=%d n'=%d r=%d",
        prefix, len(text), text.size, len(text.nd_segments), sources.r,
    )
    return EXIT_OK


def cmd_convert(args) -> int:
    results = list(convert_files(args.fasta, args.vcf))
    for name, text, sources, report in results:
        prefix = args.out if len(results) == 1 else f"{args.out}.{name}"
        save_text(prefix + ".eds", text)
        save_sources_binary(prefix + ".edsc", sources)
        log.info("%s: %d records used, r=%d, n=%d", name, report.records_used, sources.r, len(text))
        sys.stderr.write(f"{name}\tskipped={report.skipped_total}")
        for reason, count in sorted(report.skipped.items()):
            sys.stderr.write(f"\t{reason}={count}")
        for reason, count in sorted(report.warnings.items()):
            sys.stderr.write(f"\twarning:{reason}={count}")
        sys.stderr.write("\n")
    return EXIT_OK


def cmd_recode(args) -> int:
    text = load_text(args.text)
    sources = load_sources(args.sources, text, args.individuals)
    report = validate(text, sources)
    if not report.ok:
        raise ValueError("invalid sources: " + "; ".join(map(str, report.violations[:5])))
    if args.out.endswith(".edss"):
        save_sources_text(args.out, sources)
    else:
        save_sources_binary(args.out, sources, compress=not args.raw)
    return EXIT_OK


def cmd_bench(args) -> int:
    if args.text:
        text, sources = _load_pair(args, need_sources=True)
        dataset = Path(args.text).stem
    else:
        text, sources = generate_ed(_synth_params(args))
        dataset = f"synth{args.positions}_r{sources.r}"
    if args.patterns:
        by_m: dict[int, list[bytes]] = {}
        for p in _read_patterns(args.patterns):
            by_m.setdefault(len(p), []).append(p)
    else:
        lengths = [int(x) for x in args.lengths.split(",")]
        by_m = {m: benchmod.sample_patterns(text, sources, m, args.count, args.seed) for m in lengths}
    too_long = [m for m in by_m if m > args.word_size]
    for m in too_long:
        log.error("patterns of length %d exceed word size %d; skipped", m, args.word_size)
        del by_m[m]
    rows = benchmod.run_bench(text, sources, by_m, reps=args.reps, dataset=dataset, word_size=args.word_size)
    out = benchmod.BenchRow.header() + "\n" + "".join(r.tsv() + "\n" for r in rows)
    if args.out in (None, "-"):
        sys.stdout.write(out)
    else:
        atomic_write(args.out, out.encode())
    return EXIT_PATTERN if too_long else EXIT_OK


def _add_synth_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--positions", type=int, default=100_000)
    p.add_argument("--individuals", type=int, help="individual count r (default 128 for generated data)")
    p.add_argument("--nd-fraction", type=float, default=0.10)
    p.add_argument("--max-variants", type=int, default=10)
    p.add_argument("--max-variant-len", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="edspang", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("search", help="search patterns, optionally verifying against sources")
    p.add_argument("-i", "--text", required=True)
    p.add_argument("-s", "--sources")
    p.add_argument("-p", "--patterns", required=True)
    p.add_argument("-o", "--out")
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.FULL.value)
    p.add_argument("--word-size", type=int, default=WORD_SIZE)
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--individuals", type=int, help="r for text-form sources (default: max index + 1)")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("gen", help="generate a synthetic pan-genome")
    _add_synth_flags(p)
    p.add_argument("-o", "--out", required=True, help="output prefix")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("convert", help="convert FASTA + VCF to .eds/.edsc")
    p.add_argument("--fasta", required=True)
    p.add_argument("--vcf", required=True)
    p.add_argument("-o", "--out", required=True, help="output prefix")
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("recode", help="convert sources between text and binary forms")
    p.add_argument("-i", "--text", required=True)
    p.add_argument("-s", "--sources", required=True)
    p.add_argument("-o", "--out", required=True, help=".edss for text, anything else for binary")
    p.add_argument("--raw", action="store_true", help="binary stream without the zstd container")
    p.add_argument("--individuals", type=int)
    p.set_defaults(func=cmd_recode)

    p = sub.add_parser("bench", help="throughput of baseline / verify / full search (TSV)")
    p.add_argument("-i", "--text")
    p.add_argument("-s", "--sources")
    p.add_argument("-p", "--patterns")
    p.add_argument("-o", "--out")
    p.add_argument("--lengths", default=",".join(map(str, benchmod.DEFAULT_LENGTHS)))
    p.add_argument("--count", type=int, default=5, help="sampled patterns per length")
    p.add_argument("--reps", type=int, default=5)
    p.add_argument("--word-size", type=int, default=WORD_SIZE)
    _add_synth_flags(p)
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    _setup_logging(args.verbose)
    try:
        return args.func(args)
    except (OSError, ValueError, IngestError) as exc:
        log.error("%s", exc)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())

"""Reference + VCF to ED text and sources, one chromosome at a time.

Each usable record becomes one ND segment ``[alt1, ..., altK, ref]`` after
removing the prefix shared by all alleles (it is folded into the preceding
deterministic stretch). Sample ``s`` contributes haploids ``2s`` and ``2s+1``.
Overlapping records, symbolic alleles and records without ALT are skipped and
counted.
"""

from __future__ import annotations

import gzip
import io
import logging
import os
from collections import Counter
from dataclasses import dataclass, field
from typing import IO, Iterable, Iterator

from .core import DEFAULT_ALPHABET, EDText, Segment, SourceSequence, SourceSet

log = logging.getLogger(__name__)


class IngestError(ValueError):
    pass


@dataclass(frozen=True)
class VariantRecord:
    chrom: str
    position: int  # 1-based
    ref: bytes
    alts: tuple[bytes, ...]
    genotypes: tuple[tuple[int, ...], ...]  # per sample, one allele index per haploid copy
    phased: bool = True


@dataclass
class ConvertReport:
    samples: int = 0
    records_used: int = 0
    skipped: Counter = field(default_factory=Counter)
    warnings: Counter = field(default_factory=Counter)

    @property
    def skipped_total(self) -> int:
        return sum(self.skipped.values())


def _open(path) -> IO[bytes]:
    fh = open(path, "rb")
    if fh.peek(2)[:2] == b"\x1f\x8b":
        return gzip.GzipFile(fileobj=fh)
    return fh


def _lines(source) -> Iterator[bytes]:
    if isinstance(source, (str, os.PathLike)):
        with _open(source) as fh:
            yield from fh
    elif isinstance(source, bytes):
        yield from io.BytesIO(source)
    else:
        for line in source:
            yield line.encode() if isinstance(line, str) else line


def read_fasta(source) -> list[tuple[str, bytes]]:
    """All (name, sequence) records, sequences upper-cased."""
    records: list[tuple[str, bytes]] = []
    name = None
    chunks: list[bytes] = []
    for raw in _lines(source):
        line = raw.strip()
        if not line:
            continue
        if line.startswith(b">"):
            if name is not None:
                records.append((name, b"".join(chunks).upper()))
            name = line[1:].split()[0].decode() if line[1:].strip() else ""
            chunks = []
        else:
            if name is None:
                raise IngestError("FASTA sequence data before the first header")
            chunks.append(line)
    if name is not None:
        records.append((name, b"".join(chunks).upper()))
    return records


def _genotype(field_: bytes, where: str) -> tuple[tuple[int, ...], bool]:
    phased = b"/" not in field_
    parts = field_.replace(b"/", b"|").split(b"|")
    if len(parts) != 2:
        raise IngestError(f"{where}: genotype {field_.decode()!r} is not diploid")
    try:
        alleles = tuple(int(a) for a in parts)
    except ValueError:
        raise IngestError(f"{where}: malformed genotype {field_.decode()!r}") from None
    return alleles, phased


def read_vcf(source) -> tuple[list[str], Iterator[VariantRecord]]:
    """Sample names and a lazy record stream (only CHROM, POS, REF, ALT, GT are read)."""
    lines = _lines(source)
    samples: list[str] | None = None
    for raw in lines:
        if raw.startswith(b"##"):
            continue
        if raw.startswith(b"#CHROM"):
            cols = raw.rstrip(b"\r\n").split(b"\t")
            samples = [c.decode() for c in cols[9:]]
            break
        raise IngestError("VCF header line #CHROM missing")
    if samples is None:
        raise IngestError("VCF header line #CHROM missing")

    def records() -> Iterator[VariantRecord]:
        for lineno, raw in enumerate(lines, start=1):
            line = raw.rstrip(b"\r\n")
            if not line:
                continue
            cols = line.split(b"\t")
            where = f"VCF record {lineno}"
            if len(cols) < 9 + len(samples):
                raise IngestError(f"{where}: expected {9 + len(samples)} columns, got {len(cols)}")
            fmt = cols[8].split(b":")
            if b"GT" not in fmt:
                raise IngestError(f"{where}: FORMAT lacks GT")
            gt_at = fmt.index(b"GT")
            gts, phased = [], True
            for c in cols[9 : 9 + len(samples)]:
                g, ph = _genotype(c.split(b":")[gt_at], where)
                gts.append(g)
                phased &= ph
            alts = () if cols[4] == b"." else tuple(a.upper() for a in cols[4].split(b","))
            try:
                pos = int(cols[1])
            except ValueError:
                raise IngestError(f"{where}: bad POS {cols[1]!r}") from None
            yield VariantRecord(cols[0].decode(), pos, cols[3].upper(), alts, tuple(gts), phased)

    return samples, records()


def _common_prefix(alleles: Iterable[bytes]) -> int:
    alleles = list(alleles)
    n = min(len(a) for a in alleles)
    i = 0
    while i < n and all(a[i] == alleles[0][i] for a in alleles):
        i += 1
    return i


def convert(
    reference: bytes,
    records: Iterable[VariantRecord],
    samples: int,
    alphabet: frozenset = DEFAULT_ALPHABET,
) -> tuple[EDText, SourceSequence, ConvertReport]:
    if samples < 1:
        raise IngestError("at least one sample is required")
    reference = bytes(reference).upper()
    r = 2 * samples
    report = ConvertReport(samples=samples)
    segments: list[Segment] = []
    entries: list[tuple[SourceSet, ...]] = []
    pending = bytearray()
    cursor = 0
    last_pos = 0
    for rec in records:
        if rec.position < last_pos:
            raise IngestError(f"records not sorted: position {rec.position} after {last_pos}")
        last_pos = rec.position
        if len(rec.genotypes) != samples:
            raise IngestError(f"position {rec.position}: {len(rec.genotypes)} genotypes for {samples} samples")
        if not rec.alts:
            report.skipped["no alternate allele"] += 1
            continue
        if any(not a or set(a) - alphabet for a in rec.alts) or set(rec.ref) - alphabet:
            report.skipped["symbolic or non-sequence allele"] += 1
            continue
        if len({rec.ref, *rec.alts}) != 1 + len(rec.alts):
            report.skipped["duplicate allele"] += 1
            continue
        start = rec.position - 1
        if start < cursor:
            report.skipped["overlapping record"] += 1
            log.warning("skipping record at %s:%d overlapping the previous one", rec.chrom, rec.position)
            continue
        if reference[start : start + len(rec.ref)] != rec.ref:
            raise IngestError(f"position {rec.position}: REF {rec.ref.decode()!r} does not match the reference")
        n_alleles = 1 + len(rec.alts)
        for g in rec.genotypes:
            if any(not 0 <= a < n_alleles for a in g):
                raise IngestError(f"position {rec.position}: allele index out of range in {g}")
        if not rec.phased:
            report.warnings["unphased genotype treated as phased"] += 1

        pending += reference[cursor:start]
        alleles = (rec.ref,) + rec.alts
        trim = _common_prefix(alleles)
        pending += rec.ref[:trim]
        variants = tuple(a[trim:] for a in rec.alts) + (rec.ref[trim:],)
        if pending:
            segments.append(Segment.deterministic(bytes(pending)))
            pending.clear()
        segments.append(Segment(variants))
        carriers: list[list[int]] = [[] for _ in rec.alts]
        for s, g in enumerate(rec.genotypes):
            for h, a in enumerate(g):
                if a:
                    carriers[a - 1].append(2 * s + h)
        entries.append(tuple(SourceSet.of(c, r) for c in carriers))
        report.records_used += 1
        cursor = start + len(rec.ref)
    pending += reference[cursor:]
    if pending:
        segments.append(Segment.deterministic(bytes(pending)))
    return EDText(tuple(segments), alphabet), SourceSequence(r, tuple(entries)), report


def convert_files(fasta, vcf) -> Iterator[tuple[str, EDText, SourceSequence, ConvertReport]]:
    """Convert every FASTA record against its VCF records, in FASTA order."""
    refs = read_fasta(fasta)
    if not refs:
        raise IngestError("FASTA input holds no sequence")
    samples, stream = read_vcf(vcf)
    by_chrom: dict[str, list[VariantRecord]] = {}
    for rec in stream:
        by_chrom.setdefault(rec.chrom, []).append(rec)
    unknown = set(by_chrom) - {name for name, _ in refs}
    if unknown:
        raise IngestError(f"VCF chromosomes missing from the reference: {sorted(unknown)}")
    for name, seq in refs:
        text, sources, report = convert(seq, by_chrom.get(name, ()), len(samples))
        yield name, text, sources, report

"""Brute-force ground truth for testing.

Nothing here touches the Shift-Or engine or the frontier: haplotypes and paths
are concatenated explicitly and scanned with ``bytes.find``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .core import EDText, SourceSequence, SourceSet
from .search import MatchCandidate
from .verify import Mode, VerificationResult, VerifiedMatch

MAX_PATHS = 1 << 16


@dataclass(frozen=True)
class Haplotype:
    individual: int
    sequence: bytes
    coord_map: tuple[MatchCandidate, ...]


def _assigned_variant(sources: SourceSequence, nd_index: int, individual: int) -> int:
    entry = sources.entries[nd_index]
    for v, s in enumerate(entry):
        if individual in s:
            return v
    return len(entry)


def materialize_haplotype(text: EDText, sources: SourceSequence, individual: int) -> Haplotype:
    if not 0 <= individual < sources.r:
        raise IndexError(f"individual {individual} outside [0, {sources.r})")
    seq = bytearray()
    where: list[MatchCandidate] = []
    nd = 0
    for si, seg in enumerate(text.segments):
        if seg.is_deterministic:
            vi, var = None, seg.variants[0]
        else:
            vi = _assigned_variant(sources, nd, individual)
            var = seg.variants[vi]
            nd += 1
        seq += var
        where.extend(MatchCandidate(si, vi, off) for off in range(len(var)))
    return Haplotype(individual, bytes(seq), tuple(where))


def _symbols(pattern) -> bytes:
    if hasattr(pattern, "symbols"):
        return pattern.symbols
    return (pattern.encode("ascii") if isinstance(pattern, str) else bytes(pattern)).upper()


def _occurrence_ends(seq: bytes, p: bytes):
    i = seq.find(p)
    while i != -1:
        yield i + len(p) - 1
        i = seq.find(p, i + 1)


def oracle_search(text: EDText, sources: SourceSequence, pattern) -> list[VerifiedMatch]:
    """Full-mode answer obtained by scanning every individual's haplotype."""
    p = _symbols(pattern)
    hits: dict[MatchCandidate, set[int]] = {}
    for j in range(sources.r):
        hap = materialize_haplotype(text, sources, j)
        for end in _occurrence_ends(hap.sequence, p):
            hits.setdefault(hap.coord_map[end], set()).add(j)
    return [
        VerifiedMatch(c, VerificationResult(Mode.FULL, True, SourceSet.of(hits[c], sources.r)))
        for c in sorted(hits, key=MatchCandidate.sort_key)
    ]


def _path_count(text: EDText) -> int:
    total = 1
    for seg in text.segments:
        total *= len(seg.variants)
    return total


def oracle_candidates(text: EDText, pattern, max_paths: int = MAX_PATHS) -> list[MatchCandidate]:
    """Stage-1 answer by enumerating every path through the text."""
    p = _symbols(pattern)
    if _path_count(text) > max_paths:
        raise ValueError(f"instance too large: more than {max_paths} paths")
    found: set[MatchCandidate] = set()
    choices = [range(len(seg.variants)) for seg in text.segments]
    for pick in itertools.product(*choices):
        seq = bytearray()
        where: list[MatchCandidate] = []
        for si, (seg, vi) in enumerate(zip(text.segments, pick)):
            var = seg.variants[vi]
            tag = None if seg.is_deterministic else vi
            seq += var
            where.extend(MatchCandidate(si, tag, off) for off in range(len(var)))
        for end in _occurrence_ends(bytes(seq), p):
            found.add(where[end])
    return sorted(found, key=MatchCandidate.sort_key)


def window_candidates(text: EDText, pattern) -> list[MatchCandidate]:
    """Stage-1 answer by walking back from every position over every variant choice.

    Only the last ``m`` characters of each path matter, so this stays exact on
    texts with too many paths to enumerate.
    """
    p = _symbols(pattern)
    m = len(p)
    found = []
    for si, seg in enumerate(text.segments):
        for vi, var in enumerate(seg.variants):
            tag = None if seg.is_deterministic else vi
            for off in range(len(var)):
                stack = [(si - 1, var[: off + 1])]
                while stack:
                    sj, tail = stack.pop()
                    if len(tail) >= m:
                        if tail[len(tail) - m :] == p:
                            found.append(MatchCandidate(si, tag, off))
                            break
                        continue
                    if sj < 0 or not p.endswith(tail):
                        continue
                    stack.extend((sj - 1, v + tail) for v in text.segments[sj].variants)
    return sorted(found, key=MatchCandidate.sort_key)


def oracle_path_sources(text: EDText, sources: SourceSequence, pattern, cand: MatchCandidate) -> SourceSet:
    """Union of per-path source intersections for one candidate, path by path.

    Each backward path is followed on its own with no merging of equal
    states; the counterpart of the merged frontier in full mode.
    """
    p = _symbols(pattern)
    m = len(p)
    r = sources.r
    everyone = set(range(r))

    def variant_members(si: int, vi: int) -> set[int]:
        k = text.nd_ordinal[si]
        if vi < len(sources.entries[k]):
            return set(sources.entries[k][vi])
        used = set()
        for s in sources.entries[k]:
            used |= set(s)
        return everyone - used

    seg = text.segments[cand.segment]
    var = seg.variants[0 if cand.variant is None else cand.variant]
    members = everyone if cand.variant is None else variant_members(cand.segment, cand.variant)
    # matched text so far, read right to left starting with the candidate's own prefix
    tail = var[: cand.offset + 1]
    result: set[int] = set()
    stack = [(cand.segment - 1, tail, members)]
    while stack:
        si, tail, members = stack.pop()
        if len(tail) >= m:
            if tail[len(tail) - m:] == p:
                result |= members
            continue
        if not p.endswith(tail) or si < 0:
            continue
        seg = text.segments[si]
        for vi, v in enumerate(seg.variants):
            sub = members if seg.is_deterministic else members & variant_members(si, vi)
            stack.append((si - 1, v + tail, sub))
    return SourceSet.of(result, r)

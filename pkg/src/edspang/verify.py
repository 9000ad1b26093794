"""Candidate verification against per-variant source sets.

Starting from a candidate's end position, the walk goes right to left one
segment per level. The frontier maps "pattern symbols still to match" to the
union of the source sets of all partial paths that reached that state; each
ND variant intersects its set in, and nodes whose set becomes empty are
dropped. Because intersection distributes over union, merging nodes with the
same remaining count loses nothing.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .core import EDText, SourceSequence, SourceSet
from .search import WORD_SIZE, MatchCandidate, as_pattern, search_ed


class Mode(str, enum.Enum):
    BASELINE = "baseline"
    VERIFY = "verify"
    FULL = "full"


@dataclass(frozen=True)
class FrontierNode:
    remaining: int
    sources: SourceSet


@dataclass(frozen=True)
class VerificationResult:
    mode: Mode
    genuine: bool
    sources: SourceSet | None = None


@dataclass(frozen=True)
class VerifiedMatch:
    candidate: MatchCandidate
    result: VerificationResult


@dataclass
class SearchReport:
    mode: Mode
    candidates: list[MatchCandidate] = field(default_factory=list)
    verified: list[VerifiedMatch] = field(default_factory=list)

    @property
    def occ_prime(self) -> int:
        return len(self.candidates)


class CandidateError(ValueError):
    """The candidate does not correspond to a pattern occurrence in the text."""


def _start(text: EDText, sources: SourceSequence, p: bytes, cand: MatchCandidate) -> tuple[int, int]:
    """Check the candidate's own variant; return (remaining, initial source bits)."""
    m = len(p)
    seg = text.segments[cand.segment]
    if cand.variant is None:
        if not seg.is_deterministic:
            raise CandidateError(f"{cand}: segment {cand.segment} is not deterministic")
        var = seg.variants[0]
        src = (1 << sources.r) - 1
    else:
        if seg.is_deterministic or not 0 <= cand.variant < len(seg.variants):
            raise CandidateError(f"{cand}: no such ND variant")
        var = seg.variants[cand.variant]
        src = sources.variant_bits[text.nd_ordinal[cand.segment]][cand.variant]
    consumed = cand.offset + 1
    if not 0 < consumed <= len(var):
        raise CandidateError(f"{cand}: offset outside variant of length {len(var)}")
    if consumed >= m:
        if var[consumed - m:consumed] != p:
            raise CandidateError(f"{cand}: variant does not contain the pattern here")
        return 0, src
    k = m - consumed
    if var[:consumed] != p[k:]:
        raise CandidateError(f"{cand}: variant prefix does not match the pattern suffix")
    return k, src


def _walk(
    text: EDText,
    sources: SourceSequence,
    p: bytes,
    cand: MatchCandidate,
    stop_early: bool,
    trace: list | None = None,
) -> int:
    k, src = _start(text, sources, p, cand)
    if k == 0 or not src:
        return src
    segs = text.segments
    ords = text.nd_ordinal
    vbits = sources.variant_bits
    found = 0
    frontier = {k: src}
    si = cand.segment - 1
    while frontier and si >= 0:
        if trace is not None:
            trace.append((si + 1, [FrontierNode(k, SourceSet(s, sources.r)) for k, s in sorted(frontier.items())]))
        seg = segs[si]
        nxt: dict[int, int] = {}
        if seg.is_deterministic:
            t = seg.variants[0]
            ln = len(t)
            for k, s in frontier.items():
                if ln >= k:
                    if t[ln - k:] == p[:k]:
                        found |= s
                        if stop_early:
                            return found
                elif p[k - ln:k] == t:
                    nxt[k - ln] = nxt.get(k - ln, 0) | s
        else:
            bits = vbits[ords[si]]
            for k, s in frontier.items():
                for v, sigma in zip(seg.variants, bits):
                    x = s & sigma
                    if not x:
                        continue
                    ln = len(v)
                    if ln >= k:
                        if v[ln - k:] == p[:k]:
                            found |= x
                            if stop_early:
                                return found
                    elif p[k - ln:k] == v:
                        # an empty variant keeps k and only narrows the set
                        nxt[k - ln] = nxt.get(k - ln, 0) | x
        frontier = nxt
        si -= 1
    return found


def verify_candidate(
    text: EDText,
    sources: SourceSequence,
    pattern,
    cand: MatchCandidate,
    mode: Mode = Mode.FULL,
) -> VerificationResult:
    """Decide whether some individual realizes the match ending at ``cand``.

    In full mode the result carries every such individual.
    """
    mode = Mode(mode)
    if mode is Mode.BASELINE:
        raise ValueError("baseline mode performs no verification")
    p = as_pattern(pattern).symbols
    bits = _walk(text, sources, p, cand, stop_early=mode is Mode.VERIFY)
    if mode is Mode.VERIFY:
        return VerificationResult(mode, bool(bits))
    return VerificationResult(mode, bool(bits), SourceSet(bits, sources.r))


def trace_frontier(text: EDText, sources: SourceSequence, pattern, cand: MatchCandidate):
    """Frontier contents per level as ``(segment already consumed, nodes)`` pairs, for inspection."""
    trace: list = []
    _walk(text, sources, as_pattern(pattern).symbols, cand, stop_early=False, trace=trace)
    return trace


def verify_candidates(text, sources, pattern, candidates, mode: Mode = Mode.FULL) -> list[VerifiedMatch]:
    mode = Mode(mode)
    out = []
    for c in candidates:
        res = verify_candidate(text, sources, pattern, c, mode)
        if res.genuine:
            out.append(VerifiedMatch(c, res))
    return out


def search_with_sources(
    text: EDText,
    sources: SourceSequence,
    pattern,
    mode: Mode = Mode.FULL,
    word_size: int = WORD_SIZE,
) -> SearchReport:
    mode = Mode(mode)
    p = as_pattern(pattern)
    candidates = search_ed(text, p, word_size)
    if mode is Mode.BASELINE:
        return SearchReport(mode, candidates, [])
    return SearchReport(mode, candidates, verify_candidates(text, sources, p, candidates, mode))

"""Readers and writers for the human-readable ``.eds`` and ``.edss`` formats.

ED text: bare symbols form deterministic segments, ``{a,b,...}`` forms a
variant group, and an empty entry (``{A,}``) is the empty variant.

Sources: one outer group per ND segment, either a bare index list (a single
explicit set) or nested ``{...}`` groups, one per non-reference variant::

    {0}{{0,2}{3}}
"""

from __future__ import annotations

import warnings

from .core import DEFAULT_ALPHABET, EDText, Segment, SourceSequence, SourceSet

_NEWLINES = b"\r\n"
_LBRACE, _RBRACE, _COMMA = ord("{"), ord("}"), ord(",")


class ParseError(ValueError):
    def __init__(self, byte_offset: int, message: str):
        super().__init__(f"byte {byte_offset}: {message}")
        self.byte_offset = byte_offset
        self.message = message


class SourceWarning(UserWarning):
    """Legal but suspicious source data, e.g. an allele nobody carries."""


def _as_bytes(data) -> bytes:
    if isinstance(data, str):
        return data.encode("ascii")
    return bytes(data)


def _upper(c: int) -> int:
    return c - 32 if 97 <= c <= 122 else c


def parse_ed_text(data, alphabet: frozenset = DEFAULT_ALPHABET) -> EDText:
    buf = _as_bytes(data)
    segments: list[Segment] = []
    run = bytearray()
    i, end = 0, len(buf)
    while i < end:
        c = buf[i]
        if c in _NEWLINES:
            i += 1
            continue
        if c == _LBRACE:
            if run:
                segments.append(Segment.deterministic(bytes(run)))
                run.clear()
            start = i
            i += 1
            variants: list[bytes] = []
            cur = bytearray()
            while True:
                if i >= end:
                    raise ParseError(start, "unterminated brace")
                c = buf[i]
                if c == _COMMA or c == _RBRACE:
                    v = bytes(cur)
                    if v in variants:
                        raise ParseError(i, f"duplicate variant {v.decode() or '<empty>'!s}")
                    variants.append(v)
                    cur.clear()
                    i += 1
                    if c == _RBRACE:
                        break
                    continue
                c = _upper(c)
                if c not in alphabet:
                    raise ParseError(i, f"illegal symbol {chr(buf[i])!r}")
                cur.append(c)
                i += 1
            if len(variants) == 1 and not variants[0]:
                raise ParseError(start, "empty braces")
            segments.append(Segment(tuple(variants)))
            continue
        u = _upper(c)
        if u not in alphabet:
            if c == _RBRACE:
                raise ParseError(i, "unbalanced closing brace")
            raise ParseError(i, f"illegal symbol {chr(c)!r}")
        run.append(u)
        i += 1
    if run:
        segments.append(Segment.deterministic(bytes(run)))
    return EDText(tuple(segments), alphabet)


def write_ed_text(text: EDText, braced: bool = False) -> bytes:
    """Serialize a text.

    Deterministic segments are written bare unless the previous segment was
    also deterministic (bare runs would merge) or ``braced`` is set, which
    brackets every segment as in ``{AA}{AG,G}``.
    """
    out = bytearray()
    prev_det = False
    for seg in text.segments:
        if seg.is_deterministic and not (braced or prev_det):
            out += seg.variants[0]
        else:
            out += b"{" + b",".join(seg.variants) + b"}"
        prev_det = seg.is_deterministic
    return bytes(out)


def _parse_index_list(buf: bytes, i: int, r: int) -> tuple[list[int], int]:
    """Parse ``i1,i2,...}`` starting at ``i``; returns indexes and the offset past ``}``."""
    out: list[int] = []
    n = len(buf)
    if i < n and buf[i] == _RBRACE:
        return out, i + 1
    while True:
        start = i
        while i < n and 48 <= buf[i] <= 57:
            i += 1
        if i == start:
            if i >= n:
                raise ParseError(i, "unterminated brace")
            raise ParseError(i, f"expected source index, got {chr(buf[i])!r}")
        v = int(buf[start:i])
        if v >= r:
            raise ParseError(start, f"source index {v} >= r={r}")
        if out and v <= out[-1]:
            raise ParseError(start, f"source indexes not strictly increasing ({out[-1]} then {v})")
        out.append(v)
        if i >= n:
            raise ParseError(i, "unterminated brace")
        if buf[i] == _COMMA:
            i += 1
            continue
        if buf[i] == _RBRACE:
            return out, i + 1
        raise ParseError(i, f"unexpected {chr(buf[i])!r} in index list")


def parse_sources_text(data, r: int, text: EDText) -> SourceSequence:
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    buf = bytes(b for b in _as_bytes(data) if b not in _NEWLINES)
    arities = [len(text.segments[i].variants) - 1 for i in text.nd_segments]
    entries: list[tuple[SourceSet, ...]] = []
    empty_sets = 0
    i, n = 0, len(buf)
    while i < n:
        if buf[i] != _LBRACE:
            raise ParseError(i, f"expected '{{', got {chr(buf[i])!r}")
        group_start = i
        i += 1
        sets: list[list[int]] = []
        if i < n and buf[i] == _LBRACE:
            while i < n and buf[i] == _LBRACE:
                members, i = _parse_index_list(buf, i + 1, r)
                sets.append(members)
            if i >= n:
                raise ParseError(group_start, "unterminated brace")
            if buf[i] != _RBRACE:
                raise ParseError(i, f"unexpected {chr(buf[i])!r} between nested groups")
            i += 1
        else:
            members, i = _parse_index_list(buf, i, r)
            sets.append(members)
        k = len(entries)
        if k >= len(arities):
            raise ParseError(group_start, f"more source groups than ND segments ({len(arities)})")
        if len(sets) != arities[k]:
            raise ParseError(
                group_start,
                f"source group {k} has {len(sets)} explicit sets, segment {text.nd_segments[k]} needs {arities[k]}",
            )
        empty_sets += sum(1 for s in sets if not s)
        entries.append(tuple(SourceSet.of(s, r) for s in sets))
    if len(entries) != len(arities):
        raise ParseError(n, f"{len(entries)} source groups given, text has {len(arities)} ND segments")
    if empty_sets:
        warnings.warn(f"{empty_sets} empty explicit source set(s)", SourceWarning, stacklevel=2)
    return SourceSequence(r, tuple(entries))


def _index_list(s: SourceSet) -> bytes:
    return ",".join(map(str, s)).encode("ascii")


def write_sources_text(sources: SourceSequence) -> bytes:
    out = bytearray()
    for entry in sources.entries:
        if len(entry) == 1 and entry[0]:
            out += b"{" + _index_list(entry[0]) + b"}"
        else:
            out += b"{" + b"".join(b"{" + _index_list(s) + b"}" for s in entry) + b"}"
    return bytes(out)


def infer_r(data) -> int:
    """Smallest r consistent with a sources text: max index + 1 (at least 1)."""
    digits = bytearray()
    best = -1
    for c in _as_bytes(data) + b",":
        if 48 <= c <= 57:
            digits.append(c)
        elif digits:
            best = max(best, int(digits))
            digits.clear()
    return best + 1 if best >= 0 else 1

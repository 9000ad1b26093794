"""Binary sources stream and its zstd container.

Stream layout::

    "EDS1"  r  (0xFF  (count  first  delta*)*)*

one 0xFF flag per ND segment, then one (count, indexes) record per explicit
set. Indexes are ascending; the first is stored as is, the rest as the
difference to the previous one. Every number is a 1- or 2-byte varint:

    0 .. 127       -> v
    128 .. 16383   -> 0x80 | (w // 255), w % 255     with w = v - 128

The low byte is base 255, so no varint byte is ever 0xFF and the segment
flag stays unambiguous even when scanning from an arbitrary offset.
"""

from __future__ import annotations

import zstandard

from .core import MAX_INDIVIDUALS, EDText, SourceSequence, SourceSet

MAGIC = b"EDS1"
FLAG = 0xFF
ZSTD_MAGIC = b"\x28\xb5\x2f\xfd"


class CodecError(ValueError):
    pass


def encode_number(v: int) -> bytes:
    if v < 0 or v > MAX_INDIVIDUALS:
        raise CodecError(f"value {v} outside [0, {MAX_INDIVIDUALS}]")
    if v < 0x80:
        return bytes((v,))
    hi, lo = divmod(v - 0x80, 255)
    return bytes((0x80 | hi, lo))


def decode_number(buf: bytes, pos: int = 0) -> tuple[int, int]:
    """Read one varint at ``pos``; returns (value, bytes consumed)."""
    if pos >= len(buf):
        raise CodecError(f"truncated stream at byte {pos}")
    b0 = buf[pos]
    if b0 < 0x80:
        return b0, 1
    if b0 > 0xBF:
        raise CodecError(f"invalid varint lead byte 0x{b0:02X} at byte {pos}")
    if pos + 1 >= len(buf):
        raise CodecError(f"truncated two-byte varint at byte {pos}")
    b1 = buf[pos + 1]
    v = 0x80 + (b0 & 0x3F) * 255 + b1
    if b1 == FLAG or v > MAX_INDIVIDUALS:
        raise CodecError(f"invalid varint 0x{b0:02X}{b1:02X} at byte {pos}")
    return v, 2


def encode_sources(sources: SourceSequence) -> bytes:
    if not 1 <= sources.r <= MAX_INDIVIDUALS:
        raise CodecError(f"individual count {sources.r} outside [1, {MAX_INDIVIDUALS}]")
    out = bytearray(MAGIC)
    out += encode_number(sources.r)
    for entry in sources.entries:
        out.append(FLAG)
        for s in entry:
            members = s.indices()
            out += encode_number(len(members))
            prev = 0
            for j, idx in enumerate(members):
                out += encode_number(idx if j == 0 else idx - prev)
                prev = idx
    return bytes(out)


def _read_stream(buf: bytes) -> tuple[int, list[list[list[int]]]]:
    if buf[:4] != MAGIC:
        raise CodecError("bad magic, not an EDS1 sources stream")
    r, used = decode_number(buf, 4)
    if r < 1:
        raise CodecError("individual count must be >= 1")
    pos = 4 + used
    segments: list[list[list[int]]] = []
    end = len(buf)
    while pos < end:
        if buf[pos] != FLAG:
            raise CodecError(f"expected segment flag at byte {pos}, got 0x{buf[pos]:02X}")
        pos += 1
        sets: list[list[int]] = []
        while pos < end and buf[pos] != FLAG:
            count, used = decode_number(buf, pos)
            pos += used
            members: list[int] = []
            for j in range(count):
                if pos < end and buf[pos] == FLAG:
                    raise CodecError(f"truncated source set at byte {pos}")
                v, used = decode_number(buf, pos)
                pos += used
                if j:
                    if v == 0:
                        raise CodecError(f"non-increasing index (zero delta) at byte {pos - used}")
                    v += members[-1]
                if v >= r:
                    raise CodecError(f"source index {v} >= r={r}")
                members.append(v)
            sets.append(members)
        segments.append(sets)
    return r, segments


def decode_sources(buf: bytes, text: EDText) -> SourceSequence:
    r, segments = _read_stream(bytes(buf))
    nd = text.nd_segments
    if len(segments) != len(nd):
        raise CodecError(f"flag count mismatch: {len(segments)} segment flags, text has {len(nd)} ND segments")
    entries = []
    for k, (seg_index, sets) in enumerate(zip(nd, segments)):
        want = len(text.segments[seg_index].variants) - 1
        if len(sets) != want:
            raise CodecError(f"arity mismatch in ND segment {k}: {len(sets)} sets, expected {want}")
        entries.append(tuple(SourceSet.of(s, r) for s in sets))
    return SourceSequence(r, tuple(entries))


def wrap_container(payload: bytes, level: int = 10) -> bytes:
    return zstandard.ZstdCompressor(level=level).compress(payload)


def unwrap_container(data: bytes) -> bytes:
    """Decompress a zstd frame; anything without the frame magic passes through."""
    data = bytes(data)
    if not data.startswith(ZSTD_MAGIC):
        return data
    try:
        obj = zstandard.ZstdDecompressor().decompressobj()
        out = obj.decompress(data)
    except zstandard.ZstdError as exc:
        raise CodecError(f"corrupt zstd frame: {exc}") from exc
    if not obj.eof:
        raise CodecError("corrupt zstd frame: truncated")
    return out

"""Loading and atomically saving ``.eds`` / ``.edss`` / ``.edsc`` files."""

from __future__ import annotations

import os
import tempfile
from pathlib import Path

from .codec import MAGIC, decode_sources, encode_sources, unwrap_container, wrap_container
from .core import EDText, SourceSequence
from .parse import infer_r, parse_ed_text, parse_sources_text, write_ed_text, write_sources_text


def atomic_write(path, data: bytes) -> None:
    """Write to a sibling temp file and rename, so failures leave no partial output."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "wb") as fh:
            fh.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def load_text(path) -> EDText:
    return parse_ed_text(Path(path).read_bytes())


def load_sources(path, text: EDText, r: int | None = None) -> SourceSequence:
    """Read sources in any supported form: zstd container, raw binary stream, or text.

    The text form does not record ``r``; without an explicit value it is
    taken as the largest index plus one.
    """
    data = unwrap_container(Path(path).read_bytes())
    if data.startswith(MAGIC):
        sources = decode_sources(data, text)
        if r is not None and r != sources.r:
            raise ValueError(f"sources file declares r={sources.r}, expected {r}")
        return sources
    return parse_sources_text(data, r if r is not None else infer_r(data), text)


def save_text(path, text: EDText) -> None:
    atomic_write(path, write_ed_text(text) + b"\n")


def save_sources_text(path, sources: SourceSequence) -> None:
    atomic_write(path, write_sources_text(sources) + b"\n")


def save_sources_binary(path, sources: SourceSequence, compress: bool = True) -> None:
    payload = encode_sources(sources)
    atomic_write(path, wrap_container(payload) if compress else payload)

"""Pattern search over pan-genomes stored as elastic-degenerate strings with sources."""

from .codec import (
    CodecError,
    decode_number,
    decode_sources,
    encode_number,
    encode_sources,
    unwrap_container,
    wrap_container,
)
from .core import (
    DEFAULT_ALPHABET,
    MAX_INDIVIDUALS,
    EDText,
    Segment,
    SourceSequence,
    SourceSet,
    Stats,
    ValidationReport,
    ed_stats,
    reference_set,
    validate,
)
from .oracle import materialize_haplotype, oracle_candidates, oracle_search, window_candidates
from .parse import ParseError, parse_ed_text, parse_sources_text, write_ed_text, write_sources_text
from .search import MatchCandidate, Pattern, PatternError, build_masks, search_ed
from .synth import SynthParams, generate_ed
from .verify import Mode, SearchReport, VerificationResult, VerifiedMatch, search_with_sources, verify_candidate

__all__ = [name for name in dir() if not name.startswith("_")]

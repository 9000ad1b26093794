"""Random instance builders shared by the test modules."""

from __future__ import annotations

import random

from hypothesis import strategies as st

from edspang import EDText, Segment, SourceSequence, SourceSet, SynthParams, generate_ed

T_A_TEXT = "G{AA,AG,}A{CTG,CAA,AC}A{G,}CA"
T_B_TEXT = "{AA}{AG,G}{CG,N,TT}"
S_B_TEXT = "{0}{{0,2}{3}}"


def random_sources(text: EDText, r: int, rng: random.Random) -> SourceSequence:
    """Uniform variant per individual per ND segment; occasionally leaves sets empty."""
    entries = []
    for si in text.nd_segments:
        u = len(text.segments[si].variants)
        weights = [rng.random() for _ in range(u)]
        picks: list[list[int]] = [[] for _ in range(u)]
        for j in range(r):
            picks[rng.choices(range(u), weights)[0]].append(j)
        entries.append(tuple(SourceSet.of(p, r) for p in picks[:-1]))
    return SourceSequence(r, tuple(entries))


def tiny_text(rng: random.Random, max_segments: int = 12, max_variants: int = 4, letters: bytes = b"AC") -> EDText:
    """Small texts over a tiny alphabet, so paths collide often."""
    segs = []
    prev_det = False
    for _ in range(rng.randint(1, max_segments)):
        if rng.random() < 0.4 and not prev_det:
            segs.append(Segment.deterministic(bytes(rng.choice(letters) for _ in range(rng.randint(1, 4)))))
            prev_det = True
            continue
        u = rng.randint(2, max_variants)
        vs: list[bytes] = []
        while len(vs) < u:
            v = bytes(rng.choice(letters) for _ in range(rng.randint(0, 3)))
            if v not in vs:
                vs.append(v)
        segs.append(Segment(tuple(vs)))
        prev_det = False
    return EDText(tuple(segs))


def random_path(text: EDText, rng: random.Random) -> bytes:
    return b"".join(rng.choice(seg.variants) for seg in text.segments)


def haplotype(text: EDText, sources: SourceSequence, j: int) -> bytes:
    out = []
    for si, seg in enumerate(text.segments):
        if seg.is_deterministic:
            out.append(seg.variants[0])
        else:
            sets = sources.variant_sets(text.nd_ordinal[si])
            out.append(next(v for v, s in zip(seg.variants, sets) if j in s))
    return b"".join(out)


def pick_pattern(text: EDText, sources: SourceSequence, m: int, rng: random.Random, letters: bytes = b"ACGT") -> bytes:
    """A window from a haplotype, from an arbitrary path (possible false positive), or random."""
    roll = rng.random()
    if roll < 0.4:
        seq = haplotype(text, sources, rng.randrange(sources.r))
    elif roll < 0.85:
        seq = random_path(text, rng)
    else:
        seq = b""
    if len(seq) < m:
        return bytes(rng.choice(letters) for _ in range(m))
    i = rng.randrange(len(seq) - m + 1)
    return seq[i : i + m]


def random_synth(rng: random.Random, max_positions: int = 300, max_r: int = 64):
    params = SynthParams(
        positions=rng.randint(10, max_positions),
        nd_fraction=rng.uniform(0.1, 0.5),
        max_variants=rng.randint(2, 10),
        max_variant_len=rng.randint(1, 10),
        individuals=rng.randint(1, max_r),
        seed=rng.getrandbits(63),
        empty_variant_prob=rng.choice((0.1, 0.3)),
    )
    return generate_ed(params)


# hypothesis strategies

variant_bytes = st.binary(max_size=3).map(lambda b: bytes(b"AC"[x % 2] for x in b))


@st.composite
def ed_texts(draw, max_segments: int = 6):
    segs = []
    prev_det = False
    for _ in range(draw(st.integers(1, max_segments))):
        if not prev_det and draw(st.booleans()):
            v = draw(variant_bytes.filter(bool))
            segs.append(Segment.deterministic(v))
            prev_det = True
        else:
            vs = draw(st.lists(variant_bytes, min_size=2, max_size=4, unique=True))
            segs.append(Segment(tuple(vs)))
            prev_det = False
    return EDText(tuple(segs))


@st.composite
def instances(draw, max_segments: int = 6, max_r: int = 8):
    text = draw(ed_texts(max_segments))
    r = draw(st.integers(1, max_r))
    entries = []
    for si in text.nd_segments:
        u = len(text.segments[si].variants)
        pick = draw(st.lists(st.integers(0, u - 1), min_size=r, max_size=r))
        entries.append(tuple(SourceSet.of([j for j in range(r) if pick[j] == v], r) for v in range(u - 1)))
    return text, SourceSequence(r, tuple(entries))


@st.composite
def source_sequences(draw, r_values=(1, 2, 5, 127, 128, 300)):
    r = draw(st.sampled_from(r_values))
    arities = draw(st.lists(st.integers(1, 4), max_size=6))
    entries = []
    for a in arities:
        remaining = list(range(r))
        sets = []
        for _ in range(a):
            members = draw(st.lists(st.sampled_from(remaining), unique=True, max_size=min(8, len(remaining)))) if remaining else []
            remaining = [x for x in remaining if x not in members]
            sets.append(SourceSet.of(members, r))
        entries.append(tuple(sets))
    return arities, SourceSequence(r, tuple(entries))


def text_for_arities(arities) -> EDText:
    """A text whose ND segments have the given explicit-set counts (variants = arity + 1)."""
    segs = []
    for a in arities:
        segs.append(Segment.deterministic(b"A"))
        segs.append(Segment(tuple(b"C" * (i + 1) for i in range(a + 1))))
    return EDText(tuple(segs))

import random

from edspang import Mode, SynthParams, generate_ed, materialize_haplotype, oracle_search
from edspang.bench import BenchRow, haplotype_sequence, sample_patterns


def small():
    return generate_ed(SynthParams(positions=400, individuals=16, seed=5))


def test_haplotype_sequence_matches_materialize():
    text, sources = small()
    for j in range(sources.r):
        assert haplotype_sequence(text, sources, j) == materialize_haplotype(text, sources, j).sequence


def test_sampled_patterns_are_genuine():
    text, sources = small()
    pats = sample_patterns(text, sources, 8, 10, seed=1)
    assert pats == sample_patterns(text, sources, 8, 10, seed=1)
    assert all(len(p) == 8 for p in pats)
    for p in pats:
        assert oracle_search(text, sources, p)


def test_row_formatting():
    row = BenchRow("d", 8, Mode.FULL.value, 10, 0.5, 2e-5, 3, 2, 0.0125)
    assert row.tsv() == "d\t8\tfull\t10\t0.5\t2e-05\t3\t2\t0.0125"
    assert len(BenchRow.header().split("\t")) == len(row.tsv().split("\t"))

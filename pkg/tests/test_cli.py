import pytest

from edspang import validate
from edspang.cli import EXIT_IO, EXIT_OK, EXIT_PATTERN, main
from edspang.files import load_sources, load_text

from helpers import S_B_TEXT, T_B_TEXT
from test_ingest import REFERENCE, VCF_BODY, vcf_text


@pytest.fixture(autouse=True)
def plain_logs(monkeypatch):
    monkeypatch.setenv("EDSPANG_NO_COLOR", "1")


@pytest.fixture
def tb_files(tmp_path):
    (tmp_path / "tb.eds").write_text(T_B_TEXT + "\n")
    (tmp_path / "tb.edss").write_text(S_B_TEXT + "\n")
    assert main(["recode", "-i", str(tmp_path / "tb.eds"), "-s", str(tmp_path / "tb.edss"),
                 "--individuals", "4", "-o", str(tmp_path / "tb.edsc")]) == EXIT_OK
    return tmp_path


def run_search(tmp, patterns, *extra):
    pats = tmp / "pats.txt"
    pats.write_text("".join(p + "\n" for p in patterns))
    out = tmp / "out.tsv"
    code = main(["search", "-i", str(tmp / "tb.eds"), "-s", str(tmp / "tb.edsc"), "-p", str(pats), "-o", str(out), *extra])
    return code, out.read_text() if out.exists() else None


def test_search_full(tb_files):
    code, out = run_search(tb_files, ["AGCG"], "--mode", "full")
    assert code == EXIT_OK
    assert out == "AGCG\t2:0:1:0,2\n"


def test_search_verify_rejects_false_positive(tb_files):
    assert run_search(tb_files, ["AAAGN"], "--mode", "verify") == (EXIT_OK, "AAAGN\t\n")


def test_search_baseline_keeps_false_positive(tb_files):
    assert run_search(tb_files, ["AAAGN"], "--mode", "baseline") == (EXIT_OK, "AAAGN\t2:1:0\n")


def test_search_threads_preserve_order(tb_files):
    pats = ["AGCG", "AAAGN", "A", "GTT", "CG"]
    one = run_search(tb_files, pats)
    many = run_search(tb_files, pats, "--threads", "4")
    assert one == many
    assert [line.split("\t")[0] for line in one[1].splitlines()] == pats


def test_pattern_too_long(tb_files, capsys):
    code, out = run_search(tb_files, ["A" * 65, "AGCG"])
    assert code == EXIT_PATTERN
    assert out == "AGCG\t2:0:1:0,2\n"
    assert "word size" in capsys.readouterr().err


def test_missing_file_is_io_error(tmp_path):
    (tmp_path / "p.txt").write_text("A\n")
    assert main(["search", "-i", str(tmp_path / "none.eds"), "-p", str(tmp_path / "p.txt"), "--mode", "baseline"]) == EXIT_IO


def test_recode_round_trip(tb_files):
    back = tb_files / "back.edss"
    assert main(["recode", "-i", str(tb_files / "tb.eds"), "-s", str(tb_files / "tb.edsc"), "-o", str(back)]) == EXIT_OK
    assert back.read_text().split() == S_B_TEXT.split()


def test_recode_raw_stream(tb_files):
    raw = tb_files / "tb.bin"
    assert main(["recode", "-i", str(tb_files / "tb.eds"), "-s", str(tb_files / "tb.edss"),
                 "--individuals", "4", "--raw", "-o", str(raw)]) == EXIT_OK
    data = raw.read_bytes()
    assert len(data) == 14
    assert data == bytes.fromhex("45445331 04 ff 01 00 ff 02 00 02 01 03".replace(" ", ""))


def test_recode_mismatching_text(tb_files):
    other = tb_files / "other.eds"
    other.write_text("AC{A,C}G\n")
    assert main(["recode", "-i", str(other), "-s", str(tb_files / "tb.edsc"), "-o", str(tb_files / "x.edss")]) == EXIT_IO
    assert not (tb_files / "x.edss").exists()


def test_gen_deterministic(tmp_path):
    args = ["gen", "--positions", "2000", "--individuals", "128", "--seed", "42"]
    assert main(args + ["-o", str(tmp_path / "a")]) == EXIT_OK
    assert main(args + ["-o", str(tmp_path / "b")]) == EXIT_OK
    for ext in (".eds", ".edss", ".edsc"):
        assert (tmp_path / f"a{ext}").read_bytes() == (tmp_path / f"b{ext}").read_bytes()
    text = load_text(tmp_path / "a.eds")
    for ext in (".edss", ".edsc"):
        assert validate(text, load_sources(tmp_path / f"a{ext}", text, 128)).ok


def test_gen_too_many_individuals(tmp_path):
    assert main(["gen", "--positions", "100", "--individuals", "20000", "-o", str(tmp_path / "x")]) == EXIT_IO
    assert not list(tmp_path.iterdir())


def _convert_inputs(tmp_path, rows):
    fa = tmp_path / "ref.fa"
    fa.write_bytes(b">chr1\n" + REFERENCE + b"\n")
    vcf = tmp_path / "calls.vcf"
    vcf.write_text(vcf_text(rows))
    return ["convert", "--fasta", str(fa), "--vcf", str(vcf), "-o", str(tmp_path / "out")]


def test_convert_fixture(tmp_path, capsys):
    from edspang import materialize_haplotype
    from test_ingest import apply_alleles

    assert main(_convert_inputs(tmp_path, VCF_BODY)) == EXIT_OK
    text = load_text(tmp_path / "out.eds")
    sources = load_sources(tmp_path / "out.edsc", text)
    assert sources.r == 6
    for j in range(6):
        assert materialize_haplotype(text, sources, j).sequence == apply_alleles(REFERENCE, VCF_BODY, j)
    assert "skipped=0" in capsys.readouterr().err


def test_convert_overlap_counter(tmp_path, capsys):
    rows = VCF_BODY[:3] + [("chr1", 9, "A", "G", ["0|1", "0|0", "0|0"])] + VCF_BODY[3:]
    assert main(_convert_inputs(tmp_path, rows)) == EXIT_OK
    err = capsys.readouterr().err
    assert "skipped=1" in err and "overlapping record=1" in err


def test_convert_unsorted(tmp_path):
    assert main(_convert_inputs(tmp_path, [VCF_BODY[2], VCF_BODY[0]])) == EXIT_IO
    assert not (tmp_path / "out.eds").exists()


def test_bench_rows(tmp_path, capsys):
    code = main(["bench", "--positions", "3000", "--individuals", "64", "--count", "2", "--reps", "5"])
    assert code == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split("\t") == ["dataset", "m", "mode", "bytes_N", "seconds", "MB_per_s",
                                    "occ_prime", "verified_count", "slowdown_vs_baseline"]
    rows = [line.split("\t") for line in lines[1:]]
    assert sorted({int(r[1]) for r in rows}) == [8, 16, 32, 64]
    assert {r[2] for r in rows} == {"baseline", "verify", "full"}
    for r in rows:
        n, secs, mbps = int(r[3]), float(r[4]), float(r[5])
        assert mbps == pytest.approx(n / 1e6 / secs, rel=1e-4)
        if r[2] == "baseline":
            assert float(r[8]) == 0.0
        else:
            assert float(r[8]) >= 0.0


def test_bench_on_files(tb_files, capsys):
    pats = tb_files / "p.txt"
    pats.write_text("AGCG\nAAAGN\n")
    assert main(["bench", "-i", str(tb_files / "tb.eds"), "-s", str(tb_files / "tb.edsc"), "-p", str(pats), "--reps", "5"]) == EXIT_OK
    rows = [line.split("\t") for line in capsys.readouterr().out.splitlines()[1:]]
    by_mode = {(int(r[1]), r[2]): r for r in rows}
    assert by_mode[(5, "baseline")][6] == "1" and by_mode[(5, "verify")][7] == "0"
    assert by_mode[(4, "full")][7] == "1"

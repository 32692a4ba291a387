import io
import os
from pathlib import Path

import pytest

from gfft import cli

GOLDEN_DIR = Path(__file__).parent / "golden"
ALGOS = ("goertzel", "blahut2008", "ft2002", "tf2003", "fed2006a", "fed2006b")


def run(argv):
    buf = io.StringIO()
    code = cli.main(argv, out=buf)
    return code, buf.getvalue()


def test_verify_m3_all_pass():
    code, out = run(["verify", "--m", "3", "--algo", "all", "--trials", "100", "--seed", "7"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0].startswith("gfft verify: seed=7 trials=100")
    body = [ln for ln in lines if ln.lstrip().startswith("3")]
    assert len(body) == len(ALGOS)
    assert all("PASS" in ln and "FAIL" not in ln for ln in body)
    assert lines[-1] == "overall PASS"


def test_verify_range_single_algo():
    code, out = run(["verify", "--m", "2..8", "--algo", "tf2003", "--trials", "5", "--seed", "1"])
    assert code == 0
    rows = [ln for ln in out.splitlines() if "tf2003" in ln and "algo" not in ln]
    assert len(rows) == 7


def test_verify_m_out_of_range():
    code, _ = run(["verify", "--m", "13"])
    assert code == 2


def test_verify_bad_algo():
    code, _ = run(["verify", "--m", "3", "--algo", "nope"])
    assert code == 2


def test_verify_bad_range_syntax():
    code, _ = run(["verify", "--m", "8..2"])
    assert code == 2


def test_verify_failure_exits_one(monkeypatch):
    # corrupt the unit oracle; the suite must notice and report failure
    import gfft.reference as reference

    real = reference.unit_response

    def broken(j, ctx):
        out = real(j, ctx)
        out[0] ^= 1
        return out

    monkeypatch.setattr(cli, "unit_response", broken)
    code, out = run(["verify", "--m", "3", "--algo", "tf2003", "--trials", "2", "--seed", "1"])
    assert code == 1
    assert "FAIL" in out


def test_unknown_flag_exits_two(capsys):
    code = cli.main(["verify", "--bogus"])
    capsys.readouterr()
    assert code == 2


def test_bench_csv_schema_and_roundtrip():
    code, out = run(["bench", "--m", "2..8", "--format", "csv"])
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == cli.CSV_HEADER
    records = cli.parse_bench_csv(out)
    assert len(records) == 7 * 4
    buf = io.StringIO()
    cli.emit_bench_csv(records, buf)
    assert cli.parse_bench_csv(buf.getvalue()) == records


def test_bench_known_m3_row():
    code, out = run(["bench", "--m", "3", "--algo", "tf2003", "--format", "csv"])
    assert code == 0
    rec = cli.parse_bench_csv(out)[0]
    assert rec["stage1_mults"] == 18
    assert rec["bound_nlogn"] == 21
    assert rec["ok_mults"] is True
    assert rec["ok_adds"] is True
    assert rec["stage2_adds_naive"] == 24
    assert rec["stage2_adds_4r"] == 25


def test_bench_m8_budget():
    code, out = run(["bench", "--m", "8", "--format", "csv"])
    assert code == 0
    for rec in cli.parse_bench_csv(out):
        assert rec["stage2_adds_4r"] == 13620
        assert rec["ok_adds"] is True


def test_bench_m2_degenerate():
    code, out = run(["bench", "--m", "2", "--format", "csv"])
    assert code == 0
    for rec in cli.parse_bench_csv(out):
        assert rec["n"] == 3
        assert rec["ok_mults"] is True


def test_bench_text_format():
    code, out = run(["bench", "--m", "3"])
    assert code == 0
    assert "tf2003" in out and "s1_mults" in out


def test_bench_block_size_override():
    code, out = run(["bench", "--m", "8", "--block-size", "4", "--format", "csv"])
    assert code == 0
    rec = cli.parse_bench_csv(out)[0]
    # 64 groups of width 4: 64*(16-4-1) + 255*63
    assert rec["stage2_adds_4r"] == 64 * 11 + 255 * 63


def test_bench_rejects_bad_block_size():
    code, _ = run(["bench", "--m", "8", "--block-size", "0"])
    assert code == 2


def test_bench_rejects_unfactored_algo():
    code, _ = run(["bench", "--m", "3", "--algo", "goertzel"])
    assert code == 2


def test_bench_rejects_m17():
    code, _ = run(["bench", "--m", "17"])
    assert code == 2


def test_bench_m16_structural_runs():
    code, out = run(["bench", "--m", "16", "--algo", "tf2003", "--format", "csv"])
    assert code == 0
    rec = cli.parse_bench_csv(out)[0]
    assert rec["n"] == 65535
    assert rec["ok_mults"] is True
    assert rec["ok_adds"] is True


@pytest.mark.parametrize("algo", ALGOS)
def test_factor_golden(algo):
    code, out = run(["factor", "--m", "3", "--algo", algo])
    assert code == 0
    golden = (GOLDEN_DIR / f"factor_m3_{algo}.txt").read_text()
    assert out == golden


def test_factor_latex_structure():
    code, out = run(["factor", "--m", "3", "--algo", "tf2003", "--format", "latex"])
    assert code == 0
    assert out.count("\\begin{bmatrix}") == out.count("\\end{bmatrix}") == 4
    assert "\\alpha^{3}" in out


def test_factor_latex_goertzel_and_blahut():
    for algo in ("goertzel", "blahut2008"):
        code, out = run(["factor", "--m", "3", "--algo", algo, "--format", "latex"])
        assert code == 0
        assert "\\begin{bmatrix}" in out


def test_factor_rejects_out_of_range():
    code, _ = run(["factor", "--m", "7", "--algo", "tf2003"])
    assert code == 2
    code, _ = run(["factor", "--m", "2..4", "--algo", "tf2003"])
    assert code == 2


def test_factor_poly_override():
    code, out = run(["factor", "--m", "3", "--algo", "tf2003", "--poly", "d"])
    assert code == 0
    assert "poly=0xd" in out


def test_poly_rejects_range():
    code, _ = run(["verify", "--m", "2..4", "--poly", "b", "--trials", "1"])
    assert code == 2


def test_poly_rejects_nonhex():
    code, _ = run(["factor", "--m", "3", "--algo", "tf2003", "--poly", "zz"])
    assert code == 2


def test_poly_rejects_nonprimitive():
    code, _ = run(["factor", "--m", "3", "--algo", "tf2003", "--poly", "f"])
    assert code == 2


def test_seed_env_fallback(monkeypatch):
    monkeypatch.setenv("GFFT_SEED", "99")
    code, out = run(["verify", "--m", "2", "--trials", "1"])
    assert code == 0
    assert "seed=99" in out
    monkeypatch.setenv("GFFT_SEED", "zz")
    code, _ = run(["verify", "--m", "2", "--trials", "1"])
    assert code == 2


def test_seed_flag_beats_env(monkeypatch):
    monkeypatch.setenv("GFFT_SEED", "99")
    code, out = run(["verify", "--m", "2", "--trials", "1", "--seed", "5"])
    assert code == 0
    assert "seed=5" in out

import json

import pytest

from primegen import cli, oracle


def run(capsys, *argv):
    code = cli.main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out, captured.err


def test_nth_first_prime(capsys):
    code, out, _ = run(capsys, "nth", "--algo", "es", "--n", "1")
    assert code == 0 and out.strip() == "2"


def test_nth_wheel_flag(capsys):
    code, out, _ = run(capsys, "nth", "--algo", "w", "--wheel", "4", "--n", "100")
    assert code == 0 and out.strip() == "541"


def test_nth_capped_variant_exceeds(capsys):
    code, _, err = run(capsys, "nth", "--algo", "turner", "--n", "1000000")
    assert code == 2 and "capped" in err


def test_unknown_variant_is_usage_error(capsys):
    code, _, err = run(capsys, "nth", "--algo", "nope", "--n", "3")
    assert code == 1 and "unknown variant" in err


def test_missing_n_is_usage_error(capsys):
    code, _, _ = run(capsys, "nth", "--algo", "es")
    assert code == 1


def test_bad_flag_is_usage_error(capsys):
    code, _, _ = run(capsys, "nth", "--bogus", "1")
    assert code == 1


def test_list_first_five(capsys):
    code, out, _ = run(capsys, "list", "--algo", "h", "--n", "5")
    assert code == 0 and out.split() == ["2", "3", "5", "7", "11"]


def test_list_bound(capsys):
    code, out, _ = run(capsys, "list", "--algo", "on", "--bound", "30")
    assert code == 0
    assert [int(v) for v in out.split()] == oracle.primes_up_to(30)


def test_count(capsys):
    code, out, _ = run(capsys, "count", "--algo", "epq", "--bound", "100")
    assert code == 0 and out.strip() == "25"


def test_stats_small_wheel_sieve(capsys):
    code, out, _ = run(capsys, "stats", "--algo", "w", "--bound", "10")
    assert code == 0
    record = json.loads(out)
    assert record["variant"] == "W"
    assert record["composites"] == 5  # {4, 6, 8, 9, 10}
    assert record["distinct_composites"] == 5
    assert record["n"] == 4 and record["nth_prime"] == 7


def test_stats_bird_sum_of_multiplicities(capsys):
    code, out, _ = run(capsys, "stats", "--algo", "bs", "--bound", "300")
    record = json.loads(out)
    want = sum(oracle.bird_multiplicity(c) for c in oracle.composites_up_to(300))
    assert code == 0 and record["composites"] == want


def test_stats_deterministic_apart_from_timing(capsys):
    code1, out1, _ = run(capsys, "stats", "--algo", "es", "--bound", "500")
    code2, out2, _ = run(capsys, "stats", "--algo", "es", "--bound", "500")
    assert code1 == code2 == 0
    a, b = json.loads(out1), json.loads(out2)
    a.pop("wall_ns"), b.pop("wall_ns")
    assert a == b


def test_verify_single_variant(capsys):
    code, out, _ = run(capsys, "verify", "--algo", "td", "--n", "500",
                       "--bound", "500")
    assert code == 0
    assert "PASS td/oracle" in out
    assert "PASS wheels" in out
    assert "PASS euler-sets" in out


def test_verify_euler_variant_gets_tally_check(capsys):
    code, out, _ = run(capsys, "verify", "--algo", "es", "--n", "300",
                       "--bound", "300")
    assert code == 0 and "PASS es/exactly-once" in out


def test_verify_pq_variant_gets_queue_check(capsys):
    code, out, _ = run(capsys, "verify", "--algo", "wpq", "--n", "2000",
                       "--bound", "500")
    assert code == 0 and "PASS wpq/queue" in out


def test_verify_empty_variant_list_is_usage_error(capsys):
    code, _, err = run(capsys, "verify", "--algo", ",")
    assert code == 1 and "empty variant list" in err


def test_verify_failure_exits_three(capsys, monkeypatch):
    monkeypatch.setattr(oracle, "first_primes", lambda n: list(range(n)))
    code, out, _ = run(capsys, "verify", "--algo", "td", "--n", "50",
                       "--bound", "100")
    assert code == 3 and "FAIL td/oracle" in out


def test_bench_markdown_header_in_table_order(capsys):
    code, out, _ = run(capsys, "bench", "--algo", "td,bs,bs4,h,w,es,h4,w4,es4",
                       "--exponents", "6", "--repeats", "1", "--format", "md")
    assert code == 0
    header = next(line for line in out.splitlines() if line.startswith("| n"))
    assert header == "| n | TD | BS | BS4 | H | W | ES | H4 | W4 | ES4 |"


def test_bench_csv_columns(capsys):
    code, out, _ = run(capsys, "bench", "--algo", "es", "--exponents", "5,6",
                       "--repeats", "1", "--format", "csv")
    lines = out.strip().splitlines()
    assert code == 0
    assert lines[0] == "variant,n,p_n,wall_ns,composites,comparisons,pulls,peak_buffer"
    assert len(lines) == 3
    row = lines[1].split(",")
    assert row[0] == "ES" and row[1] == "32"
    assert int(row[2]) == oracle.nth_prime(32)


def test_bench_timeout_marks_dash(capsys):
    code, out, _ = run(capsys, "bench", "--algo", "bs", "--exponents", "14",
                       "--repeats", "1", "--timeout", "0.0000001",
                       "--format", "md")
    assert code == 0
    row = [line for line in out.splitlines() if line.startswith("| 16384")][0]
    assert "-" in row.replace("16384", "")


def test_bench_json(capsys):
    code, out, _ = run(capsys, "bench", "--algo", "wpq4", "--exponents", "6",
                       "--repeats", "2", "--format", "json")
    payload = json.loads(out)
    assert code == 0
    assert payload["rows"][0]["variant"] == "WPQ4"
    assert payload["rows"][0]["p_n"] == oracle.nth_prime(64)
    assert payload["environment"]


def test_bench_parallel(capsys):
    code, out, _ = run(capsys, "bench", "--algo", "es,td", "--exponents", "6",
                       "--repeats", "1", "--parallel", "--format", "csv")
    assert code == 0 and len(out.strip().splitlines()) == 3


def test_paper_time_format():
    assert cli.paper_time(91_300_000_000) == "1'31^3"
    assert cli.paper_time(2_500_000_000) == "2^5"
    assert cli.paper_time(47_700_000_000) == "47^7"
    assert cli.paper_time(334_100_000_000) == "5'34^1"


def test_bench_paper_format(capsys):
    code, out, _ = run(capsys, "bench", "--algo", "td", "--exponents", "5",
                       "--repeats", "1", "--format", "md", "--paper-format")
    assert code == 0 and "^" in out

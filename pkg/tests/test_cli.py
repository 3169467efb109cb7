import json

import pytest

from corpus import E
from lzsi.cli import main


@pytest.fixture
def e_file(tmp_path):
    path = tmp_path / "e.txt"
    path.write_bytes(E)
    return path


@pytest.fixture
def e_index(tmp_path, e_file, capsys):
    out = tmp_path / "e.lzsi"
    assert main(["build", str(e_file), str(out), "--variant", "1"]) == 0
    capsys.readouterr()
    return out


def run(capsys, *argv):
    code = main([str(a) for a in argv])
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def test_build_reports_stats(capsys, e_file, tmp_path):
    code, out, _ = run(capsys, "build", e_file, tmp_path / "x", "--flavor", "lzend", "--sample-rate", "4")
    assert code == 0 and "n=21" in out
    code, out, _ = run(capsys, "stats", tmp_path / "x", "--json")
    info = json.loads(out)
    assert code == 0 and info["flavor"] == "lzend" and info["n"] == 21


def test_build_errors(capsys, tmp_path, e_file):
    empty = tmp_path / "empty"
    empty.write_bytes(b"")
    code, _, err = run(capsys, "build", empty, tmp_path / "x")
    assert code == 3 and "empty input" in err
    with pytest.raises(SystemExit) as exc:
        main(["build", str(e_file), str(tmp_path / "x"), "--variant", "9"])
    assert exc.value.code == 1
    code, _, _ = run(capsys, "build", tmp_path / "missing", tmp_path / "x")
    assert code == 2


def test_stats_shows_phrase_count(capsys, e_index):
    code, out, _ = run(capsys, "stats", e_index)
    assert code == 0 and "n_prime     9" in out


def test_locate(capsys, e_index, tmp_path):
    code, out, _ = run(capsys, "locate", e_index, "la")
    assert code == 0 and out.split() == ["2", "10", "14"]
    code, out, _ = run(capsys, "locate", e_index, "zz")
    assert code == 0 and out == ""
    pat = tmp_path / "pat"
    pat.write_bytes(b"la")
    code, out, _ = run(capsys, "locate", e_index, "@%s" % pat, "--json")
    assert json.loads(out) == [2, 10, 14]


def test_count_and_exists(capsys, e_index):
    assert run(capsys, "count", e_index, "ala")[1].strip() == "2"
    assert run(capsys, "exists", e_index, "bb")[1].strip() == "false"
    assert run(capsys, "exists", e_index, "ala")[1].strip() == "true"


def test_extract(capsys, e_index):
    code, out, _ = run(capsys, "extract", e_index, 13, 7)
    assert code == 0 and out == "alabard"
    assert run(capsys, "extract", e_index, 1, 21)[1] == E.decode()
    code, _, err = run(capsys, "extract", e_index, 22, 1)
    assert code == 3 and "outside" in err


def test_extract_validates_arguments_first(tmp_path):
    with pytest.raises(SystemExit) as exc:
        main(["extract", str(tmp_path / "missing"), "0", "3"])
    assert exc.value.code == 1


def test_load_errors(capsys, tmp_path, e_file):
    code, _, err = run(capsys, "locate", e_file, "la")
    assert code == 3 and "bad magic" in err
    code, _, _ = run(capsys, "locate", tmp_path / "missing", "la")
    assert code == 2


def test_parse(capsys, e_file):
    code, out, _ = run(capsys, "parse", e_file)
    assert code == 0 and "n'=9" in out and "h=3 delta=1" in out
    code, out, _ = run(capsys, "parse", e_file, "--json")
    assert json.loads(out)["phrases"][7] == [1, 6, ord("d")]


def test_bench(capsys, e_index):
    code, out, _ = run(capsys, "bench", e_index, "--pattern-len", 2, "--queries", 5,
                       "--extract-len", 4, "--json")
    rep = json.loads(out)
    assert code == 0
    assert {"extract_chars_per_sec", "usec_per_occurrence", "n", "n_prime", "variant"} <= set(rep)
    code, out, _ = run(capsys, "bench", e_index, "--queries", 0, "--json")
    assert code == 0 and json.loads(out)["extract_chars_per_sec"] is None
    code, _, _ = run(capsys, "bench", e_index, "--pattern-len", 50)
    assert code == 1


def test_sample_rate_env(capsys, monkeypatch, e_file, tmp_path):
    monkeypatch.setenv("LZSI_SAMPLE_RATE", "2")
    assert run(capsys, "build", e_file, tmp_path / "x")[0] == 0
    monkeypatch.setenv("LZSI_SAMPLE_RATE", "zero")
    assert run(capsys, "build", e_file, tmp_path / "x")[0] == 1


@pytest.mark.parametrize("content", [E, b"z" * 300, bytes(range(256)) * 2])
def test_selftest(capsys, tmp_path, content):
    path = tmp_path / "in"
    path.write_bytes(content)
    code, out, _ = run(capsys, "selftest", path, "--ranges", 20, "--patterns", 10)
    assert code == 0 and "0 failed" in out and "FAIL" not in out

import json
import os

import jsonschema
import pytest

from fplkit.cache import CODE_VERSION, ResultCache
from fplkit.cli import main, parse_range
from fplkit.schema import COUNT_SCHEMA, PATTERNS_SCHEMA, REPORT_SCHEMA, TILINGS_SCHEMA


@pytest.fixture(autouse=True)
def cache_dir(tmp_path, monkeypatch):
    path = tmp_path / "cache"
    monkeypatch.setenv("FPLKIT_CACHE_DIR", str(path))
    return path


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_count_examples(capsys):
    assert run(capsys, "count", "--size", "4", "--class", "plain")[:2] == (0, "42\n")
    assert run(capsys, "count", "--size", "20", "--class", "qt", "--formula-only")[:2] == (0, "114640611228\n")
    code, _, err = run(capsys, "count", "--size", "6", "--class", "qt")
    assert code == 1 and "IncompatibleSize" in err


def test_count_json(capsys):
    code, out, _ = run(capsys, "count", "--size", "6", "--class", "qqt", "--refined", "--json", "-")
    rec = json.loads(out)
    jsonschema.validate(rec, COUNT_SCHEMA)
    assert rec["count"] == "6" and rec["coefficients"] == ["0", "1", "2", "2", "1", "0"]


def test_patterns(capsys):
    code, out, _ = run(capsys, "patterns", "--size", "3", "--class", "plain")
    lines = out.strip().splitlines()
    assert code == 0 and len(lines) == 6 and lines[-1].split() == ["total", "7"]
    code, out, _ = run(capsys, "patterns", "--size", "10", "--class", "qqt", "--json", "-")
    rec = json.loads(out)
    jsonschema.validate(rec, PATTERNS_SCHEMA)
    assert len(rec["distribution"]) == 10 and rec["total"] == "350"
    words = [r["word"] for r in rec["distribution"]]
    assert words == sorted(words)


def test_patterns_json_file(capsys, tmp_path):
    target = tmp_path / "d.json"
    assert run(capsys, "patterns", "--size", "8", "--class", "qt", "--json", str(target))[0] == 0
    rec = json.loads(target.read_text())
    jsonschema.validate(rec, PATTERNS_SCHEMA)
    assert rec["total"] == "40"


def test_verify_commands(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, "verify", "rs", "--max-n", "5", "--json", str(target))
    assert code == 0 and out.count("verified") == 5
    for rec in json.loads(target.read_text()):
        jsonschema.validate(rec, REPORT_SCHEMA)
    code, out, _ = run(capsys, "verify", "thm7", "--n", "1..4")
    assert code == 0 and out.count("verified") == 4
    code, out, _ = run(capsys, "verify", "qqt-per-pattern", "--n", "3")
    assert code == 0 and "skipped" in out
    code, _, err = run(capsys, "verify", "nonsense", "--n", "1")
    assert code == 1 and "UnknownIdentity" in err


def test_verify_refutation_exit_code(capsys, monkeypatch):
    from fplkit import verify

    monkeypatch.setattr(verify, "count_formula_A", lambda n: 8)
    code, out, _ = run(capsys, "verify", "rs", "--n", "3", "--json", "-")
    assert code == 2
    recs = json.loads(out)
    assert recs[0]["status"] == "refuted" and recs[0]["witness"]["word"] == "aaabbb"


def test_tilings_commands(capsys):
    assert run(capsys, "tilings", "qcsscpp", "--n", "1", "--method", "brute")[:2] == (0, "2\n")
    assert run(capsys, "tilings", "qcsscpp", "--n", "3", "--method", "lgv")[:2] == (0, "294\n")
    assert run(capsys, "tilings", "cssc", "--n", "2")[:2] == (0, "4\n")
    code, out, _ = run(capsys, "tilings", "qcsscpp", "--n", "2", "--method", "ciucu", "--json", "-")
    rec = json.loads(out)
    jsonschema.validate(rec, TILINGS_SCHEMA)
    assert rec["count"] == "14"
    assert run(capsys, "tilings", "cssc", "--n", "2", "--method", "lgv")[0] == 1


def test_usage_errors_exit_one(capsys):
    with pytest.raises(SystemExit) as info:
        main(["count", "--class", "plain"])
    assert info.value.code == 1
    assert run(capsys, "verify", "rs")[0] == 1
    assert run(capsys, "verify", "rs", "--n", "4..2")[0] == 1


def test_parse_range():
    assert parse_range("3") == [3]
    assert parse_range("1..4") == [1, 2, 3, 4]
    assert parse_range("1,3..4") == [1, 3, 4]


def test_cache_round_trip(capsys, cache_dir):
    first = run(capsys, "count", "--size", "9", "--class", "ht", "--refined")[1]
    files = list(cache_dir.iterdir())
    assert len(files) == 1 and not [f for f in files if f.name.startswith(".tmp")]
    cached = run(capsys, "count", "--size", "9", "--class", "ht", "--refined")[1]
    fresh = run(capsys, "count", "--size", "9", "--class", "ht", "--refined", "--no-cache")[1]
    assert first == cached == fresh
    entry = json.loads(files[0].read_text())
    assert entry["key"][-1] == CODE_VERSION and "created_at" in entry


def test_cache_hits_are_used(capsys, cache_dir):
    cache = ResultCache(cache_dir)
    cache.put("tilings", 7, "qcsscpp", "not-a-number", "lgv")
    assert run(capsys, "tilings", "qcsscpp", "--n", "3", "--method", "lgv")[1] == "not-a-number\n"


def test_cache_versioning_and_corruption(tmp_path):
    old = ResultCache(tmp_path, version="old")
    new = ResultCache(tmp_path, version="new")
    old.put("count", 4, "plain", "42")
    assert old.get("count", 4, "plain") == "42"
    assert new.get("count", 4, "plain") is None
    path = old._path(old.key("count", 4, "plain"))
    path.write_text("{broken")
    assert old.get("count", 4, "plain") is None


def test_cache_default_dir(monkeypatch, tmp_path):
    from fplkit.cache import default_cache_dir

    monkeypatch.delenv("FPLKIT_CACHE_DIR")
    monkeypatch.setenv("XDG_CACHE_HOME", str(tmp_path))
    assert default_cache_dir() == tmp_path / "fplkit"


def test_module_entry_point():
    import subprocess
    import sys

    out = subprocess.run([sys.executable, "-m", "fplkit", "count", "--size", "3", "--no-cache"], capture_output=True, text=True)
    assert out.returncode == 0 and out.stdout == "7\n"

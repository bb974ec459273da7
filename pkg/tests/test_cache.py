import json

import pytest

from diffbase import ResultCache, cyclic, interval, make_record
from diffbase.cache import CACHE_ENV_VAR, CacheRecord, default_cache_path
from diffbase.errors import CacheFormatError
from diffbase.groups import GroupKind


def test_round_trip(tmp_path):
    path = tmp_path / "c.jsonl"
    c = ResultCache(path)
    c.put(make_record(cyclic(13), 4, (0, 1, 3, 9), True, "search", "0.1.0"))
    c.put(make_record(interval(6), 4, (0, 1, 4, 6), True, "search"))
    c.save()

    c2 = ResultCache(path).load()
    rec = c2.get("cyclic", 13)
    assert rec is not None
    assert rec.delta == 4 and rec.certified and rec.witness == (0, 1, 3, 9)
    assert c2.get(GroupKind.INTERVAL, 6) is not None
    assert c2.get("cyclic", 99) is None


def test_put_rejects_bad_witness(tmp_path):
    c = ResultCache(tmp_path / "c.jsonl")
    with pytest.raises(ValueError):
        c.put(make_record(cyclic(13), 4, (0, 1, 2, 3), True, "search"))
    with pytest.raises(ValueError):
        # size mismatch with delta
        c.put(make_record(cyclic(13), 5, (0, 1, 3, 9), True, "search"))


def test_load_rejects_tampered_witness(tmp_path):
    path = tmp_path / "c.jsonl"
    c = ResultCache(path)
    c.put(make_record(cyclic(13), 4, (0, 1, 3, 9), True, "search"))
    c.save()
    raw = json.loads(path.read_text())
    raw["witness"] = [0, 1, 2, 3]
    path.write_text(json.dumps(raw) + "\n")
    with pytest.raises(CacheFormatError) as ei:
        ResultCache(path).load()
    assert ei.value.line_no == 1


def test_load_rejects_corrupt_line(tmp_path):
    path = tmp_path / "c.jsonl"
    c = ResultCache(path)
    c.put(make_record(cyclic(13), 4, (0, 1, 3, 9), True, "search"))
    c.save()
    with open(path, "a") as fh:
        fh.write("not json\n")
    with pytest.raises(CacheFormatError) as ei:
        ResultCache(path).load()
    assert ei.value.line_no == 2


def test_never_downgrade_certified(tmp_path):
    c = ResultCache(tmp_path / "c.jsonl")
    c.put(make_record(cyclic(13), 4, (0, 1, 3, 9), True, "search"))
    c.put(make_record(cyclic(13), 5, (0, 1, 3, 9, 11), False, "fallback"))
    assert c.get("cyclic", 13).certified
    assert c.get("cyclic", 13).delta == 4
    # a certified record may replace an uncertified one
    c.put(make_record(cyclic(14), 6, (0, 1, 3, 6, 10, 13), False, "fallback"))
    c.put(make_record(cyclic(14), 5, (0, 4, 5, 7, 10), True, "search"))
    assert c.get("cyclic", 14).certified


def test_save_compacts(tmp_path):
    path = tmp_path / "c.jsonl"
    c = ResultCache(path)
    c.put(make_record(cyclic(13), 4, (0, 1, 3, 9), True, "search"))
    c.put(make_record(cyclic(13), 4, (0, 6, 8, 9), True, "search"))
    c.save()
    assert len(path.read_text().strip().splitlines()) == 1


def test_default_path_env(monkeypatch, tmp_path):
    monkeypatch.setenv(CACHE_ENV_VAR, str(tmp_path / "x.jsonl"))
    assert default_cache_path() == tmp_path / "x.jsonl"
    monkeypatch.delenv(CACHE_ENV_VAR)
    assert str(default_cache_path()) == "diffbase-cache.jsonl"


def test_missing_file_loads_empty(tmp_path):
    c = ResultCache(tmp_path / "nope.jsonl").load()
    assert len(c) == 0

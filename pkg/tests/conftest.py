import os

import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--run-long",
        action="store_true",
        default=False,
        help="run hours-scale uncapped certification tests",
    )


def pytest_configure(config):
    config.addinivalue_line(
        "markers", "long: hours-scale certification runs (needs --run-long)"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-long") or os.environ.get("DIFFBASE_RUN_LONG"):
        return
    skip = pytest.mark.skip(reason="long run; enable with --run-long")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


@pytest.fixture()
def tmp_cache_path(tmp_path, monkeypatch):
    path = tmp_path / "cache.jsonl"
    monkeypatch.setenv("DIFFBASE_CACHE", str(path))
    return path

import pytest

from qplab.quasipoly import partition_quasipolynomial
from qplab.partitions import Multiset


@pytest.fixture(scope="session")
def qp_cache():
    """Session-wide memo of recovered quasi-polynomials, keyed by parts."""
    store = {}

    def get(parts):
        parts = tuple(sorted(parts))
        if parts not in store:
            store[parts] = partition_quasipolynomial(Multiset(parts))
        return store[parts]
    return get


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    monkeypatch.setenv("QPLAB_CACHE_DIR", str(tmp_path / "cache"))


@pytest.fixture
def report(request, capsys):
    """Print a PASS/FAIL line for an acceptance check, then assert it."""
    def emit(label, ok, detail):
        line = f"{'PASS' if ok else 'FAIL'}  {label}: {detail}"
        request.config.stash.setdefault(_LINES, []).append(line)
        with capsys.disabled():
            print("\n" + line)
        assert ok, detail
    return emit


_LINES = pytest.StashKey()


def pytest_terminal_summary(terminalreporter, config):
    lines = config.stash.get(_LINES, [])
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in lines:
            terminalreporter.write_line(line)

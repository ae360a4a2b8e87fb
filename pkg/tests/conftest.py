import pytest

CRITERIA = {
    1: "moment oracle equivalence",
    2: "normalization",
    3: "Stancu reduction at alpha=beta=0",
    4: "second central moment domination",
    5: "Korovkin convergence",
    6: "monomial q-integration exactness",
    7: "bound suites",
    8: "weighted convergence",
    9: "weighted modulus properties",
    10: "CLI determinism",
}

_RESULTS = {}


@pytest.fixture
def criterion():
    """Record ``(id, passed, detail)`` for the end-of-run acceptance summary."""

    def record(cid, passed, detail=""):
        _RESULTS[cid] = (bool(passed), detail)
        return bool(passed)

    return record


def pytest_terminal_summary(terminalreporter):
    if not _RESULTS:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for cid, title in CRITERIA.items():
        if cid not in _RESULTS:
            tr.write_line(f"[----] {cid:2d}. {title}: not run")
            continue
        ok, detail = _RESULTS[cid]
        tr.write_line(f"[{'PASS' if ok else 'FAIL'}] {cid:2d}. {title}: {detail}")

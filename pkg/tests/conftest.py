import pytest

_LINES = []


@pytest.fixture
def record():
    """Collect one acceptance line per parameter point; printed in the terminal summary."""
    def _record(criterion: int, where: str, ok: bool, detail: str = "") -> bool:
        _LINES.append((criterion, where, bool(ok), detail))
        print(f"criterion {criterion} {where}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        return ok
    return _record


def pytest_terminal_summary(terminalreporter):
    if not _LINES:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    by_crit = {}
    for crit, where, ok, detail in sorted(_LINES, key=lambda t: (t[0], t[1])):
        tr.write_line(f"  criterion {crit:>2} {where}: {'PASS' if ok else 'FAIL'} {detail}".rstrip())
        by_crit.setdefault(crit, []).append(ok)
    tr.write_line("")
    for crit in sorted(by_crit):
        oks = by_crit[crit]
        tr.write_line(f"criterion {crit:>2}: {'PASS' if all(oks) else 'FAIL'} "
                      f"({sum(oks)}/{len(oks)} parameter points)")

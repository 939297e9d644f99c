import pytest


@pytest.fixture
def verdict(request):
    """Print one PASS/FAIL line for an acceptance criterion, then assert."""
    reporter = request.config.pluginmanager.get_plugin("terminalreporter")

    def emit(name: str, ok: bool, detail: str = ""):
        line = f"[{'PASS' if ok else 'FAIL'}] {name}" + (f": {detail}" if detail else "")
        if reporter is not None:
            reporter.write_line("")
            reporter.write_line(line)
        else:
            print(line)
        assert ok, line

    return emit

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))


def pytest_terminal_summary(terminalreporter):
    lines = set()
    for mod in list(sys.modules.values()):
        lines.update(getattr(mod, "__dict__", {}).get("ACCEPTANCE_LINES", ()))
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)

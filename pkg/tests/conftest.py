import re

CRITERION = re.compile(r"test_acceptance\.py::test_criterion_(\d+)")


def pytest_terminal_summary(terminalreporter):
    verdicts = {}
    for key in ("passed", "failed", "error"):
        for rep in terminalreporter.stats.get(key, []):
            m = CRITERION.search(getattr(rep, "nodeid", ""))
            if not m or (key == "passed" and rep.when != "call"):
                continue
            n = int(m.group(1))
            verdicts[n] = "PASS" if key == "passed" and verdicts.get(n) != "FAIL" else "FAIL"
    if not verdicts:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(verdicts):
        terminalreporter.write_line(f"criterion {n}: {verdicts[n]}")

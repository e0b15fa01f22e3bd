def pytest_terminal_summary(terminalreporter):
    import sys
    mod = sys.modules.get("test_acceptance")
    if not mod or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        name, ok, note = mod.RESULTS[n]
        line = f"criterion {n:>2} {name}: {'PASS' if ok else 'FAIL'}"
        terminalreporter.write_line(line + (f" ({note})" if note else ""))

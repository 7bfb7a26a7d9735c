def pytest_terminal_summary(terminalreporter):
    """Echo the acceptance criteria lines even when stdout capture is on."""
    try:
        from test_acceptance import CRITERION_LINES
    except Exception:
        return
    if CRITERION_LINES:
        terminalreporter.write_sep("-", "acceptance criteria")
        for line in CRITERION_LINES:
            terminalreporter.write_line(line)

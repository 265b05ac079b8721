def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS, format_results
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in format_results(RESULTS):
            terminalreporter.write_line(line)

from hypothesis import settings

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import REPORT

    if not REPORT:
        return
    terminalreporter.section("acceptance criteria")
    for result in REPORT:
        terminalreporter.write_line(result.line())
        if result.number == "9":
            for d in result.details:
                terminalreporter.write_line("    " + d)

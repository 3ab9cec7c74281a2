_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, text): acceptance criterion covered by the test")


def pytest_collection_modifyitems(items):
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", m.args))


def pytest_runtest_logreport(report):
    for key, (number, text) in report.user_properties:
        if key != "criterion":
            continue
        if report.when == "call" or report.failed:
            ok = report.passed and _criteria.get(number, (text, True))[1]
            _criteria[number] = (text, ok)


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_criteria):
        text, ok = _criteria[number]
        terminalreporter.write_line("%s %2d  %s" % ("PASS" if ok else "FAIL", number, text))

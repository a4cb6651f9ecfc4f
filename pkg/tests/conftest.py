import pytest

# criterion name -> list of call outcomes (True/False) of the tests that assert it
_ACCEPTANCE = {}


@pytest.fixture
def criterion(request):
    """Attach an acceptance-criterion name to the requesting test."""
    names = []
    yield names.append
    rep = getattr(request.node, "rep_call", None)
    for name in names:
        _ACCEPTANCE.setdefault(name, []).append(rep is not None and rep.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when == "call":
        item.rep_call = rep


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(_ACCEPTANCE, key=lambda s: int(s.split(".", 1)[0])):
        outcomes = _ACCEPTANCE[name]
        status = "PASS" if all(outcomes) else "FAIL"
        terminalreporter.write_line(f"{status}  {name}  ({sum(outcomes)}/{len(outcomes)} tests)")

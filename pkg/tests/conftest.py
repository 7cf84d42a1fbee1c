import pytest

from goalrank import dsl, fixtures


def _clean(parsed):
    value, diags = parsed
    assert value is not None and not [d for d in diags if d.severity == "error"], diags
    return value


@pytest.fixture(scope="session")
def schema():
    return _clean(dsl.parse_context_schema(fixtures.read("home.ctx")))


@pytest.fixture(scope="session")
def model_full():
    return _clean(dsl.parse_goal_model(fixtures.read("medication.gm")))


@pytest.fixture(scope="session")
def model_fragment():
    return _clean(dsl.parse_goal_model(fixtures.read("medication_fragment.gm")))


@pytest.fixture(scope="session")
def catalogue():
    return _clean(dsl.parse_catalogue(fixtures.read("stakeholders.prefs")))


@pytest.fixture(scope="session")
def catalogue_privacy():
    return _clean(dsl.parse_catalogue(fixtures.read("stakeholders_privacy.prefs")))


@pytest.fixture(scope="session")
def situations(schema):
    return {
        name: _clean(dsl.parse_situation(fixtures.read(f"{name}.sit"), schema))
        for name in ("dementia_home", "normal_home", "normal_bad_weather",
                     "dementia_tired", "near_dispenser")
    }


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    lines = []
    for outcome, mark in (("passed", "PASS"), ("failed", "FAIL"), ("error", "FAIL")):
        for rep in terminalreporter.stats.get(outcome, []):
            if "test_acceptance.py" in rep.nodeid and getattr(rep, "when", "call") == "call":
                lines.append((rep.nodeid.split("::")[-1], mark))
    if lines:
        terminalreporter.write_sep("-", "acceptance criteria")
        for name, mark in sorted(lines):
            terminalreporter.write_line(f"{mark}  {name}")

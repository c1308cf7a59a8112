import pytest


def pytest_addoption(parser):
    parser.addoption(
        "--mc-acceptance", action="store_true", default=False,
        help="Run the desk-scale Monte Carlo acceptance runs (minutes each)"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--mc-acceptance"):
        return
    skip = pytest.mark.skip(reason="need --mc-acceptance option to run")
    for item in items:
        if "mc_acceptance" in item.fixturenames:
            item.add_marker(skip)


@pytest.fixture
def mc_acceptance():
    """Requested by tests that only run with --mc-acceptance"""
    return True


@pytest.fixture(autouse=True)
def quiet_progress():
    from sparsedetect import runtime_settings
    runtime_settings.progress = 'never'
    yield
    runtime_settings.progress = 'auto'

import os

import pytest
from hypothesis import settings

settings.register_profile("algentropy", deadline=None, max_examples=50)
settings.load_profile("algentropy")


@pytest.fixture(scope="session")
def root():
    return os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))


# This fixture is used automatically and ensures that
# the current working directory is reset if other test classes changed it.
@pytest.fixture(scope="class")
def cwd(root):
    os.chdir(root)


@pytest.fixture(scope="session")
def golden(root):
    """Read a file from tests/golden."""

    def _read(name):
        with open(os.path.join(root, "tests", "golden", name), encoding="utf-8") as fp:
            return fp.read()

    return _read


@pytest.fixture
def stub_config():
    """Builds a standardized Configuration object and returns it, but does
    not load it as the active configuration returned by
    algentropy.config.get_config()
    """
    defaults = {
        "nmax": 20,
        "tol": 1e-12,
        "seed": 0,
        "term_budget": 200000,
        "form_budget": 10000,
        "format": "csv",
        "include_zero": False,
        "gcd_trials": 5,
        "gelfand_cap": 60,
        "root_max_steps": 500,
        "root_precision": 50,
        "loglevel": "WARNING",
    }
    from algentropy.config import default_keys
    from algentropy.config import Configuration

    config = Configuration()
    for key in default_keys:
        config.register(*key)
    config.extend(defaults.copy())
    config.ready = True

    return config


@pytest.fixture
def active_config(stub_config):
    """Loads the standard config as the active configuration returned by
    algentropy.config.get_config() and returns it.
    """
    from algentropy import config as c

    original = c.config
    c.config = stub_config
    yield c.config
    c.config = original


@pytest.fixture
def tempdir():
    import shutil
    import tempfile

    cwd = os.getcwd()
    tmp = tempfile.mkdtemp()
    os.chdir(tmp)
    yield tmp
    os.chdir(cwd)
    shutil.rmtree(tmp, ignore_errors=True)


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run slow tests"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        # --runslow given in cli: do not skip slow tests
        return
    skip_slow = pytest.mark.skip(reason="need --runslow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)

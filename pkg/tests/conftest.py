import pytest

from classex.pipeline import analyze, builtin


@pytest.fixture(scope="session")
def group():
    """Memoised pipeline run by builtin name."""
    def get(name):
        return analyze(builtin(name))
    return get

import pytest

from cluster_loc.rigid import rigid_object
from cluster_loc.suites import cached_category


@pytest.fixture(scope="session")
def cat4():
    return cached_category(4)


@pytest.fixture(scope="session")
def example_T(cat4):
    """The running rank-4 instance: T = M44 + M14 + M11."""
    return rigid_object(cat4, ["M44", "M14", "M11"])


@pytest.fixture(scope="session")
def fan_T(cat4):
    """A full triangulation of the heptagon (cluster-tilting)."""
    return rigid_object(cat4, ["0-2", "0-3", "0-4", "0-5"])


@pytest.fixture(scope="session")
def cat2():
    return cached_category(2)

import os

import pytest
from hypothesis import HealthCheck, settings

from opsusp import coalg
from opsusp.operad import BarOperad

settings.register_profile("default", max_examples=60, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", max_examples=200, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def S2():
    return BarOperad(2, 3)


@pytest.fixture(scope="session")
def S3():
    return BarOperad(3, 3)


@pytest.fixture(scope="session")
def interval(S3):
    return coalg.make_interval(S3)


@pytest.fixture(scope="session")
def sphere0(S3):
    return coalg.make_sphere0(S3)


@pytest.fixture(scope="session")
def circle(sphere0):
    return coalg.reduce(coalg.suspend_m(sphere0))

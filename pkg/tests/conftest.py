import math

import pytest

import ancientflow as af

SQ2 = math.sqrt(2.0)


@pytest.fixture(scope="session")
def circle_engine_flow():
    """The circle scenario's flow: N = 256, t = -2 -> -0.1, cadence 96."""
    return af.evolve(af.shrinking_circle(-2.0, 256), -2.0, -0.1, per_decade=96)


@pytest.fixture(scope="session")
def ellipse_engine_flow():
    """The ellipse scenario's flow (lifetime exactly 2 from t0 = -2)."""
    return af.evolve(af.ellipse_support(2.0 * SQ2, SQ2, 256), -2.0, -0.2)


@pytest.fixture(scope="session")
def oval_flow_200():
    """The oval scenario's flow: exact frames from t = -200 to -1."""
    return af.oval_flow(-200.0, -1.0, 256)


@pytest.fixture(scope="session")
def deep_oval_flow():
    """Oval flow with history to -2600, deep enough for scale 0.02."""
    return af.oval_flow(-2600.0, -1.0, 256)


@pytest.fixture(scope="session")
def bowl2():
    return af.bowl_profile(2, 200.0)


@pytest.fixture(scope="session")
def bowl3():
    return af.bowl_profile(3, 200.0)

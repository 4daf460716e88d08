import pytest

from striplex.boundary import BoundarySpline
from striplex.params import ProblemParams, admit

# standard desk configuration: vee slope profile f'(y) = 0.5|y| on [-1, 1],
# f(-1) = 0, cone slope 2, strip height 0.1
VEE_KNOTS = ((-1.0, 0.5), (0.0, 0.0), (1.0, 0.5))
STANDARD_L = 2.0
STANDARD_DELTA = 0.1


@pytest.fixture(scope="session")
def vee_spline():
    return BoundarySpline(f0=0.0, knots=VEE_KNOTS)


@pytest.fixture(scope="session")
def vee_problem(vee_spline):
    return admit(ProblemParams(L=STANDARD_L, delta=STANDARD_DELTA, spline=vee_spline))


@pytest.fixture(scope="session")
def constant_problem():
    spline = BoundarySpline(f0=1.0, knots=((0.0, 0.0),))
    return admit(ProblemParams(L=STANDARD_L, delta=STANDARD_DELTA, spline=spline))


@pytest.fixture(scope="session")
def linear_problem():
    spline = BoundarySpline(f0=0.0, knots=((0.0, 1.0),))
    return admit(ProblemParams(L=STANDARD_L, delta=STANDARD_DELTA, spline=spline))


@pytest.fixture(scope="session")
def two_kink_problem():
    spline = BoundarySpline(f0=0.0, knots=((-1.0, 0.5), (0.0, 0.0), (0.5, 0.25), (1.0, 0.25)))
    return admit(ProblemParams(L=STANDARD_L, delta=STANDARD_DELTA, spline=spline))

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from striplex import oracle
from striplex.construction import (
    contact_inverse,
    phi,
    phi_prime,
    segment_value,
    solve_contact,
    u_at_contact,
    u_interior,
    u_prime_top,
)
from striplex.errors import DomainError
from striplex.params import ProblemParams, admit

from test_boundary import splines

# frozen oracle values for the vee profile at L=2, delta=0.1: grid scan at
# h_y=1e-7 plus golden-section refinement, cross-checked bit-identical with
# the closed form
WORKED_X = 0.03
WORKED_Y = 0.030769254111985032
WORKED_VALUE = 0.050230769318303919
WORKED_INTERIOR_POINT = (0.02, 0.05)
WORKED_INTERIOR_VALUE = 0.15010126583100059


class TestPhi:
    def test_zero(self):
        assert phi(0.0, 5.0) == 0.0
        assert phi_prime(0.0, 2.0) == 0.5

    def test_symmetric_point(self):
        assert phi(math.sqrt(2.0), 2.0) == pytest.approx(1.0, abs=1e-15)

    def test_kink_slope_curvature(self):
        # phi'(0) = 1/L is the transfer constant at a flat-slope kink
        assert phi_prime(0.0, 2.0) == pytest.approx(1.0 / 2.0, abs=1e-16)

    def test_domain_errors(self):
        with pytest.raises(DomainError):
            phi(2.0, 2.0)
        with pytest.raises(DomainError):
            phi_prime(-2.5, 2.0)
        with pytest.raises(DomainError):
            phi(np.array([0.0, 2.0]), 2.0)

    def test_vectorized(self):
        ts = np.linspace(-1.5, 1.5, 11)
        out = phi(ts, 2.0)
        for t, v in zip(ts, out):
            assert v == phi(float(t), 2.0)


class TestSolveContact:
    def test_constant_data(self, constant_problem):
        for x in (-3.0, 0.0, 11.5):
            sol = solve_contact(x, 0.07, constant_problem)
            assert sol.Y == 0.0
            assert sol.value == pytest.approx(1.0 - 2.0 * 0.07, abs=1e-15)
            assert sol.iterations == 1
            assert sol.residual == 0.0

    def test_linear_data(self, linear_problem):
        sol = solve_contact(0.0, 0.1, linear_problem)
        assert sol.Y == pytest.approx(0.1 / math.sqrt(3.0), abs=1e-13)
        assert sol.value == pytest.approx(-0.1 * math.sqrt(3.0), abs=1e-13)
        sol = solve_contact(4.5, 0.1, linear_problem)
        assert sol.value == pytest.approx(4.5 - 0.1 * math.sqrt(3.0), abs=1e-13)

    def test_worked_point_matches_frozen_oracle(self, vee_problem):
        sol = solve_contact(WORKED_X, 0.1, vee_problem)
        assert sol.y == pytest.approx(WORKED_Y, abs=1e-12)
        assert sol.value == pytest.approx(WORKED_VALUE, abs=1e-12)

    def test_residual_and_localization(self, vee_problem):
        rng = np.random.default_rng(7)
        for _ in range(100):
            x = float(rng.uniform(-3, 3))
            h = float(rng.uniform(0.001, 0.1))
            sol = solve_contact(x, h, vee_problem)
            assert sol.residual <= 1e-12
            assert abs(sol.Y) <= vee_problem.D * h

    def test_height_domain(self, vee_problem):
        for bad in (0.0, -0.5, 0.1000001):
            with pytest.raises(DomainError):
                solve_contact(0.0, bad, vee_problem)

    def test_iteration_budget_guard(self, vee_problem):
        from striplex.errors import NonConvergenceError

        with pytest.raises(NonConvergenceError):
            solve_contact(0.7, 0.1, vee_problem, max_iter=1)
        with pytest.raises(DomainError):
            solve_contact(0.7, 0.1, vee_problem, tol=0.0)


class TestContactInverse:
    def test_flat_slope_fixed_point(self, vee_problem):
        assert contact_inverse(0.0, 0.1, vee_problem) == 0.0

    def test_linear_offset(self, linear_problem):
        assert contact_inverse(1.0, 0.1, linear_problem) == pytest.approx(
            1.0 - 0.1 / math.sqrt(3.0), abs=1e-15
        )

    def test_round_trip(self, vee_problem):
        rng = np.random.default_rng(11)
        for y in rng.uniform(-1.5, 1.5, 100):
            x = contact_inverse(float(y), 0.1, vee_problem)
            sol = solve_contact(x, 0.1, vee_problem)
            assert abs(sol.y - float(y)) <= 1e-10

    def test_monotone_bijection(self, vee_problem):
        xs = np.sort(np.random.default_rng(3).uniform(-2, 2, 200))
        ys = [solve_contact(float(x), 0.1, vee_problem).y for x in xs]
        assert all(a < b for a, b in zip(ys, ys[1:]))

    def test_vectorized_matches_scalar(self, vee_problem):
        ys = np.linspace(-2, 2, 17)
        vec = contact_inverse(ys, 0.1, vee_problem)
        for y, x in zip(ys, vec):
            assert x == contact_inverse(float(y), 0.1, vee_problem)


class TestUAtContact:
    def test_flat_slope_kink(self, vee_problem):
        # f(0) = 0.25 and f'(0) = 0, so the surd degenerates to L
        assert u_at_contact(0.0, vee_problem) == pytest.approx(0.25 - 0.2, abs=1e-15)

    def test_constant(self, constant_problem):
        for y in (-2.0, 0.3):
            assert u_at_contact(y, constant_problem) == pytest.approx(1.0 - 0.2, abs=1e-15)

    def test_linear_against_oracle(self, linear_problem):
        value = u_at_contact(1.0, linear_problem)
        assert value == pytest.approx(1.0 - 0.1 * 4.0 / math.sqrt(3.0), abs=1e-13)
        x = contact_inverse(1.0, 0.1, linear_problem)
        brute = oracle.brute_force_u((x, 0.1), linear_problem, 1e-6)
        assert value == pytest.approx(brute.value, abs=1e-10)

    def test_matches_solver_value(self, vee_problem):
        for y in np.linspace(-1.4, 1.4, 15):
            x = contact_inverse(float(y), 0.1, vee_problem)
            sol = solve_contact(x, 0.1, vee_problem)
            assert u_at_contact(float(y), vee_problem) == pytest.approx(sol.value, abs=1e-12)


class TestUInterior:
    def test_domain(self, vee_problem):
        for bad in (0.0, -0.01, 0.11):
            with pytest.raises(DomainError):
                u_interior(0.0, bad, vee_problem)

    def test_constant(self, constant_problem):
        assert u_interior(2.0, 0.03, constant_problem) == pytest.approx(1.0 - 0.06, abs=1e-15)

    def test_worked_interior_point(self, vee_problem):
        assert u_interior(*WORKED_INTERIOR_POINT, vee_problem) == pytest.approx(
            WORKED_INTERIOR_VALUE, abs=1e-12
        )

    def test_agrees_with_top_line_solve(self, vee_problem):
        for x in (-0.9, 0.0, 1.7):
            assert u_interior(x, 0.1, vee_problem) == solve_contact(x, 0.1, vee_problem).value


class TestUPrimeTop:
    def test_trivial_profiles(self, constant_problem, linear_problem):
        assert u_prime_top(3.0, constant_problem) == 0.0
        assert u_prime_top(-2.0, linear_problem) == 1.0

    def test_vee(self, vee_problem):
        assert u_prime_top(0.5, vee_problem) == pytest.approx(0.25, abs=1e-15)


class TestSegmentValue:
    def test_endpoints(self, vee_problem):
        y = 0.7
        point, value = segment_value(y, 0.0, vee_problem)
        assert point == (y, 0.0)
        assert value == pytest.approx(vee_problem.spline.value(y), abs=1e-15)
        point, value = segment_value(y, 1.0, vee_problem)
        assert point[1] == 0.1
        assert point[0] == pytest.approx(contact_inverse(y, 0.1, vee_problem), abs=1e-15)
        assert value == pytest.approx(u_at_contact(y, vee_problem), abs=1e-13)

    def test_worked_midpoint(self, vee_problem):
        point, value = segment_value(0.0, 0.5, vee_problem)
        assert point == (0.0, 0.05)
        assert value == pytest.approx(0.15, abs=1e-15)
        assert u_interior(*point, vee_problem) == pytest.approx(0.15, abs=1e-13)
        brute = oracle.brute_force_u(point, vee_problem, 1e-6)
        assert brute.value == pytest.approx(0.15, abs=1e-12)

    def test_affine_along_segment(self, vee_problem):
        y = -0.85
        x_top = contact_inverse(y, 0.1, vee_problem)
        length = math.hypot(0.1, x_top - y)
        f_y = vee_problem.spline.value(y)
        for t in np.arange(0.1, 1.0, 0.1):
            point, value = segment_value(y, float(t), vee_problem)
            assert value == pytest.approx(f_y - 2.0 * t * length, abs=1e-15)
            assert u_interior(point[0], point[1], vee_problem) == pytest.approx(value, abs=1e-12)

    def test_parameter_domain(self, vee_problem):
        with pytest.raises(DomainError):
            segment_value(0.0, -0.1, vee_problem)
        with pytest.raises(DomainError):
            segment_value(0.0, 1.1, vee_problem)


def test_touching_from_above(vee_problem):
    # the translated cone through (x, u(x)) dominates f and touches it at y(x)
    rng = np.random.default_rng(5)
    for x in rng.uniform(-1.8, 1.8, 20):
        sol = solve_contact(float(x), 0.1, vee_problem)
        ys = np.linspace(float(x) - 3.0, float(x) + 3.0, 4001)
        g = sol.value + 2.0 * np.sqrt(0.01 + (float(x) - ys) ** 2)
        assert np.all(g - vee_problem.spline.value(ys) >= -1e-12)
        g_contact = sol.value + 2.0 * math.hypot(0.1, float(x) - sol.y)
        assert g_contact - vee_problem.spline.value(sol.y) == pytest.approx(0.0, abs=1e-10)


def test_empirical_lipschitz_of_offset(vee_problem):
    rng = np.random.default_rng(13)
    bound = vee_problem.lip_Y_bound
    for _ in range(500):
        x1 = float(rng.uniform(-2, 2))
        dx = float(rng.uniform(1e-4, 0.2)) * (1 if rng.random() < 0.5 else -1)
        Y1 = solve_contact(x1, 0.1, vee_problem, tol=1e-14).Y
        Y2 = solve_contact(x1 + dx, 0.1, vee_problem, tol=1e-14).Y
        assert abs(Y2 - Y1) <= bound * abs(dx)


@given(splines(), st.floats(-3, 3), st.floats(0.01, 1.0))
@settings(max_examples=150, deadline=None)
def test_solver_contract_on_random_problems(spline, x, height_frac):
    L = 1.5 * spline.max_slope + 1.0
    from striplex.params import delta_caps

    touch, banach = delta_caps(L, spline.max_slope, spline.slope_lipschitz)
    cap = min(touch, banach)
    delta = 0.4 * cap if math.isfinite(cap) else 0.5
    problem = admit(ProblemParams(L=L, delta=delta, spline=spline))
    h = height_frac * delta
    sol = solve_contact(x, h, problem)
    assert sol.residual <= 1e-12
    assert abs(sol.Y) <= problem.D * h + 1e-15
    # round trip through the closed-form inverse
    x_back = contact_inverse(sol.y, h, problem)
    assert x_back == pytest.approx(x, abs=1e-10)

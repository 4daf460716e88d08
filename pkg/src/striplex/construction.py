"""Closed-form evaluation of the cone-envelope extension inside the strip.

The value at (x, d) is obtained by locating the boundary contact point
through the scalar fixed-point equation

    Y = d * phi(f'(x + Y)),      phi(t) = t / sqrt(L^2 - t^2),

and substituting into u = f(x + Y) - L * sqrt(d^2 + Y^2).  For admitted
problems the iteration map is a global contraction with factor
q = delta * phi_prime_max * Lip(f'), so plain fixed-point iteration from
Y = 0 with the a-posteriori stopping rule |Y_{k+1} - Y_k| <= tol*(1-q)/q
guarantees both |Y - Y*| <= tol and residual <= tol.  Heights d < delta use
the same equation with d in place of delta: the admissibility caps only
tighten as the height grows, so admissibility at delta covers every d below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NonConvergenceError
from .params import AdmissibleProblem

DEFAULT_TOL = 1e-12
DEFAULT_MAX_ITER = 200


def phi(t, L: float):
    """t / sqrt(L^2 - t^2) on |t| < L; accepts a float or an ndarray."""
    if isinstance(t, (float, int)):
        t = float(t)
        if abs(t) >= L:
            raise DomainError(f"phi requires |t| < L, got t={t!r}, L={L!r}")
        return t / math.sqrt(L * L - t * t)
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) >= L):
        raise DomainError(f"phi requires |t| < L everywhere, L={L!r}")
    return t / np.sqrt(L * L - t * t)


def phi_prime(t, L: float):
    """L^2 / (L^2 - t^2)^(3/2) on |t| < L; accepts a float or an ndarray."""
    if isinstance(t, (float, int)):
        t = float(t)
        if abs(t) >= L:
            raise DomainError(f"phi_prime requires |t| < L, got t={t!r}, L={L!r}")
        return L * L / (L * L - t * t) ** 1.5
    t = np.asarray(t, dtype=float)
    if np.any(np.abs(t) >= L):
        raise DomainError(f"phi_prime requires |t| < L everywhere, L={L!r}")
    return L * L / (L * L - t * t) ** 1.5


@dataclass(frozen=True)
class ContactSolution:
    """Result of one contact solve at (x, height)."""

    x: float
    height: float
    Y: float
    y: float
    value: float
    iterations: int
    residual: float


def solve_contact(
    x: float,
    height: float,
    problem: AdmissibleProblem,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> ContactSolution:
    """Solve Y = height * phi(f'(x + Y)) and evaluate u there.

    The returned iterate satisfies |Y - Y*| <= tol and
    |Y - height*phi(f'(x+Y))| <= tol.
    """
    if not (0.0 < height <= problem.delta):
        raise DomainError(f"height must lie in (0, delta], got {height!r} with delta={problem.delta!r}")
    if tol <= 0.0:
        raise DomainError(f"tol must be > 0, got {tol!r}")
    spline = problem.spline
    L = problem.L
    q = problem.contraction_q
    threshold = tol * (1.0 - q) / q if q > 0.0 else math.inf
    Y = 0.0
    iterations = 0
    converged = False
    for _ in range(max_iter):
        slope = spline.derivative(x + Y)
        if abs(slope) >= L:
            raise DomainError(f"|f'| = {abs(slope)!r} >= L = {L!r} at y = {x + Y!r}")
        Y_next = height * slope / math.sqrt(L * L - slope * slope)
        iterations += 1
        if abs(Y_next - Y) <= threshold:
            Y = Y_next
            converged = True
            break
        Y = Y_next
    if not converged:
        raise NonConvergenceError(
            f"contact solve at (x={x!r}, height={height!r}) did not converge in {max_iter} iterations"
        )
    slope = spline.derivative(x + Y)
    residual = abs(Y - height * slope / math.sqrt(L * L - slope * slope))
    y = x + Y
    return ContactSolution(
        x=float(x),
        height=float(height),
        Y=Y,
        y=y,
        value=spline.value(y) - L * math.hypot(height, Y),
        iterations=iterations,
        residual=residual,
    )


def contact_inverse(y, height: float, problem: AdmissibleProblem):
    """x(y) = y - height * phi(f'(y)): the top-line abscissa whose contact
    point at the given height is y.  Strictly increasing for admitted
    problems; accepts a float or an ndarray."""
    if not (0.0 < height <= problem.delta):
        raise DomainError(f"height must lie in (0, delta], got {height!r} with delta={problem.delta!r}")
    return y - height * phi(problem.spline.derivative(y), problem.L)


def u_at_contact(y, problem: AdmissibleProblem):
    """u at the top-line point (x(y), delta), in closed form:
    f(y) - delta * L^2 / sqrt(L^2 - f'(y)^2).  Accepts a float or ndarray."""
    L = problem.L
    slope = problem.spline.derivative(y)
    if isinstance(slope, float):
        surd = math.sqrt(L * L - slope * slope)
    else:
        surd = np.sqrt(L * L - slope * slope)
    return problem.spline.value(y) - problem.delta * L * L / surd


def u_interior(
    x: float,
    d: float,
    problem: AdmissibleProblem,
    tol: float = DEFAULT_TOL,
    max_iter: int = DEFAULT_MAX_ITER,
) -> float:
    """u(x, d) anywhere in the strip, via the height-d contact solve."""
    if not (0.0 < d <= problem.delta):
        raise DomainError(f"height must lie in (0, delta], got d={d!r} with delta={problem.delta!r}")
    return solve_contact(x, d, problem, tol=tol, max_iter=max_iter).value


def u_prime_top(y, problem: AdmissibleProblem):
    """Tangential slope of u along the top line at x(y).

    Equals f'(y): the touching cone slides in the growth direction of f, so
    its apex traces u with the same slope.  Accepts a float or an ndarray.
    """
    return problem.spline.derivative(y)


def segment_value(
    y: float, t: float, problem: AdmissibleProblem
) -> tuple[tuple[float, float], float]:
    """Point and u-value at parameter t of the contact segment of y.

    The segment joins (y, 0) to (x(y), delta); u is affine along it with
    slope -L per unit length, so value = f(y) - L * t * |segment|.
    """
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"segment parameter must lie in [0, 1], got {t!r}")
    delta = problem.delta
    x_top = contact_inverse(y, delta, problem)
    length = math.hypot(delta, x_top - y)
    point = (y + t * (x_top - y), t * delta)
    return point, problem.spline.value(y) - problem.L * t * length

"""Differential diagnostics: curvature transfer at kinks, gradient identity,
and the infinity-Laplacian residual.

A slope kink of the boundary profile at y0 reappears on the top line at
x0 = x(y0) with one-sided second derivatives

    f''_(y0) / (1 - delta * phi'(f'(y0)) * f''_(y0))        (each side),

so distinct boundary curvatures stay distinct: the transfer map
t -> t / (1 - delta*C*t) is strictly increasing while the denominators stay
above 1 - q.  The measurements here never trust that formula: one-sided
difference quotients of u' are built either from the contact identity
u'(x(y)) = f'(y) (fast path) or from raw finite differences of the
brute-force oracle (slow path), and Richardson extrapolation removes the
leading quotient error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from . import construction, oracle
from .errors import DomainError, ValidationError
from .ioutil import fmt_real
from .params import AdmissibleProblem

DEFAULT_H_SCHEDULE = (1e-3, 5e-4, 2.5e-4)
# inner step for slope-from-oracle samples; small enough that the one-sided
# bias at a kink stays two orders below the outer quotient scale
DEFAULT_INNER_H = 1e-7
DEFAULT_ORACLE_H_Y = 1e-6

FD_SIDES = ("central", "left", "right")
FD_ORDERS = ("first", "second")
FD_SOURCES = ("closed_form", "oracle")

KINK_REPORT_COLUMNS = (
    "y0",
    "x0",
    "fpp_minus",
    "fpp_plus",
    "upp_minus_pred",
    "upp_plus_pred",
    "upp_minus_fd",
    "upp_plus_fd",
    "denom_minus",
    "denom_plus",
)


@dataclass(frozen=True)
class KinkReport:
    """Boundary curvature jump paired with its predicted and measured image
    on the top line.  midseg_jumps holds the transverse one-sided
    second-difference gap at the segment midpoint per probe step
    (informative: a nonzero limit witnesses the curvature jump along the
    whole segment)."""

    y0: float
    x0: float
    fpp_minus: float
    fpp_plus: float
    upp_minus_pred: float
    upp_plus_pred: float
    upp_minus_fd: float
    upp_plus_fd: float
    denom_minus: float
    denom_plus: float
    midseg_jumps: tuple[float, ...]


@dataclass(frozen=True)
class MonotoneWitness:
    ok: bool
    kink_y0: float | None = None
    pair: tuple[float, float] | None = None


def curvature_transfer(t: float, delta: float, C: float) -> float:
    """t / (1 - delta*C*t); the identity map when delta == 0."""
    return t / (1.0 - delta * C * t)


def second_derivatives_top(y0: float, problem: AdmissibleProblem) -> tuple[float, float]:
    """One-sided second derivatives of u on the top line at x(y0), from the
    closed-form transfer of the boundary one-sided second derivatives.
    Both sides coincide iff the boundary curvatures do."""
    spline = problem.spline
    C = construction.phi_prime(spline.derivative(float(y0)), problem.L)
    delta = problem.delta
    return (
        curvature_transfer(spline.second_left(float(y0)), delta, C),
        curvature_transfer(spline.second_right(float(y0)), delta, C),
    )


def richardson_extrapolate(hs, qs) -> float:
    """Extrapolate samples Q(h) to h = 0 by Neville's scheme.

    Exact for Q polynomial in h of degree < len(hs); kills the O(h) and
    O(h^2) terms of one-sided quotients on the default 3-step schedule.
    """
    if len(hs) != len(qs) or len(hs) < 1:
        raise ValidationError("need equally many steps and samples, at least one each")
    t = [float(q) for q in qs]
    h = [float(v) for v in hs]
    n = len(t)
    for k in range(1, n):
        for i in range(n - 1, k - 1, -1):
            t[i] = t[i] + (t[i] - t[i - 1]) * h[i] / (h[i - k] - h[i])
    return t[-1]


def _u_top(x: float, problem: AdmissibleProblem, source: str, oracle_h_y: float, tol: float) -> float:
    if source == "closed_form":
        return construction.solve_contact(x, problem.delta, problem, tol=tol).value
    return oracle.brute_force_u((x, problem.delta), problem, oracle_h_y).value


def _u_prime_top(
    x: float,
    problem: AdmissibleProblem,
    source: str,
    inner_h: float,
    oracle_h_y: float,
    tol: float,
) -> float:
    if source == "closed_form":
        sol = construction.solve_contact(x, problem.delta, problem, tol=tol)
        return problem.spline.derivative(sol.y)
    up = oracle.brute_force_u((x + inner_h, problem.delta), problem, oracle_h_y).value
    dn = oracle.brute_force_u((x - inner_h, problem.delta), problem, oracle_h_y).value
    return (up - dn) / (2.0 * inner_h)


def fd_derivative_top(
    x: float,
    problem: AdmissibleProblem,
    h: float,
    side: str = "central",
    order: str = "first",
    source: str = "closed_form",
    inner_h: float = DEFAULT_INNER_H,
    oracle_h_y: float = DEFAULT_ORACLE_H_Y,
    tol: float = construction.DEFAULT_TOL,
) -> float:
    """Difference quotient of u (order='first') or of u' (order='second')
    along the top line.

    One-sided quotients are O(h) accurate, central ones O(h^2) away from
    kinks.  source='closed_form' samples the contact solve (u' through the
    identity u'(x(y)) = f'(y)); source='oracle' samples the brute-force
    maximizer only, with u' as a central quotient of step inner_h.
    """
    if h <= 0:
        raise DomainError(f"need h > 0, got {h!r}")
    if side not in FD_SIDES:
        raise ValueError(f"unknown side {side!r}; expected one of {FD_SIDES}")
    if order not in FD_ORDERS:
        raise ValueError(f"unknown order {order!r}; expected one of {FD_ORDERS}")
    if source not in FD_SOURCES:
        raise ValueError(f"unknown source {source!r}; expected one of {FD_SOURCES}")

    if order == "first":
        sample = lambda xx: _u_top(xx, problem, source, oracle_h_y, tol)
    else:
        sample = lambda xx: _u_prime_top(xx, problem, source, inner_h, oracle_h_y, tol)
    if side == "central":
        return (sample(x + h) - sample(x - h)) / (2.0 * h)
    if side == "right":
        return (sample(x + h) - sample(x)) / h
    return (sample(x) - sample(x - h)) / h


def _midsegment_jumps(
    y0: float,
    x0: float,
    problem: AdmissibleProblem,
    h_schedule,
) -> tuple[float, ...]:
    """Transverse one-sided second-difference gap of u at the segment
    midpoint, per step.  The two quotients straddle the segment; their
    difference tends to the curvature jump across it."""
    delta = problem.delta
    length = math.hypot(delta, x0 - y0)
    nx, nd = delta / length, -(x0 - y0) / length
    mx, md = y0 + 0.5 * (x0 - y0), 0.5 * delta
    jumps = []
    for h in h_schedule:
        # keep the five-point transverse stencil inside the strip
        hh = min(h, 0.2 * delta / (abs(nd) + 1e-3))
        u0 = construction.u_interior(mx, md, problem)
        up1 = construction.u_interior(mx + hh * nx, md + hh * nd, problem)
        up2 = construction.u_interior(mx + 2 * hh * nx, md + 2 * hh * nd, problem)
        dn1 = construction.u_interior(mx - hh * nx, md - hh * nd, problem)
        dn2 = construction.u_interior(mx - 2 * hh * nx, md - 2 * hh * nd, problem)
        right = (up2 - 2.0 * up1 + u0) / (hh * hh)
        left = (dn2 - 2.0 * dn1 + u0) / (hh * hh)
        jumps.append(right - left)
    return tuple(jumps)


def kink_transfer_report(
    problem: AdmissibleProblem,
    h_schedule=DEFAULT_H_SCHEDULE,
    inner_h: float = DEFAULT_INNER_H,
    oracle_h_y: float = DEFAULT_ORACLE_H_Y,
) -> list[KinkReport]:
    """One report per boundary kink, sorted by y0; empty when f' has no
    slope jumps.

    Measured one-sided second derivatives come from the assumption-free slow
    path: u' sampled as central quotients of the brute-force oracle, then
    one-sided quotients Richardson-extrapolated over h_schedule.
    """
    hs = tuple(float(h) for h in h_schedule)
    if any(h <= 0 for h in hs) or len(hs) < 2:
        raise ValidationError(f"h_schedule needs at least two positive steps, got {h_schedule!r}")
    delta = problem.delta
    reports = []
    for kink in problem.spline.kinks():
        y0 = kink.y0
        x0 = construction.contact_inverse(y0, delta, problem)
        C = construction.phi_prime(problem.spline.derivative(y0), problem.L)
        denom_minus = 1.0 - delta * C * kink.second_left
        denom_plus = 1.0 - delta * C * kink.second_right

        uprime = lambda xx: _u_prime_top(xx, problem, "oracle", inner_h, oracle_h_y, construction.DEFAULT_TOL)
        up0 = uprime(x0)
        q_plus = [(uprime(x0 + h) - up0) / h for h in hs]
        q_minus = [(up0 - uprime(x0 - h)) / h for h in hs]

        reports.append(
            KinkReport(
                y0=y0,
                x0=float(x0),
                fpp_minus=kink.second_left,
                fpp_plus=kink.second_right,
                upp_minus_pred=kink.second_left / denom_minus,
                upp_plus_pred=kink.second_right / denom_plus,
                upp_minus_fd=richardson_extrapolate(hs, q_minus),
                upp_plus_fd=richardson_extrapolate(hs, q_plus),
                denom_minus=denom_minus,
                denom_plus=denom_plus,
                midseg_jumps=_midsegment_jumps(y0, float(x0), problem, hs),
            )
        )
    return reports


def monotone_map_check(problem: AdmissibleProblem, samples: int = 201) -> MonotoneWitness:
    """Verify t -> t / (1 - delta*C*t) is strictly increasing on
    [-Lip(f'), Lip(f')] for C = phi'(f'(y0)) at every kink.

    Returns the first violating pair if one exists (it cannot, for admitted
    problems: the denominator stays above 1 - q > 0)."""
    if samples < 2:
        raise ValidationError(f"need samples >= 2, got {samples!r}")
    lip = problem.lip_fprime
    delta = problem.delta
    for kink in problem.spline.kinks():
        if lip == 0.0:
            break
        C = construction.phi_prime(problem.spline.derivative(kink.y0), problem.L)
        step = 2.0 * lip / (samples - 1)
        prev_t = -lip
        prev_v = curvature_transfer(prev_t, delta, C)
        for k in range(1, samples):
            t = -lip + k * step
            v = curvature_transfer(t, delta, C)
            if not v > prev_v:
                return MonotoneWitness(ok=False, kink_y0=kink.y0, pair=(prev_t, t))
            prev_t, prev_v = t, v
    return MonotoneWitness(ok=True)


def residual_infinity_laplacian(
    point: tuple[float, float],
    problem: AdmissibleProblem,
    h: float,
) -> float:
    """Central-difference u_x^2 u_xx + 2 u_x u_d u_xd + u_d^2 u_dd at point.

    Off the contact segments of curvature jumps the residual decays at
    O(h^2) once h is below the distance to the nearest such segment.
    """
    if h <= 0:
        raise DomainError(f"need h > 0, got {h!r}")
    x, d = point
    delta = problem.delta
    if not (d - 2.0 * h > 0.0 and delta - d > 2.0 * h):
        raise DomainError(
            f"point (x={x!r}, d={d!r}) too close to the strip edges for step h={h!r}"
        )
    u = lambda xx, dd: construction.u_interior(xx, dd, problem)
    u0 = u(x, d)
    uxp, uxm = u(x + h, d), u(x - h, d)
    udp, udm = u(x, d + h), u(x, d - h)
    upp, upm = u(x + h, d + h), u(x + h, d - h)
    ump, umm = u(x - h, d + h), u(x - h, d - h)
    ux = (uxp - uxm) / (2.0 * h)
    ud = (udp - udm) / (2.0 * h)
    uxx = (uxp - 2.0 * u0 + uxm) / (h * h)
    udd = (udp - 2.0 * u0 + udm) / (h * h)
    uxd = (upp - upm - ump + umm) / (4.0 * h * h)
    return ux * ux * uxx + 2.0 * ux * ud * uxd + ud * ud * udd


# -- exports -------------------------------------------------------------


def kink_reports_to_csv(reports: list[KinkReport]) -> str:
    lines = [",".join(KINK_REPORT_COLUMNS)]
    for r in reports:
        lines.append(",".join(fmt_real(getattr(r, c)) for c in KINK_REPORT_COLUMNS))
    return "\n".join(lines) + "\n"


def kink_reports_to_structured(reports: list[KinkReport]) -> str:
    """Single JSON document mirroring the CSV columns at the same precision."""
    rows = ",".join(
        "{%s}" % ",".join(f'"{c}":{fmt_real(getattr(r, c))}' for c in KINK_REPORT_COLUMNS)
        for r in reports
    )
    return '{"kind":"kink_report","rows":[%s]}\n' % rows

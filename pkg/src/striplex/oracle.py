"""Independent brute-force evaluators used as ground truth.

Two oracles live here, both deliberately ignorant of the fixed-point
construction:

* direct maximization of the cone envelope over a fine boundary grid,
  refined by golden-section search (the objective is strictly concave on
  the admissible search window, so the refinement is rigorous);
* minimal/maximal Lipschitz envelopes of the strip boundary data, whose
  coincidence pins u from both sides.

Grid fills and exports for both provenances are also defined here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from . import construction
from .errors import ConfigurationError, DomainError, ValidationError
from .ioutil import fmt_real
from .params import AdmissibleProblem

PROVENANCES = ("closed_form", "brute_force", "mw_min", "mw_max")

_INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class GridSpec:
    """Sampling window on the strip plus oracle step sizes."""

    xmin: float
    xmax: float
    nx: int
    nd: int
    h_y: float
    margin: float = 0.0

    def __post_init__(self):
        if not self.xmin < self.xmax:
            raise ValidationError(f"need xmin < xmax, got {self.xmin!r}, {self.xmax!r}")
        if self.nx < 2 or self.nd < 2:
            raise ValidationError(f"need nx, nd >= 2, got nx={self.nx!r}, nd={self.nd!r}")
        if not self.h_y > 0:
            raise ValidationError(f"need h_y > 0, got {self.h_y!r}")
        if self.margin < 0:
            raise ValidationError(f"need margin >= 0, got {self.margin!r}")

    def xs(self) -> np.ndarray:
        return np.linspace(self.xmin, self.xmax, self.nx)

    def heights(self, delta: float, provenance: str = "closed_form") -> np.ndarray:
        """Sample heights, top row at delta.  Envelope provenances shift
        strictly inside the strip (their evaluator is undefined on the
        boundary lines)."""
        if provenance in ("mw_min", "mw_max"):
            return delta * (np.arange(1, self.nd + 1) / (self.nd + 1))
        # divide first so the top height is exactly delta
        return delta * (np.arange(1, self.nd + 1) / self.nd)


@dataclass(frozen=True)
class FieldGrid:
    """u sampled over a GridSpec window; values[i, j] pairs xs[i] with ds[j]."""

    spec: GridSpec
    provenance: str
    xs: np.ndarray
    ds: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        if self.values.shape != (self.spec.nx, self.spec.nd):
            raise ValidationError(
                f"values shape {self.values.shape} != (nx, nd) = ({self.spec.nx}, {self.spec.nd})"
            )
        if not np.all(np.isfinite(self.values)):
            raise ValidationError("grid contains non-finite values")


class BruteResult(NamedTuple):
    value: float
    argmax_y: float
    bound: float


def golden_section_max(
    fn: Callable[[float], float],
    lo: float,
    hi: float,
    tol: float = 1e-13,
    max_iter: int = 90,
) -> tuple[float, float]:
    """Maximize a unimodal fn on [lo, hi]; returns (arg, value).

    Tracks the best evaluation seen, so the result never falls below any
    probed point even if unimodality is marginal at the bracket edges.
    """
    a, b = float(lo), float(hi)
    c = b - _INV_PHI * (b - a)
    d = a + _INV_PHI * (b - a)
    fc, fd = fn(c), fn(d)
    best_y, best_v = (c, fc) if fc >= fd else (d, fd)
    for _ in range(max_iter):
        if b - a <= tol:
            break
        if fc >= fd:
            b, d, fd = d, c, fc
            c = b - _INV_PHI * (b - a)
            fc = fn(c)
            if fc > best_v:
                best_y, best_v = c, fc
        else:
            a, c, fc = c, d, fd
            d = a + _INV_PHI * (b - a)
            fd = fn(d)
            if fd > best_v:
                best_y, best_v = d, fd
    mid = 0.5 * (a + b)
    fmid = fn(mid)
    if fmid > best_v:
        best_y, best_v = mid, fmid
    return best_y, best_v


def brute_force_u(
    point: tuple[float, float],
    problem: AdmissibleProblem,
    h_y: float,
    window_factor: float = 1.0,
) -> BruteResult:
    """Maximize f(y) - L*sqrt(d^2 + (x-y)^2) by grid scan plus refinement.

    The scan covers the window |y - x| <= window_factor*D*d + h_y in steps
    of h_y; golden-section refinement then runs on the bracket around the
    best grid point.  bound is the worst-case scan error before refinement:
    the objective is (L_f + L)-Lipschitz in y.
    """
    x, d = point
    if not (0.0 < d <= problem.delta):
        raise DomainError(f"height must lie in (0, delta], got {d!r}")
    if h_y <= 0:
        raise DomainError(f"need h_y > 0, got {h_y!r}")
    spline = problem.spline
    L = problem.L
    radius = window_factor * problem.D * d + h_y
    n = int(math.ceil(radius / h_y))
    ys = x + h_y * np.arange(-n, n + 1)
    vals = spline.value(ys) - L * np.sqrt(d * d + (x - ys) ** 2)
    k = int(np.argmax(vals))

    def objective(y: float) -> float:
        return spline.value(y) - L * math.hypot(d, x - y)

    lo = ys[max(k - 1, 0)]
    hi = ys[min(k + 1, len(ys) - 1)]
    y_star, v_star = golden_section_max(objective, lo, hi)
    if v_star < vals[k]:
        y_star, v_star = float(ys[k]), float(vals[k])
    bound = 0.5 * (problem.L_f + L) * h_y
    return BruteResult(value=float(v_star), argmax_y=float(y_star), bound=bound)


def mw_envelopes(
    point: tuple[float, float],
    problem: AdmissibleProblem,
    spec: GridSpec,
) -> tuple[float, float]:
    """(low, high) Lipschitz envelopes of the strip boundary data at point.

    low  = max over sampled boundary points q of g(q) - L*|point - q|,
    high = min over sampled boundary points q of g(q) + L*|point - q|,
    with g = f on the bottom line and the closed-form u on the top line.
    Sampling and truncation only widen the bracket, so low <= u <= high
    holds pointwise; the bracket tightens at rate (L_f + L) * h_y.
    """
    if spec.margin < 10.0 * problem.D * problem.delta:
        raise ConfigurationError(
            f"margin {spec.margin!r} too small: envelope tests need margin >= 10*D*delta = "
            f"{10.0 * problem.D * problem.delta!r}"
        )
    x, d = point
    delta = problem.delta
    if not (0.0 < d < delta):
        raise DomainError(f"point must lie strictly inside the strip, got d={d!r}")
    if not (spec.xmin + spec.margin <= x <= spec.xmax - spec.margin):
        raise DomainError(
            f"point x={x!r} outside the margin-trimmed window "
            f"[{spec.xmin + spec.margin!r}, {spec.xmax - spec.margin!r}]"
        )
    L = problem.L
    h = spec.h_y

    ys0 = np.arange(spec.xmin, spec.xmax + 0.5 * h, h)
    g0 = problem.spline.value(ys0)
    dist0 = np.hypot(x - ys0, d)

    # top line sampled through the contact parameterization; dx/dy is within
    # [1-q, 1+q] of 1, so a y-step of h/(1+q) keeps the x-spacing below h
    ystep = h / (1.0 + problem.contraction_q)
    pad = problem.D * delta + h
    yt = np.arange(spec.xmin - pad, spec.xmax + pad + 0.5 * ystep, ystep)
    xt = construction.contact_inverse(yt, delta, problem)
    keep = (xt >= spec.xmin) & (xt <= spec.xmax)
    xt = xt[keep]
    gt = construction.u_at_contact(yt[keep], problem)
    distt = np.hypot(x - xt, delta - d)

    low = max(float(np.max(g0 - L * dist0)), float(np.max(gt - L * distt)))
    high = min(float(np.min(g0 + L * dist0)), float(np.min(gt + L * distt)))
    return low, high


def grid_eval(
    problem: AdmissibleProblem,
    spec: GridSpec,
    provenance: str = "closed_form",
) -> FieldGrid:
    """Fill the grid with the selected evaluator; deterministic."""
    if provenance not in PROVENANCES:
        raise ConfigurationError(f"unknown provenance {provenance!r}; expected one of {PROVENANCES}")
    if provenance in ("mw_min", "mw_max"):
        # the outer margin band anchors the envelope cones; evaluation
        # points live on the trimmed window
        if spec.xmin + spec.margin >= spec.xmax - spec.margin:
            raise ConfigurationError(
                f"window [{spec.xmin!r}, {spec.xmax!r}] too narrow for margin {spec.margin!r}"
            )
        xs = np.linspace(spec.xmin + spec.margin, spec.xmax - spec.margin, spec.nx)
    else:
        xs = spec.xs()
    ds = spec.heights(problem.delta, provenance)
    values = np.empty((spec.nx, spec.nd))
    for i, x in enumerate(xs):
        for j, d in enumerate(ds):
            try:
                if provenance == "closed_form":
                    values[i, j] = construction.u_interior(float(x), float(d), problem)
                elif provenance == "brute_force":
                    values[i, j] = brute_force_u((float(x), float(d)), problem, spec.h_y).value
                else:
                    low, high = mw_envelopes((float(x), float(d)), problem, spec)
                    values[i, j] = low if provenance == "mw_min" else high
            except Exception as exc:
                raise type(exc)(f"at grid point (x={float(x)!r}, d={float(d)!r}): {exc}") from exc
    return FieldGrid(spec=spec, provenance=provenance, xs=xs, ds=ds, values=values)


# -- exports -------------------------------------------------------------


def grid_to_csv(grid: FieldGrid) -> str:
    lines = ["x,d,u,provenance"]
    for i, x in enumerate(grid.xs):
        for j, d in enumerate(grid.ds):
            lines.append(f"{fmt_real(x)},{fmt_real(d)},{fmt_real(grid.values[i, j])},{grid.provenance}")
    return "\n".join(lines) + "\n"


def grid_to_structured(grid: FieldGrid) -> str:
    """Single JSON document mirroring the CSV fields at the same precision."""
    rows = ",".join(
        '{"x":%s,"d":%s,"u":%s}' % (fmt_real(x), fmt_real(d), fmt_real(grid.values[i, j]))
        for i, x in enumerate(grid.xs)
        for j, d in enumerate(grid.ds)
    )
    return (
        '{"kind":"field_grid","provenance":"%s","xmin":%s,"xmax":%s,"nx":%d,"nd":%d,"rows":[%s]}\n'
        % (grid.provenance, fmt_real(grid.spec.xmin), fmt_real(grid.spec.xmax), grid.spec.nx, grid.spec.nd, rows)
    )

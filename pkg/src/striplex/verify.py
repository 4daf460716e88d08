"""Acceptance checks wiring the construction against its oracles.

Each check returns a CheckResult with a PASS/FAIL/SKIP status and the
measured quantities, so the CLI can print one line per check and the test
suite can assert on the same objects.  All randomness is seeded; identical
configuration gives identical results.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import analysis, construction, oracle
from .boundary import BoundarySpline
from .oracle import GridSpec
from .params import AdmissibleProblem, ProblemParams, admit

# evaluator used for the closed-form side of the oracle-equivalence check;
# replaceable by tests as a negative control
UEvaluator = Callable[[float, float], float]


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str  # PASS | FAIL | SKIP
    detail: str

    @property
    def failed(self) -> bool:
        return self.status == "FAIL"


@dataclass(frozen=True)
class VerifyConfig:
    """Scale knobs for the acceptance run; defaults match the desk scale."""

    grid: GridSpec | None = None
    tol: float = 1e-12
    max_iter: int = 200
    n_random: int = 100
    n_pairs: int = 10_000
    n_envelope_points: int = 50
    envelope_h: float = 1e-4
    n_segments: int = 20
    residual_hs: tuple[float, ...] | None = None  # default (delta/10, /20, /40)
    residual_probes: tuple[tuple[float, float], ...] | None = None
    seed: int = 20260810


def default_grid_spec(problem: AdmissibleProblem) -> GridSpec:
    return GridSpec(
        xmin=-2.0,
        xmax=2.0,
        nx=257,
        nd=17,
        h_y=1e-6,
        margin=10.0 * problem.D * problem.delta,
    )


def _status(ok: bool) -> str:
    return "PASS" if ok else "FAIL"


# -- individual checks ---------------------------------------------------


def check_oracle_equivalence(
    problem: AdmissibleProblem,
    spec: GridSpec,
    u_closed: UEvaluator,
) -> tuple[CheckResult, dict]:
    """Closed form vs brute force over the full grid; 1e-9 agreement and a
    60 s single-threaded budget.  Returns the brute results for reuse."""
    xs = spec.xs()
    ds = spec.heights(problem.delta)
    t0 = time.perf_counter()
    closed = np.empty((len(xs), len(ds)))
    brute = np.empty_like(closed)
    argmax = np.empty_like(closed)
    for i, x in enumerate(xs):
        for j, d in enumerate(ds):
            closed[i, j] = u_closed(float(x), float(d))
            res = oracle.brute_force_u((float(x), float(d)), problem, spec.h_y)
            brute[i, j] = res.value
            argmax[i, j] = res.argmax_y
    elapsed = time.perf_counter() - t0
    max_diff = float(np.max(np.abs(closed - brute)))
    ok = max_diff <= 1e-9 and elapsed < 60.0
    detail = (
        f"max|closed - brute| = {max_diff:.3e} (tol 1e-09) over {len(xs)}x{len(ds)} grid, "
        f"h_y = {spec.h_y:g}, elapsed {elapsed:.1f} s (budget 60 s)"
    )
    cache = {"xs": xs, "ds": ds, "closed": closed, "brute": brute, "argmax": argmax}
    return CheckResult("oracle_equivalence", _status(ok), detail), cache


def check_localization(problem: AdmissibleProblem, spec: GridSpec, cache: dict) -> CheckResult:
    """Every brute-force argmax stays within D*d of x, and doubling the
    search window moves no value by more than 1e-12."""
    xs, ds = cache["xs"], cache["ds"]
    argmax, brute = cache["argmax"], cache["brute"]
    # with D = 0 the scan window is just [x - h_y, x + h_y], so grant the
    # refinement that much play; for D > 0 the containment is strict
    slack = spec.h_y if problem.D == 0.0 else 0.0
    excess = -math.inf
    for j, d in enumerate(ds):
        offs = np.abs(argmax[:, j] - xs)
        excess = max(excess, float(np.max(offs - problem.D * float(d) - slack)))
    max_change = 0.0
    for i, x in enumerate(xs):
        for j, d in enumerate(ds):
            wide = oracle.brute_force_u((float(x), float(d)), problem, spec.h_y, window_factor=2.0)
            max_change = max(max_change, abs(wide.value - brute[i, j]))
    ok = excess <= 0.0 and max_change <= 1e-12
    return CheckResult(
        "localization",
        _status(ok),
        f"max(|argmax - x| - D*d) = {excess:.3e} (<= 0); "
        f"max value change under 2x window = {max_change:.3e} (tol 1e-12)",
    )


def check_fixed_point(problem: AdmissibleProblem, config: VerifyConfig, spec: GridSpec) -> CheckResult:
    """Residuals at tol, contact round trip, iteration counts versus the
    contraction budget."""
    rng = np.random.default_rng(config.seed)
    delta = problem.delta
    worst_residual = 0.0
    worst_iters = 0
    for x in rng.uniform(spec.xmin, spec.xmax, config.n_random):
        for d in (delta, float(rng.uniform(0.1 * delta, delta))):
            sol = construction.solve_contact(float(x), d, problem, tol=config.tol, max_iter=config.max_iter)
            worst_residual = max(worst_residual, sol.residual)
            worst_iters = max(worst_iters, sol.iterations)
    q = problem.contraction_q
    iter_budget = math.ceil(math.log(config.tol) / math.log(q)) + 2 if 0.0 < q < 1.0 else 2
    worst_roundtrip = 0.0
    half = 0.75 * 0.5 * (spec.xmax - spec.xmin)
    mid = 0.5 * (spec.xmin + spec.xmax)
    for y in rng.uniform(mid - half, mid + half, config.n_random):
        x = construction.contact_inverse(float(y), delta, problem)
        sol = construction.solve_contact(x, delta, problem, tol=config.tol, max_iter=config.max_iter)
        worst_roundtrip = max(worst_roundtrip, abs(sol.y - float(y)))
    ok = worst_residual <= config.tol and worst_roundtrip <= 1e-10 and worst_iters <= iter_budget
    return CheckResult(
        "fixed_point_contract",
        _status(ok),
        f"max residual = {worst_residual:.3e} (tol {config.tol:g}); "
        f"max |y(x(y)) - y| = {worst_roundtrip:.3e} (tol 1e-10); "
        f"max iterations = {worst_iters} (budget {iter_budget})",
    )


def check_gradient_identity(problem: AdmissibleProblem, config: VerifyConfig, spec: GridSpec) -> CheckResult:
    """Central difference of u along the top line equals f' at the contact
    point, 1e-3 at step 1e-5."""
    rng = np.random.default_rng(config.seed + 1)
    kinks = [k.y0 for k in problem.spline.kinks()]
    half = 0.75 * 0.5 * (spec.xmax - spec.xmin)
    mid = 0.5 * (spec.xmin + spec.xmax)
    h = 1e-5
    worst = 0.0
    drawn = 0
    while drawn < config.n_random:
        y = float(rng.uniform(mid - half, mid + half))
        if any(abs(y - k) < 1e-4 for k in kinks):
            continue
        drawn += 1
        x = construction.contact_inverse(y, problem.delta, problem)
        fd = analysis.fd_derivative_top(x, problem, h, side="central", order="first")
        worst = max(worst, abs(fd - problem.spline.derivative(y)))
    ok = worst <= 1e-3
    return CheckResult(
        "gradient_identity",
        _status(ok),
        f"max |FD(u)(x(y)) - f'(y)| = {worst:.3e} over {config.n_random} points (tol 1e-03, h = {h:g})",
    )


def check_kink_transfer(problem: AdmissibleProblem) -> CheckResult:
    """Predicted one-sided second derivatives on the top line against the
    Richardson-extrapolated oracle measurement, plus the strict one-sided
    gap that witnesses the lost C^2 regularity."""
    reports = analysis.kink_transfer_report(problem)
    if not reports:
        return CheckResult("kink_transfer", "SKIP", "boundary profile has no curvature kinks")
    worst_rel = 0.0
    ordered = True
    for r in reports:
        for pred, fd in ((r.upp_minus_pred, r.upp_minus_fd), (r.upp_plus_pred, r.upp_plus_fd)):
            worst_rel = max(worst_rel, abs(pred - fd) / max(1.0, abs(pred)))
        if r.fpp_minus < r.fpp_plus:
            ordered = ordered and r.upp_minus_pred < r.upp_plus_pred and r.upp_minus_fd < r.upp_plus_fd
        elif r.fpp_minus > r.fpp_plus:
            ordered = ordered and r.upp_minus_pred > r.upp_plus_pred and r.upp_minus_fd > r.upp_plus_fd
    ok = worst_rel <= 0.01 and ordered
    return CheckResult(
        "kink_transfer",
        _status(ok),
        f"{len(reports)} kink(s); max relative |pred - measured| = {worst_rel:.3e} (tol 1e-02); "
        f"one-sided ordering preserved: {ordered}",
    )


def check_envelope_coincidence(problem: AdmissibleProblem, config: VerifyConfig, spec: GridSpec) -> CheckResult:
    """Min/max Lipschitz envelopes of the boundary data bracket u and pinch
    to it at the sampling rate."""
    rng = np.random.default_rng(config.seed + 2)
    margin = max(spec.margin, 10.0 * problem.D * problem.delta)
    env_spec = GridSpec(
        xmin=spec.xmin, xmax=spec.xmax, nx=2, nd=2, h_y=config.envelope_h, margin=margin
    )
    gap_tol = 5.0 * (problem.L_f + problem.L) * config.envelope_h
    max_gap = 0.0
    bracket_ok = True
    for _ in range(config.n_envelope_points):
        x = float(rng.uniform(spec.xmin + margin, spec.xmax - margin))
        d = float(rng.uniform(0.1 * problem.delta, 0.9 * problem.delta))
        low, high = oracle.mw_envelopes((x, d), problem, env_spec)
        u = construction.u_interior(x, d, problem)
        max_gap = max(max_gap, high - low)
        # 1e-12 float guard on inequalities that hold exactly in real arithmetic
        bracket_ok = bracket_ok and (low <= u + 1e-12) and (u <= high + 1e-12) and (low <= high + 1e-12)
    ok = max_gap <= gap_tol and bracket_ok
    return CheckResult(
        "envelope_coincidence",
        _status(ok),
        f"max(high - low) = {max_gap:.3e} (tol {gap_tol:.3e}) over {config.n_envelope_points} points; "
        f"low <= u <= high: {bracket_ok}",
    )


def check_segment_affinity(problem: AdmissibleProblem, config: VerifyConfig) -> CheckResult:
    """u restricted to a contact segment is affine in the segment parameter
    (slope -L per unit length)."""
    ts = [t for t, _ in problem.spline.knots]
    lo, hi = (ts[0] - 1.0, ts[-1] + 1.0) if len(ts) == 1 else (ts[0] - 0.25, ts[-1] + 0.25)
    worst = 0.0
    for y in np.linspace(lo, hi, config.n_segments):
        for t in np.arange(0.1, 0.95, 0.1):
            (px, pd), line_value = construction.segment_value(float(y), float(t), problem)
            worst = max(worst, abs(construction.u_interior(px, pd, problem) - line_value))
    ok = worst <= 1e-9
    return CheckResult(
        "segment_affinity",
        _status(ok),
        f"max |u(segment(t)) - affine(t)| = {worst:.3e} over {config.n_segments} segments (tol 1e-09)",
    )


def check_lipschitz_quotient(problem: AdmissibleProblem, config: VerifyConfig, spec: GridSpec) -> CheckResult:
    """Empirical sup of |dY/dx| against the contraction-derived bound
    q/(1-q); the variant bound (Lip(f') squared) is reported, not gated."""
    rng = np.random.default_rng(config.seed + 3)
    x1 = rng.uniform(spec.xmin, spec.xmax, config.n_pairs)
    dx = rng.uniform(1e-4, 0.2, config.n_pairs) * rng.choice([-1.0, 1.0], config.n_pairs)
    sup_quot = 0.0
    for a, step in zip(x1, dx):
        ya = construction.solve_contact(float(a), problem.delta, problem, tol=1e-14).Y
        yb = construction.solve_contact(float(a + step), problem.delta, problem, tol=1e-14).Y
        sup_quot = max(sup_quot, abs(yb - ya) / abs(step))
    bound = problem.lip_Y_bound
    variant = problem.lip_Y_bound_variant
    ok = sup_quot <= bound
    variant_holds = sup_quot <= variant
    return CheckResult(
        "lipschitz_quotient",
        _status(ok),
        f"sup |dY/dx| = {sup_quot:.6e} <= q/(1-q) = {bound:.6e} over {config.n_pairs} pairs; "
        f"variant bound {variant:.6e} holds: {variant_holds} (informative)",
    )


def default_residual_probes(
    problem: AdmissibleProblem, h_max: float, count: int = 10
) -> tuple[tuple[float, float], ...]:
    """Probe points at mid-height, clear of every knot's contact segment.

    Prefers points whose contact neighborhood has nonzero boundary
    curvature: where f'' = 0 the residual is identically zero and only
    rounding noise would be measured."""
    spline = problem.spline
    ts = [t for t, _ in spline.knots]
    d = 0.5 * problem.delta
    if len(ts) == 1 or ts[-1] - ts[0] <= 0.2:
        center = ts[0]
        xs = center + 0.3 * (np.arange(count) - 0.5 * (count - 1))
        return tuple((float(x), d) for x in xs)
    # x-positions of the knot segments at the probe height
    lines = [
        t + 0.5 * (construction.contact_inverse(float(t), problem.delta, problem) - t) for t in ts
    ]
    clearance_min = max(5.0 * h_max, 0.02)
    cands = np.linspace(ts[0], ts[-1], 401)
    clear = [x for x in cands if min(abs(x - l) for l in lines) >= clearance_min]

    def curved(x: float) -> bool:
        y = construction.solve_contact(x, d, problem).y
        return spline.second_left(y) != 0.0 or spline.second_right(y) != 0.0

    good = [x for x in clear if curved(float(x))]
    if len(good) < count:
        good = clear if len(clear) >= count else list(cands)
    idx = np.linspace(0, len(good) - 1, count).round().astype(int)
    return tuple((float(good[i]), d) for i in idx)


def check_residual_refinement(problem: AdmissibleProblem, config: VerifyConfig) -> CheckResult:
    """The infinity-Laplacian residual decays by >= 1.5x per step halving at
    probes off the kink segments (or sits at the rounding floor)."""
    hs = config.residual_hs or (problem.delta / 10.0, problem.delta / 20.0, problem.delta / 40.0)
    probes = config.residual_probes or default_residual_probes(problem, max(hs))
    # rounding floor of the second-difference stencil: ~eps/h^2 times the
    # squared gradient scale; below it there is no decay left to measure
    eps = np.finfo(float).eps
    floors = [4096.0 * eps * (1.0 + problem.L**2) / (h * h) for h in hs]
    min_ratio = math.inf
    ok = True
    for point in probes:
        res = [abs(analysis.residual_infinity_laplacian(point, problem, h)) for h in hs]
        for (a, b), floor_b in zip(zip(res, res[1:]), floors[1:]):
            if b <= floor_b:
                continue
            ratio = a / b
            min_ratio = min(min_ratio, ratio)
            ok = ok and ratio >= 1.5
    return CheckResult(
        "residual_refinement",
        _status(ok),
        f"min decay ratio per halving = "
        f"{'n/a (all at floor)' if min_ratio is math.inf else format(min_ratio, '.3f')} "
        f"(need >= 1.5) over {len(probes)} probes, h = {tuple(float(h) for h in hs)}",
    )


def check_degenerate_closed_forms(problem: AdmissibleProblem, config: VerifyConfig) -> CheckResult:
    """Constant and linear boundary data reproduce u = c - L*d and
    u = a*x - d*sqrt(L^2 - a^2) to 1e-12."""
    L = problem.L
    delta = problem.delta
    c, a = 1.0, 1.0
    const_problem = admit(ProblemParams(L=L, delta=delta, spline=BoundarySpline(f0=c, knots=((0.0, 0.0),))))
    linear_problem = admit(ProblemParams(L=L, delta=delta, spline=BoundarySpline(f0=0.0, knots=((0.0, a),))))
    rng = np.random.default_rng(config.seed + 4)
    worst = 0.0
    for _ in range(50):
        x = float(rng.uniform(-3.0, 3.0))
        d = float(rng.uniform(0.05 * delta, delta))
        worst = max(worst, abs(construction.u_interior(x, d, const_problem) - (c - L * d)))
        worst = max(
            worst,
            abs(construction.u_interior(x, d, linear_problem) - (a * x - d * math.sqrt(L * L - a * a))),
        )
    for _ in range(10):
        x = float(rng.uniform(-3.0, 3.0))
        d = float(rng.uniform(0.05 * delta, delta))
        worst = max(worst, abs(oracle.brute_force_u((x, d), const_problem, 1e-6).value - (c - L * d)))
        worst = max(
            worst,
            abs(oracle.brute_force_u((x, d), linear_problem, 1e-6).value - (a * x - d * math.sqrt(L * L - a * a))),
        )
    ok = worst <= 1e-12
    return CheckResult(
        "degenerate_closed_forms",
        _status(ok),
        f"max deviation from the constant/linear closed forms = {worst:.3e} (tol 1e-12)",
    )


# -- suite ---------------------------------------------------------------


def run_acceptance(
    problem: AdmissibleProblem,
    config: VerifyConfig | None = None,
    u_override: UEvaluator | None = None,
) -> list[CheckResult]:
    """Run all checks in criterion order, isolating failures per check.

    u_override replaces the closed-form evaluator inside the
    oracle-equivalence check (negative-control hook for the test harness).
    """
    config = config or VerifyConfig()
    spec = config.grid or default_grid_spec(problem)
    u_closed = u_override or (lambda x, d: construction.u_interior(x, d, problem, tol=config.tol))
    results: list[CheckResult] = []

    def guarded(name: str, fn):
        try:
            return fn()
        except Exception as exc:  # keep the suite running; report the check as failed
            return CheckResult(name, "FAIL", f"error: {exc}")

    cache: dict = {}

    def _oracle_eq():
        res, c = check_oracle_equivalence(problem, spec, u_closed)
        cache.update(c)
        return res

    results.append(guarded("oracle_equivalence", _oracle_eq))
    if cache:
        results.append(guarded("localization", lambda: check_localization(problem, spec, cache)))
    else:
        results.append(CheckResult("localization", "SKIP", "no oracle grid available"))
    results.append(guarded("fixed_point_contract", lambda: check_fixed_point(problem, config, spec)))
    results.append(guarded("gradient_identity", lambda: check_gradient_identity(problem, config, spec)))
    results.append(guarded("kink_transfer", lambda: check_kink_transfer(problem)))
    results.append(guarded("envelope_coincidence", lambda: check_envelope_coincidence(problem, config, spec)))
    results.append(guarded("segment_affinity", lambda: check_segment_affinity(problem, config)))
    results.append(guarded("lipschitz_quotient", lambda: check_lipschitz_quotient(problem, config, spec)))
    results.append(guarded("residual_refinement", lambda: check_residual_refinement(problem, config)))
    results.append(guarded("degenerate_closed_forms", lambda: check_degenerate_closed_forms(problem, config)))
    return results

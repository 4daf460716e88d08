"""Piecewise-quadratic boundary data with exact Lipschitz constants.

The boundary profile f is stored through its slope: f' is the piecewise-linear
interpolant of knots (t_i, s_i), held constant at s_first / s_last outside the
knot range.  f is the exact antiderivative with f(t_first) = f0.  Values,
slopes, one-sided curvatures, and both Lipschitz constants are therefore
closed-form quantities, never numerical estimates.

Text format (one directive per line, '#' starts a comment, blanks ignored)::

    f0 <value>
    knot <t> <s>        # abscissas strictly increasing

Serialization emits the same directives with round-trip precision.
"""

from __future__ import annotations

import math
from bisect import bisect_right
from dataclasses import dataclass, field
from typing import NamedTuple

import numpy as np

from .errors import DomainError, ParseError, ValidationError

EVAL_KINDS = ("value", "derivative", "second_left", "second_right")


class Kink(NamedTuple):
    """Interior knot where the slope of f' jumps: the one-sided curvatures
    of f disagree there."""

    y0: float
    second_left: float
    second_right: float


@dataclass(frozen=True)
class BoundarySpline:
    """C^{1,1} profile defined by f0 = f(t_first) and the knots of f'.

    Between consecutive knots f' is linear and f is quadratic; outside the
    knot range f' is constant.  Immutable after construction; evaluation is
    pure and safe for concurrent use.
    """

    f0: float
    knots: tuple[tuple[float, float], ...]
    # derived, filled by __post_init__
    _ts: tuple[float, ...] = field(init=False, repr=False, compare=False)
    _ss: tuple[float, ...] = field(init=False, repr=False, compare=False)
    _seg: tuple[float, ...] = field(init=False, repr=False, compare=False)
    _vals: tuple[float, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.knots) < 1:
            raise ValidationError("spline needs at least one knot")
        if not math.isfinite(self.f0):
            raise ValidationError(f"f0 must be finite, got {self.f0!r}")
        ts = [float(t) for t, _ in self.knots]
        ss = [float(s) for _, s in self.knots]
        for i, (t, s) in enumerate(zip(ts, ss)):
            if not (math.isfinite(t) and math.isfinite(s)):
                raise ValidationError(f"knot {i}: non-finite entry ({t!r}, {s!r})")
        for i in range(len(ts) - 1):
            if not ts[i] < ts[i + 1]:
                raise ValidationError(
                    "knot abscissas must be strictly increasing, got "
                    f"t[{i}]={ts[i]!r} followed by t[{i + 1}]={ts[i + 1]!r}"
                )
        object.__setattr__(self, "knots", tuple(zip(ts, ss)))
        # slope of f' on each interior segment, and exact knot values of f
        # (trapezoid rule is exact for a piecewise-linear integrand)
        seg = [
            (ss[i + 1] - ss[i]) / (ts[i + 1] - ts[i]) for i in range(len(ts) - 1)
        ]
        vals = [self.f0]
        for i in range(len(ts) - 1):
            vals.append(vals[-1] + 0.5 * (ss[i] + ss[i + 1]) * (ts[i + 1] - ts[i]))
        object.__setattr__(self, "_ts", tuple(ts))
        object.__setattr__(self, "_ss", tuple(ss))
        object.__setattr__(self, "_seg", tuple(seg))
        object.__setattr__(self, "_vals", tuple(vals))

    # -- evaluation ----------------------------------------------------

    def value(self, y):
        """f(y); accepts a float or an ndarray."""
        ts, ss, vals = self._ts, self._ss, self._vals
        if isinstance(y, (float, int)):
            y = float(y)
            if y <= ts[0]:
                return vals[0] + ss[0] * (y - ts[0])
            if y >= ts[-1]:
                return vals[-1] + ss[-1] * (y - ts[-1])
            i = bisect_right(ts, y) - 1
            dy = y - ts[i]
            return vals[i] + ss[i] * dy + 0.5 * self._seg[i] * dy * dy
        return self._value_vec(np.asarray(y, dtype=float))

    def derivative(self, y):
        """f'(y); accepts a float or an ndarray."""
        ts, ss = self._ts, self._ss
        if isinstance(y, (float, int)):
            y = float(y)
            if y <= ts[0]:
                return ss[0]
            if y >= ts[-1]:
                return ss[-1]
            i = bisect_right(ts, y) - 1
            return ss[i] + self._seg[i] * (y - ts[i])
        return self._derivative_vec(np.asarray(y, dtype=float))

    def second_left(self, y: float) -> float:
        """One-sided curvature of f from the left: slope of f' on the
        interval immediately left of y (0 on the constant tails)."""
        ts = self._ts
        if y <= ts[0] or y > ts[-1] or len(ts) == 1:
            return 0.0
        # bisect on the open side so an exact knot hit picks the incoming segment
        i = bisect_right(ts, y) - 1
        if y == ts[i]:
            i -= 1
        return self._seg[i]

    def second_right(self, y: float) -> float:
        """One-sided curvature of f from the right (0 on the constant tails)."""
        ts = self._ts
        if y < ts[0] or y >= ts[-1] or len(ts) == 1:
            return 0.0
        return self._seg[bisect_right(ts, y) - 1]

    def _value_vec(self, y: np.ndarray) -> np.ndarray:
        ts = np.asarray(self._ts)
        ss = np.asarray(self._ss)
        vals = np.asarray(self._vals)
        if len(ts) == 1:
            return vals[0] + ss[0] * (y - ts[0])
        seg = np.asarray(self._seg)
        i = np.clip(np.searchsorted(ts, y, side="right") - 1, 0, len(ts) - 2)
        dy = y - ts[i]
        inner = vals[i] + ss[i] * dy + 0.5 * seg[i] * dy * dy
        left = vals[0] + ss[0] * (y - ts[0])
        right = vals[-1] + ss[-1] * (y - ts[-1])
        return np.where(y <= ts[0], left, np.where(y >= ts[-1], right, inner))

    def _derivative_vec(self, y: np.ndarray) -> np.ndarray:
        ts = np.asarray(self._ts)
        ss = np.asarray(self._ss)
        if len(ts) == 1:
            return np.full_like(y, ss[0])
        seg = np.asarray(self._seg)
        i = np.clip(np.searchsorted(ts, y, side="right") - 1, 0, len(ts) - 2)
        inner = ss[i] + seg[i] * (y - ts[i])
        return np.where(y <= ts[0], ss[0], np.where(y >= ts[-1], ss[-1], inner))

    # -- exact constants -----------------------------------------------

    @property
    def max_slope(self) -> float:
        """sup |f'| — attained at a knot since f' is piecewise linear with
        constant tails."""
        return max(abs(s) for s in self._ss)

    @property
    def slope_lipschitz(self) -> float:
        """Lip(f') — the largest |slope| of f' over the interior segments
        (the tails contribute 0)."""
        if not self._seg:
            return 0.0
        return max(abs(m) for m in self._seg)

    def kinks(self) -> list[Kink]:
        """Interior knots where the slope of f' changes, in increasing order.

        Knots whose adjacent segments share one slope are not kinks.  The
        junctions with the constant tails are excluded by contract.
        """
        out = []
        for i in range(1, len(self._ts) - 1):
            if self._seg[i - 1] != self._seg[i]:
                out.append(Kink(self._ts[i], self._seg[i - 1], self._seg[i]))
        return out

    def serialize(self) -> str:
        lines = [f"f0 {self.f0!r}"]
        lines.extend(f"knot {t!r} {s!r}" for t, s in self.knots)
        return "\n".join(lines) + "\n"


# -- module-level operation surface -------------------------------------


def parse_spline(text: str) -> BoundarySpline:
    """Parse a spline-spec document into a validated BoundarySpline."""
    f0: float | None = None
    knots: list[tuple[float, float]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "f0":
            if f0 is not None:
                raise ParseError(f"line {lineno}: duplicate f0 directive")
            if knots:
                raise ParseError(f"line {lineno}: f0 must precede knot lines")
            if len(parts) != 2:
                raise ParseError(f"line {lineno}: expected 'f0 <value>'")
            f0 = _parse_real(parts[1], lineno)
        elif parts[0] == "knot":
            if f0 is None:
                raise ParseError(f"line {lineno}: first directive must be 'f0 <value>'")
            if len(parts) != 3:
                raise ParseError(f"line {lineno}: expected 'knot <t> <s>'")
            knots.append((_parse_real(parts[1], lineno), _parse_real(parts[2], lineno)))
        else:
            raise ParseError(f"line {lineno}: unknown directive {parts[0]!r}")
    if f0 is None:
        raise ParseError("missing required 'f0 <value>' line")
    if not knots:
        raise ValidationError("spline needs at least one knot")
    return BoundarySpline(f0=f0, knots=tuple(knots))


def _parse_real(token: str, lineno: int) -> float:
    try:
        v = float(token)
    except ValueError:
        raise ParseError(f"line {lineno}: not a real number: {token!r}") from None
    if not math.isfinite(v):
        raise ValidationError(f"line {lineno}: non-finite value {token!r}")
    return v


def serialize_spline(spline: BoundarySpline) -> str:
    return spline.serialize()


def eval_boundary(spline: BoundarySpline, y: float, kind: str) -> float:
    """Evaluate f at y: kind is one of 'value', 'derivative', 'second_left',
    'second_right'."""
    if not math.isfinite(y):
        raise DomainError(f"boundary evaluation needs finite y, got {y!r}")
    if kind == "value":
        return spline.value(float(y))
    if kind == "derivative":
        return spline.derivative(float(y))
    if kind == "second_left":
        return spline.second_left(float(y))
    if kind == "second_right":
        return spline.second_right(float(y))
    raise ValueError(f"unknown evaluation kind {kind!r}; expected one of {EVAL_KINDS}")


def lipschitz_constants(spline: BoundarySpline) -> tuple[float, float]:
    """(sup |f'|, Lip(f')) — both exact."""
    return spline.max_slope, spline.slope_lipschitz


def kinks(spline: BoundarySpline) -> list[Kink]:
    return spline.kinks()

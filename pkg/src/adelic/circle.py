"""Circle-valued maps on the line: lifts, certified periods, winding numbers.

A lift is built by subdividing until adjacent samples are less than a
quarter turn apart (chord below sqrt(2)), then continuing the phase branch
outward from the base point.  Fractional parts of lift values are re-anchored
to the map's own phase at every node, so round-trip error does not
accumulate along the grid.

Period certificates are sampled statements, not proofs: ``approximate_period``
reports the smallest shift length whose multiples move every probed point by
less than the tolerance.  Winding numbers are recovered from a single
certified period plus a defect scan against the 1/32 budget.

Map evaluation must be a pure function of its argument; with that, every
operation here is thread-safe (lift construction is internally sequential,
but independent lifts may run concurrently).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .errors import (
    DomainError,
    HomotopyError,
    LiftError,
    PeriodCertificateError,
    ProximityError,
    TailError,
    WindingError,
)

TWO_PI = 2.0 * math.pi

#: Adjacent grid samples must stay strictly below this chord distance
#: (a quarter turn) before branch continuation is trusted.
MAX_STEP_CHORD = math.sqrt(2.0)

#: Observed period defects above 1/32 (plus float slack) invalidate a winding.
DEFECT_BUDGET = 1.0 / 32.0
DEFECT_SLACK = 1e-6

UNIT_TOL = 1e-9
_MAX_REFINEMENTS = 20


def cis(turns: float) -> complex:
    """exp(2 pi i turns)."""
    return cmath.exp(2j * math.pi * turns)


def phase_turns(z: complex) -> float:
    """Principal argument in turns, in (-1/2, 1/2]."""
    return cmath.phase(z) / TWO_PI


@dataclass(frozen=True)
class CircleMap:
    """An evaluable map from the reals to the unit circle.

    ``lipschitz`` is an optional chord modulus-of-continuity hint used to
    seed lifting grids; ``domain_radius`` bounds where evaluations are
    trusted.
    """

    eval: Callable[[float], complex]
    domain_radius: float = 1e12
    lipschitz: float | None = None
    label: str = ""

    def __call__(self, x: float) -> complex:
        if abs(x) > self.domain_radius:
            raise DomainError(
                f"|{x}| exceeds the trusted radius {self.domain_radius} "
                f"of map {self.label or self.eval!r}"
            )
        z = self.eval(x)
        if abs(abs(z) - 1.0) > UNIT_TOL:
            raise DomainError(
                f"map {self.label or self.eval!r} is not unit modulus at {x}: {z!r}"
            )
        return z

    def product(self, other: "CircleMap", label: str = "") -> "CircleMap":
        lip = None
        if self.lipschitz is not None and other.lipschitz is not None:
            lip = self.lipschitz + other.lipschitz
        return CircleMap(
            eval=lambda x: self.eval(x) * other.eval(x),
            domain_radius=min(self.domain_radius, other.domain_radius),
            lipschitz=lip,
            label=label or f"({self.label})*({other.label})",
        )


@dataclass(frozen=True)
class ProbePlan:
    """Where to sample invariance checks, and how many shifts to try."""

    points: tuple[float, ...]
    max_shift: int = 16

    @classmethod
    def default(cls, radius: float, half_width: float = 24.0, count: int = 33):
        half = min(half_width, radius / 2.0)
        step = 2.0 * half / (count - 1)
        # mild deterministic jitter so probes do not alias a sampled grid
        pts = tuple(
            -half + i * step + 0.37 * step * math.sin(3.7 * i) for i in range(count)
        )
        return cls(points=pts)


class RealLift:
    """A continuous real lift sampled on a grid, linear between nodes."""

    __slots__ = ("xs", "values", "base_point", "base_value")

    def __init__(self, xs, values, base_point: float, base_value: float):
        self.xs = np.asarray(xs, dtype=float)
        self.values = np.asarray(values, dtype=float)
        self.base_point = float(base_point)
        self.base_value = float(base_value)

    def __call__(self, x: float) -> float:
        lo, hi = self.xs[0], self.xs[-1]
        if x < lo - 1e-9 or x > hi + 1e-9:
            raise DomainError(f"{x} outside the lifted interval [{lo}, {hi}]")
        return float(np.interp(x, self.xs, self.values))

    def node_count(self) -> int:
        return len(self.xs)

    def circle_values(self) -> np.ndarray:
        """The lifted map recovered at the nodes."""
        return np.exp(2j * math.pi * self.values)

    def to_csv(self, fh) -> None:
        fh.write("x,lift\n")
        for x, v in zip(self.xs, self.values):
            fh.write(f"{x:.12g},{v:.12g}\n")


def _initial_step(f: CircleMap, step_hint: float) -> float:
    h = step_hint
    if f.lipschitz:
        h = min(h, 1.2 / f.lipschitz)
    return max(h, 1e-9)


def _continue_branch(xs: Sequence[float], zs: Sequence[complex], base_index: int,
                     base_value: float) -> np.ndarray:
    """Phase continuation outward from the base node.

    Each node's fractional part is re-anchored to the map's own phase; only
    the integer branch offset is carried, so error does not accumulate.
    """
    thetas = [phase_turns(z) for z in zs]
    vals = np.empty(len(xs))
    vals[base_index] = base_value
    for i in range(base_index + 1, len(xs)):
        delta = phase_turns(zs[i] * zs[i - 1].conjugate())
        target = vals[i - 1] + delta
        vals[i] = thetas[i] + round(target - thetas[i])
    for i in range(base_index - 1, -1, -1):
        delta = phase_turns(zs[i] * zs[i + 1].conjugate())
        target = vals[i + 1] + delta
        vals[i] = thetas[i] + round(target - thetas[i])
    return vals


def _lift_on_grid(f: CircleMap, xs: Sequence[float], base_index: int,
                  base_value: float) -> RealLift:
    zs = [f(x) for x in xs]
    chords = [abs(zs[i + 1] - zs[i]) for i in range(len(zs) - 1)]
    if chords and max(chords) >= MAX_STEP_CHORD:
        raise LiftError("adjacent samples exceed a quarter turn")
    vals = _continue_branch(xs, zs, base_index, base_value)
    return RealLift(xs, vals, xs[base_index], base_value)


def lift(
    f: CircleMap,
    base_point: float,
    base_value: float,
    interval: tuple[float, float],
    step_hint: float = 0.25,
) -> RealLift:
    """Continuous lift of f over the interval, pinned at the base point.

    The base value must project onto f(base_point); the step is halved (up
    to 20 times) until all adjacent samples are under a quarter turn apart.
    """
    a, b = float(interval[0]), float(interval[1])
    if not a <= base_point <= b:
        raise DomainError(f"base point {base_point} outside [{a}, {b}]")
    if abs(cis(base_value) - f(base_point)) > 1e-9:
        raise DomainError(
            f"base value {base_value} does not project onto f({base_point})"
        )
    h = _initial_step(f, step_hint)
    for _ in range(_MAX_REFINEMENTS + 1):
        n_left = max(0, math.ceil((base_point - a) / h - 1e-12))
        n_right = max(0, math.ceil((b - base_point) / h - 1e-12))
        left = np.linspace(a, base_point, n_left + 1)
        right = np.linspace(base_point, b, n_right + 1)
        xs = np.concatenate([left, right[1:]]) if n_right else left
        try:
            return _lift_on_grid(f, xs, n_left, base_value)
        except LiftError:
            h /= 2.0
    raise LiftError(
        f"no step below {step_hint} resolves branches on [{a}, {b}] "
        f"after {_MAX_REFINEMENTS} refinements"
    )


def close_lift(f_lift: RealLift, g: CircleMap) -> RealLift:
    """The unique lift of g staying within a quarter of its distance to f.

    Works on f's grid: each node of the new lift is the old one plus the
    principal argument of g/f, which keeps the two lifts within
    (sup |g - f|)/4 of each other whenever that sup is below 1/8.
    """
    xs = f_lift.xs
    f_vals = f_lift.circle_values()
    g_vals = [g(x) for x in xs]
    sup = max(abs(gz - fz) for gz, fz in zip(g_vals, f_vals))
    if sup >= 0.125:
        raise ProximityError(
            f"sampled sup distance {sup:.4g} is not below 1/8"
        )
    vals = f_lift.values + np.array(
        [phase_turns(gz * fz.conjugate()) for gz, fz in zip(g_vals, f_vals)]
    )
    if len(vals) > 1 and np.max(np.abs(np.diff(vals))) >= 0.5:
        raise LiftError("close lift lost branch consistency")
    base_index = int(np.argmin(np.abs(xs - f_lift.base_point)))
    return RealLift(xs, vals, f_lift.base_point, float(vals[base_index]))


def approximate_period(
    f: CircleMap,
    epsilon: float = 0.125,
    n_max: int = 720,
    probe: ProbePlan | None = None,
) -> int:
    """Smallest N whose multiples move every probed point by less than epsilon.

    A sampled certificate, not a proof: only the probe points and shift
    multiples up to ``probe.max_shift`` (staying inside the trusted domain)
    are checked.  Shift lengths with no testable probe pair are skipped.
    """
    if not 0.0 < epsilon <= 0.125:
        raise DomainError(f"epsilon must lie in (0, 1/8], got {epsilon}")
    if n_max < 1:
        raise DomainError("n_max must be positive")
    if probe is None:
        probe = ProbePlan.default(f.domain_radius)
    radius = f.domain_radius
    any_tested = False
    for n in range(1, n_max + 1):
        tested = False
        ok = True
        for x in probe.points:
            if abs(x) > radius:
                continue
            fx = None
            for k in range(1, probe.max_shift + 1):
                for shift in (k * n, -k * n):
                    if abs(x + shift) > radius:
                        continue
                    if fx is None:
                        fx = f(x)
                    tested = True
                    if abs(f(x + shift) - fx) >= epsilon:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
        if tested:
            any_tested = True
            if ok:
                return n
    if not any_tested:
        raise PeriodCertificateError(
            "probe plan has no testable shift inside the trusted domain"
        )
    raise PeriodCertificateError(
        f"no shift length up to {n_max} passes the sampled {epsilon}-invariance check"
    )


@dataclass(frozen=True)
class WindingNumber:
    """A certified rational winding: value n1/N with the observed defect."""

    value: Fraction
    period_used: int
    lift_defect: float
    probe: ProbePlan = field(repr=False, default=ProbePlan(points=()))

    def numerator_at_period(self) -> int:
        return int(self.value * self.period_used)

    def __str__(self) -> str:
        n1 = self.numerator_at_period()
        return f"{n1}/{self.period_used} (defect={self.lift_defect:.3g})"


def winding_number(
    f: CircleMap,
    epsilon: float = 0.125,
    n_max: int = 720,
    probe: ProbePlan | None = None,
    step_hint: float = 0.25,
) -> WindingNumber:
    """Turns advanced per unit length, as an exact rational n1/N.

    N is the certified approximate period, n1 the integer branch offset of
    the lift across one period; the defect scan checks that every in-grid
    period shift stays within the 1/32 budget, which is what makes the
    single-period reading trustworthy.
    """
    if probe is None:
        probe = ProbePlan.default(f.domain_radius)
    n = approximate_period(f, epsilon, n_max, probe)
    h0 = _initial_step(f, step_hint)
    m = max(4, math.ceil(n / h0))
    for _ in range(_MAX_REFINEMENTS + 1):
        xs = np.linspace(-2.0 * n, 2.0 * n, 4 * m + 1)
        try:
            lf = _lift_on_grid(f, xs, 2 * m, phase_turns(f(0.0)))
        except LiftError:
            m *= 2
            continue
        break
    else:
        raise LiftError("winding lift failed to refine")
    vals = lf.values
    n1 = round(float(vals[3 * m] - vals[2 * m]))  # node at N minus node at 0
    shifted = vals[m:] - vals[:-m]  # all in-grid x -> x + N pairs
    defect = float(np.max(np.abs(shifted - n1)))
    if defect > DEFECT_BUDGET + DEFECT_SLACK:
        raise WindingError(
            f"period defect {defect:.4g} exceeds the 1/32 budget; "
            f"shift length {n} does not behave like a period"
        )
    return WindingNumber(Fraction(n1, n), n, defect, probe)


def compact_winding(f: CircleMap, tail_radius: float) -> int:
    """Integer winding of a map with equal limits at both infinities.

    Tails are certified by sampling beyond the radius; the lift difference
    across the window must then be within 1e-6 of an integer.
    """
    r = float(tail_radius)
    if r <= 0 or r > f.domain_radius:
        raise DomainError(f"tail radius {r} outside the map's trusted domain")
    outer = min(1.25 * r, f.domain_radius)
    sample_xs = [r, outer, (r + outer) / 2, -r, -outer, -(r + outer) / 2]
    tail_vals = [f(x) for x in sample_xs]
    ref = tail_vals[0]
    if max(abs(v - ref) for v in tail_vals) > 2e-6:
        raise TailError(
            f"tail samples vary beyond tolerance at radius {r}"
        )
    lf = lift(f, -r, phase_turns(f(-r)), (-r, r), step_hint=0.25)
    diff = float(lf.values[-1] - lf.values[0])
    n = round(diff)
    if abs(diff - n) > 1e-6:
        raise WindingError(
            f"lift difference {diff} across settled tails is not an integer"
        )
    return n


def homotopy_interpolate(
    f: CircleMap,
    g: CircleMap,
    t: float,
    shared_winding: Fraction,
    epsilon: float = 0.125,
    n_max: int = 720,
    radius: float | None = None,
) -> CircleMap:
    """Point on the straight-line homotopy between g (t=0) and f (t=1).

    Both maps are twisted by a rational-frequency carrier so their windings
    cancel, the flattened maps are lifted, and the lifts are mixed linearly
    before winding the carrier back on.  Refuses to interpolate when either
    endpoint's winding disagrees with the declared shared value.
    """
    if not 0.0 <= t <= 1.0:
        raise DomainError(f"interpolation parameter {t} outside [0, 1]")
    shared = Fraction(shared_winding)
    wf = winding_number(f, epsilon, n_max)
    wg = winding_number(g, epsilon, n_max)
    if wf.value != shared or wg.value != shared:
        raise HomotopyError(
            f"winding mismatch: f has {wf.value}, g has {wg.value}, "
            f"declared {shared}"
        )
    if t == 0.0:
        return g
    if t == 1.0:
        return f
    if radius is None:
        n_shared = max(shared.denominator, wf.period_used, wg.period_used)
        radius = min(f.domain_radius, g.domain_radius, max(64.0, 6.0 * n_shared))
    w = float(shared)

    def flatten(m: CircleMap) -> RealLift:
        carrier_lip = (m.lipschitz or 0.0) + TWO_PI * abs(w)
        flat = CircleMap(
            eval=lambda x: m.eval(x) * cis(-w * x),
            domain_radius=m.domain_radius,
            lipschitz=carrier_lip,
            label=f"flattened({m.label})",
        )
        return lift(flat, 0.0, phase_turns(flat(0.0)), (-radius, radius))

    lf, lg = flatten(f), flatten(g)

    def interp(x: float) -> complex:
        return cis(t * lf(x) + (1.0 - t) * lg(x) + w * x)

    lip_parts = [m.lipschitz for m in (f, g)]
    lip = None
    if all(p is not None for p in lip_parts):
        lip = max(p for p in lip_parts) + 2 * TWO_PI * abs(w)
    return CircleMap(
        eval=interp,
        domain_radius=radius,
        lipschitz=lip,
        label=f"homotopy(t={t})",
    )

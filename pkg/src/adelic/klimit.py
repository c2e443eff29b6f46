"""Covering maps between scaled circles and the direct-limit identification.

Classes at level N are pairs (level, integer winding).  Pulling a period-N
loop back along the natural covering from level M (reduce modulo N) scales
its winding by M/N; pushing classes along these maps and reducing w/N to
lowest terms identifies the limit with the rationals.  All checks here are
numeric: windings are measured by lifting, never asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence

from .circle import CircleMap, cis, lift, phase_turns
from .errors import DomainError, WindingError

_PERIOD_TOL = 1e-9


@dataclass(frozen=True)
class CircleClass:
    """A loop class on the circle of circumference ``level``."""

    level: int
    winding: int

    def __post_init__(self):
        if self.level < 1:
            raise DomainError(f"level must be positive, got {self.level}")


@dataclass(frozen=True)
class LimitClass:
    """A class in the direct limit, i.e. a rational in lowest terms."""

    value: Fraction


def cover_map(t: float | Fraction, m: int, n: int) -> float | Fraction:
    """(M/N) t reduced modulo N, for N dividing M."""
    _require_divides(n, m)
    return ((m // n) * t) % n


def _require_divides(n: int, m: int) -> None:
    if n < 1 or m < 1 or m % n != 0:
        raise DomainError(f"{n} does not divide {m}")


def periodic_loop(level: int, winding: int) -> CircleMap:
    """The loop of the given integer winding over one period ``level``."""
    if level < 1:
        raise DomainError("level must be positive")
    freq = winding / level
    return CircleMap(
        eval=lambda x: cis(freq * x),
        lipschitz=2.0 * math.pi * abs(freq) + 1e-12,
        label=f"loop(level={level}, winding={winding})",
    )


def pullback_winding(n: int, m: int, f: CircleMap) -> int:
    """Numeric winding over one period M of f pulled back along the covering.

    f must actually have sampled period N; the pullback along the natural
    reduction is f itself viewed at level M, so the measurement is one lift
    across [0, M].
    """
    _require_divides(n, m)
    for i in range(9):
        x = -1.5 * n + (3.0 * n) * i / 8.0
        if abs(f(x + n) - f(x)) > _PERIOD_TOL:
            raise DomainError(
                f"map does not have sampled period {n} (fails at x={x:.4g})"
            )
    lf = lift(f, 0.0, phase_turns(f(0.0)), (0.0, float(m)))
    diff = float(lf.values[-1] - lf.values[0])
    w = round(diff)
    if abs(diff - w) > 1e-6:
        raise WindingError(f"pullback winding {diff} is not an integer")
    return w


def limit_identify(c: CircleClass) -> LimitClass:
    """Identify a level class with its rational limit value w/N."""
    return LimitClass(Fraction(c.winding, c.level))


@dataclass(frozen=True)
class ChainCheck:
    """One functoriality check along a divisor chain N | M | L."""

    n: int
    m: int
    l: int
    winding: int
    ok: bool


def divisor_pairs(limit: int) -> list[tuple[int, int]]:
    return [(n, m) for m in range(1, limit + 1) for n in range(1, m + 1) if m % n == 0]


@lru_cache(maxsize=None)
def _measured_pullback(n: int, m: int, w: int) -> int:
    return pullback_winding(n, m, periodic_loop(n, w))


def check_multiplication_law(
    limit: int = 60, windings: Iterable[int] = range(-3, 4)
) -> list[tuple[int, int, int, bool]]:
    """Numerically verify pullback winding = (M/N) w on all divisor pairs."""
    rows = []
    for n, m in divisor_pairs(limit):
        for w in windings:
            rows.append((n, m, w, _measured_pullback(n, m, w) == (m // n) * w))
    return rows


def check_chains(
    limit: int = 60, windings: Sequence[int] = (1, -2)
) -> list[ChainCheck]:
    """Composition along N | M | L agrees with the direct pullback.

    Both hops are measured lifts; the check is that scaling the first
    measurement by L/M reproduces the direct measurement N -> L.
    """
    out = []
    for m, l in divisor_pairs(limit):
        if m == l:
            continue
        for n in range(1, m + 1):
            if m % n != 0:
                continue
            for w in windings:
                first = _measured_pullback(n, m, w)
                direct = _measured_pullback(n, l, w)
                ok = (l // m) * first == direct and direct == (l // n) * w
                out.append(ChainCheck(n, m, l, w, ok))
    return out

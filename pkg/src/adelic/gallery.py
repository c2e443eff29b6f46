"""Built-in map gallery: ramps, bumps, characters, coset waves.

The centerpiece is a piecewise self-similar ramp: linear of slope 1/3 on
[-1, 1), extended outward level by level so that shifting the argument by
2 * 3^n translates the value by almost exactly 3^n (the defect stays below
half of 3^-n).  Its exponential is the canonical example of a circle map
with certified approximate periods but no exact period.

Branch coefficients are computed once per level as exact rationals and then
applied in double precision; recomputing them in floats at every call would
eat the defect margin across the recursion levels.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Mapping

import numpy as np

from .adele import (
    Adele,
    FiniteAdele,
    LatticeScale,
    crt_decompose,
    embed_rational,
    factorize,
    in_block,
    subtract_rational,
)
from .adelic_maps import (
    RATIONAL_PERIODIC,
    UNITIZATION,
    AdelicCircleMap,
    adelic_character,
)
from .circle import CircleMap, cis
from .errors import DomainError
from .numeric import format_rational, parse_rational

TWO_PI = 2.0 * math.pi


# ---------------------------------------------------------------------------
# self-similar ramp
# ---------------------------------------------------------------------------

DEFAULT_RAMP_LEVELS = 6


@lru_cache(maxsize=None)
def _ramp_coefficients(n: int) -> tuple[float, float]:
    pn = Fraction(3) ** n
    stretch = (pn + Fraction(1, 3 ** (n + 2))) / (pn - Fraction(1, 3 ** (n + 1)))
    half_span = (pn - Fraction(1, 3 ** (n + 1))) / 2
    return float(stretch), float(half_span)


def ternary_ramp(x: float, max_level: int = DEFAULT_RAMP_LEVELS) -> float:
    """Evaluate the self-similar ramp; trusted for |x| <= 3**max_level.

    Both outer branches shift the argument into the next smaller symmetric
    window, so the recursion always reduces toward the base interval.
    """
    if abs(x) > 3.0**max_level:
        raise DomainError(
            f"|{x}| exceeds the configured ramp range 3**{max_level}"
        )
    return _ramp_eval(float(x))


def _ramp_eval(x: float) -> float:
    if -1.0 <= x < 1.0:
        return x / 3.0
    if x >= 1.0:
        n = 0
        while 3.0 ** (n + 1) <= x:
            n += 1
        stretch, half_span = _ramp_coefficients(n)
        inner = _ramp_eval(x - 2.0 * 3.0**n)
        return stretch * (inner + half_span) + half_span
    # odd reflection of the right branch; this is the offset choice that
    # splices the stretched copies continuously at every -3^n
    n = 0
    while x < -(3.0 ** (n + 1)):
        n += 1
    stretch, half_span = _ramp_coefficients(n)
    inner = _ramp_eval(x + 2.0 * 3.0**n)
    return stretch * (inner - half_span) - half_span


def ternary_ramp_map(max_level: int = DEFAULT_RAMP_LEVELS) -> CircleMap:
    """exp(2 pi i ramp(x)) as a circle map."""
    return CircleMap(
        eval=lambda x: cis(ternary_ramp(x, max_level)),
        domain_radius=3.0**max_level,
        lipschitz=TWO_PI * 0.75,
        label="ternary-ramp",
    )


def ramp_rows(
    step: float, lo: float = -9.0, hi: float = 9.0,
    max_level: int = DEFAULT_RAMP_LEVELS,
) -> list[tuple[float, float]]:
    """(x, ramp(x)) rows over [lo, hi] with both endpoints included."""
    if step <= 0:
        raise DomainError("grid step must be positive")
    count = max(1, round((hi - lo) / step))
    xs = np.linspace(lo, hi, count + 1)
    return [(float(x), ternary_ramp(float(x), max_level)) for x in xs]


# ---------------------------------------------------------------------------
# elementary circle maps
# ---------------------------------------------------------------------------


def constant_map(phase: float = 0.0) -> CircleMap:
    z = cis(phase)
    return CircleMap(eval=lambda x: z, lipschitz=0.0, label=f"phase({phase})")


def unit_exponential(q) -> CircleMap:
    """x -> exp(2 pi i q x) for a rational (or float) frequency q."""
    q = Fraction(q)
    freq = float(q)
    return CircleMap(
        eval=lambda x: cis(freq * x),
        lipschitz=TWO_PI * abs(freq) + 1e-12,
        label=f"exp({q}*x)",
    )


def smootherstep(t: float) -> float:
    """Quintic step: exactly 0 for t <= 0, exactly 1 for t >= 1, C2 between."""
    if t <= 0.0:
        return 0.0
    if t >= 1.0:
        return 1.0
    return t * t * t * (t * (6.0 * t - 15.0) + 10.0)


def step_map(turns: int, half_width: float = 3.0) -> CircleMap:
    """A loop climbing the given number of turns across [-T, T], flat outside."""
    t = float(half_width)

    def ev(x: float) -> complex:
        return cis(turns * smootherstep((x + t) / (2.0 * t)))

    lip = TWO_PI * abs(turns) * 1.875 / (2.0 * t) + 1e-12
    return CircleMap(eval=ev, lipschitz=lip, label=f"step({turns})")


def compact_bump_phase(half_width: float = 3.0) -> Callable[[float], float]:
    """A C2 bump supported on [-T, T] with peak 1 and exactly flat tails."""
    t = float(half_width)

    def bump(x: float) -> float:
        s = smootherstep((x + t) / (2.0 * t))
        return 4.0 * s * (1.0 - s)

    return bump


# ---------------------------------------------------------------------------
# adelic maps
# ---------------------------------------------------------------------------


def character_power(k: int = 1) -> AdelicCircleMap:
    """k-th power of the additive character; winds -k on every fiber."""

    def ev(a: Adele) -> complex:
        return adelic_character(a) ** k

    return AdelicCircleMap(
        eval=ev,
        periodicity=RATIONAL_PERIODIC,
        continuity_scale=1,
        label=f"character^{k}",
    )


def scaled_character(q) -> AdelicCircleMap:
    """x -> character(q x); winds -q on every fiber."""
    q = Fraction(q)
    den_primes = frozenset(factorize(q.denominator).primes())

    def ev(a: Adele) -> complex:
        return adelic_character(a.scale(q))

    return AdelicCircleMap(
        eval=ev,
        periodicity=RATIONAL_PERIODIC,
        continuity_scale=q.denominator,
        relevant_primes=den_primes,
        label=f"character({q}x)",
    )


def coset_wave_pair(
    scale_n: int, amplitude: float = 0.2
) -> tuple[AdelicCircleMap, Callable[[Adele], float]]:
    """A rationally periodic map with a known real lift, plus that lift.

    The height is a smooth scale-periodic wave of the real coordinate,
    translated fiberwise by the coset representative of the finite part;
    periodicity is exact because shifting both coordinates by a rational
    moves the representative by the same amount modulo the scale.
    """
    if amplitude >= 0.45:
        raise DomainError("amplitude too large for a winding-zero wave")
    scale = LatticeScale.of(scale_n)
    beta_cache: dict[tuple, float] = {}

    def height(a: Adele) -> float:
        key = a.finite.key
        beta = beta_cache.get(key)
        if beta is None:
            beta = float(crt_decompose(a.finite, scale))
            beta_cache[key] = beta
        t = (a.real - beta) / scale_n
        return amplitude * math.sin(TWO_PI * t) + 0.4 * amplitude * math.cos(
            2.0 * TWO_PI * t
        )

    g = AdelicCircleMap(
        eval=lambda a: cis(height(a)),
        periodicity=RATIONAL_PERIODIC,
        continuity_scale=scale_n,
        relevant_primes=frozenset(scale.primes()),
        label=f"coset-wave({scale_n})",
    )
    return g, height


def coset_wave(scale_n: int, amplitude: float = 0.2) -> AdelicCircleMap:
    return coset_wave_pair(scale_n, amplitude)[0]


def multi_block_bump(
    scale_n: int,
    bumps: Mapping[Fraction, int],
    half_width: float = 3.0,
) -> AdelicCircleMap:
    """Unitization map winding ``w`` turns on the real fiber of each listed coset.

    Fibers outside every listed coset sit at the constant 1; the limit at
    infinity is 1 in every direction, so compact windings are defined.
    """
    scale = LatticeScale.of(scale_n)
    bump_list = [(Fraction(a), int(w)) for a, w in bumps.items()]
    relevant = set(scale.primes())
    for a, _ in bump_list:
        relevant |= set(factorize(a.denominator).primes())
    weight_cache: dict[tuple, int] = {}

    def fiber_weight(x_f: FiniteAdele) -> int:
        key = x_f.key
        got = weight_cache.get(key)
        if got is None:
            got = sum(
                w
                for a, w in bump_list
                if in_block(subtract_rational(x_f, a, scale), scale)
            )
            weight_cache[key] = got
        return got

    t = float(half_width)

    def ev(adele: Adele) -> complex:
        w = fiber_weight(adele.finite)
        if w == 0:
            return 1.0 + 0.0j
        return cis(w * smootherstep((adele.real + t) / (2.0 * t)))

    return AdelicCircleMap(
        eval=ev,
        periodicity=UNITIZATION,
        continuity_scale=scale_n,
        relevant_primes=frozenset(relevant),
        limit_value=1.0 + 0.0j,
        label=f"block-bump({scale_n})",
    )


def block_bump(scale_n: int, weight: int = 1, half_width: float = 3.0) -> AdelicCircleMap:
    return multi_block_bump(scale_n, {Fraction(0): weight}, half_width)


def null_unitization_factor(
    scale_n: int, amplitude: float = 0.3, half_width: float = 3.0
) -> AdelicCircleMap:
    """exp(2 pi i h) for h compactly supported; every fiber winding is zero."""
    scale = LatticeScale.of(scale_n)
    bump = compact_bump_phase(half_width)

    def ev(a: Adele) -> complex:
        if not in_block(a.finite, scale):
            return 1.0 + 0.0j
        return cis(amplitude * bump(a.real))

    return AdelicCircleMap(
        eval=ev,
        periodicity=UNITIZATION,
        continuity_scale=scale_n,
        relevant_primes=frozenset(scale.primes()),
        label=f"null-factor({scale_n})",
    )


def adelic_product(u: AdelicCircleMap, v: AdelicCircleMap) -> AdelicCircleMap:
    """Pointwise product; metadata is merged conservatively."""
    if u.periodicity != v.periodicity:
        raise DomainError("cannot mix periodicity kinds in a product")
    return AdelicCircleMap(
        eval=lambda a: u.eval(a) * v.eval(a),
        periodicity=u.periodicity,
        continuity_scale=max(u.continuity_scale, v.continuity_scale),
        period_denominator_bound=max(
            u.period_denominator_bound, v.period_denominator_bound
        ),
        relevant_primes=u.relevant_primes | v.relevant_primes,
        limit_value=u.limit_value * v.limit_value,
        real_radius=min(u.real_radius, v.real_radius),
        label=f"({u.label})*({v.label})",
    )


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

CIRCLE_KIND = "circle-map"
ADELIC_KIND = "adelic-map"
UNITIZATION_KIND = "unitization"


@dataclass(frozen=True)
class GalleryEntry:
    """A named constructor plus the parameters it was instantiated with."""

    name: str
    kind: str
    params: dict

    def build(self):
        registered = _REGISTRY.get(self.name)
        if registered is None:
            raise DomainError(f"unknown gallery entry {self.name!r}")
        kind, defaults, builder = registered
        merged = {**defaults, **self.params}
        return builder(**merged)

    def to_json(self) -> dict:
        return {"name": self.name, "kind": self.kind, "params": dict(self.params)}

    @classmethod
    def from_json(cls, obj: Mapping) -> "GalleryEntry":
        return cls(str(obj["name"]), str(obj["kind"]), dict(obj["params"]))


def _two_block_builder(n, alpha1, w1, alpha2, w2, half_width):
    a1, a2 = parse_rational(alpha1), parse_rational(alpha2)
    if a1 == a2:
        raise DomainError("the two bumps must sit on distinct representatives")
    return multi_block_bump(n, {a1: w1, a2: w2}, half_width)


_REGISTRY: dict[str, tuple[str, dict, Callable]] = {
    "one": (CIRCLE_KIND, {}, lambda: constant_map(0.0)),
    "phase": (CIRCLE_KIND, {"phase": 0.0}, lambda phase: constant_map(float(phase))),
    "exp(q*x)": (
        CIRCLE_KIND,
        {"q": "1"},
        lambda q: unit_exponential(parse_rational(q)),
    ),
    "step": (
        CIRCLE_KIND,
        {"turns": 1, "half_width": 3.0},
        lambda turns, half_width: step_map(int(turns), float(half_width)),
    ),
    "ternary-ramp": (
        CIRCLE_KIND,
        {"max_level": DEFAULT_RAMP_LEVELS},
        lambda max_level: ternary_ramp_map(int(max_level)),
    ),
    "character": (ADELIC_KIND, {}, lambda: character_power(1)),
    "character-power": (
        ADELIC_KIND,
        {"k": 1},
        lambda k: character_power(int(k)),
    ),
    "scaled-character": (
        ADELIC_KIND,
        {"q": "1"},
        lambda q: scaled_character(parse_rational(q)),
    ),
    "coset-wave": (
        ADELIC_KIND,
        {"n": 2, "amplitude": 0.2},
        lambda n, amplitude: coset_wave(int(n), float(amplitude)),
    ),
    "block-bump": (
        UNITIZATION_KIND,
        {"n": 1, "weight": 1, "half_width": 3.0},
        lambda n, weight, half_width: block_bump(
            int(n), int(weight), float(half_width)
        ),
    ),
    "two-block-bump": (
        UNITIZATION_KIND,
        {
            "n": 1,
            "alpha1": "0",
            "w1": 1,
            "alpha2": "1/2",
            "w2": -2,
            "half_width": 3.0,
        },
        lambda n, alpha1, w1, alpha2, w2, half_width: _two_block_builder(
            int(n), alpha1, int(w1), alpha2, int(w2), float(half_width)
        ),
    ),
    "null-factor": (
        UNITIZATION_KIND,
        {"n": 1, "amplitude": 0.3, "half_width": 3.0},
        lambda n, amplitude, half_width: null_unitization_factor(
            int(n), float(amplitude), float(half_width)
        ),
    ),
}

_ALIASES = {"exp": "exp(q*x)"}


def gallery_names() -> list[str]:
    return sorted(_REGISTRY)


def gallery_entry(name: str, **params) -> GalleryEntry:
    name = _ALIASES.get(name, name)
    registered = _REGISTRY.get(name)
    if registered is None:
        raise DomainError(
            f"unknown gallery entry {name!r}; available: {', '.join(gallery_names())}"
        )
    kind, defaults, _ = registered
    unknown = set(params) - set(defaults)
    if unknown:
        raise DomainError(f"unknown parameters {sorted(unknown)} for {name!r}")
    merged = {**defaults, **params}
    return GalleryEntry(name=name, kind=kind, params=merged)

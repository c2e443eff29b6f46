"""Circle-valued maps on the adeles: characters, fiber windings, lifts.

An :class:`AdelicCircleMap` evaluates on full adeles and declares how it
behaves: either invariant under all rational diagonal shifts, or a
unitization map that settles to a constant at infinity.  Both kinds restrict
to circle maps on the real fiber over any finite adele, which is where all
invariants are actually computed.

The additive character used throughout pairs e^(-2 pi i x) on the real
coordinate with e^(+2 pi i {x_p}) at each prime; with those signs the
character is exactly trivial on rational diagonals (the fractional parts of
a rational across all primes sum to the rational modulo 1) and its zero-fiber
restriction winds once clockwise.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Mapping, Sequence

from .adele import (
    DEFAULT_DEPTH,
    Adele,
    FiniteAdele,
    LatticeScale,
    ZERO_FINITE,
    crt_decompose,
    embed_rational,
    factorize,
)
from .circle import (
    CircleMap,
    ProbePlan,
    RealLift,
    cis,
    close_lift,
    compact_winding,
    lift,
    phase_turns,
    winding_number,
)
from .errors import DomainError, NotAProjectionError, ProximityError, ScaleError
from .numeric import PadicResidue, format_rational, fractional_part, parse_rational

RATIONAL_PERIODIC = "rational-periodic"
UNITIZATION = "unitization"


@dataclass(frozen=True)
class AdelicCircleMap:
    """Unit-circle-valued map on adeles with declared regularity metadata.

    ``continuity_scale`` is a block scale N0 at which evaluation was observed
    insensitive (below 1/8 chord) to finite perturbations; ``relevant_primes``
    lists primes the evaluation inspects beyond a fiber's own support, so
    diagonal shifts know how wide a window to materialize.  Periodicity is a
    declared claim, verified by sampling, never assumed silently.
    """

    eval: Callable[[Adele], complex]
    periodicity: str = RATIONAL_PERIODIC
    continuity_scale: int = 1
    period_denominator_bound: int = 16
    relevant_primes: frozenset[int] = frozenset()
    limit_value: complex = 1.0 + 0.0j
    real_radius: float = 1e9
    label: str = ""

    def __post_init__(self):
        if self.periodicity not in (RATIONAL_PERIODIC, UNITIZATION):
            raise DomainError(f"unknown periodicity claim {self.periodicity!r}")

    def at(self, real: float, finite: FiniteAdele) -> complex:
        return self.eval(Adele(real, finite))


def restrict_fiber(g: AdelicCircleMap, x_f: FiniteAdele) -> CircleMap:
    """The real-fiber circle map over a fixed finite part."""
    return CircleMap(
        eval=lambda x: g.eval(Adele(x, x_f)),
        domain_radius=g.real_radius,
        lipschitz=None,
        label=f"{g.label or 'adelic map'}|fiber",
    )


def local_character(y: PadicResidue, x: PadicResidue) -> complex:
    """exp(2 pi i {y x}) for residues at a common prime.

    The fractional part of the product is an exact rational; the depths of
    the factors must determine the product's class modulo the integers.
    """
    if y.prime != x.prime:
        raise DomainError(f"prime mismatch: {y.prime} vs {x.prime}")
    return cis(float(fractional_part(y * x)))


def finite_character_phase(x_f: FiniteAdele) -> Fraction:
    """Exact phase (in turns, mod 1) contributed by the finite coordinates."""
    total = Fraction(0)
    for r in x_f.support.values():
        total += fractional_part(r)
    return total % 1


def adelic_character(x: Adele) -> complex:
    """The additive character: e^(-2 pi i x_oo) times the finite phases."""
    return cis(float(finite_character_phase(x.finite)) - x.real)


def character_map() -> AdelicCircleMap:
    """The additive character as a gallery-ready adelic map."""
    return AdelicCircleMap(
        eval=adelic_character,
        periodicity=RATIONAL_PERIODIC,
        continuity_scale=1,
        label="character",
    )


def adelic_winding(
    g: AdelicCircleMap,
    epsilon: float = 0.125,
    n_max: int | None = None,
    probe: ProbePlan | None = None,
) -> Fraction:
    """Winding of the zero-fiber restriction (shared by every fiber)."""
    if g.periodicity != RATIONAL_PERIODIC:
        raise DomainError("adelic winding is defined for rational-periodic maps")
    if n_max is None:
        n_max = max(32, 4 * g.continuity_scale)
    w = winding_number(restrict_fiber(g, ZERO_FINITE), epsilon, n_max, probe)
    return w.value


@dataclass(frozen=True)
class FiberWindingReport:
    """Outcome of comparing fiber windings against the zero fiber."""

    reference: Fraction
    fibers: tuple[FiniteAdele, ...]
    windings: tuple[Fraction, ...]
    passed: bool

    def mismatches(self) -> list[tuple[FiniteAdele, Fraction]]:
        return [
            (f, w) for f, w in zip(self.fibers, self.windings) if w != self.reference
        ]


def fiber_winding_report(
    g: AdelicCircleMap,
    fibers: Sequence[FiniteAdele],
    epsilon: float = 0.125,
    n_max: int | None = None,
) -> FiberWindingReport:
    """Winding of each requested fiber; passes iff all agree with fiber zero."""
    if g.periodicity != RATIONAL_PERIODIC:
        raise DomainError("fiber constancy applies to rational-periodic maps")
    if n_max is None:
        n_max = max(32, 4 * g.continuity_scale)
    reference = adelic_winding(g, epsilon, n_max)
    windings = tuple(
        winding_number(restrict_fiber(g, x_f), epsilon, n_max).value for x_f in fibers
    )
    return FiberWindingReport(
        reference=reference,
        fibers=tuple(fibers),
        windings=windings,
        passed=all(w == reference for w in windings),
    )


class AdelicLift:
    """Real-valued lift of a winding-zero rational-periodic map.

    Each fiber's lift is anchored through the block decomposition: the fiber
    is translated by its coset representative into the block around fiber
    zero, lifted there next to the zero-fiber lift, and shifted back.  The
    global branch is fixed by placing the zero-fiber value at the origin
    inside [0, 1).

    The per-fiber cache is idempotent (a recomputation stores the same
    value), so concurrent readers under the GIL are safe.
    """

    def __init__(
        self,
        g: AdelicCircleMap,
        scale: LatticeScale,
        radius: float = 16.0,
        step_hint: float = 0.1,
    ):
        self._g = g
        self._scale = scale
        self._radius = float(radius)
        grid_radius = self._radius + 2.0 * scale.n + 1.0
        base_map = restrict_fiber(g, ZERO_FINITE)
        theta0 = phase_turns(base_map(0.0)) % 1.0  # anchor in [0, 1)
        self._base = lift(
            base_map, 0.0, theta0, (-grid_radius, grid_radius), step_hint
        )
        self._fiber_cache: dict[tuple, tuple[Fraction, RealLift]] = {}

    @property
    def zero_fiber_lift(self) -> RealLift:
        return self._base

    def _fiber_lift(self, x_f: FiniteAdele) -> tuple[Fraction, RealLift]:
        key = x_f.key
        hit = self._fiber_cache.get(key)
        if hit is not None:
            return hit
        beta = crt_decompose(x_f, self._scale)
        window = set(x_f.primes()) | set(self._scale.primes())
        window |= set(factorize(beta.denominator).primes())
        shifted = x_f - embed_rational(beta, window, depth=_window_depths(window, x_f))
        try:
            nearby = close_lift(self._base, restrict_fiber(self._g, shifted))
        except ProximityError as exc:
            raise ScaleError(
                f"block scale {self._scale.n} does not control the coset "
                f"variation: {exc}"
            ) from exc
        entry = (beta, nearby)
        self._fiber_cache[key] = entry
        return entry

    def value(self, a: Adele) -> float:
        beta, nearby = self._fiber_lift(a.finite)
        approx = nearby(a.real - float(beta))
        # the interpolated lift fixes the integer branch; the fractional part
        # is re-anchored to the map's own phase so the projection is exact
        theta = phase_turns(self._g.eval(a))
        return theta + round(approx - theta)

    def prepared_fibers(self) -> int:
        return len(self._fiber_cache)


def _window_depths(window: set[int], x_f: FiniteAdele) -> dict[int, int]:
    depths = {}
    for p in window:
        r = x_f.residue(p)
        depths[p] = max(DEFAULT_DEPTH, r.depth if r is not None else 0)
    return depths


def adelic_lift(
    g: AdelicCircleMap,
    scale: LatticeScale,
    fibers: Sequence[FiniteAdele] = (),
    radius: float = 16.0,
    step_hint: float = 0.1,
    epsilon: float = 0.125,
) -> AdelicLift:
    """Build the lift and pre-warm it on the requested fibers.

    Requires winding zero; a coset whose restriction strays more than 1/8
    from the zero fiber raises :class:`ScaleError` (the certificate that the
    chosen block scale is too coarse).
    """
    if g.periodicity != RATIONAL_PERIODIC:
        raise DomainError("adelic lifts are defined for rational-periodic maps")
    w = adelic_winding(g, epsilon)
    if w != 0:
        raise DomainError(f"adelic lift needs winding zero, got {w}")
    out = AdelicLift(g, scale, radius, step_hint)
    for x_f in fibers:
        out._fiber_lift(x_f)
    return out


@dataclass(frozen=True)
class WindingField:
    """Finite integer-valued map on block coset representatives.

    Exact on the represented cosets and silent elsewhere; zero windings are
    omitted, so the empty mapping is the trivial field.
    """

    scale: LatticeScale
    values: tuple[tuple[Fraction, int], ...]

    @classmethod
    def from_dict(cls, scale: LatticeScale, data: Mapping[Fraction, int]):
        pairs = tuple(sorted((Fraction(a), int(w)) for a, w in data.items() if w != 0))
        return cls(scale, pairs)

    def as_dict(self) -> dict[Fraction, int]:
        return dict(self.values)

    def to_json(self) -> dict:
        return {
            "N": self.scale.n,
            "values": [
                {"alpha": format_rational(a), "w": w} for a, w in self.values
            ],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "WindingField":
        scale = LatticeScale.of(int(obj["N"]))
        data = {parse_rational(e["alpha"]): int(e["w"]) for e in obj["values"]}
        return cls.from_dict(scale, data)


def winding_field(
    u: AdelicCircleMap,
    scale: LatticeScale,
    denominator_bound: int,
    tail_radius: float,
) -> WindingField:
    """Per-coset integer windings of a unitization map.

    Scans every coset representative in [0, N) whose denominator divides the
    bound, restricts the map to the embedded representative, and takes the
    compact winding there.  Tail certification happens per fiber and raises
    on maps that have not settled at the given radius.
    """
    if u.periodicity != UNITIZATION:
        raise DomainError("winding fields are defined for unitization maps")
    if denominator_bound < 1:
        raise DomainError("denominator bound must be positive")
    d = denominator_bound
    window = set(scale.primes()) | set(u.relevant_primes)
    window |= set(factorize(d).primes())
    data: dict[Fraction, int] = {}
    for a in range(scale.n * d):
        alpha = Fraction(a, d)
        fiber = embed_rational(alpha, window)
        w = compact_winding(restrict_fiber(u, fiber), tail_radius)
        if w != 0:
            data[alpha] = w
    return WindingField.from_dict(scale, data)


@dataclass(frozen=True)
class ProjectionReport:
    """Either the constant value of a sampled projection or a witness pair."""

    constant: int | None
    witness: tuple[Adele, Adele] | None

    @property
    def is_constant(self) -> bool:
        return self.constant is not None


def projection_scan(
    g: Callable[[Adele], complex] | AdelicCircleMap,
    samples: Sequence[Adele],
    tolerance: float = 1e-6,
) -> ProjectionReport:
    """Check a claimed idempotent: constant 0/1 on samples, or a witness.

    Values straying from {0, 1} beyond tolerance mean the input is not a
    projection at all and raise; two samples with different bits are
    returned as the witness that no continuous projection takes both values.
    """
    if not samples:
        raise DomainError("projection scan needs at least one sample")
    evaluate = g.eval if isinstance(g, AdelicCircleMap) else g
    bits: list[int] = []
    for a in samples:
        v = complex(evaluate(a))
        if abs(v) <= tolerance:
            bits.append(0)
        elif abs(v - 1.0) <= tolerance:
            bits.append(1)
        else:
            raise NotAProjectionError(
                f"sample value {v!r} is not within {tolerance} of 0 or 1"
            )
    first = bits[0]
    for a, b in zip(samples[1:], bits[1:]):
        if b != first:
            return ProjectionReport(constant=None, witness=(samples[0], a))
    return ProjectionReport(constant=first, witness=None)

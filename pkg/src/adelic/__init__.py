"""Exact finite-adele arithmetic, circle-map lifting, and winding invariants."""

from .adele import (
    Adele,
    FiniteAdele,
    LatticeScale,
    MetricValue,
    ZERO_FINITE,
    adele_metric,
    crt_decompose,
    embed_rational,
    finite_norm,
    in_block,
    subtract_rational,
)
from .adelic_maps import (
    AdelicCircleMap,
    AdelicLift,
    FiberWindingReport,
    ProjectionReport,
    WindingField,
    adelic_character,
    adelic_lift,
    adelic_winding,
    character_map,
    fiber_winding_report,
    finite_character_phase,
    local_character,
    projection_scan,
    restrict_fiber,
    winding_field,
)
from .circle import (
    CircleMap,
    ProbePlan,
    RealLift,
    WindingNumber,
    approximate_period,
    cis,
    close_lift,
    compact_winding,
    homotopy_interpolate,
    lift,
    phase_turns,
    winding_number,
)
from .errors import (
    DomainError,
    HomotopyError,
    LiftError,
    NotAProjectionError,
    PeriodCertificateError,
    PrecisionError,
    ProximityError,
    ScaleError,
    TailError,
    WindingError,
)
from .klimit import (
    ChainCheck,
    CircleClass,
    LimitClass,
    check_chains,
    check_multiplication_law,
    cover_map,
    limit_identify,
    periodic_loop,
    pullback_winding,
)
from .numeric import (
    INFINITE_VALUATION,
    PadicResidue,
    PrimeFactorization,
    factorize,
    format_rational,
    fractional_part,
    is_prime,
    padic_abs,
    parse_rational,
    valuation,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]

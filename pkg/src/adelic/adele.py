"""Finite adeles, the adele metric, and the block coset decomposition.

A :class:`FiniteAdele` stores finitely many p-adic residues; every prime
outside the support is held implicitly at the exact value 0.  This is a
finite-window representation: operations that shift or compare adeles must
materialize every prime they inspect (helpers below take explicit prime
sets for that reason).  The canonical form drops residues that reduce to
the zero class at their stored depth, so supported entries always have a
well-defined norm.

``LatticeScale`` wraps a positive integer N together with its factorization;
the associated block is the compact open subgroup of integral elements
divisible by p^{e_p(N)} at every prime.  ``crt_decompose`` writes any finite
adele as a rational coset representative plus a block element.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import DomainError, PrecisionError
from .numeric import (
    PadicResidue,
    PrimeFactorization,
    RationalLike,
    factorize,
    is_prime,
    valuation,
)

#: Default residue depth used when constructors are not given one explicitly.
#: Deep enough for every block scale exercised at desk scale (e_p <= 9 for
#: N <= 720); choose more when testing against deeper blocks.
DEFAULT_DEPTH = 16


class FiniteAdele:
    """Finitely supported map prime -> residue, implicitly 0 elsewhere."""

    __slots__ = ("_support", "_key")

    def __init__(self, residues: Iterable[PadicResidue] = ()):
        support: dict[int, PadicResidue] = {}
        for r in residues:
            if not isinstance(r, PadicResidue):
                raise DomainError(f"expected PadicResidue entries, got {r!r}")
            if r.prime in support:
                raise DomainError(f"duplicate residue at prime {r.prime}")
            if not r.is_zero_class():
                support[r.prime] = r
        object.__setattr__(self, "_support", dict(sorted(support.items())))
        object.__setattr__(self, "_key", None)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("FiniteAdele is immutable")

    @classmethod
    def from_rationals(
        cls, coords: Mapping[int, RationalLike], depth: int = DEFAULT_DEPTH
    ) -> "FiniteAdele":
        return cls(PadicResidue(p, depth, q) for p, q in coords.items())

    # -- access --------------------------------------------------------------

    @property
    def support(self) -> dict[int, PadicResidue]:
        return dict(self._support)

    def primes(self) -> tuple[int, ...]:
        return tuple(self._support)

    def residue(self, p: int) -> PadicResidue | None:
        return self._support.get(p)

    def is_zero(self) -> bool:
        return not self._support

    @property
    def key(self) -> tuple:
        """Canonical hashable form (prime, depth, numerator, denominator)."""
        if self._key is None:
            k = tuple(
                (p, r.depth, r.rep.numerator, r.rep.denominator)
                for p, r in self._support.items()
            )
            object.__setattr__(self, "_key", k)
        return self._key

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiniteAdele):
            return NotImplemented
        return self.key == other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def __repr__(self) -> str:
        inner = ", ".join(f"{p}: {r.rep}@{r.depth}" for p, r in self._support.items())
        return f"FiniteAdele({{{inner}}})"

    # -- arithmetic ------------------------------------------------------------

    def _merge(self, other: "FiniteAdele", sign: int) -> "FiniteAdele":
        out: list[PadicResidue] = []
        for p in sorted(set(self._support) | set(other._support)):
            a = self._support.get(p)
            b = other._support.get(p)
            if a is None:
                # implicit exact zero on our side
                out.append(-b if sign < 0 else b)
            elif b is None:
                out.append(a)
            else:
                out.append(a + b if sign > 0 else a - b)
        return FiniteAdele(out)

    def __add__(self, other: "FiniteAdele") -> "FiniteAdele":
        return self._merge(other, +1)

    def __sub__(self, other: "FiniteAdele") -> "FiniteAdele":
        return self._merge(other, -1)

    def __neg__(self) -> "FiniteAdele":
        return FiniteAdele(-r for r in self._support.values())

    def scale(self, q: RationalLike) -> "FiniteAdele":
        q = Fraction(q)
        if q == 0:
            return FiniteAdele()
        return FiniteAdele(r.scale(q) for r in self._support.values())

    # -- serialization ----------------------------------------------------------

    def to_json(self) -> dict:
        return {"support": [r.to_json() for r in self._support.values()]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "FiniteAdele":
        return cls(PadicResidue.from_json(e) for e in obj.get("support", ()))


ZERO_FINITE = FiniteAdele()


@dataclass(frozen=True)
class Adele:
    """A real coordinate paired with a finite adele."""

    real: float
    finite: FiniteAdele

    def __post_init__(self):
        if not math.isfinite(self.real):
            raise DomainError(f"real coordinate must be finite, got {self.real!r}")

    def __add__(self, other: "Adele") -> "Adele":
        return Adele(self.real + other.real, self.finite + other.finite)

    def __sub__(self, other: "Adele") -> "Adele":
        return Adele(self.real - other.real, self.finite - other.finite)

    def scale(self, q: RationalLike) -> "Adele":
        return Adele(self.real * float(Fraction(q)), self.finite.scale(q))

    def shift_rational(
        self, q: RationalLike, primes: Iterable[int] = (), depth: int = DEFAULT_DEPTH
    ) -> "Adele":
        """Add the diagonal embedding of q, materialized on the given primes.

        The window always includes the primes of q's denominator; pass any
        further primes the downstream computation will inspect.
        """
        q = Fraction(q)
        window = set(primes) | set(factorize(q.denominator).primes())
        window |= set(self.finite.primes())
        emb = embed_rational(q, window, depth=depth)
        return Adele(self.real + float(q), self.finite + emb)

    def to_json(self) -> dict:
        out = self.finite.to_json()
        out["real"] = self.real
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "Adele":
        return cls(float(obj.get("real", 0.0)), FiniteAdele.from_json(obj))


@dataclass(frozen=True)
class LatticeScale:
    """A positive integer N with its factorization; fixes the block scale."""

    n: int
    factorization: PrimeFactorization

    @classmethod
    def of(cls, n: int) -> "LatticeScale":
        if not isinstance(n, int) or n < 1:
            raise DomainError(f"scale must be a positive integer, got {n!r}")
        if n >= 2**64:
            raise DomainError("scale out of supported range (< 2**64)")
        return cls(n, factorize(n))

    def exponent(self, p: int) -> int:
        return self.factorization.exponent(p)

    def primes(self) -> tuple[int, ...]:
        return self.factorization.primes()


@dataclass(frozen=True)
class MetricValue:
    """Adele distance split into its float real part and exact finite part."""

    real: float
    finite: Fraction

    @property
    def value(self) -> float:
        return self.real + float(self.finite)

    def __float__(self) -> float:
        return self.value


def finite_norm(x: FiniteAdele) -> Fraction:
    """Norm of a finite adele.

    If every coordinate is integral the norm is max |x_p|_p / p over the
    support (0 when the support is empty); otherwise it is max |x_p|_p.
    """
    integral = True
    abs_values: list[tuple[Fraction, int]] = []
    for p, r in x.support.items():
        v = int(valuation(r.rep, p))
        if v < 0:
            integral = False
        a = Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v))
        abs_values.append((a, p))
    if not abs_values:
        return Fraction(0)
    if integral:
        return max(a / p for a, p in abs_values)
    return max(a for a, _ in abs_values)


def adele_metric(x: Adele, y: Adele) -> MetricValue:
    """Distance |x_oo - y_oo| + finite_norm(x_f - y_f)."""
    return MetricValue(abs(x.real - y.real), finite_norm(x.finite - y.finite))


def in_block(x: FiniteAdele, scale: LatticeScale) -> bool:
    """Whether every coordinate is divisible by p^{e_p(N)}.

    Supported residues must carry depth at least e_p(N); implicit
    coordinates are exact zeros and pass at any exponent.
    """
    for p, r in x.support.items():
        e = scale.exponent(p)
        if r.depth < e:
            raise PrecisionError(
                f"residue at prime {p} has depth {r.depth} < e_p(N) = {e}"
            )
        if valuation(r.rep, p) < e:
            return False
    return True


def embed_rational(
    q: RationalLike,
    primes: Iterable[int],
    depth: int | Mapping[int, int] = DEFAULT_DEPTH,
) -> FiniteAdele:
    """Truncated diagonal embedding: residue q at each listed prime.

    The listed primes must cover q's denominator; coordinates at unlisted
    primes stay implicitly integral, which is exact for every operation
    whose window is contained in the listed set.
    """
    q = Fraction(q)
    primes = sorted(set(primes))
    for p in primes:
        if not isinstance(p, int) or not is_prime(p):
            raise DomainError(f"{p!r} is not a prime")
    den_primes = set(factorize(q.denominator).primes())
    missing = den_primes - set(primes)
    if missing:
        raise DomainError(
            f"primes {sorted(missing)} divide the denominator of {q} "
            "but are not listed"
        )
    out = []
    for p in primes:
        k = depth.get(p, DEFAULT_DEPTH) if isinstance(depth, Mapping) else depth
        out.append(PadicResidue(p, k, q))
    return FiniteAdele(out)


def subtract_rational(
    x: FiniteAdele,
    q: RationalLike,
    scale: LatticeScale | None = None,
    extra_primes: Iterable[int] = (),
) -> FiniteAdele:
    """x minus the diagonal embedding of q, windowed for block membership.

    The embedding materializes x's support, q's denominator primes, the
    scale's primes, and any extras, at depths sufficient for an
    :func:`in_block` check at the given scale.
    """
    q = Fraction(q)
    window = set(x.primes()) | set(factorize(q.denominator).primes())
    window |= set(extra_primes)
    if scale is not None:
        window |= set(scale.primes())
    depths: dict[int, int] = {}
    for p in window:
        need = max(0, -int(valuation(q, p))) if q != 0 else 0
        if scale is not None:
            need += scale.exponent(p)
        r = x.residue(p)
        have = r.depth if r is not None else 0
        depths[p] = max(need + 1, have, DEFAULT_DEPTH)
    return x - embed_rational(q, window, depth=depths)


def crt_decompose(x: FiniteAdele, scale: LatticeScale) -> Fraction:
    """Rational coset representative of x modulo the scale's block.

    Returns the unique alpha in [0, N) whose denominator is supported on the
    primes where x fails block membership, such that x - alpha lies in the
    block.  Simultaneous congruences are solved with strengthened moduli
    p^{e_p(N) + d_p} (d_p the denominator exponent of the local
    representative) so the verification is exact at the stored depths.
    """
    n = scale.n
    local: dict[int, tuple[Fraction, int]] = {}
    for p, r in x.support.items():
        e = scale.exponent(p)
        v = int(valuation(r.rep, p))
        d = max(0, -v)
        if r.depth < e + d:
            raise PrecisionError(
                f"residue at prime {p} has depth {r.depth} < e_p(N)+d = {e + d}"
            )
        if v < e:
            # local representative of x_p modulo p^e, denominator p^d
            local[p] = (r.rep % p**e, p ** (e + d))
    if not local:
        return Fraction(0)
    moduli = dict(local)
    for p in scale.primes():
        if p not in moduli and scale.exponent(p) > 0:
            moduli[p] = (Fraction(0), p ** scale.exponent(p))
    total = 1
    for _, m in moduli.values():
        total *= m
    alpha = Fraction(0)
    for p, (rep, m) in local.items():
        rest = total // m
        weight = rest * pow(rest, -1, m)  # 1 mod m, 0 mod every other modulus
        alpha += rep * weight
    return alpha % n

"""Exact rational and p-adic building blocks.

Rationals are plain :class:`fractions.Fraction` values; they serialize as
``"a/b"`` (``"a"`` when the denominator is 1).  A :class:`PadicResidue` is a
class in Q_p modulo p^k Z_p, represented by a rational whose denominator is a
power of p and reduced into the canonical window [0, p^k).

Everything here is immutable and every function is pure, so values can be
shared freely between threads.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Mapping, Union

from .errors import DomainError, PrecisionError

RationalLike = Union[int, Fraction]

#: Returned by :func:`valuation` for the zero rational.
INFINITE_VALUATION = math.inf

_MR_WITNESSES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


@lru_cache(maxsize=65536)
def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, exact for every n below 3.3e24."""
    if n < 2:
        return False
    for small in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n == small:
            return True
        if n % small == 0:
            return False
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_WITNESSES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _require_prime(p: int) -> None:
    if not isinstance(p, int) or not is_prime(p):
        raise DomainError(f"{p!r} is not a prime")


def valuation(r: RationalLike, p: int) -> int | float:
    """Exponent of the prime p in the rational r.

    Returns :data:`INFINITE_VALUATION` for r = 0.

    >>> valuation(12, 2)
    2
    >>> valuation(Fraction(1, 9), 3)
    -2
    """
    _require_prime(p)
    r = Fraction(r)
    if r == 0:
        return INFINITE_VALUATION
    v = 0
    num = abs(r.numerator)
    while num % p == 0:
        num //= p
        v += 1
    den = r.denominator
    while den % p == 0:
        den //= p
        v -= 1
    return v


def padic_abs(r: RationalLike, p: int) -> Fraction:
    """p-adic absolute value p**(-valuation); 0 maps to 0."""
    v = valuation(r, p)
    if v is INFINITE_VALUATION:
        return Fraction(0)
    return Fraction(1, p**v) if v >= 0 else Fraction(p ** (-v))


@dataclass(frozen=True)
class PrimeFactorization:
    """Factorization of a positive integer as sorted (prime, exponent) pairs."""

    pairs: tuple[tuple[int, int], ...]

    @property
    def n(self) -> int:
        out = 1
        for p, e in self.pairs:
            out *= p**e
        return out

    def exponent(self, p: int) -> int:
        for q, e in self.pairs:
            if q == p:
                return e
        return 0

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.pairs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def __iter__(self) -> Iterator[tuple[int, int]]:
        return iter(self.pairs)


def factorize(n: int) -> PrimeFactorization:
    """Exact factorization by trial division; n = 1 gives the empty product.

    Intended for desk-scale inputs (the CLI validates n < 2**64); a prime
    tail is recognized with :func:`is_prime` so that only the smooth part is
    scanned.
    """
    if not isinstance(n, int) or n < 1:
        raise DomainError(f"cannot factorize {n!r}: need a positive integer")
    pairs: list[tuple[int, int]] = []
    rest = n
    d = 2
    while rest > 1:
        if is_prime(rest):
            pairs.append((rest, 1))
            break
        while d * d <= rest and rest % d != 0:
            d += 1 if d == 2 else 2
        e = 0
        while rest % d == 0:
            rest //= d
            e += 1
        pairs.append((d, e))
    return PrimeFactorization(tuple(sorted(pairs)))


class PadicResidue:
    """A class in Q_p / p^k Z_p held as a canonical rational representative.

    The representative always lies in [0, p^k) and has a p-power denominator,
    so two residues of equal depth are the same class iff their reps are
    equal; across depths, equality means agreement at the shallower depth.
    """

    __slots__ = ("prime", "depth", "rep")

    def __init__(self, prime: int, depth: int, rep: RationalLike):
        _require_prime(prime)
        if not isinstance(depth, int) or depth < 0:
            raise DomainError(f"depth must be a non-negative integer, got {depth!r}")
        rep = Fraction(rep)
        unit = rep.denominator
        d = 0
        while unit % prime == 0:
            unit //= prime
            d += 1
        if unit != 1:
            # the prime-coprime denominator part is a unit: invert it modulo
            # p^(depth + d) to reach the p-power-denominator representative
            modulus = prime ** (depth + d)
            if modulus == 1:
                rep = Fraction(0)
            else:
                num = rep.numerator * pow(unit, -1, modulus) % modulus
                rep = Fraction(num, prime**d)
        object.__setattr__(self, "prime", prime)
        object.__setattr__(self, "depth", depth)
        object.__setattr__(self, "rep", rep % prime**depth)

    def __setattr__(self, name, value):  # pragma: no cover - immutability guard
        raise AttributeError("PadicResidue is immutable")

    # -- structure ---------------------------------------------------------

    def is_zero_class(self) -> bool:
        return self.rep == 0

    def rep_valuation(self) -> int | float:
        """Valuation of the stored representative (INF for the zero class)."""
        return valuation(self.rep, self.prime)

    def known_valuation(self) -> int:
        """A certified lower bound on the valuation of the full class.

        Non-zero canonical reps have valuation below the depth, so the class
        valuation equals the rep's; the zero class only certifies >= depth.
        """
        if self.rep == 0:
            return self.depth
        return int(valuation(self.rep, self.prime))

    def class_mod(self, e: int) -> Fraction:
        """Canonical representative of this class modulo p^e (needs depth >= e)."""
        if e > self.depth:
            raise PrecisionError(
                f"residue at prime {self.prime} has depth {self.depth} < {e}"
            )
        return self.rep % self.prime**e

    # -- arithmetic --------------------------------------------------------

    def _combine(self, other: "PadicResidue") -> int:
        if not isinstance(other, PadicResidue):
            raise DomainError(f"expected a PadicResidue, got {other!r}")
        if other.prime != self.prime:
            raise DomainError(
                f"prime mismatch: {self.prime} vs {other.prime}"
            )
        return min(self.depth, other.depth)

    def __add__(self, other: "PadicResidue") -> "PadicResidue":
        k = self._combine(other)
        return PadicResidue(self.prime, k, self.rep + other.rep)

    def __sub__(self, other: "PadicResidue") -> "PadicResidue":
        k = self._combine(other)
        return PadicResidue(self.prime, k, self.rep - other.rep)

    def __neg__(self) -> "PadicResidue":
        return PadicResidue(self.prime, self.depth, -self.rep)

    def scale(self, q: RationalLike) -> "PadicResidue":
        """Multiply the class by an exact rational scalar.

        Scaling by q shifts the depth by v_p(q); a negative resulting depth
        means the product class is undetermined and raises.
        """
        q = Fraction(q)
        if q == 0:
            return PadicResidue(self.prime, self.depth, 0)
        shift = int(valuation(q, self.prime))
        k = self.depth + shift
        if k < 0:
            raise PrecisionError(
                f"scaling by {q} drops depth below zero at prime {self.prime}"
            )
        return PadicResidue(self.prime, k, self.rep * q)

    def __mul__(self, other: "PadicResidue") -> "PadicResidue":
        if not isinstance(other, PadicResidue):
            return NotImplemented
        if other.prime != self.prime:
            raise DomainError(f"prime mismatch: {self.prime} vs {other.prime}")
        k = min(
            self.known_valuation() + other.depth,
            other.known_valuation() + self.depth,
        )
        if k < 0:
            raise PrecisionError(
                "depths insufficient to determine the product class at prime "
                f"{self.prime}"
            )
        return PadicResidue(self.prime, k, self.rep * other.rep)

    # -- comparison / serialization ----------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, PadicResidue):
            return NotImplemented
        if self.prime != other.prime:
            return False
        k = min(self.depth, other.depth)
        return valuation(self.rep - other.rep, self.prime) >= k

    __hash__ = None  # cross-depth equality is not hash-compatible

    def __repr__(self) -> str:
        return f"PadicResidue(p={self.prime}, k={self.depth}, rep={self.rep})"

    def to_json(self) -> dict:
        return {"p": self.prime, "k": self.depth, "rep": format_rational(self.rep)}

    @classmethod
    def from_json(cls, obj: Mapping) -> "PadicResidue":
        return cls(int(obj["p"]), int(obj["k"]), parse_rational(obj["rep"]))


def fractional_part(x: PadicResidue) -> Fraction:
    """The unique rational in [0, 1) with p-power denominator congruent to x.

    Subtracting the result from the representative leaves a p-adic integer;
    p-adic integers map to 0.
    """
    return x.rep % 1


def format_rational(q: RationalLike) -> str:
    """Serialize a rational as "a/b", or "a" when the denominator is 1."""
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def parse_rational(text: str | int) -> Fraction:
    """Parse "a/b" or "a" (also accepts ints for convenience)."""
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse rational from {text!r}") from exc

"""Shared fuzz generators and independent oracles for the test suite.

The brute-force coset search here is deliberately naive (an integer scan of
the whole fundamental domain) so it stays independent of the congruence
construction it cross-checks.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from adelic import (
    Adele,
    FiniteAdele,
    LatticeScale,
    PadicResidue,
    valuation,
)

SMALL_PRIMES = (2, 3, 5, 7, 11, 13)
LARGER_PRIMES = (23, 29, 31, 37, 41, 43, 47, 53)


def brute_force_decompositions(
    x: FiniteAdele, scale: LatticeScale
) -> list[Fraction]:
    """Every alpha = a/D in [0, N) with x - alpha in the block, by full scan.

    D is the least common denominator of the supported coordinates, so the
    scan covers exactly the representatives whose denominator divides the
    support modulus.
    """
    n = scale.n
    d = 1
    for p, r in x.support.items():
        v = int(valuation(r.rep, p))
        if v < 0:
            d *= p ** (-v)
    conditions: list[tuple[int, int]] = []  # (modulus, target)
    window = set(x.primes()) | set(scale.primes())
    for p in sorted(window):
        f = scale.exponent(p) + int(valuation(d, p))
        if f == 0:
            continue
        r = x.residue(p)
        coord = r.rep if r is not None else Fraction(0)
        target = coord * d
        assert target.denominator == 1, "support modulus must clear denominators"
        conditions.append((p**f, int(target) % p**f))
    out = []
    for a in range(n * d):
        if all((a - t) % m == 0 for m, t in conditions):
            out.append(Fraction(a, d))
    return out


def fuzz_block_case(
    rng: random.Random,
    n_limit: int = 720,
    depth_limit: int = 4,
    scan_cap: int = 30000,
) -> tuple[FiniteAdele, LatticeScale]:
    """A finite adele and scale satisfying the decomposition preconditions.

    Supported primes stay below 13, depths below the limit, and the scan
    size N * D is capped so the brute-force oracle stays fast.
    """
    scale = LatticeScale.of(rng.randint(1, n_limit))
    residues = []
    d_total = 1
    for p in rng.sample(SMALL_PRIMES, rng.randint(0, 3)):
        e = scale.exponent(p)
        if e > depth_limit:
            continue
        d_max = min(2, depth_limit - e)
        d = rng.randint(0, d_max)
        if d > 0 and scale.n * d_total * p**d > scan_cap:
            d = 0
        if d > 0:
            num = rng.randrange(1, p**(e + d + 2))
            while num % p == 0:
                num += 1
            rep = Fraction(num, p**d)
            d_total *= p**d
        else:
            v = rng.randint(0, 3)
            unit = rng.randrange(1, 50)
            while unit % p == 0:
                unit += 1
            rep = Fraction(p**v * unit)
        depth = rng.randint(e + d, depth_limit)
        residues.append(PadicResidue(p, depth, rep))
    return FiniteAdele(residues), scale


def random_finite_adele(
    rng: random.Random, depth: int = 8, max_entries: int = 3
) -> FiniteAdele:
    residues = []
    for p in rng.sample(SMALL_PRIMES, rng.randint(0, max_entries)):
        v = rng.randint(-3, 4)
        unit = rng.randrange(1, 200)
        while unit % p == 0:
            unit += 1
        rep = Fraction(unit * p**max(v, 0), p ** max(-v, 0))
        residues.append(PadicResidue(p, depth, rep))
    return FiniteAdele(residues)


def random_adele(rng: random.Random, real_span: float = 50.0) -> Adele:
    return Adele(rng.uniform(-real_span, real_span), random_finite_adele(rng))


def sample_basic_neighborhood(epsilon: Fraction, rng: random.Random) -> Adele:
    """A random element of the standard basic open set attached to epsilon.

    Real part open in (-eps/2, eps/2); primes up to 2/eps carry p^m with
    m = floor(log2(floor(2/eps))) + 1; a few larger primes carry arbitrary
    integers.
    """
    epsilon = Fraction(epsilon)
    bound = int(Fraction(2) / epsilon)  # floor(2/eps)
    m = int(math.floor(math.log2(bound))) + 1
    real = float(epsilon) / 2.0 * rng.uniform(-0.999, 0.999)
    residues = []
    for p in SMALL_PRIMES + (17, 19):
        if p <= bound:
            residues.append(PadicResidue(p, m + 4, p**m * rng.randint(-50, 50)))
    for p in rng.sample(LARGER_PRIMES, rng.randint(0, 2)):
        residues.append(PadicResidue(p, 6, rng.randint(-20, 20)))
    return Adele(real, FiniteAdele(residues))


def sample_block_element(scale: LatticeScale, rng: random.Random) -> FiniteAdele:
    """A random element of the block at the given scale."""
    residues = []
    for p in scale.primes():
        e = scale.exponent(p)
        residues.append(PadicResidue(p, e + 6, p**e * rng.randint(-40, 40)))
    for p in rng.sample(LARGER_PRIMES, rng.randint(0, 2)):
        residues.append(PadicResidue(p, 6, rng.randint(-10, 10)))
    return FiniteAdele(residues)


def rational_frequency_pool(rng: random.Random, count: int) -> list[Fraction]:
    pool = []
    while len(pool) < count:
        num = rng.randint(-3, 3)
        den = rng.randint(1, 8)
        q = Fraction(num, den)
        if q != 0:
            pool.append(q)
    return pool

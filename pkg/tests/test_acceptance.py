"""Acceptance criteria, one test per criterion.

Each test prints a single pass/fail line (visible with ``pytest -s``) and
enforces its stated runtime limit.  Expected values are exact rationals or
integers; float tolerances appear only where the criterion names one.
"""

import functools
import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

import support
from adelic import (
    Adele,
    CircleMap,
    FiniteAdele,
    LatticeScale,
    ProbePlan,
    ZERO_FINITE,
    adele_metric,
    adelic_winding,
    character_map,
    check_chains,
    check_multiplication_law,
    cis,
    close_lift,
    crt_decompose,
    fiber_winding_report,
    in_block,
    lift,
    phase_turns,
    projection_scan,
    subtract_rational,
    winding_field,
    winding_number,
)
from adelic.gallery import (
    adelic_product,
    block_bump,
    multi_block_bump,
    null_unitization_factor,
    ternary_ramp,
    unit_exponential,
)

ZERO_ADELE = Adele(0.0, ZERO_FINITE)


def acceptance(num, name, limit_s):
    def deco(fn):
        @functools.wraps(fn)
        def wrapper(*args, **kwargs):
            t0 = time.perf_counter()
            try:
                fn(*args, **kwargs)
            except BaseException:
                dt = time.perf_counter() - t0
                print(f"[acceptance {num:02d}] {name}: FAIL ({dt:.2f}s)")
                raise
            dt = time.perf_counter() - t0
            if dt >= limit_s:
                print(f"[acceptance {num:02d}] {name}: FAIL (runtime {dt:.2f}s over {limit_s}s)")
                raise AssertionError(f"runtime {dt:.2f}s exceeds limit {limit_s}s")
            print(f"[acceptance {num:02d}] {name}: PASS ({dt:.2f}s, limit {limit_s}s)")

        return wrapper

    return deco


@acceptance(1, "character winding is exactly -1", 1.0)
def test_character_winding():
    assert adelic_winding(character_map()) == Fraction(-1)


@acceptance(2, "fiber windings of the character all equal -1", 5.0)
def test_fiber_constancy():
    rng = random.Random(20260811)
    fibers = []
    for _ in range(10):
        coords = {}
        # denominators divide 36 = 2^2 * 3^2
        coords[2] = Fraction(rng.randint(-40, 40), 2 ** rng.randint(0, 2))
        coords[3] = Fraction(rng.randint(-40, 40), 3 ** rng.randint(0, 2))
        for p in rng.sample((5, 7, 11), rng.randint(0, 2)):
            coords[p] = Fraction(rng.randint(-20, 20))
        fibers.append(FiniteAdele.from_rationals(coords, depth=16))
    report = fiber_winding_report(character_map(), fibers)
    assert report.reference == Fraction(-1)
    assert report.passed
    assert all(w == Fraction(-1) for w in report.windings)


@acceptance(3, "coset decomposition matches brute force on 10^3 cases", 30.0)
def test_crt_decomposition():
    rng = random.Random(777)
    for _ in range(1000):
        x, scale = support.fuzz_block_case(rng)
        alpha = crt_decompose(x, scale)
        assert 0 <= alpha < scale.n
        assert in_block(subtract_rational(x, alpha, scale), scale)
        found = support.brute_force_decompositions(x, scale)
        assert len(found) == 1, "fundamental-domain representative not unique"
        assert found[0] == alpha


@acceptance(4, "winding additivity and local constancy on 200 pairs", 20.0)
def test_additivity_and_local_constancy():
    rng = random.Random(4242)
    cache: dict[Fraction, Fraction] = {}

    def measured(q: Fraction) -> Fraction:
        if q not in cache:
            cache[q] = winding_number(unit_exponential(q)).value
        return cache[q]

    for _ in range(200):
        q1, q2 = support.rational_frequency_pool(rng, 2)
        f, g = unit_exponential(q1), unit_exponential(q2)
        assert measured(q1) == q1 and measured(q2) == q2
        total = winding_number(f.product(g)).value
        assert total == measured(q1) + measured(q2)

        # perturb f by less than 1/8 in sup distance, winding must not move
        n = q1.denominator
        delta = rng.uniform(0.004, 0.015)
        freq = float(q1)
        mixed = CircleMap(
            eval=lambda x, d=delta, fr=freq, nn=n: cis(
                fr * x + d * math.sin(2 * math.pi * x / nn)
            ),
            lipschitz=2 * math.pi * (abs(freq) + delta * 2 * math.pi / n) + 1e-9,
        )
        sup_bound = 2.0 * math.sin(math.pi * delta)
        assert sup_bound < 0.125
        assert winding_number(mixed).value == q1


@acceptance(5, "lift round trip at nodes and quarter-contraction closeness", 10.0)
def test_lift_round_trip_and_closeness():
    rng = random.Random(555)
    for _ in range(25):
        q1, q2 = support.rational_frequency_pool(rng, 2)
        f = unit_exponential(q1).product(unit_exponential(q2))
        lf = lift(f, 0.0, phase_turns(f(0.0)), (-8.0, 8.0))
        source = np.array([f(x) for x in lf.xs])
        assert np.max(np.abs(lf.circle_values() - source)) <= 1e-9

    for _ in range(25):
        (q,) = support.rational_frequency_pool(rng, 1)
        f = unit_exponential(q)
        lf = lift(f, 0.0, phase_turns(f(0.0)), (-8.0, 8.0), step_hint=0.05)
        delta = rng.uniform(0.002, 0.015)
        g = CircleMap(
            eval=lambda x, d=delta, fr=float(q): cis(fr * x + d * math.sin(x)),
            lipschitz=2 * math.pi * (abs(float(q)) + delta) + 1e-9,
        )
        lg = close_lift(lf, g)
        d_obs = max(abs(g(x) - fz) for x, fz in zip(lf.xs, lf.circle_values()))
        assert 0 < d_obs < 0.125
        dist = float(np.max(np.abs(lg.values - lf.values)))
        assert dist < d_obs / 4 + 1e-9


@acceptance(6, "ramp shift-translation bound at every level", 30.0)
def test_ramp_bound():
    rng = random.Random(66)
    span = 3.0**5
    for n in range(0, 5):
        unit = 2 * 3**n
        bound = 0.5 * 3.0 ** (-n) + 1e-9
        for k in range(-20, 21):
            if k == 0:
                continue
            lo = max(-(3.0**n), -span - unit * k)
            hi = min(3.0**n, span - unit * k)
            if hi <= lo:
                continue
            for _ in range(1000):
                x = rng.uniform(lo, hi * (1 - 1e-12))
                err = abs(ternary_ramp(x + unit * k) - ternary_ramp(x) - 3**n * k)
                assert err < bound, (n, k, x, err)


@acceptance(7, "pullback winding law and chain functoriality up to 60", 20.0)
def test_inductive_limit_law():
    rows = check_multiplication_law(60, range(-3, 4))
    assert rows
    bad = [(n, m, w) for n, m, w, ok in rows if not ok]
    assert not bad, f"multiplication law failed at {bad[:5]}"
    chains = check_chains(60)
    assert chains
    assert all(c.ok for c in chains)


@acceptance(8, "winding fields recover prescriptions exactly", 15.0)
def test_winding_field_prescriptions():
    one_bump = block_bump(2, weight=1)
    field = winding_field(one_bump, LatticeScale.of(2), 2, 4.0)
    assert field.as_dict() == {Fraction(0): 1}

    two = multi_block_bump(1, {Fraction(0): 1, Fraction(1, 2): -2})
    field2 = winding_field(two, LatticeScale.of(1), 6, 4.0)
    assert field2.as_dict() == {Fraction(0): 1, Fraction(1, 2): -2}

    null = null_unitization_factor(1, amplitude=0.35)
    perturbed = winding_field(adelic_product(two, null), LatticeScale.of(1), 6, 4.0)
    assert perturbed.values == field2.values


@acceptance(9, "metric axioms and basic-neighborhood containment", 10.0)
def test_metric_and_topology():
    rng = random.Random(909)
    for _ in range(10000):
        x = support.random_adele(rng)
        y = support.random_adele(rng)
        z = support.random_adele(rng)
        dxy = adele_metric(x, y)
        dyx = adele_metric(y, x)
        assert dxy.finite == dyx.finite and dxy.real == dyx.real
        assert dxy.finite >= 0 and dxy.real >= 0.0
        dxz = adele_metric(x, z)
        dyz = adele_metric(y, z)
        assert dxz.finite <= dxy.finite + dyz.finite
        assert dxz.real <= dxy.real + dyz.real + 1e-12

    for eps in (Fraction(1, 2), Fraction(1, 10)):
        for _ in range(1000):
            sample = support.sample_basic_neighborhood(eps, rng)
            d = adele_metric(sample, ZERO_ADELE)
            assert d.finite < eps / 2
            assert d.real + float(d.finite) < float(eps)


@acceptance(10, "projection scans: periodic indicator constant, witness otherwise", 5.0)
def test_projection_triviality():
    scale = LatticeScale.of(2)
    rng = random.Random(1010)
    samples = [ZERO_ADELE] + [support.random_adele(rng, real_span=4.0) for _ in range(30)]

    def periodic_indicator(a: Adele) -> float:
        alpha = crt_decompose(a.finite, scale)
        inside = in_block(subtract_rational(a.finite, alpha, scale), scale)
        return 1.0 if inside else 0.0

    report = projection_scan(periodic_indicator, samples)
    assert report.is_constant and report.constant == 1

    def naive(a: Adele) -> float:
        return 1.0 if in_block(a.finite, scale) else 0.0

    values = {naive(a) for a in samples}
    assert values == {0.0, 1.0}, "sampler must reach both sides of the block"
    witness_report = projection_scan(naive, samples)
    assert not witness_report.is_constant
    a, b = witness_report.witness
    assert naive(a) != naive(b)

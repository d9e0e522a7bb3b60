"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
report lines and timings.
"""

import math
import random
import time
from fractions import Fraction

from kthodge.cli import (
    _SOLVABLE_RATIOS,
    _UNSOLVABLE_RATIOS,
    make_verification_problem,
)
from kthodge.exactmath import r2
from kthodge.hodge import hodge_diamond, serre_check
from kthodge.lattice import (
    circle_count_brute,
    circle_count_closed,
    find_d_for_count,
    scaled_circle_count,
)
from kthodge.sectors import (
    AcsParams,
    MetricSpec,
    StokesRatio,
    fourier_h20_scan,
    h20,
    sector_criterion_standard,
)
from kthodge.stokes import numeric_l2_test, stokes_criterion

STANDARD = MetricSpec.standard()


def _report(name, ok, started, budget):
    elapsed = time.perf_counter() - started
    print(f"{'PASS' if ok else 'FAIL'} {name} ({elapsed:.2f}s, budget {budget:.0f}s)")
    assert ok, name
    assert elapsed < budget, f"{name} exceeded its {budget}s budget ({elapsed:.2f}s)"


def test_criterion_1_closed_form_table_reproduction():
    started = time.perf_counter()
    ok = True
    for p in range(1, 51):
        for q in range(1, 6):
            if math.gcd(p, q) != 1:
                continue
            d = Fraction(p, q)
            if circle_count_closed(d) != circle_count_brute(d).count:
                ok = False
    _report("criterion 1: closed-form vs brute-force table (p<=50, q<=5)", ok, started, 5.0)


def test_criterion_2_metric_dependence_case_table():
    started = time.perf_counter()
    params = AcsParams(0, 1)
    ok = True
    for rho in (1, 4, 9, 16):
        ok &= scaled_circle_count(1, rho).count == 4
        metric = STANDARD if rho == 1 else MetricSpec.almost_kahler(rho)
        ok &= hodge_diamond(params, metric).entry(0, 1) == 4
    for rho in (Fraction(9, 4), Fraction(25, 4), Fraction(4, 9)):
        ok &= scaled_circle_count(1, rho).count == 2
        ok &= hodge_diamond(params, MetricSpec.almost_kahler(rho)).entry(0, 1) == 2
    _report("criterion 2: h01 metric dependence at d = 1", ok, started, 1.0)


def test_criterion_3_every_target_count_realized():
    started = time.perf_counter()
    ok = True
    for n in range(1, 101):
        if n % 8 == 0:
            continue
        d = find_d_for_count(n)
        ok &= d.denominator <= 5
        ok &= circle_count_closed(d) == n
        if d.numerator <= 10**6:
            ok &= circle_count_brute(d).count == n
    _report("criterion 3: every n <= 100 with 8 not dividing n is realized", ok, started, 30.0)


def test_criterion_4_infinite_sectors_empty_for_rational_d():
    started = time.perf_counter()
    ok = True
    for p in range(1, 11):
        for q in range(1, 6):
            if math.gcd(p, q) != 1:
                continue
            params = AcsParams(0, Fraction(p, q))
            for k in range(-3, 4):
                for n in [i for i in range(-3, 4) if i]:
                    for m in range(abs(n)):
                        report = sector_criterion_standard(params, k, m, n)
                        ok &= report.dimension == 0
                        ok &= isinstance(report.certificate, StokesRatio)
    _report("criterion 4: no infinite-orbit sector admits solutions", ok, started, 5.0)


def test_criterion_5_stokes_oracle_agreement():
    started = time.perf_counter()
    rng = random.Random(2024)
    ratios = _SOLVABLE_RATIOS + _UNSOLVABLE_RATIOS
    ok = True
    checked = 0
    for index in range(100):
        ratio = ratios[index % len(ratios)]
        expected = ratio in _SOLVABLE_RATIOS
        problem = make_verification_problem(rng, ratio)
        algebraic = stokes_criterion(problem)
        numeric = numeric_l2_test(problem, steps=20_000, tol=1e-6)
        ok &= algebraic.solvable == expected
        ok &= numeric.solvable == expected
        if not expected:
            ok &= numeric.angle > 1e-2
        checked += 1
    ok &= checked >= 100
    _report("criterion 5: criterion vs shooting on 100 systems", ok, started, 60.0)


def test_criterion_6_h20_law():
    started = time.perf_counter()
    rng = random.Random(77)
    ok = h20(AcsParams(0, Fraction(1, 2))) == 1
    ok &= h20(AcsParams(0, Fraction(1, 3))) == 0
    for _ in range(50):
        d = Fraction(rng.randint(-18, 18), rng.randint(1, 12))
        if d == 0:
            d = Fraction(1, 7)
        params = AcsParams(0, d)
        expected = 1 if (2 * d).denominator == 1 else 0
        ok &= h20(params) == expected
        window = abs(math.ceil(2 * d)) + 1
        ok &= len(fourier_h20_scan(params, window)) == expected
    _report("criterion 6: h20 = 1 iff 2d is an integer, Fourier scan agrees", ok, started, 1.0)


def test_criterion_7_diamond_integrity():
    started = time.perf_counter()
    ok = True
    cases = [
        (Fraction(1), None),
        (Fraction(1, 2), None),
        (Fraction(5, 4), None),
        (Fraction(-2, 3), None),
        (Fraction(1), Fraction(9, 4)),
        (Fraction(1), Fraction(4)),
        (Fraction(5, 3), Fraction(25, 4)),
    ]
    for d, rho in cases:
        metric = STANDARD if rho is None else MetricSpec.almost_kahler(rho)
        diamond = hodge_diamond(AcsParams(0, d), metric)
        ok &= serre_check(diamond)
        ok &= diamond.entry(0, 0) == 1
        ok &= diamond.entry(2, 2) == 1
        ok &= diamond.entry(1, 1) == 3
    _report("criterion 7: every diamond is Serre-symmetric with fixed corners", ok, started, 5.0)


def test_criterion_8_r2_identity_suite():
    started = time.perf_counter()
    limit = 10**4
    # brute force: aggregate counts of x*x + y*y over the full square
    brute = [0] * (limit + 1)
    bound = math.isqrt(limit)
    for x in range(-bound, bound + 1):
        xx = x * x
        for y in range(-bound, bound + 1):
            value = xx + y * y
            if value <= limit:
                brute[value] += 1
    # divisor identity 4*(d1 - d3) via a sieve over multiples
    delta = [0] * (limit + 1)
    for divisor in range(1, limit + 1):
        sign = 1 if divisor % 4 == 1 else -1 if divisor % 4 == 3 else 0
        if sign:
            for multiple in range(divisor, limit + 1, divisor):
                delta[multiple] += sign
    ok = True
    for n in range(0, limit + 1):
        value = r2(n)
        ok &= value == brute[n]
        ok &= value == (1 if n == 0 else 4 * delta[n])
    _report("criterion 8: r2 matches brute force and 4(d1 - d3) up to 10^4", ok, started, 5.0)

"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line.

Run alone with ``pytest tests/test_acceptance.py -v -s`` (or
``python3 tests/test_acceptance.py``); the summary is also printed at the end
of any pytest session that collects these tests.
"""
import math
import random
import time
from fractions import Fraction

import numpy as np
import pytest

from lambda_bound.bounds import (
    EIGHT_PI,
    asymptotic_constant,
    best_bound,
    closed_form_f5,
    critical_points,
    derived_quantities,
    general_bound,
    general_bound_over_8pi,
    optimal_bound_for_n,
    yang_yau,
    yang_yau_over_8pi,
)
from lambda_bound.certify import (
    Verdict,
    check_amax_exceeds_endpoint,
    check_endpoint_thresholds,
    check_f5_dominance,
    load_table1,
    reproduce_table1,
)
from lambda_bound.fields import IntervalField
from lambda_bound.spectral import (
    Lattice2D,
    check_against_bound,
    flat_torus,
    icosphere,
    mesh_normalized_lambda1,
    torus_normalized_lambda1,
)

RESULTS = {}


def record(number, title, ok, detail):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}"
    RESULTS[number] = line
    print(line)
    assert ok, line


def test_criterion_1_genus3_value():
    r = optimal_bound_for_n(2, 3)
    target = 16 * (4 - math.sqrt(7)) * math.pi
    rel = abs(r.value - target) / target
    chosen = best_bound(3).chosen_n
    record(1, "interior minimum value at genus 3", rel <= 1e-12 and chosen == 2,
           f"F2(3) = {r.value:.15g}, rel err {rel:.1e}, best n = {chosen}")


def test_criterion_2_closed_form_identity():
    t0 = time.perf_counter()
    e5 = 1 / math.sqrt(60)
    worst, where = 0.0, None
    for g in range(0, 100_001):
        cf = closed_form_f5(g)
        rel = abs(general_bound(e5, 5, g, 0) - cf) / cf
        if rel > worst:
            worst, where = rel, g
    dt = time.perf_counter() - t0
    record(2, "closed form of F5 on [0, 1e5]", worst <= 1e-9 and dt < 5,
           f"max rel diff {worst:.1e} at genus {where}, {dt:.2f} s")


def test_criterion_3_table1():
    t0 = time.perf_counter()
    r = reproduce_table1()
    dt = time.perf_counter() - t0
    table = load_table1()
    n1 = sorted(g for g in range(3, 102) if best_bound(g).chosen_n == 1)
    ok = r.verdict is Verdict.CERTIFIED and r.instances == 99 and n1 == [4, 6, 8, 10, 14] and dt < 1
    ok &= all(table[g] == [1] for g in n1)
    record(3, "Table 1 reproduction for genus 3..101", ok,
           f"{r.verdict.value}, {r.instances} genera, n=1 exactly at {n1}, {dt:.2f} s")


def test_criterion_4_yang_yau_identity():
    bad = [g for g in range(0, 10_001)
           if 2 * optimal_bound_for_n(1, g).over_8pi != 2 * yang_yau_over_8pi(g)]
    record(4, "n=1 equals 8 pi floor((genus+3)/2) on [0, 1e4]", not bad,
           f"{len(bad)} mismatches; yang_yau(10000) = {yang_yau(10000):.12g}")


def test_criterion_5_asymptotic_constant():
    g = 10**8
    ratio = closed_form_f5(g) / (EIGHT_PI * g)
    const = asymptotic_constant()
    formula = 5 / 6 - 89 / (6 * (52 - 4 * math.sqrt(15)))
    ok = abs(ratio - 0.4270302) <= 1e-6 and abs(const - formula) <= 1e-12
    record(5, "asymptotic constant", ok,
           f"F5(1e8)/(8 pi 1e8) = {ratio:.10f}, constant = {const:.13f}")


def test_criterion_6_linear_envelope():
    worst = max(closed_form_f5(g) - EIGHT_PI * (0.4271 * g + 2.8501) for g in range(0, 10_001))
    record(6, "F5 below 8 pi (0.4271 genus + 2.8501) on [0, 1e4]", worst <= 0,
           f"max excess {worst:.4f} (negative means below)")


def test_criterion_7_certified_lemmas():
    t0 = time.perf_counter()
    results = [
        check_amax_exceeds_endpoint(range(2, 13), range(0, 301), max_bits=1024),
        check_endpoint_thresholds(max_bits=1024),
        check_f5_dominance(max_bits=1024),
    ]
    dt = time.perf_counter() - t0
    ok = all(r.verdict is Verdict.CERTIFIED and r.precision_used <= 1024 for r in results) and dt < 60
    detail = "; ".join(
        f"{r.claim_id}: {r.verdict.value} ({r.instances} instances, {r.precision_used} bits"
        + (f", witnesses {r.witnesses[:4]}" if r.witnesses else "") + ")"
        for r in results
    )
    record(7, "certified lemma suite", ok, f"{detail}; {dt:.1f} s")


def _exact_central_difference(a, n, g, h=Fraction(1, 10**6)):
    field = IntervalField(256)
    a = Fraction(a)
    up = general_bound_over_8pi(a + h, n, g, 0, field)
    dn = general_bound_over_8pi(a - h, n, g, 0, field)
    return EIGHT_PI * float((up - dn).mid / (2 * h))


def test_criterion_8_critical_points():
    rng = random.Random(20261016)
    field = IntervalField(128)
    worst_deriv = worst_prod = 0.0
    interior = enclosed = samples = 0
    for _ in range(1000):
        n, g = rng.randint(1, 12), rng.randint(0, 300)
        dq = derived_quantities(n, g)
        if dq.delta == 0:
            continue
        samples += 1
        cp = critical_points(n, g)
        if abs(cp.a_min) < dq.endpoint:
            interior += 1
            worst_deriv = max(worst_deriv, abs(_exact_central_difference(cp.a_min, n, g)))
        if n > 1:
            expected = (n * n - 1) / (2 * float(dq.delta) * (n + 1) ** 2)
            worst_prod = max(worst_prod, abs(cp.a_min * cp.a_max - expected) / expected)
        enc = critical_points(n, g, 0, field)
        best_f, best_i = optimal_bound_for_n(n, g), optimal_bound_for_n(n, g, field)
        pairs = [(enc.a_min, cp.a_min), (enc.a_max, cp.a_max), (best_i.over_8pi, best_f.over_8pi)]
        ok = True
        for box, x in pairs:
            slack = Fraction(abs(x)) * Fraction(1, 10**13)
            ok &= box.lo - slack <= Fraction(x) <= box.hi + slack
        enclosed += ok
    ok = worst_deriv <= 1e-6 and worst_prod <= 1e-12 and enclosed == samples
    record(8, "critical-point properties over 1000 random (n, genus)", ok,
           f"{samples} samples with delta > 0, {interior} interior: max |dF/da| {worst_deriv:.1e}, "
           f"max root-product rel err {worst_prod:.1e}, interval encloses float in {enclosed}/{samples}")


def test_criterion_9_spectral():
    t0 = time.perf_counter()
    hexa = torus_normalized_lambda1(Lattice2D((1.0, 0.0), (0.5, math.sqrt(3) / 2)))
    square = torus_normalized_lambda1(Lattice2D((1.0, 0.0), (0.0, 1.0)))
    sphere = mesh_normalized_lambda1(icosphere(4))
    torus = mesh_normalized_lambda1(flat_torus(128, 128))
    e_hex = abs(hexa.normalized - 8 * math.pi**2 / math.sqrt(3)) / (8 * math.pi**2 / math.sqrt(3))
    e_sq = abs(square.normalized - 4 * math.pi**2) / (4 * math.pi**2)
    e_sph = abs(sphere.normalized - 8 * math.pi) / (8 * math.pi)
    e_tor = abs(torus.normalized - 4 * math.pi**2) / (4 * math.pi**2)
    checks = [check_against_bound(hexa, 1), check_against_bound(square, 1),
              check_against_bound(sphere, 0, slack=0.02), check_against_bound(torus, 1, slack=0.02)]
    dt = time.perf_counter() - t0
    ok = (e_hex <= 1e-9 and hexa.normalized <= 16 * math.pi and e_sq <= 1e-9 and e_sph <= 0.015
          and e_tor <= 0.02 and all(c.passed for c in checks) and dt < 120)
    record(9, "spectral cross-checks", ok,
           f"hex torus rel {e_hex:.1e}, square torus rel {e_sq:.1e}, icosphere(4) {100 * e_sph:.2f}%, "
           f"torus mesh 128^2 {100 * e_tor:.2f}%, bound checks {sum(c.passed for c in checks)}/4, {dt:.1f} s")


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-v", "-s"]))

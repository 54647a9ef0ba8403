"""Acceptance criteria, one PASS/FAIL line each at the pinned tolerance.

Run ``pytest tests/test_acceptance.py -s`` to see the lines inline; they are
also repeated in the terminal summary.
"""
import math
import random
import time
from fractions import Fraction

import numpy as np

from braidexp import biseq, fourier_oracle, group_algebra, kontsevich, series_engine, vassiliev
from braidexp.fourier_oracle import exp_tau_coeff, parseval_check, quadrature_coeff, theta_grid, theta_power_coeff

PI2_3 = math.pi**2 / 3


def test_c01_exp_tau_oracle(criterion):
    t0 = time.perf_counter()
    worst = 0.0
    for n in range(-16, 17):
        value, _ = exp_tau_coeff(n, 60)
        worst = max(worst, abs(value - (1.0 if n == 1 else 0.0)))
    dt = time.perf_counter() - t0
    ok = worst <= 1e-12 and dt < 1.0
    assert criterion("C1 exp(tau)=q oracle, terms 60, |n|<=16", ok, f"max err {worst:.2e} <= 1e-12, {dt:.3f}s < 1s")


def test_c02_exp_tau_direct_soundness(criterion):
    t0 = time.perf_counter()
    reports = [r for r in series_engine.verify_exp_tau(2048, 20, 16) if r.name.startswith("direct")]
    dt = time.perf_counter() - t0
    worst = max(r.discrepancy for r in reports)
    bound = reports[0].bound
    c1 = next(r for r in reports if r.name == "direct c_1(exp tau)")
    ok = all(r.discrepancy <= r.bound for r in reports) and c1.discrepancy < 0.05 and dt < 30
    assert criterion(
        "C2 exp(tau)=q direct, window 2048, terms 20",
        ok,
        f"max err {worst:.2e} <= bound {bound:.3f}; |c1-1| {c1.discrepancy:.2e} < 0.05; {dt:.1f}s < 30s",
    )


def test_c03_parseval_norms(criterion):
    worst = 0.0
    for m in range(1, 9):
        s = fourier_oracle.tau_power(m, 10**5)
        total = math.fsum(s.coefficients**2) + s.tail_bound**2
        target = math.pi ** (2 * m) / (2 * m + 1)
        worst = max(worst, abs(total - target) / target)
    basel = fourier_oracle.tau_power(1, 10**5)
    basel_err = abs(math.fsum(basel.coefficients**2) + basel.tail_bound**2 - PI2_3) / PI2_3
    ok = worst <= 1e-10 and basel_err <= 1e-10
    assert criterion("C3 ||tau^m||^2 = pi^2m/(2m+1), m=1..8, window 1e5", ok, f"max rel err {worst:.2e} <= 1e-10")


def test_c04_tau_squared_cross_validation(criterion):
    c1 = theta_power_coeff(2, 1).evaluate()
    c0 = theta_power_coeff(2, 0).evaluate()
    grid = theta_grid(4097)
    f = (1j * grid) ** 2
    q1, q0 = quadrature_coeff(f, 1)[0], quadrature_coeff(f, 0)[0]
    t = series_engine.tau(4096)
    sq = biseq.convolve(t, t)
    conv_err = max(abs(sq[1] - c1), abs(sq[0] - c0))
    ok = (
        c1 == 2.0
        and abs(c0 + PI2_3) <= 1e-15
        and abs(q1 - c1) <= 1e-8
        and abs(q0 - c0) <= 1e-8
        and conv_err <= sq.tail_bound
    )
    assert criterion(
        "C4 c1(tau^2)=2, c0(tau^2)=-pi^2/3 vs quadrature and convolution",
        ok,
        f"quad err {max(abs(q1 - c1), abs(q0 - c0)):.2e} <= 1e-8; conv err {conv_err:.2e} <= bound {sq.tail_bound:.2e}",
    )


def test_c05_parseval_checker(criterion):
    # The left side is a partial sum over |n| <= 1e4, which misses
    # 2*zeta(2, 10001) ~ 2e-4 of the Basel sum: a 1e-6 tolerance cannot hold.
    grid = theta_grid(4097)
    t = series_engine.tau(10**4)
    rep = parseval_check(t, t, 10**4, grid, grid)
    lhs_err = abs(rep.computed - PI2_3)
    rhs_err = abs(rep.target - PI2_3)
    ok = lhs_err <= 1e-6 and rhs_err <= 1e-6
    criterion(
        "C5 Parseval checker, A=B=theta, 4097 samples, window 1e4",
        ok,
        f"lhs err {lhs_err:.2e}, rhs err {rhs_err:.2e}, tolerance 1e-6; report within own bound: {rep.passed}",
    )
    assert rep.passed
    assert ok, "partial sum over |n|<=1e4 is 2*zeta(2,10001) ~ 2e-4 short of pi^2/3"


def test_c06_simplex(criterion):
    vols = all(kontsevich.simplex_volume_exact(n) * math.factorial(n) == 1 for n in range(1, 11))
    slice_ok = kontsevich.b_constant_slice(2, 3) == Fraction(9, 2)
    product = all(
        sum(kontsevich.b_constant_slice(i, k) * kontsevich.b_constant_slice(m - i, kp) for i in range(m + 1))
        == Fraction(k + kp) ** m / math.factorial(m)
        for m in range(9)
        for k in range(-3, 4)
        for kp in range(-3, 4)
    )
    est, se = kontsevich.simplex_volume_mc(3, 10**6, seed=0)
    mc_ok = abs(est - 1 / 6) <= 3 * se
    ok = vols and slice_ok and product and mc_ok
    assert criterion(
        "C6 simplex volumes, b slices, product rule, Monte Carlo",
        ok,
        f"exact {vols and slice_ok and product}; MC n=3 {est:.6f} vs 1/6, |diff| {abs(est - 1 / 6):.1e} <= 3se {3 * se:.1e}",
    )


def test_c07_vassiliev(criterion):
    degrees = all(vassiliev.vassiliev_degree(vassiliev.Q_MINUS_ONE**d) == d for d in range(0, 6))
    dens = True
    for n in (1, 10, 10**3, 10**6):
        w = vassiliev.density_witness(n)
        dens &= vassiliev.augmentation(w) == 0 and vassiliev.l2_distance_sq(w, vassiliev.ONE) == Fraction(1, n)
    assert criterion("C7 Vassiliev degree of (q-1)^d, density witnesses", degrees and dens, f"degrees {degrees}; density {dens}")


def test_c08_abel(criterion):
    near = vassiliev.abel_twist_sum(1 - 1e-6)
    near_err = abs(near.computed - 1)
    gaps = {x: abs(vassiliev.abel_twist_sum(x).computed - 2 * x / (1 + x)) for x in (0.5, 0.9, 0.999)}
    ok = near_err <= 1e-5 and all(g <= 1e-12 for g in gaps.values())
    assert criterion(
        "C8 Abel twist sum",
        ok,
        f"|S(1-1e-6) - 1| {near_err:.2e} <= 1e-5; max closed-form gap {max(gaps.values()):.1e} <= 1e-12",
    )


def test_c09_constructor_identity(criterion):
    ok = True
    for n in (1, 10, 10**3):
        a, b = series_engine.tau(n), series_engine.tau_via_log_trick(n, n)
        ok &= a.lo == b.lo and np.array_equal(a.coefficients, b.coefficients) and a.tail_bound == b.tail_bound
    assert criterion("C9 tau(N) == tau_via_log_trick(N, N), N in {1,10,1e3}", ok, "bitwise equal")


def _brute(a, b):
    acc = {}
    for u, x in a.support.items():
        for v, y in b.support.items():
            raw = list(u.free_part) + list(v.free_part)
            i = 0
            while i < len(raw) - 1:
                if raw[i] == -raw[i + 1]:
                    del raw[i : i + 2]
                    i = max(i - 1, 0)
                else:
                    i += 1
            w = group_algebra.GroupWord(tuple(raw), u.central_exponent + v.central_exponent)
            acc[w] = acc.get(w, 0) + x * y
    return group_algebra.GroupAlgebraElement(acc)


def test_c10_group_algebra(criterion):
    rng = random.Random(10)
    idem = assoc = conv = True
    for _ in range(200):
        w = group_algebra.random_word(rng)
        idem &= group_algebra.reduce(w.free_part, w.central_exponent) == w
        a, b, c = (group_algebra.random_word(rng) for _ in range(3))
        assoc &= group_algebra.multiply(group_algebra.multiply(a, b), c) == group_algebra.multiply(
            a, group_algebra.multiply(b, c)
        )
    for _ in range(100):
        a, b = group_algebra.random_element(rng, 20), group_algebra.random_element(rng, 20)
        conv &= group_algebra.convolve_finite(a, b) == _brute(a, b)
    shells = all(len(list(group_algebra.reduced_words(L))) == 4 * 3 ** (L - 1) for L in range(1, 9))
    probes = [group_algebra.l2_product_probe(p, 2.0, 6) for p in group_algebra.PROFILES]
    probes.append(group_algebra.l2_product_probe("power", 0.6, 6))
    probe_ok = all(group_algebra.is_monotone(r.table) and r.passed is None and r.target is None for r in probes)
    ok = idem and assoc and conv and shells and probe_ok
    assert criterion(
        "C10 group algebra of F2 x Z",
        ok,
        f"idempotent {idem}; associative {assoc}; convolve {conv}; shells {shells}; probe report-only {probe_ok}",
    )

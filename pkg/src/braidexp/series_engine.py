"""Building tau and computing exp(tau) by direct convolution.

The direct exponential certifies its output with an l2 error bound assembled
from three pieces:

* truncation: each power is re-truncated to ``|n| <= window``; the dropped
  mass is propagated through later multiplications by the operator norm of
  convolution with the input (:func:`biseq.multiplier_norm_bound`);
* series remainder: ``|a^m|_2 <= G^(m-1) |a|_2`` with ``G`` that operator norm;
* input tail: for a skew input (purely imaginary symbol) the pointwise bound
  ``|e^{ix} - e^{iy}| <= |x - y|`` gives ``|exp(a) - exp(A)|_2 <= tail``.
"""
from __future__ import annotations

import math

import numpy as np
from scipy.special import zeta

from . import biseq
from .biseq import BilateralSequence, convolve, delta, scale, truncate
from .fourier_oracle import exp_series_majorant, exp_tau_coeff
from .report import CheckReport


def tau_tail(window: int) -> float:
    """``sqrt(sum_{|k| > window} 1/k^2)``."""
    return math.sqrt(2.0 * float(zeta(2, window + 1)))


def tau(window: int) -> BilateralSequence:
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    k = np.arange(-window, window + 1)
    c = np.zeros(k.size)
    nz = k != 0
    # (-1)^(k+1)/k covers both signs of k
    c[nz] = np.where(k[nz] % 2 == 0, -1.0, 1.0) / k[nz]
    return BilateralSequence(-window, c, tau_tail(window))


def tau_via_log_trick(window: int, series_terms: int) -> BilateralSequence:
    """tau as ``log(1+q) - log(1+p)``, expanded term by term and then truncated."""
    if window < 1:
        raise ValueError(f"window must be >= 1, got {window}")
    if series_terms < window:
        raise ValueError("series_terms must be >= window")
    acc = biseq.zero()
    for n in range(1, series_terms + 1):
        c = (1.0 if n % 2 else -1.0) / n
        acc = biseq.add(acc, scale(biseq.add(delta(n), scale(delta(-n), -1.0)), c))
    out = truncate(acc, window)
    return BilateralSequence(out.lo, out.coefficients, tau_tail(window))


def exp_direct(a: BilateralSequence, terms: int, window: int) -> BilateralSequence:
    """``sum_{m<terms} a^m / m!`` with every power truncated to ``|n| <= window``.

    The returned ``tail_bound`` bounds ``|exp(a) - result|_2``.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    if window < 0:
        raise ValueError("window must be >= 0")
    if a.tail_bound > 0 and not (a.tail_is_l2 and biseq.is_skew(a)):
        raise ValueError(
            "cannot certify exp of an inexact input unless it is skew with an l2 tail"
        )
    exact = BilateralSequence(a.lo, a.coefficients)
    G = biseq.multiplier_norm_bound(exact)

    acc = np.zeros(2 * window + 1)
    acc[window] = 1.0
    power = delta(0)
    err = 0.0  # l2 error of the current truncated power
    err_total = 0.0
    fact = 1
    for m in range(1, terms):
        full = convolve(power, exact)
        power = truncate(full, window)
        err = G * err + power.tail_bound
        power = BilateralSequence(power.lo, power.coefficients)
        fact *= m
        acc += power.window(-window, window) / fact
        err_total += err / fact
    if G > 0:
        remainder = biseq.l2_norm(exact) / G * exp_series_majorant(terms, G)
    else:
        remainder = 0.0
    return BilateralSequence(-window, acc, err_total + remainder + a.tail_bound)


def verify_exp_tau(window: int = 2048, terms: int = 40, probe_range: int = 16, tolerance: float = 0.0) -> list[CheckReport]:
    if probe_range > window:
        raise ValueError("probe_range must be <= window")
    reports = []
    for n in range(-probe_range, probe_range + 1):
        value, bound = exp_tau_coeff(n, terms)
        reports.append(
            CheckReport.check(
                f"oracle c_{n}(exp tau)",
                value,
                1.0 if n == 1 else 0.0,
                bound,
                tolerance,
                note="series tail pi^M/M!/(1-pi/(M+1)) plus evaluation rounding",
            )
        )
    direct = exp_direct(tau(window), terms, window)
    for n in range(-probe_range, probe_range + 1):
        reports.append(
            CheckReport.check(
                f"direct c_{n}(exp tau)",
                direct[n],
                1.0 if n == 1 else 0.0,
                direct.tail_bound,
                tolerance,
                note="l2 bound: truncation propagated by sup|symbol|, series remainder, input tail",
            )
        )
    return reports

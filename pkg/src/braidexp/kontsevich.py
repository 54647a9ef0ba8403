"""Iterated integrals over the ordered simplex ``1 >= h_1 > ... > h_n >= 0``.

For the two-strand braid ``q^k`` every slice twists by the same amount, so
the degree-m integrand is the constant ``k^m`` and the whole computation is
exact polynomial integration, innermost variable first.
"""
from __future__ import annotations

import math
from fractions import Fraction

import numpy as np

from . import _kernels

MAX_DEGREE = 20


def _integrate_from_zero(poly: list[Fraction]) -> list[Fraction]:
    # p(x) = sum p_i x^i  ->  int_0^x p
    return [Fraction(0)] + [c / (i + 1) for i, c in enumerate(poly)]


def iterated_simplex_integral(n: int, integrand: Fraction = Fraction(1)) -> Fraction:
    """Integral of a constant over the ordered n-simplex, by nested exact integration."""
    poly = [Fraction(integrand)]
    for _ in range(n):
        poly = _integrate_from_zero(poly)
    # the outermost variable h_1 already ran over [0, 1]; poly is now a
    # polynomial in a dummy upper limit, evaluated at 1
    return sum(poly, Fraction(0))


def simplex_volume_exact(n: int) -> Fraction:
    if not 1 <= n <= MAX_DEGREE:
        raise ValueError(f"n must lie in 1..{MAX_DEGREE}, got {n}")
    return iterated_simplex_integral(n)


def b_constant_slice(m: int, k: int) -> Fraction:
    """Degree-m invariant of ``q^k`` as the coefficient of ``t^m``: ``k^m/m!``."""
    if not 0 <= m <= MAX_DEGREE:
        raise ValueError(f"m must lie in 0..{MAX_DEGREE}, got {m}")
    return iterated_simplex_integral(m, Fraction(k) ** m)


def scalar_exp_shadow(k: int, terms: int = 40) -> float:
    """``sum_{m<terms} b_m(q^k)``; should approach ``e^k``."""
    return math.fsum(float(b_constant_slice(m, k)) for m in range(min(terms, MAX_DEGREE + 1)))


def simplex_volume_mc(n: int, samples: int, seed: int = 0, chunk: int = 1 << 18) -> tuple[float, float]:
    """Fraction of uniform points of ``[0,1]^n`` that are strictly decreasing, with binomial stderr."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if samples < 100:
        raise ValueError("samples must be >= 100")
    rng = np.random.default_rng(seed)
    hits = 0
    left = samples
    while left:
        rows = min(chunk, left)
        hits += _kernels.count_ordered(rng.random((rows, n)))
        left -= rows
    p = hits / samples
    return p, math.sqrt(p * (1.0 - p) / samples)

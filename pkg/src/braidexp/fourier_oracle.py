"""Exact Fourier coefficients of ``(i theta)^m`` on ``[-pi, pi]``.

The coefficients ``c_n(tau^m)`` are rational combinations of powers of pi.
They are computed two ways:

* :func:`theta_power_coeff` runs the integration-by-parts recursion on the
  moments ``(1/2pi) int e^{-in theta} theta^m``, carrying real and imaginary
  parts as separate :class:`PiPolynomial` values, then multiplies by ``i^m``;
* :func:`closed_form_terms` is the recursion unrolled by hand, used for fast
  vectorised evaluation over large windows (:func:`tau_power`).

Simpson quadrature of the defining integral gives a third, numerical route.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Sequence

import numpy as np
from scipy.special import zeta

from . import _kernels
from .biseq import BilateralSequence, l2_norm
from .report import CheckReport

_EPS = np.finfo(float).eps


@dataclass(frozen=True)
class PiPolynomial:
    """``sum_j r_j pi^j`` with exact rational ``r_j``; zero terms are never stored."""

    terms: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for j, r in dict(self.terms).items():
            if j < 0:
                raise ValueError("powers of pi must be nonnegative")
            r = Fraction(r)
            if r:
                clean[int(j)] = r
        object.__setattr__(self, "terms", dict(sorted(clean.items())))

    @classmethod
    def constant(cls, r) -> "PiPolynomial":
        return cls({0: Fraction(r)})

    @classmethod
    def pi_power(cls, j: int, r=1) -> "PiPolynomial":
        return cls({j: Fraction(r)})

    def __add__(self, other):
        other = _as_pipoly(other)
        out = dict(self.terms)
        for j, r in other.terms.items():
            out[j] = out.get(j, 0) + r
        return PiPolynomial(out)

    __radd__ = __add__

    def __neg__(self):
        return PiPolynomial({j: -r for j, r in self.terms.items()})

    def __sub__(self, other):
        return self + (-_as_pipoly(other))

    def __rsub__(self, other):
        return _as_pipoly(other) - self

    def __mul__(self, other):
        if isinstance(other, PiPolynomial):
            out: dict[int, Fraction] = {}
            for i, r in self.terms.items():
                for j, s in other.terms.items():
                    out[i + j] = out.get(i + j, 0) + r * s
            return PiPolynomial(out)
        c = Fraction(other)
        return PiPolynomial({j: r * c for j, r in self.terms.items()})

    __rmul__ = __mul__

    def __truediv__(self, c):
        c = Fraction(c)
        return PiPolynomial({j: r / c for j, r in self.terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = PiPolynomial.constant(other)
        if not isinstance(other, PiPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __bool__(self):
        return bool(self.terms)

    def evaluate(self) -> float:
        return math.fsum(float(r) * math.pi**j for j, r in self.terms.items())

    def magnitude(self) -> float:
        """``sum_j |r_j| pi^j``; scales the rounding error of :meth:`evaluate`."""
        return math.fsum(abs(float(r)) * math.pi**j for j, r in self.terms.items())

    def rounding_bound(self) -> float:
        return (len(self.terms) + 2) * _EPS * self.magnitude()

    def __repr__(self):
        if not self.terms:
            return "PiPolynomial(0)"
        parts = []
        for j, r in self.terms.items():
            parts.append(f"({r})" if j == 0 else f"({r})*pi^{j}")
        return "PiPolynomial(" + " + ".join(parts) + ")"


def _as_pipoly(x) -> PiPolynomial:
    return x if isinstance(x, PiPolynomial) else PiPolynomial.constant(x)


_ZERO = PiPolynomial()


@lru_cache(maxsize=None)
def _theta_moment(m: int, n: int) -> tuple[PiPolynomial, PiPolynomial]:
    """``(1/2pi) int_{-pi}^{pi} e^{-in theta} theta^m d theta`` as (re, im)."""
    if n == 0:
        # (pi^{m+1} - (-pi)^{m+1}) / (2 pi (m+1))
        if m % 2 == 0:
            return PiPolynomial.pi_power(m, Fraction(1, m + 1)), _ZERO
        return _ZERO, _ZERO
    if m == 0:
        return _ZERO, _ZERO
    # fill the cache bottom-up so deep m never recurses
    for k in range(1, m):
        _theta_moment(k, n)
    re, im = _theta_moment(m - 1, n)
    # J(m) = (i/n)(-1)^n (pi^m - (-pi)^m)/(2pi) - (i m/n) J(m-1)
    sign = 1 if n % 2 == 0 else -1
    boundary = PiPolynomial.pi_power(m - 1, Fraction(sign, n)) if m % 2 == 1 else _ZERO
    # -(i m/n)(re + i im) = (m/n) im - i (m/n) re
    return im * Fraction(m, n), boundary - re * Fraction(m, n)


@lru_cache(maxsize=None)
def theta_power_coeff(m: int, n: int) -> PiPolynomial:
    """Exact ``c_n((i theta)^m) = c_n(tau^m)`` as a polynomial in pi."""
    if m < 0:
        raise ValueError("m must be >= 0")
    re, im = _theta_moment(m, n)
    # multiply by i^m
    for _ in range(m % 4):
        re, im = -im, re
    if im:
        raise ArithmeticError(f"imaginary part survived for m={m}, n={n}: {im}")
    return re


@lru_cache(maxsize=None)
def closed_form_terms(m: int) -> tuple[tuple[Fraction, int, int], ...]:
    """Terms ``(r, p, e)`` with ``c_n(tau^m) = (-1)^n sum r pi^p / n^e`` for ``n != 0``."""
    if m < 0:
        raise ValueError("m must be >= 0")
    fm = math.factorial(m)
    out = []
    for l in range(1, m + 1, 2):
        s = -1 if ((l + 1) // 2) % 2 else 1
        out.append((Fraction(s * fm, math.factorial(l)), l - 1, m - l + 1))
    return tuple(out)


def closed_form_coeff(m: int, n: int) -> PiPolynomial:
    """Exact evaluation of :func:`closed_form_terms` at one index."""
    if n == 0:
        return theta_power_coeff(m, 0)
    sign = 1 if n % 2 == 0 else -1
    out: dict[int, Fraction] = {}
    for r, p, e in closed_form_terms(m):
        out[p] = out.get(p, 0) + sign * r / Fraction(n) ** e
    return PiPolynomial(out)


def tau_power_norm_sq(m: int) -> float:
    """``|tau^m|_2^2 = (1/2pi) int theta^{2m} = pi^{2m}/(2m+1)``."""
    return math.pi ** (2 * m) / (2 * m + 1)


def tau_power_tail_sq(m: int, window: int) -> float:
    """``sum_{|n|>window} c_n(tau^m)^2`` summed analytically with Hurwitz zeta."""
    if m == 0:
        return 0.0
    terms = closed_form_terms(m)
    parts = []
    for r1, p1, e1 in terms:
        for r2, p2, e2 in terms:
            parts.append(float(r1 * r2) * math.pi ** (p1 + p2) * float(zeta(e1 + e2, window + 1)))
    return 2.0 * math.fsum(parts)


def tau_power(m: int, window: int) -> BilateralSequence:
    """Window ``|n| <= window`` of ``tau^m`` read off the closed form, with its exact l2 tail."""
    if m < 1:
        raise ValueError("m must be >= 1; tau^0 is delta(0)")
    if window < 1:
        raise ValueError("window must be >= 1")
    terms = closed_form_terms(m)
    coefs = np.array([float(r) for r, _, _ in terms])
    pi_pows = np.array([p for _, p, _ in terms], dtype=np.float64)
    n_pows = np.array([e for _, _, e in terms], dtype=np.float64)
    ns = np.arange(-window, window + 1)
    vals = np.empty(ns.size)
    nz = ns != 0
    vals[nz] = _kernels.closed_form_values(ns[nz], coefs, pi_pows, n_pows)
    vals[window] = theta_power_coeff(m, 0).evaluate()
    tail = math.sqrt(max(tau_power_tail_sq(m, window), 0.0))
    return BilateralSequence(-window, vals, tail)


def exp_series_majorant(terms: int, radius: float = math.pi) -> float:
    """``sum_{m >= terms} radius^m / m!``, or an upper bound for it."""
    M = terms
    if M + 1 > radius:
        # ratio of consecutive terms is at most radius/(M+1)
        return radius**M / math.factorial(M) / (1.0 - radius / (M + 1))
    return max(math.exp(radius) - math.fsum(radius**k / math.factorial(k) for k in range(M)), 0.0)


def exp_tau_coeff(n: int, terms: int) -> tuple[float, float]:
    """``c_n(exp tau)`` from the first ``terms`` powers, and an error bound.

    The bound is the neglected series mass ``sum_{m>=terms} pi^m/m!`` (since
    ``|c_n(tau^m)| <= |tau^m|_2 <= pi^m``) plus the floating-point rounding of
    each evaluated coefficient.
    """
    if terms < 1:
        raise ValueError("terms must be >= 1")
    vals, rounding = [], []
    fact = 1
    for m in range(terms):
        if m:
            fact *= m
        c = theta_power_coeff(m, n)
        vals.append(c.evaluate() / fact)
        rounding.append(c.rounding_bound() / fact)
    value = math.fsum(vals)
    bound = exp_series_majorant(terms) + math.fsum(rounding)
    return value, bound


# -- quadrature ----------------------------------------------------------


def theta_grid(samples: int) -> np.ndarray:
    """Uniform grid on ``[-pi, pi]`` with endpoints; ``samples`` must be odd."""
    if samples < 3 or samples % 2 == 0:
        raise ValueError(f"need an odd sample count >= 3, got {samples}")
    return np.linspace(-math.pi, math.pi, samples)


def _simpson(values: np.ndarray) -> complex:
    n = values.size
    if n < 3 or n % 2 == 0:
        raise ValueError(f"need an odd sample count >= 3, got {n}")
    h = 2 * math.pi / (n - 1)
    w = np.ones(n)
    w[1:-1:2] = 4.0
    w[2:-1:2] = 2.0
    return complex(h / 3.0 * np.dot(w, values))


def quadrature_coeff(f: Sequence[complex], n: int) -> tuple[float, float]:
    """Composite Simpson value of ``(1/2pi) int e^{-in theta} f(theta)``; returns ``(re, im)``."""
    f = np.asarray(f)
    theta = theta_grid(f.size)
    val = _simpson(np.exp(-1j * n * theta) * f) / (2 * math.pi)
    return val.real, val.imag


def _simpson_error_estimate(values: np.ndarray) -> float:
    # Richardson: |S_h - S_2h| / 15 when the coarse grid is also Simpson-admissible
    if (values.size - 1) % 4 == 0 and values.size >= 5:
        fine = _simpson(values)
        coarse = _simpson(values[::2])
        return abs(fine - coarse) / 15.0 / (2 * math.pi)
    return 0.0


def parseval_check(
    a_coeffs: BilateralSequence,
    b_coeffs: BilateralSequence,
    lhs_window: int,
    A: Sequence[complex],
    B: Sequence[complex],
    name: str = "parseval",
    tolerance: float = 0.0,
) -> CheckReport:
    """Compare ``sum_{|n|<=L} a_n b_n`` against ``(1/2pi) int A conj(B)``."""
    A = np.asarray(A)
    B = np.asarray(B)
    if A.shape != B.shape:
        raise ValueError(f"grids differ: {A.shape} vs {B.shape}")
    if lhs_window < 0:
        raise ValueError("lhs_window must be >= 0")
    L = lhs_window
    a_in = a_coeffs.window(-L, L)
    b_in = b_coeffs.window(-L, L)
    computed = math.fsum(a_in * b_in)

    def outside(s: BilateralSequence, inner: np.ndarray) -> float:
        return math.sqrt(max(l2_norm(s) ** 2 - math.fsum(inner**2), 0.0)) + s.tail_bound

    a_out, b_out = outside(a_coeffs, a_in), outside(b_coeffs, b_in)
    na, nb = math.sqrt(math.fsum(a_in**2)), math.sqrt(math.fsum(b_in**2))
    seq_bound = na * b_out + a_out * nb + a_out * b_out

    integrand = A * np.conj(B)
    rhs = _simpson(integrand) / (2 * math.pi)
    quad_err = _simpson_error_estimate(integrand)
    return CheckReport.check(
        name,
        computed,
        rhs.real,
        seq_bound + quad_err,
        tolerance,
        note=f"sequence tails {seq_bound:.3e}; simpson estimate {quad_err:.3e}; rhs imag {rhs.imag:.3e}",
    )

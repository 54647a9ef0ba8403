"""Truncated bilateral sequences: elements of l2(Z) with a certified tail.

A :class:`BilateralSequence` stores the coefficients of ``q^lo .. q^hi``
densely, plus ``tail_bound``, an upper bound on the size of whatever the
window does not capture.  For sequences built by :func:`delta`,
:func:`truncate`, the tau constructors and the exponential, that bound is on
the l2 norm of (true element - represented window); ``tail_is_l2`` is True.

:func:`convolve` follows the uniform Cauchy-Schwarz rule, which bounds every
*individual* coefficient of the product but not the l2 norm of its error:
l2 * l2 is not closed in l2.  Its output therefore carries
``tail_is_l2=False`` whenever both inputs had a nonzero tail.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Mapping

import numpy as np

from . import _kernels


@dataclass(frozen=True, eq=False)
class BilateralSequence:
    lo: int
    coefficients: np.ndarray
    tail_bound: float = 0.0
    tail_is_l2: bool = True

    def __post_init__(self):
        c = np.array(self.coefficients, dtype=np.float64).ravel()
        if c.size == 0:
            raise ValueError("empty window; use zero()")
        if not np.all(np.isfinite(c)):
            raise ValueError("non-finite coefficient")
        tb = float(self.tail_bound)
        if not (math.isfinite(tb) and tb >= 0):
            raise ValueError(f"tail_bound must be finite and >= 0, got {tb}")
        if not c.any() and (self.lo != 0 or c.size != 1):
            object.__setattr__(self, "lo", 0)
            c = np.zeros(1)
        c.setflags(write=False)
        object.__setattr__(self, "lo", int(self.lo))
        object.__setattr__(self, "coefficients", c)
        object.__setattr__(self, "tail_bound", tb)

    @property
    def hi(self) -> int:
        return self.lo + self.coefficients.size - 1

    @property
    def indices(self) -> np.ndarray:
        return np.arange(self.lo, self.hi + 1)

    def __len__(self):
        return self.coefficients.size

    def __getitem__(self, n: int) -> float:
        if self.lo <= n <= self.hi:
            return float(self.coefficients[n - self.lo])
        return 0.0

    coeff = __getitem__

    def is_zero(self) -> bool:
        return not self.coefficients.any()

    def is_exact(self) -> bool:
        return self.tail_bound == 0.0

    def window(self, lo: int, hi: int) -> np.ndarray:
        """Coefficients for indices ``lo..hi`` (zero-padded)."""
        out = np.zeros(hi - lo + 1)
        a, b = max(lo, self.lo), min(hi, self.hi)
        if a <= b:
            out[a - lo : b - lo + 1] = self.coefficients[a - self.lo : b - self.lo + 1]
        return out

    def support(self) -> dict[int, float]:
        return {int(n): float(c) for n, c in zip(self.indices, self.coefficients) if c != 0.0}

    def __eq__(self, other):
        # Equal as functions of the index, with equal tails; padding zeros ignored.
        if not isinstance(other, BilateralSequence):
            return NotImplemented
        lo, hi = min(self.lo, other.lo), max(self.hi, other.hi)
        return (
            self.tail_bound == other.tail_bound
            and np.array_equal(self.window(lo, hi), other.window(lo, hi))
        )

    __hash__ = None

    def __repr__(self):
        return (
            f"BilateralSequence(lo={self.lo}, hi={self.hi}, nnz={np.count_nonzero(self.coefficients)}, "
            f"tail_bound={self.tail_bound!r})"
        )

    def to_dict(self) -> dict:
        return {
            "lo": self.lo,
            "coefficients": [float(c) for c in self.coefficients],
            "tail_bound": self.tail_bound,
            "tail_is_l2": self.tail_is_l2,
        }


def zero() -> BilateralSequence:
    return BilateralSequence(0, [0.0])


def delta(n: int) -> BilateralSequence:
    """The braid q^n as a sequence: 1 at index n."""
    return BilateralSequence(int(n), [1.0])


def from_mapping(coeffs: Mapping[int, float], tail_bound: float = 0.0) -> BilateralSequence:
    if not coeffs:
        return BilateralSequence(0, [0.0], tail_bound)
    lo, hi = min(coeffs), max(coeffs)
    c = np.zeros(hi - lo + 1)
    for n, v in coeffs.items():
        c[n - lo] = v
    return BilateralSequence(lo, c, tail_bound)


def add(a: BilateralSequence, b: BilateralSequence) -> BilateralSequence:
    lo, hi = min(a.lo, b.lo), max(a.hi, b.hi)
    return BilateralSequence(
        lo,
        a.window(lo, hi) + b.window(lo, hi),
        a.tail_bound + b.tail_bound,
        a.tail_is_l2 and b.tail_is_l2,
    )


def scale(a: BilateralSequence, c: float) -> BilateralSequence:
    c = float(c)
    if not math.isfinite(c):
        raise ValueError(f"non-finite scalar {c}")
    return BilateralSequence(a.lo, a.coefficients * c, abs(c) * a.tail_bound, a.tail_is_l2)


def sum_sequences(items: Iterable[BilateralSequence]) -> BilateralSequence:
    out = zero()
    for s in items:
        out = add(out, s)
    return out


def l2_norm(a: BilateralSequence) -> float:
    """Norm of the represented window only; combine with ``tail_bound`` yourself."""
    return math.sqrt(math.fsum(a.coefficients**2))


def l1_norm(a: BilateralSequence) -> float:
    return math.fsum(np.abs(a.coefficients))


def convolve(a: BilateralSequence, b: BilateralSequence) -> BilateralSequence:
    """Cauchy product ``(a*b)_n = sum_k a_k b_{n-k}`` over the represented windows.

    The resulting ``tail_bound`` is ``|a|*tb + |b|*ta + ta*tb``, which bounds
    the error of every coefficient of the true product.
    """
    c = _kernels.convolve(a.coefficients, b.coefficients)
    ta, tb = a.tail_bound, b.tail_bound
    tail = l2_norm(a) * tb + l2_norm(b) * ta + ta * tb
    return BilateralSequence(a.lo + b.lo, c, tail, ta == 0.0 and tb == 0.0)


def truncate(a: BilateralSequence, window: int) -> BilateralSequence:
    """Keep ``|n| <= window``; the dropped l2 mass is added to the tail."""
    if window < 0:
        raise ValueError(f"window must be >= 0, got {window}")
    lo, hi = max(a.lo, -window), min(a.hi, window)
    if lo > hi:
        return BilateralSequence(0, [0.0], a.tail_bound + l2_norm(a), a.tail_is_l2)
    kept = a.coefficients[lo - a.lo : hi - a.lo + 1]
    dropped = math.fsum(a.coefficients[: lo - a.lo] ** 2) + math.fsum(a.coefficients[hi - a.lo + 1 :] ** 2)
    return BilateralSequence(lo, kept, a.tail_bound + math.sqrt(dropped), a.tail_is_l2)


def is_skew(a: BilateralSequence) -> bool:
    """True when ``a_{-n} = -a_n`` exactly, i.e. the symbol is purely imaginary."""
    w = max(abs(a.lo), abs(a.hi))
    c = a.window(-w, w)
    return bool(np.array_equal(c, -c[::-1]))


def multiplier_norm_bound(a: BilateralSequence) -> float:
    """Upper bound on ``sup_theta |sum_n a_n e^{i n theta}|``.

    This is the operator norm of convolution by ``a`` on l2.  The trigonometric
    polynomial is sampled on a fine FFT grid; Bernstein's inequality
    ``|P'| <= K |P|`` turns the grid maximum into a bound.  Never exceeds the
    l1 norm, which is also a valid bound.
    """
    l1 = l1_norm(a)
    if l1 == 0.0:
        return 0.0
    K = max(abs(a.lo), abs(a.hi), 1)
    J = 1 << max(10, math.ceil(math.log2(64 * K)))
    grid = np.zeros(J, dtype=np.complex128)
    np.add.at(grid, a.indices % J, a.coefficients)
    sampled = float(np.abs(np.fft.ifft(grid)).max() * J)
    # grid spacing 2pi/J leaves every theta within pi/J of a sample
    sup = (sampled + 1e-13 * l1) / (1.0 - math.pi * K / J)
    return min(l1, sup)

"""Exact group-ring computations for P2 = <q>.

The Vassiliev subspace ``V_d`` of Q[q, q^-1] is modelled as the d-th power of
the augmentation ideal, i.e. the multiples of ``(q - 1)^d``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping

from . import _kernels
from .report import CheckReport

_EPS = 2.0**-52


@dataclass(frozen=True)
class LaurentElement:
    support: Mapping[int, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {int(e): Fraction(c) for e, c in dict(self.support).items() if c}
        object.__setattr__(self, "support", dict(sorted(clean.items())))

    @classmethod
    def monomial(cls, n: int, c=1) -> "LaurentElement":
        return cls({n: Fraction(c)})

    @classmethod
    def parse(cls, text: str) -> "LaurentElement":
        """Parse ``"e0:c0,e1:c1,..."`` with integer exponents and rational coefficients."""
        out: dict[int, Fraction] = {}
        for item in filter(None, (s.strip() for s in text.split(","))):
            try:
                e, c = item.split(":")
                n = int(e)
                out[n] = out.get(n, Fraction(0)) + Fraction(c.strip())
            except ValueError as exc:
                raise ValueError(f"bad term {item!r}; expected exponent:rational") from exc
        return cls(out)

    def __bool__(self):
        return bool(self.support)

    def __add__(self, other: "LaurentElement") -> "LaurentElement":
        out = dict(self.support)
        for e, c in other.support.items():
            out[e] = out.get(e, 0) + c
        return LaurentElement(out)

    def __neg__(self):
        return LaurentElement({e: -c for e, c in self.support.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, LaurentElement):
            return convolve(self, other)
        c = Fraction(other)
        return LaurentElement({e: c * v for e, v in self.support.items()})

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "LaurentElement":
        if k < 0:
            raise ValueError("negative powers are not in the group ring")
        out = ONE
        for _ in range(k):
            out = out * self
        return out

    def __getitem__(self, n: int) -> Fraction:
        return self.support.get(n, Fraction(0))

    def __repr__(self):
        return "LaurentElement({" + ", ".join(f"{e}: {c}" for e, c in self.support.items()) + "})"


ONE = LaurentElement({0: Fraction(1)})
Q_MINUS_ONE = LaurentElement({1: Fraction(1), 0: Fraction(-1)})


def convolve(a: LaurentElement, b: LaurentElement) -> LaurentElement:
    out: dict[int, Fraction] = {}
    for i, x in a.support.items():
        for j, y in b.support.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return LaurentElement(out)


def augmentation(e: LaurentElement) -> Fraction:
    return sum(e.support.values(), Fraction(0))


def divide_by_q_minus_one(e: LaurentElement) -> tuple[LaurentElement, Fraction]:
    """Synthetic division: ``e = (q - 1) * quotient + remainder`` with constant remainder.

    Done on the shifted polynomial ``q^-lo e``; the remainder is ``e(1)``, the augmentation.
    """
    if not e:
        return LaurentElement(), Fraction(0)
    lo, hi = min(e.support), max(e.support)
    coeffs = [e[n] for n in range(hi, lo - 1, -1)]  # descending
    quot = []
    acc = Fraction(0)
    for c in coeffs[:-1]:
        acc = acc + c
        quot.append(acc)
    remainder = acc + coeffs[-1]
    # quot[i] is the coefficient of q^(hi - 1 - i) in the quotient
    q = LaurentElement({hi - 1 - i: c for i, c in enumerate(quot)})
    return q, remainder


def vassiliev_degree(e: LaurentElement, max_check: int = 64) -> int:
    """Largest ``d <= max_check`` with ``(q - 1)^d`` dividing ``e``."""
    if not e:
        raise ValueError("the zero element lies in every V_d")
    if max_check < 1:
        raise ValueError("max_check must be positive")
    d = 0
    cur = e
    while d < max_check:
        quot, rem = divide_by_q_minus_one(cur)
        if rem != 0:
            break
        cur = quot
        d += 1
    return d


def density_witness(n: int) -> LaurentElement:
    """``q^0 - (1/n)(q + ... + q^n)``: in V_1, at l2 distance ``n^-1/2`` from ``q^0``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    c = Fraction(-1, n)
    sup = {0: Fraction(1)}
    sup.update({i: c for i in range(1, n + 1)})
    return LaurentElement(sup)


def l2_distance_sq(a: LaurentElement, b: LaurentElement) -> Fraction:
    d = a - b
    return sum((c * c for c in d.support.values()), Fraction(0))


def random_element(rng: random.Random, size: int = 6, span: int = 5, den: int = 7) -> LaurentElement:
    return LaurentElement(
        {rng.randint(-span, span): Fraction(rng.randint(-9, 9), rng.randint(1, den)) for _ in range(size)}
    )


def abel_twist_sum(x: float, max_terms: int = 10**8, tolerance: float = 1e-12) -> CheckReport:
    """Abel-damped ``sum (-1)^(n+1) * 2 x^n`` of the twist series, target ``-2 zeta(0) = 1``.

    The bound on the report is the distance ``|1 - 2x/(1+x)|`` of the damped
    value from its x -> 1 limit, plus the truncation remainder and rounding.
    """
    if not 0.0 < x < 1.0:
        raise ValueError(f"x must lie in (0, 1), got {x}")
    if max_terms < 1:
        raise ValueError("max_terms must be positive")
    value, used = _kernels.abel_sum(x, max_terms, 1e-15)
    closed = 2.0 * x / (1.0 + x)
    remainder = 2.0 * x ** (used + 1)
    bias = abs(1.0 - closed)
    # paired terms carry ~4 eps relative error each and sum to ~closed
    rounding = (6.0 + used * _EPS) * _EPS * closed
    return CheckReport.check(
        f"abel twist sum x={x!r}",
        value,
        1.0,
        bias + remainder + rounding,
        tolerance,
        note=f"closed form 2x/(1+x) = {closed!r}; |value - closed| = {abs(value - closed):.3e}; terms used {used}",
        exact={"closed_form": repr(closed), "terms_used": str(used), "closed_form_gap": repr(abs(value - closed))},
    )


def abel_closed_form(x: float) -> float:
    return 2.0 * x / (1.0 + x)

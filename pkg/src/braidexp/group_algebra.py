"""Finitely supported group algebra of P3, modelled as F2 x Z.

Free letters are encoded as signed integers: ``1 = x``, ``-1 = x^-1``,
``2 = y``, ``-2 = y^-1``.  The Z factor is the central full twist.
"""
from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping, Sequence

from scipy.special import zeta

from .report import CheckReport

LETTERS = (1, -1, 2, -2)
_NAMES = {1: "x", -1: "X", 2: "y", -2: "Y"}
_CODES = {v: k for k, v in _NAMES.items()}
MAX_ENUM_LENGTH = 12


def _free_reduce(letters: Iterable[int]) -> tuple[int, ...]:
    stack: list[int] = []
    for a in letters:
        if a not in _NAMES:
            raise ValueError(f"unknown letter {a!r}")
        if stack and stack[-1] == -a:
            stack.pop()
        else:
            stack.append(a)
    return tuple(stack)


@dataclass(frozen=True, order=True)
class GroupWord:
    free_part: tuple[int, ...] = ()
    central_exponent: int = 0

    def __post_init__(self):
        fp = tuple(self.free_part)
        for a, b in zip(fp, fp[1:]):
            if a == -b:
                raise ValueError(f"free part {fp} is not reduced; use reduce()")
        object.__setattr__(self, "free_part", fp)

    @property
    def length(self) -> int:
        return len(self.free_part)

    def inverse(self) -> "GroupWord":
        return GroupWord(tuple(-a for a in reversed(self.free_part)), -self.central_exponent)

    def __mul__(self, other: "GroupWord") -> "GroupWord":
        return multiply(self, other)

    def __str__(self):
        w = "".join(_NAMES[a] for a in self.free_part) or "e"
        return w if self.central_exponent == 0 else f"{w}*c^{self.central_exponent}"

    @classmethod
    def parse(cls, text: str, central: int = 0) -> "GroupWord":
        """``"xYy"`` style: lowercase generators, uppercase inverses, ``e`` for empty."""
        text = text.strip()
        if text in ("", "e"):
            return reduce((), central)
        try:
            return reduce([_CODES[ch] for ch in text], central)
        except KeyError as exc:
            raise ValueError(f"bad word {text!r}") from exc


IDENTITY = GroupWord()


def reduce(letters: Sequence[int], central: int = 0) -> GroupWord:
    return GroupWord(_free_reduce(letters), int(central))


def multiply(a: GroupWord, b: GroupWord) -> GroupWord:
    return GroupWord(_free_reduce(a.free_part + b.free_part), a.central_exponent + b.central_exponent)


@dataclass(frozen=True)
class GroupAlgebraElement:
    support: Mapping[GroupWord, Fraction]

    def __post_init__(self):
        clean = {w: Fraction(c) for w, c in dict(self.support).items() if c}
        object.__setattr__(self, "support", dict(sorted(clean.items())))

    @classmethod
    def delta(cls, w: GroupWord, c=1) -> "GroupAlgebraElement":
        return cls({w: Fraction(c)})

    def __add__(self, other):
        out = dict(self.support)
        for w, c in other.support.items():
            out[w] = out.get(w, 0) + c
        return GroupAlgebraElement(out)

    def __mul__(self, other):
        return convolve_finite(self, other)

    def __len__(self):
        return len(self.support)

    def __getitem__(self, w: GroupWord) -> Fraction:
        return self.support.get(w, Fraction(0))


def convolve_finite(a: GroupAlgebraElement, b: GroupAlgebraElement) -> GroupAlgebraElement:
    out: dict[GroupWord, Fraction] = {}
    for u, x in a.support.items():
        for v, y in b.support.items():
            g = multiply(u, v)
            out[g] = out.get(g, 0) + x * y
    return GroupAlgebraElement(out)


def augmentation(a: GroupAlgebraElement) -> Fraction:
    return sum(a.support.values(), Fraction(0))


def random_word(rng: random.Random, max_len: int = 8, central_span: int = 3) -> GroupWord:
    letters = [rng.choice(LETTERS) for _ in range(rng.randint(0, max_len))]
    return reduce(letters, rng.randint(-central_span, central_span))


def random_element(rng: random.Random, max_support: int = 20, max_len: int = 4) -> GroupAlgebraElement:
    size = rng.randint(1, max_support)
    return GroupAlgebraElement(
        {random_word(rng, max_len): Fraction(rng.randint(-9, 9), rng.randint(1, 6)) for _ in range(size)}
    )


def reduced_words(length: int) -> Iterator[tuple[int, ...]]:
    """All reduced free words of the given length (no central part)."""
    if not 0 <= length <= MAX_ENUM_LENGTH:
        raise ValueError(f"length must lie in 0..{MAX_ENUM_LENGTH}")
    if length == 0:
        yield ()
        return
    stack = [(a,) for a in reversed(LETTERS)]
    while stack:
        w = stack.pop()
        if len(w) == length:
            yield w
            continue
        for a in reversed(LETTERS):
            if a != -w[-1]:
                stack.append(w + (a,))


def shell_size(length: int) -> int:
    """Closed form ``4 * 3^(L-1)``; tests compare it with :func:`reduced_words`."""
    return 1 if length == 0 else 4 * 3 ** (length - 1)


PROFILES = ("power", "delta-x")


def _power_weight(length: int, s: float) -> float:
    # squared shell mass (1 + L)^(-2s), spread evenly over the shell
    return (1.0 + length) ** (-s) / math.sqrt(shell_size(length))


def l2_product_probe(profile: str = "power", s: float = 2.0, L: int = 6) -> CheckReport:
    """Partial absolute sums for the identity coefficient of ``a * b``.

    Emits a table only.  Whether products of square-summable elements of
    the P3 group algebra converge absolutely is left open.
    """
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; choose from {PROFILES}")
    if not 0 <= L <= MAX_ENUM_LENGTH:
        raise ValueError(f"L must lie in 0..{MAX_ENUM_LENGTH}")
    x = GroupWord((1,))
    if profile == "power":
        if not s > 0.5:
            raise ValueError(
                f"profile 'power' with s={s} is not square-summable: shell masses (1+L)^(-2s) need 2s > 1"
            )

        def a(w: tuple[int, ...]) -> float:
            return _power_weight(len(w), s)

        b = a
        total_mass = float(zeta(2 * s, 1))
    else:

        def a(w: tuple[int, ...]) -> float:
            return 1.0 if w == x.free_part else 0.0

        b = a
        total_mass = 1.0

    table = []
    partial = []
    mass = []
    for length in range(L + 1):
        count = 0
        for w in reduced_words(length):
            count += 1
            inv = tuple(-c for c in reversed(w))
            partial.append(abs(a(w)) * abs(b(inv)))
            mass.append(a(w) ** 2)
        table.append(
            {
                "L": length,
                "shell_size": count,
                "partial_sum": math.fsum(partial),
                "l2_mass_a": math.fsum(mass),
            }
        )
    return CheckReport.report_only(
        f"p3 identity-coefficient probe profile={profile} s={s!r}",
        table[-1]["partial_sum"],
        note="report only; convergence of l2 products in P3 is an open problem and no verdict is given",
        exact={"certified_total_l2_mass_a": repr(total_mass)},
        table=table,
    )


def is_monotone(table: Sequence[Mapping], key: str = "partial_sum") -> bool:
    vals = [row[key] for row in table]
    return all(u <= v for u, v in zip(vals, vals[1:]))

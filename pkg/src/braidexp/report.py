from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Optional


@dataclass(frozen=True)
class CheckReport:
    """Outcome of one verification.

    ``passed`` is ``|computed - target| <= max(bound, tolerance)``; it is
    ``None`` for report-only runs that assert nothing.
    """

    name: str
    computed: float
    target: Optional[float]
    bound: float
    passed: Optional[bool]
    tolerance: float = 0.0
    note: str = ""
    exact: dict = field(default_factory=dict)
    table: list = field(default_factory=list)

    @classmethod
    def check(cls, name, computed, target, bound, tolerance=0.0, **extra) -> "CheckReport":
        computed = float(computed)
        target = float(target)
        bound = float(bound)
        if bound < 0 or tolerance < 0:
            raise ValueError("bound and tolerance must be nonnegative")
        passed = abs(computed - target) <= max(bound, tolerance)
        return cls(name, computed, target, bound, passed, float(tolerance), **extra)

    @classmethod
    def exact_check(cls, name, computed: Fraction, target: Fraction, **extra) -> "CheckReport":
        """Exact comparison of rationals; floats are carried for display only."""
        exact = {"computed": exact_str(computed), "target": exact_str(target)}
        exact.update(extra.pop("exact", {}))
        return cls(name, float(computed), float(target), 0.0, computed == target, exact=exact, **extra)

    @classmethod
    def report_only(cls, name, computed, **extra) -> "CheckReport":
        return cls(name, float(computed), None, 0.0, None, **extra)

    @property
    def discrepancy(self) -> float:
        if self.target is None:
            return float("nan")
        return abs(self.computed - self.target)

    def as_dict(self) -> dict[str, Any]:
        d = {
            "name": self.name,
            "computed": self.computed,
            "target": self.target,
            "bound": self.bound,
            "tolerance": self.tolerance,
            "passed": self.passed,
        }
        if self.note:
            d["note"] = self.note
        if self.exact:
            d["exact"] = dict(self.exact)
        if self.table:
            d["table"] = [dict(row) for row in self.table]
        return d


def exact_str(x) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

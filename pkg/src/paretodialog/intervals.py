"""Closed finite intervals and the dominance order between them.

An interval stands for an unknown point somewhere between its bounds.
One interval beats another exactly when every point the first could
hold beats every point the second could hold, i.e. when its lower bound
clears the other's upper bound.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

from .errors import InvalidBounds, NotAContraction, SchemaError


class DominanceMode(enum.Enum):
    """Tie handling for the bound comparison.

    STRICT requires ``lower > upper`` and keeps the order irreflexive,
    which every nesting guarantee in this package relies on.  WEAK uses
    ``>=``; identical degenerate intervals then dominate each other, so
    it is kept only as an explicit option.
    """

    STRICT = "strict"
    WEAK = "weak"


@dataclass(frozen=True)
class Interval:
    """Closed interval [lower, upper] with finite bounds.

    Zero-width intervals are legal and model an exactly known value.
    Bound comparisons are exact; callers wanting tolerance pre-round.
    """

    lower: float
    upper: float

    def __post_init__(self):
        try:
            lo = float(self.lower)
            hi = float(self.upper)
        except (TypeError, ValueError) as exc:
            raise InvalidBounds(
                f"interval bounds must be numbers, got {self.lower!r}, {self.upper!r}"
            ) from exc
        if not (math.isfinite(lo) and math.isfinite(hi)):
            raise InvalidBounds(f"interval bounds must be finite, got [{lo}, {hi}]")
        if hi < lo:
            raise InvalidBounds(f"upper bound {hi} is below lower bound {lo}")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    @property
    def is_degenerate(self) -> bool:
        return self.upper == self.lower

    def contains(self, point: float) -> bool:
        return self.lower <= point <= self.upper

    def encloses(self, other: Interval) -> bool:
        """True when ``other`` is a sub-interval of this one."""
        return self.lower <= other.lower and other.upper <= self.upper

    def dominates(self, other: Interval, mode: DominanceMode = DominanceMode.STRICT) -> bool:
        if mode is DominanceMode.STRICT:
            return self.lower > other.upper
        return self.lower >= other.upper

    def to_json(self) -> list[float]:
        return [self.lower, self.upper]

    @classmethod
    def from_json(cls, doc) -> Interval:
        if (
            not isinstance(doc, (list, tuple))
            or len(doc) != 2
            or any(isinstance(v, bool) or not isinstance(v, (int, float)) for v in doc)
        ):
            raise SchemaError(f"interval must be a two-number array, got {doc!r}")
        return cls(doc[0], doc[1])

    def __str__(self) -> str:
        return f"[{self.lower:g}, {self.upper:g}]"


def contract(old: Interval, new: Interval) -> Interval:
    """Replace ``old`` with ``new`` provided the information only narrows.

    Identity contractions are legal.  Raises NotAContraction when a
    bound escapes, which is how false "additional information" shows up.
    """
    if not old.encloses(new):
        raise NotAContraction(f"{new} is not contained in {old}")
    return new

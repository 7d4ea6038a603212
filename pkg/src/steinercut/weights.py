"""Exact edge weights: non-negative integers extended with a single Infinity.

Cut weights must compare exactly, so the public type keeps integer values
unbounded and makes Infinity an explicit saturating element rather than a
float. Internally the solvers store weights as float64 with numpy.inf, which
is exact for integers below 2**53; build_graph enforces that bound.
"""

from __future__ import annotations

import math
from typing import Any

# Largest weight representable exactly once converted to float64.
MAX_FINITE = 2**53 - 1


class ExtWeight:
    """A non-negative integer weight or Infinity.

    Addition saturates at Infinity, comparisons are total with Infinity as
    the unique maximum. Instances are immutable and hashable.
    """

    __slots__ = ("_v",)

    INFINITY: "ExtWeight"

    def __init__(self, value: Any):
        if isinstance(value, ExtWeight):
            self._v = value._v
            return
        if value is None:
            self._v = None
            return
        if isinstance(value, float):
            if math.isinf(value) and value > 0:
                self._v = None
                return
            if not value.is_integer():
                raise ValueError(f"weight must be an integer, got {value!r}")
            value = int(value)
        if not isinstance(value, int) or isinstance(value, bool):
            raise TypeError(f"weight must be an int or Infinity, got {value!r}")
        if value < 0:
            raise ValueError(f"weight must be non-negative, got {value}")
        self._v = value

    # -- accessors ---------------------------------------------------------

    @property
    def is_infinite(self) -> bool:
        return self._v is None

    @property
    def value(self) -> int:
        """The integer value; raises on Infinity."""
        if self._v is None:
            raise ValueError("Infinity has no integer value")
        return self._v

    def to_float(self) -> float:
        """float64 image: math.inf for Infinity, exact otherwise."""
        if self._v is None:
            return math.inf
        if self._v > MAX_FINITE:
            raise OverflowError(f"weight {self._v} exceeds exact float range")
        return float(self._v)

    @classmethod
    def from_float(cls, x: float) -> "ExtWeight":
        if math.isinf(x) and x > 0:
            return cls.INFINITY
        return cls(int(x))

    # -- arithmetic (saturating) --------------------------------------------

    def __add__(self, other: Any) -> "ExtWeight":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        if self._v is None or other._v is None:
            return ExtWeight.INFINITY
        return ExtWeight(self._v + other._v)

    __radd__ = __add__

    # -- total order ---------------------------------------------------------

    def _key(self) -> tuple[int, int]:
        # Infinity sorts after every finite value.
        return (1, 0) if self._v is None else (0, self._v)

    def __eq__(self, other: Any) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._v == other._v

    def __lt__(self, other: Any) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() < other._key()

    def __le__(self, other: Any) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() <= other._key()

    def __gt__(self, other: Any) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() > other._key()

    def __ge__(self, other: Any) -> bool:
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return self._key() >= other._key()

    def __hash__(self) -> int:
        return hash(("ExtWeight", self._v))

    def __bool__(self) -> bool:
        return self._v is None or self._v != 0

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return "ExtWeight.INFINITY" if self._v is None else f"ExtWeight({self._v})"

    def __str__(self) -> str:
        return "inf" if self._v is None else str(self._v)


def _coerce(x: Any):
    if isinstance(x, ExtWeight):
        return x
    if isinstance(x, bool):
        return NotImplemented
    if isinstance(x, int):
        return ExtWeight(x)
    if isinstance(x, float):
        try:
            return ExtWeight(x)
        except (TypeError, ValueError):
            return NotImplemented
    return NotImplemented


ExtWeight.INFINITY = ExtWeight(None)

INFINITY = ExtWeight.INFINITY

"""Tri-state verdicts and dimension bounds."""

from __future__ import annotations

import enum
from dataclasses import dataclass


class Verdict(enum.Enum):
    TRUE = "true"
    FALSE = "false"
    UNKNOWN = "unknown"

    @classmethod
    def of(cls, flag: bool) -> "Verdict":
        return cls.TRUE if flag else cls.FALSE

    def __bool__(self):
        # An UNKNOWN must never be read as False by accident.
        raise TypeError("Verdict has no truth value; compare against Verdict.TRUE")

    def __and__(self, other: "Verdict") -> "Verdict":
        if self is Verdict.FALSE or other is Verdict.FALSE:
            return Verdict.FALSE
        if self is Verdict.UNKNOWN or other is Verdict.UNKNOWN:
            return Verdict.UNKNOWN
        return Verdict.TRUE


@dataclass(frozen=True)
class DimBound:
    """Either an exact homological dimension or a lower bound from truncation."""

    value: int
    exact: bool

    @classmethod
    def finite(cls, n: int) -> "DimBound":
        return cls(n, True)

    @classmethod
    def at_least(cls, n: int) -> "DimBound":
        return cls(n, False)

    @property
    def is_finite(self) -> bool:
        return self.exact

    def __str__(self):
        return f"Finite({self.value})" if self.exact else f"AtLeast({self.value})"

    def to_json(self):
        return {"finite": self.exact, "value": self.value}

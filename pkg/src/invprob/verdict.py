"""Comparison verdicts returned by qualitative-probability oracles."""

from __future__ import annotations

from enum import Enum


class CompareVerdict(Enum):
    LESS = "less"
    GREATER = "greater"
    EQUIV = "equiv"
    INCOMPARABLE = "incomparable"
    UNDETERMINED = "undetermined"

    def flip(self) -> "CompareVerdict":
        if self is CompareVerdict.LESS:
            return CompareVerdict.GREATER
        if self is CompareVerdict.GREATER:
            return CompareVerdict.LESS
        return self

    @property
    def le(self) -> bool | None:
        """``A ≲ B``; ``None`` when the oracle could not decide."""
        if self is CompareVerdict.UNDETERMINED:
            return None
        return self in (CompareVerdict.LESS, CompareVerdict.EQUIV)

    @property
    def ge(self) -> bool | None:
        if self is CompareVerdict.UNDETERMINED:
            return None
        return self in (CompareVerdict.GREATER, CompareVerdict.EQUIV)

    @classmethod
    def from_le(cls, le: bool, ge: bool) -> "CompareVerdict":
        if le and ge:
            return cls.EQUIV
        if le:
            return cls.LESS
        if ge:
            return cls.GREATER
        return cls.INCOMPARABLE

    def __str__(self) -> str:
        return self.value

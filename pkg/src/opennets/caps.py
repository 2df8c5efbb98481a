"""Exploration limits and three-valued answers shared by the search routines."""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum


@dataclass(frozen=True)
class ExplorationCaps:
    """Limits on a marking-graph search.

    ``max_tokens`` bounds the total token count of any explored marking,
    ``max_depth`` the number of firings from the start marking, and
    ``max_states`` the number of distinct markings visited.  A search
    that hits any of them reports an inexact result instead of ``no``.
    """

    max_tokens: int = 32
    max_depth: int = 64
    max_states: int = 100_000

    def __post_init__(self):
        for name in ("max_tokens", "max_depth", "max_states"):
            value = getattr(self, name)
            if not isinstance(value, int) or value <= 0:
                raise ValueError(f"{name} must be a positive integer, got {value!r}")


class Verdict(Enum):
    YES = "yes"
    NO = "no"
    UNKNOWN = "unknown"

    @property
    def definite(self) -> bool:
        return self is not Verdict.UNKNOWN

    def __bool__(self):
        raise TypeError("Verdict has no truth value; compare with Verdict.YES explicitly")

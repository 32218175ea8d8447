"""Untimed and timed message streams.

Indexing is 1-based throughout. An infinite stream is represented by the
prefix observed so far together with ``open=True``; queries that would need
the unobserved tail (``length``) answer ``math.inf``, and anything computed
from the elements (``extrema``) is flagged as covering the observed prefix
only.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, NamedTuple

from .errors import EmptyStream, IndexOutOfRange


def _message(x) -> float:
    v = float(x)
    if not math.isfinite(v):
        raise ValueError(f"messages must be finite numbers, got {x!r}")
    return v


@dataclass(frozen=True)
class UntimedStream:
    elements: tuple[float, ...] = ()
    open: bool = False

    def __post_init__(self):
        object.__setattr__(self, "elements", tuple(_message(x) for x in self.elements))

    @classmethod
    def of(cls, *values, open=False) -> "UntimedStream":
        return cls(tuple(values), open=open)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        # number of stored (observed) elements; use length() for #s
        return len(self.elements)

    def append(self, value) -> "UntimedStream":
        return UntimedStream(self.elements + (value,), open=self.open)


@dataclass(frozen=True)
class TimedStream:
    ticks: tuple[UntimedStream, ...] = ()
    open: bool = False

    def __post_init__(self):
        ticks = []
        for tick in self.ticks:
            if not isinstance(tick, UntimedStream):
                tick = UntimedStream(tuple(tick))
            if tick.open:
                raise ValueError("every tick of a timed stream must be finite")
            ticks.append(tick)
        object.__setattr__(self, "ticks", tuple(ticks))

    @classmethod
    def of(cls, *ticks: Iterable[float], open=False) -> "TimedStream":
        return cls(tuple(UntimedStream(tuple(t)) for t in ticks), open=open)

    def __len__(self):
        return len(self.ticks)


class Extrema(NamedTuple):
    min: float
    max: float
    observed_only: bool = False


def at(s: UntimedStream, k: int) -> float:
    """Return the k-th element (1-based)."""
    if k < 1 or k > len(s.elements):
        raise IndexOutOfRange(f"index {k} outside 1..{len(s.elements)}")
    return s.elements[k - 1]


def at_time(s: TimedStream, t: int) -> UntimedStream:
    """Return the finite sequence transmitted during tick t (1-based)."""
    if t < 1 or t > len(s.ticks):
        raise IndexOutOfRange(f"tick {t} outside 1..{len(s.ticks)}")
    return s.ticks[t - 1]


def take(s: UntimedStream, k: int) -> UntimedStream:
    """First min(k, #s) elements. The result is always finite."""
    if k < 0:
        raise ValueError("take needs k >= 0")
    return UntimedStream(s.elements[:k])


def take_recent(s: UntimedStream, k: int | float) -> UntimedStream:
    """Last min(k, #s) observed elements; ``k=math.inf`` keeps everything."""
    if k == math.inf or k >= len(s.elements):
        return UntimedStream(s.elements)
    if k < 0:
        raise ValueError("take_recent needs k >= 0")
    return UntimedStream(s.elements[len(s.elements) - int(k):]) if k else UntimedStream()


def length(s: UntimedStream) -> int | float:
    return math.inf if s.open else len(s.elements)


def concat(s1: UntimedStream, s2: UntimedStream) -> UntimedStream:
    if s1.open:
        return s1
    return UntimedStream(s1.elements + s2.elements, open=s2.open)


def extrema(s: UntimedStream) -> Extrema:
    if not s.elements:
        raise EmptyStream("extrema of an empty stream")
    return Extrema(min(s.elements), max(s.elements), observed_only=s.open)


def is_prefix(a: UntimedStream, b: UntimedStream) -> bool:
    n = len(a.elements)
    return n <= len(b.elements) and b.elements[:n] == a.elements


__all__ = [
    "UntimedStream", "TimedStream", "Extrema",
    "at", "at_time", "take", "take_recent", "length", "concat", "extrema", "is_prefix",
]

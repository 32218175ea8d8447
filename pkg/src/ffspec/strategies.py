"""Mapping strategies: membership functions regenerated from channel history.

A strategy looks at the most recent ``window`` messages of the channel its
property's port is bound to, takes their extrema ``(lo, hi)`` and
instantiates a membership family on the property universe.

``gauss_window``
    Gaussian centred at ``(lo + hi) / 2`` with ``sigma = (hi - lo) / 4``, so
    the observed extrema sit two standard deviations from the centre.
``triangle_window``
    Apex 1 at the midpoint, feet at ``lo`` and ``hi``.

Both families floor their spread at half the universe resolution, which
keeps a single-valued window from collapsing to a spike of width zero.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .errors import EmptyHistory
from .fuzzy import FuzzySet
from .streams import UntimedStream, extrema, take_recent


def gauss_params(lo: float, hi: float, resolution: float) -> tuple[float, float]:
    return (lo + hi) / 2, max((hi - lo) / 4, resolution / 2)


def gauss_window(lo, hi, resolution):
    c, sigma = gauss_params(lo, hi, resolution)
    return lambda x: math.exp(-((x - c) ** 2) / (2 * sigma ** 2))


def triangle_window(lo, hi, resolution):
    c = (lo + hi) / 2
    half = max((hi - lo) / 2, resolution / 2)
    return lambda x: max(0.0, 1.0 - abs(x - c) / half)


FAMILIES: dict[str, Callable[[float, float, float], Callable[[float], float]]] = {
    "gauss_window": gauss_window,
    "triangle_window": triangle_window,
}


@dataclass(frozen=True)
class MappingStrategy:
    channel: str
    term: str
    family: str
    window: int | float  # positive int or math.inf
    universe: tuple[float, ...]
    resolution: float = 1.0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise ValueError(f"unknown membership family {self.family!r}")
        if self.window != math.inf and (int(self.window) != self.window or self.window < 1):
            raise ValueError("strategy window must be a positive integer or inf")


def apply_strategy(strategy: MappingStrategy, history: UntimedStream) -> FuzzySet:
    if not history.elements:
        raise EmptyHistory(f"strategy for {strategy.term!r} has no history on {strategy.channel!r}")
    lo, hi, _ = extrema(take_recent(history, strategy.window))
    mu = FAMILIES[strategy.family](lo, hi, strategy.resolution)
    return FuzzySet({x: min(1.0, max(0.0, mu(x))) for x in strategy.universe},
                    strategy.universe, total=True)


def refresh_all(component, histories) -> dict:
    """Port table for one tick with every strategy-bearing property regenerated.

    Returns a ``{channel: FuzzyPort}`` mapping; ports without strategies are
    the component's own objects.
    """
    updates: dict[str, dict[str, FuzzySet]] = {}
    for s in component.strategies:
        updates.setdefault(s.channel, {})[s.term] = apply_strategy(s, histories[s.channel])
    ports = dict(component.ports)
    for ch, upd in updates.items():
        ports[ch] = ports[ch].replace(upd)
    return ports

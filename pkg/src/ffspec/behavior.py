"""Fuzzy types, acceptance degrees and alpha-realizability.

A fuzzy type grades every value of a crisp reference universe; values outside
the universe are fully rejected (degree 0). The acceptance degree of a stream
element is its grade under the channel's type, and a stream is summarised by
the min (lower bound), max (upper bound) or mean of its element degrees over
exactly its ``#s`` elements.
"""

from __future__ import annotations

import itertools
import statistics
from dataclasses import dataclass
from typing import Callable, Iterable, Literal, Mapping, Sequence

from .errors import EmptyStream, InvalidAlpha, UniverseMismatch
from .fuzzy import FuzzySet, membership, point
from .streams import UntimedStream

AccMode = Literal["lower", "upper", "mean"]


@dataclass(frozen=True)
class FuzzyType:
    name: str
    universe: tuple[float, ...]
    mu: FuzzySet

    def __post_init__(self):
        object.__setattr__(self, "universe", tuple(sorted({point(x) for x in self.universe})))
        if not self.mu.is_total() or self.mu.universe != self.universe or not self.mu.total:
            raise ValueError(f"fuzzy type {self.name!r} must grade every point of its universe")

    @classmethod
    def from_pairs(cls, name, pairs, universe=None):
        fs = FuzzySet.from_pairs(pairs, universe, total=True)
        return cls(name, fs.universe, fs)

    @classmethod
    def crisp(cls, name, x, universe=None):
        fs = FuzzySet.crisp(x, universe)
        return cls(name, fs.universe, fs)

    def __call__(self, x) -> float:
        return membership(self.mu, x)


@dataclass(frozen=True)
class FuzzyChannel:
    name: str
    type: FuzzyType
    direction: Literal["in", "out"] = "in"


@dataclass(frozen=True)
class FuzzyInterface:
    inputs: tuple[FuzzyChannel, ...]
    outputs: tuple[FuzzyChannel, ...]

    def __post_init__(self):
        names = [c.name for c in self.inputs + self.outputs]
        if len(set(names)) != len(names):
            raise ValueError("fuzzy interface channel names must be distinct")


@dataclass(frozen=True)
class AcceptanceReport:
    degrees: tuple[float, ...]
    lower: float
    upper: float
    mean: float
    horizon: int
    open: bool = False  # True: bounds cover only the observed prefix

    def value(self, mode: AccMode = "lower") -> float:
        return {"lower": self.lower, "upper": self.upper, "mean": self.mean}[mode]


def acc_element(c: FuzzyChannel, m) -> float:
    return c.type(m)


def _degrees(c: FuzzyChannel, s: UntimedStream) -> list[float]:
    if not s.elements:
        raise EmptyStream(f"no elements to score on channel {c.name!r}")
    return [acc_element(c, m) for m in s.elements]


def acc_bounds(c: FuzzyChannel, s: UntimedStream) -> tuple[float, float]:
    d = _degrees(c, s)
    return min(d), max(d)


def acc_mean(c: FuzzyChannel, s: UntimedStream) -> float:
    if s.open:
        raise EmptyStream("the mean acceptance needs a finite stream")
    return statistics.fmean(_degrees(c, s))


def acceptance(c: FuzzyChannel, s: UntimedStream) -> AcceptanceReport:
    d = _degrees(c, s)
    return AcceptanceReport(tuple(d), min(d), max(d), statistics.fmean(d), len(d), s.open)


def acc_combine(elements: Iterable[tuple[FuzzyChannel, float]], mode: Literal["lower", "upper"] = "lower") -> float:
    """Combine single-element acceptances, possibly drawn from different streams."""
    d = [acc_element(c, m) for c, m in elements]
    if not d:
        raise EmptyStream("nothing to combine")
    if mode == "lower":
        return min(d)
    if mode == "upper":
        return max(d)
    raise ValueError(f"unknown combination mode {mode!r}")


def extend_function(f: Callable[..., float], fuzzy_inputs: Sequence[FuzzyType],
                    output_universe: Iterable[float] | None = None, name: str = "") -> FuzzyType:
    """Lift ``f`` to fuzzy arguments by sup-min over all argument tuples.

    Without ``output_universe`` the image of ``f`` is used. Every image point
    must lie in the output universe.
    """
    grades: dict[float, float] = {}
    for args in itertools.product(*(t.universe for t in fuzzy_inputs)):
        o = point(f(*args))
        d = min(t(a) for t, a in zip(fuzzy_inputs, args))
        grades[o] = max(grades.get(o, 0.0), d)
    if output_universe is None:
        universe = tuple(grades)
    else:
        universe = tuple(point(x) for x in output_universe)
        stray = sorted(set(grades) - set(universe))
        if stray:
            raise UniverseMismatch(f"function values {stray} fall outside the output universe")
    return FuzzyType(name, universe, FuzzySet(grades, universe, total=True))


class FuzzyBehavior:
    """Deterministic fuzzy behaviour obtained from a crisp per-tick function.

    Calling it on input streams yields the crisp output stream; every output
    element is scored against ``output.type``, the extension of the input
    fuzzy types through ``f``.
    """

    def __init__(self, f: Callable[..., float], inputs: Sequence[FuzzyChannel], output: FuzzyChannel):
        self.f = f
        self.inputs = tuple(inputs)
        self.output = output
        self.interface = FuzzyInterface(self.inputs, (output,))

    def __call__(self, streams: Mapping[str, UntimedStream]) -> UntimedStream:
        cols = [streams[c.name].elements for c in self.inputs]
        n = min((len(c) for c in cols), default=0)
        return UntimedStream(tuple(point(self.f(*(c[t] for c in cols))) for t in range(n)))


def extend_behavior(f: Callable[..., float], inputs: Sequence[FuzzyChannel], output_name: str,
                    output_universe: Iterable[float] | None = None) -> FuzzyBehavior:
    ftype = extend_function(f, [c.type for c in inputs], output_universe, name=f"F{output_name}")
    return FuzzyBehavior(f, inputs, FuzzyChannel(output_name, ftype, "out"))


def _check_alpha(alpha):
    if not 0 <= alpha <= 1:
        raise InvalidAlpha(f"alpha must lie in [0, 1], got {alpha}")


def check_alpha_realizable(bhat: FuzzyBehavior, inputs: Mapping[str, UntimedStream], alpha: float,
                           mode: AccMode = "lower") -> tuple[bool, AcceptanceReport]:
    _check_alpha(alpha)
    out = bhat(inputs)
    out = UntimedStream(out.elements, open=any(inputs[c.name].open for c in bhat.inputs))
    report = acceptance(bhat.output, out)
    return report.value(mode) >= alpha, report


def realizability_frontier(bhat: FuzzyBehavior, inputs: Mapping[str, UntimedStream],
                           mode: AccMode = "lower") -> float:
    """Largest alpha for which ``check_alpha_realizable`` holds."""
    out = bhat(inputs)
    return acceptance(bhat.output, out).value(mode)

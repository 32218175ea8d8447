"""Carriers, channels, fuzzy properties and fuzzy ports."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Literal, NamedTuple, Optional

from .errors import UnknownTerm, ValueOutsideCarrier
from .fuzzy import Degree, FuzzySet, membership, point

Direction = Literal["in", "out"]

_EPS = 1e-9


def _is_multiple(x: float, step: float) -> bool:
    k = x / step
    return abs(k - round(k)) < _EPS * max(1.0, abs(k))


class Carrier:
    """A finite set of admissible message values."""

    def grid(self) -> tuple[float, ...]:
        raise NotImplementedError

    def contains(self, x) -> bool:
        raise NotImplementedError

    def __contains__(self, x):
        return self.contains(x)

    def __len__(self):
        return len(self.grid())

    @property
    def resolution(self) -> float:
        raise NotImplementedError

    def midpoint(self) -> float:
        g = self.grid()
        return point((g[0] + g[-1]) / 2)


@dataclass(frozen=True)
class FiniteCarrier(Carrier):
    points: tuple[float, ...]
    default_resolution: float = field(default=1.0, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "points", tuple(sorted({point(x) for x in self.points})))

    def grid(self):
        return self.points

    def contains(self, x):
        return point(x) in self.points

    @property
    def resolution(self):
        # smallest gap between neighbours; the declared default for singletons
        gaps = [b - a for a, b in zip(self.points, self.points[1:])]
        return min(gaps) if gaps else self.default_resolution


@dataclass(frozen=True)
class GridCarrier(Carrier):
    """Closed interval ``[lo, hi]`` sampled every ``step`` starting at ``lo``."""

    lo: float
    hi: float
    step: float = 1.0

    def __post_init__(self):
        if self.step <= 0:
            raise ValueError("grid step must be positive")
        if self.hi < self.lo:
            raise ValueError("empty interval")

    def grid(self):
        n = int(math.floor((self.hi - self.lo) / self.step + _EPS))
        return tuple(point(self.lo + k * self.step) for k in range(n + 1))

    def contains(self, x):
        x = float(x)
        if x < self.lo - _EPS or x > self.hi + _EPS:
            return False
        return _is_multiple(x - self.lo, self.step)

    @property
    def resolution(self):
        return self.step


def carrier_subset(c: Carrier, t: Carrier) -> bool:
    """C subset-of T; grid pairs compare bounds and step divisibility."""
    if isinstance(c, GridCarrier) and isinstance(t, GridCarrier):
        g = c.grid()
        if not (t.contains(g[0]) and t.contains(g[-1])):
            return False
        return len(g) == 1 or _is_multiple(c.step, t.step)
    return all(t.contains(x) for x in c.grid())


@dataclass(frozen=True)
class Channel:
    name: str
    carrier: Carrier
    direction: Direction = "in"

    def __post_init__(self):
        if not self.carrier.grid():
            raise ValueError(f"channel {self.name!r} has an empty carrier")


@dataclass(frozen=True)
class FuzzyProperty:
    universe: tuple[float, ...]
    term: str
    membership: FuzzySet
    strategy: Optional[str] = None

    def __post_init__(self):
        if not self.term:
            raise ValueError("a fuzzy property needs a nonempty term")
        object.__setattr__(self, "universe", tuple(sorted({point(x) for x in self.universe})))
        if self.membership.universe != self.universe:
            raise ValueError(f"membership of {self.term!r} is not over the property universe")

    @classmethod
    def from_pairs(cls, term, pairs, universe=None, total=False, strategy=None):
        fs = FuzzySet.from_pairs(pairs, universe, total)
        return cls(fs.universe, term, fs, strategy)

    def __call__(self, x) -> Degree:
        return membership(self.membership, x)

    def with_membership(self, fs: FuzzySet) -> "FuzzyProperty":
        return FuzzyProperty(self.universe, self.term, fs, self.strategy)


class Totality(NamedTuple):
    total: bool
    undefined: tuple[float, ...]

    def __str__(self):
        return "Total" if self.total else "Partial"


def classify_totality(p: FuzzyProperty) -> Totality:
    und = tuple(x for x in p.universe if p(x) is None)
    return Totality(not und, und)


@dataclass(frozen=True)
class FuzzyPort:
    name: str
    carrier: Carrier
    properties: tuple[FuzzyProperty, ...]
    direction: Direction = "in"

    def __post_init__(self):
        object.__setattr__(self, "properties", tuple(self.properties))

    @property
    def terms(self) -> tuple[str, ...]:
        return tuple(p.term for p in self.properties)

    def get(self, term: str) -> FuzzyProperty:
        for p in self.properties:
            if p.term == term:
                return p
        raise UnknownTerm(f"port {self.name!r} has no property {term!r}")

    def replace(self, updated: dict[str, FuzzySet]) -> "FuzzyPort":
        props = tuple(p.with_membership(updated[p.term]) if p.term in updated else p
                      for p in self.properties)
        return FuzzyPort(self.name, self.carrier, props, self.direction)

    def recarried(self, carrier: Carrier) -> "FuzzyPort":
        return FuzzyPort(self.name, carrier, self.properties, self.direction)


class Violation(NamedTuple):
    condition: str  # "c1" or "c2"
    term: str
    detail: str


def validate_port(port: FuzzyPort) -> list[Violation]:
    """All c1/c2 violations; an empty list means the port is well defined."""
    out = []
    for p in port.properties:
        outside = [x for x in p.universe if not port.carrier.contains(x)]
        if outside:
            out.append(Violation("c1", p.term,
                                 f"property {p.term!r} universe has points {outside} outside the port carrier"))
    seen: dict[str, int] = {}
    for i, p in enumerate(port.properties):
        if p.term in seen:
            out.append(Violation("c2", p.term,
                                 f"properties #{seen[p.term] + 1} and #{i + 1} share the term {p.term!r}"))
        else:
            seen[p.term] = i
    return out


def can_connect(c: Channel, port: FuzzyPort) -> bool:
    return carrier_subset(c.carrier, port.carrier)


@dataclass(frozen=True)
class PortInterpretation:
    value: float
    degrees: dict[str, Degree]
    order: tuple[str, ...]
    undefined: tuple[str, ...]


def interpret(port: FuzzyPort, x) -> PortInterpretation:
    """Grade ``x`` against every property and order the terms by degree.

    Undefined degrees sort first (below 0) and are also listed in
    ``undefined``; ties break by term name.
    """
    if not port.carrier.contains(x):
        raise ValueOutsideCarrier(f"{x} is outside the carrier of port {port.name!r}")
    degrees = {p.term: p(x) for p in port.properties}
    order = tuple(sorted(degrees, key=lambda t: (-1.0 if degrees[t] is None else degrees[t], t)))
    undefined = tuple(t for t in order if degrees[t] is None)
    return PortInterpretation(point(x), degrees, order, undefined)

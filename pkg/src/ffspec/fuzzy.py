"""Fuzzy sets over finite discrete universes.

A degree is a float in [0, 1] or ``None`` for "undefined" (a universe point a
partial property does not grade). Sets built with ``total=True`` grade every
point they are asked about: points without an explicit degree score 0, even
outside the declared universe.
"""

from __future__ import annotations

from typing import Hashable, Iterable, Mapping, Optional

from .errors import InvalidAlpha, UniverseMismatch

Degree = Optional[float]
UNDEFINED: Degree = None


def point(x) -> float:
    """Canonical float for a universe point (absorbs grid round-off)."""
    return round(float(x), 9) + 0.0


def _degree(d) -> float:
    d = float(d)
    if not 0.0 <= d <= 1.0:
        raise ValueError(f"degree {d} outside [0, 1]")
    return d


class FuzzySet:
    __slots__ = ("universe", "total", "_grades")

    def __init__(self, grades: Mapping[float, float], universe: Iterable[float] | None = None,
                 total: bool = False):
        g = {point(x): _degree(d) for x, d in grades.items()}
        u = set(g) if universe is None else {point(x) for x in universe}
        stray = set(g) - u
        if stray:
            raise UniverseMismatch(f"graded points {sorted(stray)} not in the universe")
        if total:
            for x in u:
                g.setdefault(x, 0.0)
        self.universe: tuple[float, ...] = tuple(sorted(u))
        self.total = bool(total)
        self._grades = dict(sorted(g.items()))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[float, float]], universe=None, total=False):
        """Build from ``(degree, value)`` pairs, the ``{0.3/20, ...}`` notation."""
        grades = {}
        for d, x in pairs:
            x = point(x)
            if x in grades:
                raise ValueError(f"point {x} graded twice")
            grades[x] = d
        return cls(grades, universe, total)

    @classmethod
    def crisp(cls, x, universe=None) -> "FuzzySet":
        return cls({x: 1.0}, universe, total=True)

    def __call__(self, x) -> Degree:
        return membership(self, x)

    @property
    def grades(self) -> dict[float, float]:
        return dict(self._grades)

    def items(self):
        return self._grades.items()

    def undefined_points(self) -> tuple[float, ...]:
        return tuple(x for x in self.universe if x not in self._grades)

    def is_total(self) -> bool:
        return len(self._grades) == len(self.universe)

    def max_degree(self) -> float:
        return max(self._grades.values(), default=0.0)

    def pairs(self) -> list[tuple[float, float]]:
        return [(d, x) for x, d in self._grades.items()]

    def _key(self):
        return (self.universe, tuple(self._grades.items()), self.total)

    def __eq__(self, other):
        if not isinstance(other, FuzzySet):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        body = ", ".join(f"{d:g}/{x:g}" for x, d in self._grades.items())
        return f"FuzzySet({{{body}}}{', total' if self.total else ''})"


def membership(A: FuzzySet, x) -> Degree:
    x = point(x)
    if x in A._grades:
        return A._grades[x]
    return 0.0 if A.total else UNDEFINED


def support(A: FuzzySet) -> set[float]:
    return {x for x, d in A.items() if d > 0}


def alpha_cut(A: FuzzySet, alpha: float) -> set[float]:
    if not 0 < alpha <= 1:
        raise InvalidAlpha(f"alpha must lie in (0, 1], got {alpha}")
    return {x for x, d in A.items() if d >= alpha}


class FuzzyRelation:
    """Total fuzzy relation over X x Y; unlisted pairs have degree 0."""

    __slots__ = ("xs", "ys", "_grades")

    def __init__(self, grades: Mapping[tuple[Hashable, Hashable], float],
                 xs: Iterable[Hashable] | None = None, ys: Iterable[Hashable] | None = None):
        g = {(x, y): _degree(d) for (x, y), d in grades.items()}
        self.xs = tuple(dict.fromkeys(xs)) if xs is not None else tuple(dict.fromkeys(x for x, _ in g))
        self.ys = tuple(dict.fromkeys(ys)) if ys is not None else tuple(dict.fromkeys(y for _, y in g))
        xset, yset = set(self.xs), set(self.ys)
        for x, y in g:
            if x not in xset or y not in yset:
                raise UniverseMismatch(f"pair {(x, y)!r} outside the declared universes")
        self._grades = g

    def __call__(self, x, y) -> float:
        return self._grades.get((x, y), 0.0)

    def __eq__(self, other):
        if not isinstance(other, FuzzyRelation):
            return NotImplemented
        return (set(self.xs) == set(other.xs) and set(self.ys) == set(other.ys)
                and all(self(x, y) == other(x, y) for x in self.xs for y in self.ys))

    def __repr__(self):
        return f"FuzzyRelation({self._grades!r})"

    @classmethod
    def identity(cls, universe: Iterable[Hashable]) -> "FuzzyRelation":
        u = tuple(universe)
        return cls({(y, y): 1.0 for y in u}, u, u)


def compose_maxmin(r1: FuzzyRelation, r2: FuzzyRelation) -> FuzzyRelation:
    if set(r1.ys) != set(r2.xs):
        raise UniverseMismatch("middle universes of the composed relations differ")
    grades = {}
    for x in r1.xs:
        for z in r2.ys:
            grades[(x, z)] = max((min(r1(x, y), r2(y, z)) for y in r1.ys), default=0.0)
    return FuzzyRelation(grades, r1.xs, r2.ys)

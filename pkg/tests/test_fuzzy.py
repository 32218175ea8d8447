import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffspec.errors import InvalidAlpha, UniverseMismatch
from ffspec.fuzzy import FuzzyRelation, FuzzySet, alpha_cut, compose_maxmin, membership, support

# Example 1 table over the temperature range, resolution 1.
T_HIGH = FuzzySet.from_pairs([(0, 15), (0.3, 20), (0.6, 25), (0.9, 30), (1, 35)],
                             universe=range(-30, 41))
F_O = FuzzySet.from_pairs([(0, 8), (0.5, 9), (1, 10), (0.5, 11), (0, 12)], total=True)

degrees = st.integers(0, 10).map(lambda k: k / 10)


@st.composite
def fuzzy_sets(draw, max_points=8):
    pts = draw(st.lists(st.integers(-10, 10), min_size=1, max_size=max_points, unique=True))
    return FuzzySet({x: draw(degrees) for x in pts}, total=True)


def test_membership():
    assert membership(T_HIGH, 20) == 0.3
    assert membership(T_HIGH, 28) is None
    assert membership(T_HIGH, 15) == 0
    assert T_HIGH(35) == 1


def test_membership_outside_universe():
    assert membership(T_HIGH, 100) is None
    assert membership(F_O, 100) == 0


def test_total_sets_grade_every_point():
    fs = FuzzySet({1: 0.5}, universe=[0, 1, 2], total=True)
    assert fs.is_total() and fs.grades == {0: 0, 1: 0.5, 2: 0}
    assert not T_HIGH.is_total()
    assert 28 in T_HIGH.undefined_points()


def test_rejects_bad_degrees_and_points():
    with pytest.raises(ValueError):
        FuzzySet({1: 1.5})
    with pytest.raises(UniverseMismatch):
        FuzzySet({5: 0.5}, universe=[1, 2])
    with pytest.raises(ValueError):
        FuzzySet.from_pairs([(0.1, 1), (0.2, 1)])


def test_support():
    assert support(F_O) == {9, 10, 11}
    assert support(FuzzySet({1: 0, 2: 0})) == set()
    assert support(FuzzySet({4: 1})) == {4}


def test_alpha_cut():
    assert alpha_cut(F_O, 0.75) == {10}
    assert alpha_cut(F_O, 0.5) == {9, 10, 11}
    assert alpha_cut(FuzzySet({1: 0.2, 2: 0.3}), 0.9) == set()
    for bad in (0, -0.1, 1.01):
        with pytest.raises(InvalidAlpha):
            alpha_cut(F_O, bad)


def brute_compose(r1, r2, xs, ys, zs):
    out = {}
    for x in xs:
        for z in zs:
            best = 0.0
            for y in ys:
                best = max(best, min(r1.get((x, y), 0.0), r2.get((y, z), 0.0)))
            out[(x, z)] = best
    return out


def test_compose_single_path():
    r = compose_maxmin(FuzzyRelation({("a", "y"): 1}), FuzzyRelation({("y", "b"): 0.7}))
    assert r("a", "b") == 0.7


def test_compose_identity():
    r1 = FuzzyRelation({("a", 1): 0.3, ("a", 2): 0.9, ("b", 2): 0.5}, ["a", "b"], [1, 2])
    assert compose_maxmin(r1, FuzzyRelation.identity([1, 2])) == r1


def test_compose_mismatch():
    with pytest.raises(UniverseMismatch):
        compose_maxmin(FuzzyRelation({(1, 2): 1}), FuzzyRelation({(3, 4): 1}))


def test_compose_random_against_enumeration():
    rng = random.Random(7)
    for _ in range(200):
        xs, ys, zs = ["a", "b"], [0, 1], ["u", "v"]
        g1 = {(x, y): rng.randint(0, 10) / 10 for x in xs for y in ys}
        g2 = {(y, z): rng.randint(0, 10) / 10 for y in ys for z in zs}
        got = compose_maxmin(FuzzyRelation(g1, xs, ys), FuzzyRelation(g2, ys, zs))
        want = brute_compose(g1, g2, xs, ys, zs)
        assert {(x, z): got(x, z) for x in xs for z in zs} == want


def test_compose_associative_exhaustively_small():
    # every 0/0.5/1 relation on 2x2 universes: (3^4)^3 triples is too many, so
    # sweep all pairs for r1, r2 and a fixed family of r3
    vals = (0.0, 0.5, 1.0)
    u = (0, 1)
    cells = list(itertools.product(u, u))
    rels = [FuzzyRelation(dict(zip(cells, ds)), u, u) for ds in itertools.product(vals, repeat=4)]
    rng = random.Random(3)
    for r1 in rels[::3]:
        for r2 in rels[::5]:
            r3 = rng.choice(rels)
            lhs = compose_maxmin(compose_maxmin(r1, r2), r3)
            rhs = compose_maxmin(r1, compose_maxmin(r2, r3))
            assert lhs == rhs


@settings(max_examples=300)
@given(st.lists(st.lists(degrees, min_size=3, max_size=3), min_size=9, max_size=9))
def test_compose_associative_size3(rows):
    u = (0, 1, 2)
    r = [FuzzyRelation({(x, y): rows[3 * k + x][y] for x in u for y in u}, u, u) for k in range(3)]
    assert compose_maxmin(compose_maxmin(r[0], r[1]), r[2]) == \
        compose_maxmin(r[0], compose_maxmin(r[1], r[2]))


@settings(max_examples=1000)
@given(fuzzy_sets(), degrees.filter(lambda a: a > 0), degrees.filter(lambda a: a > 0))
def test_alpha_cut_antitone(a, x, y):
    lo, hi = sorted((x, y))
    assert alpha_cut(a, hi) <= alpha_cut(a, lo)


@given(fuzzy_sets())
def test_support_is_union_of_cuts(a):
    levels = {d for _, d in a.items() if d > 0}
    union = set().union(*(alpha_cut(a, d) for d in levels)) if levels else set()
    assert union == support(a)


@given(fuzzy_sets())
def test_degrees_in_unit_interval(a):
    assert all(0 <= d <= 1 for _, d in a.items())

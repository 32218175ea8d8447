import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffspec import (FuzzyChannel, FuzzyInterface, FuzzySet, FuzzyType, UntimedStream, acc_bounds, acc_combine,
                    acc_element, acc_mean, acceptance, check_alpha_realizable, extend_behavior,
                    extend_function, realizability_frontier)
from ffspec.errors import EmptyStream, InvalidAlpha, UniverseMismatch

F3 = FuzzyType.from_pairs("FUZZY3", [(0.5, 2), (1, 3), (0.5, 4)])
F7 = FuzzyType.from_pairs("FUZZY7", [(0.5, 6), (1, 7), (0.5, 8)])
F10 = FuzzyType.from_pairs("F10", [(0, 8), (0.5, 9), (1, 10), (0.5, 11), (0, 12)])
I1 = UntimedStream.of(2, 3, 4, 3, 3, 4, 2, 3)
I2 = UntimedStream.of(7, 6, 6, 7, 6, 7, 9, 7)
S = UntimedStream.of

degrees = st.integers(0, 10).map(lambda k: k / 10)


def adder():
    return extend_behavior(lambda a, b: a + b, [FuzzyChannel("i1", F3), FuzzyChannel("i2", F7)], "o")


def brute_extension(f, types):
    """Sup-min by listing every preimage tuple of every output point."""
    images = {}
    for args in itertools.product(*(t.universe for t in types)):
        images.setdefault(round(float(f(*args)), 9), []).append(args)
    out = {}
    for o, pre in images.items():
        out[o] = max(min(t(a) for t, a in zip(types, args)) for args in pre)
    return out


@st.composite
def fuzzy_types(draw, max_points=6):
    pts = draw(st.lists(st.integers(-5, 5), min_size=1, max_size=max_points, unique=True))
    return FuzzyType("T", tuple(pts), FuzzySet({x: draw(degrees) for x in pts}, pts, total=True))


def test_type_must_be_total():
    with pytest.raises(ValueError):
        FuzzyType("X", (1, 2), FuzzySet({1: 1}, (1, 2)))


def test_acc_element():
    c = FuzzyChannel("o", F10)
    assert acc_element(c, 10) == 1 and acc_element(c, 9) == 0.5
    assert acc_element(c, 42) == 0  # outside the universe


def test_acc_bounds_and_mean():
    c = FuzzyChannel("o", F10)
    s = S(9, 9, 10, 10, 9, 11, 11, 10)
    assert acc_bounds(c, s) == (0.5, 1)
    assert acc_mean(c, s) == pytest.approx(0.6875)
    assert acc_bounds(c, S(10)) == (1, 1)
    with pytest.raises(EmptyStream):
        acc_bounds(c, S())
    with pytest.raises(EmptyStream):
        acc_mean(c, S(10, open=True))


def test_open_stream_flagged():
    assert acceptance(FuzzyChannel("o", F10), S(10, open=True)).open


def test_acc_combine():
    c1, c2 = FuzzyChannel("a", F10), FuzzyChannel("b", F3)
    assert acc_combine([(c1, 9), (c2, 3)]) == 0.5
    assert acc_combine([(c1, 9), (c2, 3)], "upper") == 1
    assert acc_combine([(c1, 9)], "upper") == acc_combine([(c1, 9)]) == 0.5


def test_interface_names_distinct():
    with pytest.raises(ValueError):
        FuzzyInterface((FuzzyChannel("a", F3),), (FuzzyChannel("a", F7, "out"),))


def test_extension_o9():
    fo = extend_function(lambda a, b: a + b, [F3, F7])
    assert fo(9) == max(min(1, 0.5), min(0.5, 1)) == 0.5
    assert fo(10) == 1 and fo(11) == 0.5
    assert fo.universe == (8, 9, 10, 11, 12)


def test_extension_output_universe():
    fo = extend_function(lambda a, b: a + b, [F3, F7], output_universe=range(6, 15))
    assert fo(14) == 0 and fo(10) == 1
    with pytest.raises(UniverseMismatch):
        extend_function(lambda a, b: a + b, [F3, F7], output_universe=[9, 10, 11])


def test_crisp_extension():
    fo = extend_function(lambda a, b: a * b, [FuzzyType.crisp("A", 3), FuzzyType.crisp("B", 4)])
    assert fo.mu.grades == {12: 1}


def test_stateful_adder_streams():
    b = adder()
    assert b({"i1": I1, "i2": I2}).elements == (9, 9, 10, 10, 9, 11, 11, 10)
    assert b({"i1": S(), "i2": S()}).elements == ()
    ok, rep = check_alpha_realizable(b, {"i1": S(3), "i2": S(7)}, 1)
    assert ok and rep.lower == 1


def test_example4_verdicts():
    b = adder()
    inputs = {"i1": I1, "i2": I2}
    assert check_alpha_realizable(b, inputs, 0.5)[0]
    assert not check_alpha_realizable(b, inputs, 0.75)[0]
    assert realizability_frontier(b, inputs) == 0.5
    assert check_alpha_realizable(b, inputs, 0)[0]
    with pytest.raises(InvalidAlpha):
        check_alpha_realizable(b, inputs, 1.5)


def test_frontier_zero_for_rejected_output():
    b = extend_behavior(lambda a: a, [FuzzyChannel("i", F3)], "o", output_universe=[2, 3, 4, 5])
    assert realizability_frontier(b, {"i": S(3, 5)}) == 0


def test_extension_random_oracle():
    rng = random.Random(5)
    ops = [lambda a, b: a + b, lambda a, b: a * b, max, lambda a, b: abs(a - b)]
    for _ in range(100):
        ts = []
        for _ in range(2):
            pts = rng.sample(range(-4, 5), rng.randint(1, 3))
            ts.append(FuzzyType.from_pairs("T", [(rng.randint(0, 10) / 10, x) for x in pts]))
        f = rng.choice(ops)
        assert extend_function(f, ts).mu.grades == brute_extension(f, ts)


@settings(max_examples=300)
@given(st.lists(fuzzy_types(), min_size=1, max_size=3))
def test_extension_support_bound(types):
    f = lambda *xs: sum(xs)  # noqa: E731
    fo = extend_function(f, types)
    supports = [[x for x in t.universe if t(x) > 0] for t in types]
    image = {float(f(*a)) for a in itertools.product(*supports)}
    assert {x for x, d in fo.mu.items() if d > 0} <= image


def _stream_of(xs):
    return UntimedStream(tuple(float(x) for x in xs))


@settings(max_examples=1000)
@given(fuzzy_types(), st.lists(st.integers(-6, 6), min_size=1, max_size=12))
def test_lower_mean_upper(t, xs):
    r = acceptance(FuzzyChannel("c", t), _stream_of(xs))
    assert r.lower <= r.mean + 1e-12 and r.mean <= r.upper + 1e-12


@given(fuzzy_types(), st.lists(st.integers(-6, 6), min_size=1, max_size=12), st.integers(-6, 6))
def test_append_monotone(t, xs, x):
    c = FuzzyChannel("c", t)
    lo, hi = acc_bounds(c, _stream_of(xs))
    lo2, hi2 = acc_bounds(c, _stream_of(xs + [x]))
    assert lo2 <= lo and hi2 >= hi

from pathlib import Path

import pytest
from hypothesis import settings

from ffspec import Channel, Component, FiniteCarrier, FuzzyPort, FuzzyProperty, Rule, RuleBase
from ffspec import lang

SPECS = Path(__file__).resolve().parent.parent / "specs"

settings.register_profile("default", deadline=None)
settings.load_profile("default")


def prop(term, pairs, total=False):
    return FuzzyProperty.from_pairs(term, pairs, total=total)


# Property tables of the VPP worked example, as (degree, value) pairs.
T_HIGH = [(0, 10), (0.4, 20), (0.6, 25), (0.8, 30), (1, 35)]
T_LOW = [(0.2, 20), (0.4, 15), (0.6, 10), (0.8, 5), (1, 0)]
W_SUNNY = [(0, 80), (0.4, 60), (0.6, 40), (0.8, 20), (1, 0)]
W_CLOUDY = [(0, 20), (0.4, 40), (0.6, 60), (0.8, 80), (1, 100)]
P_HIGH = [(0, 1), (0.4, 2), (0.6, 3), (0.8, 4), (1, 5)]
P_LOW = [(0, 4), (0.4, 3), (0.6, 2), (0.8, 1), (1, 0)]


def vpp_tables_component(**kw):
    """VPP built directly from the six printed tables (universes = listed points)."""
    t_car = FiniteCarrier(tuple(range(-30, 41, 5)))
    w_car = FiniteCarrier(tuple(range(0, 101, 20)))
    p_car = FiniteCarrier(tuple(range(0, 6)))
    ports = {
        "t": FuzzyPort("THETA_T", t_car, (prop("HIGH", T_HIGH), prop("LOW", T_LOW))),
        "w": FuzzyPort("THETA_W", w_car, (prop("SUNNY", W_SUNNY), prop("CLOUDY", W_CLOUDY))),
        "p": FuzzyPort("THETA_P", p_car, (prop("HIGH", P_HIGH), prop("LOW", P_LOW)), "out"),
    }
    rules = RuleBase("p", (
        Rule((("t", "HIGH"), ("w", "SUNNY")), ("p", "HIGH")),
        Rule((("t", "LOW"), ("w", "CLOUDY")), ("p", "LOW")),
    ))
    return Component("VPP", (Channel("t", t_car), Channel("w", w_car)),
                     (Channel("p", p_car, "out"),), ports, {"p": rules}, **kw)


@pytest.fixture
def vpp_tables():
    return vpp_tables_component()


@pytest.fixture
def vpp():
    return lang.load(SPECS / "vpp.ffspec")


@pytest.fixture
def adder():
    return lang.load(SPECS / "adder.ffspec")


# (criterion, passed, detail) rows filled in by test_acceptance
ACCEPTANCE: list[tuple[int, bool, str]] = []


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n, ok, detail in sorted(ACCEPTANCE):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'} criterion {n}: {detail}")

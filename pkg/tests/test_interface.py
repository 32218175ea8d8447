import pytest
from hypothesis import given
from hypothesis import strategies as st

from ffspec import (Channel, FiniteCarrier, FuzzyPort, FuzzyProperty, GridCarrier, can_connect,
                    carrier_subset, classify_totality, interpret, validate_port)
from ffspec.errors import UnknownTerm, ValueOutsideCarrier

TEMP = GridCarrier(-30, 40, 1)


def temp_port():
    return FuzzyPort("THETA_T", TEMP, (
        FuzzyProperty.from_pairs("HIGH", [(0.2, 23), (0.9, 30)], universe=range(-30, 41)),
        FuzzyProperty.from_pairs("AVERAGE", [(0.6, 23), (1, 18)], universe=range(-30, 41)),
        FuzzyProperty.from_pairs("LOW", [(0, 23), (1, 0)], universe=range(-30, 41)),
    ))


def test_grid_carrier():
    g = GridCarrier(-30, 40, 5)
    assert len(g.grid()) == 15 and g.grid()[0] == -30 and g.grid()[-1] == 40
    assert 25 in g and 23 not in g and 45 not in g
    assert g.resolution == 5 and g.midpoint() == 5


def test_finite_carrier():
    c = FiniteCarrier((3, 1, 2, 2))
    assert c.grid() == (1, 2, 3) and c.resolution == 1
    assert FiniteCarrier((4,), default_resolution=0.5).resolution == 0.5


def test_carrier_subset():
    assert carrier_subset(GridCarrier(0, 100, 20), GridCarrier(0, 100, 10))
    assert not carrier_subset(GridCarrier(0, 100, 10), GridCarrier(0, 100, 20))
    assert not carrier_subset(GridCarrier(-40, 40, 5), GridCarrier(-30, 40, 5))
    assert carrier_subset(FiniteCarrier((0, 5)), GridCarrier(0, 5, 1))
    assert not carrier_subset(FiniteCarrier((0, 0.5)), GridCarrier(0, 5, 1))


def test_totality():
    total = FuzzyProperty.from_pairs("A", [(0, 1), (1, 2)])
    partial = FuzzyProperty.from_pairs("A", [(0, 1)], universe=[1, 2, 3])
    assert str(classify_totality(total)) == "Total"
    t = classify_totality(partial)
    assert str(t) == "Partial" and t.undefined == (2, 3)


def test_interpret_orders_by_degree():
    r = interpret(temp_port(), 23)
    assert r.degrees == {"HIGH": 0.2, "AVERAGE": 0.6, "LOW": 0}
    assert r.order == ("LOW", "HIGH", "AVERAGE")


def test_interpret_undefined_first():
    r = interpret(temp_port(), 30)
    assert r.undefined == ("AVERAGE", "LOW")
    assert r.order == ("AVERAGE", "LOW", "HIGH")


def test_interpret_outside_carrier():
    with pytest.raises(ValueOutsideCarrier):
        interpret(temp_port(), 41)


def test_unknown_term():
    with pytest.raises(UnknownTerm):
        temp_port().get("NOPE")


def test_c1_violation():
    port = FuzzyPort("P", GridCarrier(0, 5, 1), (FuzzyProperty.from_pairs("HIGH", [(1, 9)]),))
    (v,) = validate_port(port)
    assert v.condition == "c1" and v.term == "HIGH"


def test_c2_violation():
    p = FuzzyProperty.from_pairs("HIGH", [(1, 2)])
    (v,) = validate_port(FuzzyPort("P", GridCarrier(0, 5, 1), (p, p)))
    assert v.condition == "c2"
    assert validate_port(temp_port()) == []


def test_can_connect():
    port = temp_port()
    assert can_connect(Channel("t", GridCarrier(-30, 40, 5)), port)
    assert not can_connect(Channel("t", GridCarrier(-40, 40, 5)), port)


def test_replace_is_local():
    port = temp_port()
    new = port.replace({"HIGH": FuzzyProperty.from_pairs("HIGH", [(1, 5)], universe=range(-30, 41)).membership})
    assert new.get("HIGH")(5) == 1
    assert new.get("AVERAGE") == port.get("AVERAGE")
    assert port.get("HIGH")(5) is None


@given(st.integers(-30, 40))
def test_interpret_order_is_nondecreasing(x):
    r = interpret(temp_port(), x)
    keys = [-1 if r.degrees[t] is None else r.degrees[t] for t in r.order]
    assert keys == sorted(keys)

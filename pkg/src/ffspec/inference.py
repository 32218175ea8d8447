"""Rule-based behaviour: min applicability, min implication, max assembly and
mean-of-maxima defuzzification, run tick by tick with Moore timing.

A rule-driven output emits at tick ``t + 1`` the value inferred from the
inputs at tick ``t``; tick 1 carries the configured initial output. Outputs
driven by a ``behaviors`` function are combinational instead and emit at the
same tick as their inputs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field, replace
from typing import Callable, Literal, Mapping, Optional, Sequence, Union

from .errors import (EmptyRuleSet, InferenceError, MultiMessageTick, NoApplicableRule,
                     StreamTooShort, UndefinedMembership, Unsupported,
                     ValueOutsideCarrier)
from .fuzzy import Degree, FuzzySet, point
from .interface import Channel, FuzzyPort
from .strategies import MappingStrategy, refresh_all
from .streams import TimedStream, UntimedStream

Fallback = Union[Literal["error", "hold"], float]
OnUndefined = Literal["error", "zero"]


@dataclass(frozen=True)
class Rule:
    premises: tuple[tuple[str, str], ...]
    conclusion: tuple[str, str]

    def __post_init__(self):
        object.__setattr__(self, "premises", tuple(tuple(p) for p in self.premises))
        object.__setattr__(self, "conclusion", tuple(self.conclusion))
        if not self.premises:
            raise ValueError("a rule needs at least one premise")

    def __str__(self):
        lhs = " and ".join(f"{c} is {t}" for c, t in self.premises)
        return f"if {lhs} then {self.conclusion[0]} is {self.conclusion[1]}"


@dataclass(frozen=True)
class RuleBase:
    output: str
    rules: tuple[Rule, ...]

    def __post_init__(self):
        object.__setattr__(self, "rules", tuple(self.rules))
        if not self.rules:
            raise EmptyRuleSet(f"rule base for {self.output!r} is empty")
        for r in self.rules:
            if r.conclusion[0] != self.output:
                raise ValueError(f"rule {r} does not conclude on {self.output!r}")


@dataclass(frozen=True)
class Component:
    name: str
    inputs: tuple[Channel, ...]
    outputs: tuple[Channel, ...]
    ports: Mapping[str, FuzzyPort] = field(default_factory=dict)  # keyed by channel
    rulebases: Mapping[str, RuleBase] = field(default_factory=dict)
    strategies: tuple[MappingStrategy, ...] = ()
    behaviors: Mapping[str, Callable[[Mapping[str, float]], float]] = field(default_factory=dict)
    fuzzy_types: Mapping[str, object] = field(default_factory=dict)  # channel -> FuzzyType
    initial: Mapping[str, float] = field(default_factory=dict)
    fallback: Fallback = "error"
    on_undefined: OnUndefined = "error"

    @property
    def input_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.inputs)

    @property
    def output_names(self) -> tuple[str, ...]:
        return tuple(c.name for c in self.outputs)

    def channel(self, name: str) -> Channel:
        for c in self.inputs + self.outputs:
            if c.name == name:
                return c
        raise KeyError(name)

    def initial_output(self, name: str) -> float:
        if name in self.initial:
            return point(self.initial[name])
        return self.channel(name).carrier.midpoint()

    def with_policies(self, fallback=None, on_undefined=None) -> "Component":
        kw = {}
        if fallback is not None:
            kw["fallback"] = fallback
        if on_undefined is not None:
            kw["on_undefined"] = on_undefined
        return replace(self, **kw)


@dataclass(frozen=True)
class InferenceTrace:
    applicability: tuple[float, ...]
    implied: tuple[FuzzySet, ...]
    assembled: FuzzySet
    value: float
    fallback: Optional[str] = None  # set when no rule fired and a fallback supplied the value


def applicability(rule: Rule, inputs: Mapping[str, float], ports: Mapping[str, FuzzyPort],
                  on_undefined: OnUndefined = "error") -> Degree:
    degrees = []
    for ch, term in rule.premises:
        d = ports[ch].get(term)(inputs[ch])
        if d is None:
            if on_undefined == "error":
                raise UndefinedMembership(
                    f"{ch} is {term} is undefined at {inputs[ch]:g} (partial property); "
                    f"use on-undefined=zero to read it as 0")
            d = 0.0
        degrees.append(d)
    return min(degrees)


def implied_output(rule: Rule, alpha: float, out_port: FuzzyPort) -> FuzzySet:
    """Conclusion set cut at ``alpha``; undefined points of the conclusion are dropped."""
    if alpha is None:
        raise UndefinedMembership("applicability is undefined")
    prop = out_port.get(rule.conclusion[1])
    pts = {x: min(alpha, d) for x, d in prop.membership.items()}
    return FuzzySet(pts, pts.keys(), total=True)


def assemble(implied: Sequence[FuzzySet]) -> FuzzySet:
    if not implied:
        raise EmptyRuleSet("nothing to assemble")
    universe = sorted(set().union(*(s.universe for s in implied)))
    grades = {x: max(s(x) or 0.0 for s in implied) for x in universe}
    return FuzzySet(grades, universe, total=True)


def defuzzify_mom(a: FuzzySet) -> float:
    top = a.max_degree()
    if top <= 0:
        raise NoApplicableRule("no rule applies (assembled output set is all zero)")
    maxima = [x for x, d in a.items() if d == top]
    return sum(maxima) / len(maxima)


def infer(rulebase: RuleBase, inputs: Mapping[str, float], ports: Mapping[str, FuzzyPort],
          on_undefined: OnUndefined = "error") -> tuple[tuple[float, ...], tuple[FuzzySet, ...], FuzzySet]:
    out_port = ports[rulebase.output]
    alphas = tuple(applicability(r, inputs, ports, on_undefined) for r in rulebase.rules)
    implied = tuple(implied_output(r, a, out_port) for r, a in zip(rulebase.rules, alphas))
    return alphas, implied, assemble(implied)


def _check_inputs(component: Component, inputs: Mapping[str, float]) -> dict[str, float]:
    missing = [n for n in component.input_names if n not in inputs]
    if missing:
        raise ValueError(f"missing input values for {missing}")
    vals = {n: point(inputs[n]) for n in component.input_names}
    for n, v in vals.items():
        if n in component.ports and not component.channel(n).carrier.contains(v):
            raise ValueOutsideCarrier(f"input {v:g} on {n!r} is outside the channel carrier")
    return vals


def step(component: Component, inputs: Mapping[str, float],
         ports: Mapping[str, FuzzyPort] | None = None,
         previous: Mapping[str, float] | None = None):
    """One inference pass per rule-driven output.

    Returns ``(outputs, traces)``: the values scheduled for the next tick and
    one :class:`InferenceTrace` per output channel. ``previous`` holds the
    outputs being emitted this tick (consulted by the ``hold`` fallback).
    """
    vals = _check_inputs(component, inputs)
    ports = component.ports if ports is None else ports
    outputs, traces = {}, {}
    for o in component.output_names:
        rb = component.rulebases.get(o)
        if rb is None:
            continue
        try:
            alphas, implied, assembled = infer(rb, vals, ports, component.on_undefined)
            fb = None
            try:
                value = defuzzify_mom(assembled)
            except NoApplicableRule:
                if component.fallback == "error":
                    raise
                if component.fallback == "hold":
                    fb = "hold"
                    value = (previous or {}).get(o, component.initial_output(o))
                else:
                    fb = "default"
                    value = point(component.fallback)
        except InferenceError as exc:
            raise exc.with_channel(o) from None
        outputs[o] = value
        traces[o] = InferenceTrace(alphas, implied, assembled, value, fb)
    return outputs, traces


def evaluate_behaviors(component: Component, inputs: Mapping[str, float]) -> dict[str, float]:
    return {o: point(f(inputs)) for o, f in component.behaviors.items()}


def _as_untimed(name, s) -> UntimedStream:
    if isinstance(s, UntimedStream):
        return s
    if isinstance(s, TimedStream):
        for t, tick in enumerate(s.ticks, 1):
            if len(tick.elements) != 1:
                raise MultiMessageTick(
                    f"channel {name!r} carries {len(tick.elements)} messages at tick {t}; "
                    f"inference reads exactly one message per tick")
        return UntimedStream(tuple(t.elements[0] for t in s.ticks), open=s.open)
    return UntimedStream(tuple(s))


@dataclass(frozen=True)
class TickRecord:
    t: int
    inputs: dict[str, float]
    outputs: dict[str, float]
    traces: dict[str, InferenceTrace]


@dataclass(frozen=True)
class SimulationResult:
    outputs: dict[str, UntimedStream]
    log: tuple[TickRecord, ...]


def simulate(component: Component, input_streams: Mapping[str, object], horizon: int) -> SimulationResult:
    if horizon < 0:
        raise ValueError("horizon must be >= 0")
    streams = {n: _as_untimed(n, input_streams[n]) for n in component.input_names
               if n in input_streams}
    for n in component.input_names:
        if n not in streams:
            raise StreamTooShort(f"no input stream for channel {n!r}")
        if len(streams[n].elements) < horizon:
            raise StreamTooShort(f"stream on {n!r} has {len(streams[n].elements)} elements, "
                                 f"horizon is {horizon}")
    rule_outs = [o for o in component.output_names if o in component.rulebases]
    pending = {o: component.initial_output(o) for o in rule_outs}
    emitted = {o: [] for o in component.output_names}
    log = []
    for t in range(1, horizon + 1):
        inputs = {n: streams[n].elements[t - 1] for n in component.input_names}
        now = dict(pending)
        now.update(evaluate_behaviors(component, inputs))
        now = {o: now[o] for o in component.output_names if o in now}
        traces = {}
        if t < horizon and rule_outs:
            ports = None
            if component.strategies:
                hist = {n: UntimedStream(streams[n].elements[:t]) for n in component.input_names}
                ports = refresh_all(component, hist)
            pending, traces = step(component, inputs, ports, previous=now)
        for o, v in now.items():
            emitted[o].append(v)
        log.append(TickRecord(t, inputs, now, traces))
    outputs = {o: UntimedStream(tuple(v)) for o, v in emitted.items()}
    return SimulationResult(outputs, tuple(log))


@dataclass(frozen=True)
class Transition:
    next: Optional[int]
    error: Optional[InferenceError] = None


@dataclass(frozen=True)
class MooreMachine:
    """Deterministic Moore machine whose states are pending output tuples.

    ``transitions[(state, inputs)]`` gives the state entered after reading
    ``inputs`` in ``state``; its label is emitted one tick later. Input tuples
    for which inference fails carry the error instead of a successor, so the
    table stays total over the finite input universe.
    """

    inputs: tuple[str, ...]
    outputs: tuple[str, ...]
    states: tuple[tuple[float, ...], ...]
    initial: int
    transitions: Mapping[tuple[int, tuple[float, ...]], Transition]

    def label(self, state: int) -> dict[str, float]:
        return dict(zip(self.outputs, self.states[state]))

    def run(self, input_streams: Mapping[str, object], horizon: int) -> dict[str, UntimedStream]:
        streams = {n: _as_untimed(n, input_streams[n]) for n in self.inputs}
        for n, s in streams.items():
            if len(s.elements) < horizon:
                raise StreamTooShort(f"stream on {n!r} is shorter than the horizon")
        state = self.initial
        emitted = {o: [] for o in self.outputs}
        for t in range(1, horizon + 1):
            for o, v in self.label(state).items():
                emitted[o].append(v)
            if t == horizon:
                break
            x = tuple(point(streams[n].elements[t - 1]) for n in self.inputs)
            tr = self.transitions.get((state, x))
            if tr is None:
                raise ValueOutsideCarrier(f"input tuple {x} is outside the input universe")
            if tr.error is not None:
                raise tr.error.with_channel(tr.error.channel)
            state = tr.next
        return {o: UntimedStream(tuple(v)) for o, v in emitted.items()}

    def to_json(self) -> dict:
        trs = []
        for (s, x), tr in self.transitions.items():
            entry = {"state": s, "inputs": dict(zip(self.inputs, x))}
            if tr.error is None:
                entry["next"] = tr.next
                entry["emit"] = self.label(tr.next)
            else:
                entry["next"] = None
                entry["emit"] = None
                entry["error"] = {"kind": type(tr.error).__name__, "message": str(tr.error)}
            trs.append(entry)
        return {
            "inputs": list(self.inputs),
            "outputs": list(self.outputs),
            "states": [self.label(i) for i in range(len(self.states))],
            "initial": self.initial,
            "transitions": trs,
        }


MAX_TRANSITIONS = 2_000_000


def extract_moore(component: Component) -> MooreMachine:
    if component.strategies:
        raise Unsupported("mapping strategies make memberships time-varying; "
                          "no finite Moore machine is extracted")
    if component.behaviors:
        raise Unsupported("behavior outputs react within the same tick and are not Moore outputs")
    outs = tuple(o for o in component.output_names if o in component.rulebases)
    grids = [c.carrier.grid() for c in component.inputs]
    n_inputs = 1
    for g in grids:
        n_inputs *= len(g)
    initial = tuple(component.initial_output(o) for o in outs)
    states = [initial]
    index = {initial: 0}
    transitions = {}
    frontier = [0]
    while frontier:
        s = frontier.pop(0)
        if len(index) * n_inputs > MAX_TRANSITIONS:
            raise Unsupported(f"state space exceeds {MAX_TRANSITIONS} transitions")
        prev = dict(zip(outs, states[s]))
        for x in itertools.product(*grids):
            inp = dict(zip(component.input_names, x))
            try:
                nxt, _ = step(component, inp, previous=prev)
            except InferenceError as exc:
                transitions[(s, x)] = Transition(None, exc)
                continue
            key = tuple(nxt[o] for o in outs)
            if key not in index:
                index[key] = len(states)
                states.append(key)
                frontier.append(index[key])
            transitions[(s, x)] = Transition(index[key])
    return MooreMachine(component.input_names, outs, tuple(states), 0, transitions)

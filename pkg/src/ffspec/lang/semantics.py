"""Static checks for parsed specs and construction of runnable components."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from ..behavior import FuzzyType
from ..errors import SpecError
from ..fuzzy import FuzzySet, point
from ..inference import Component, Rule, RuleBase
from ..interface import (Carrier, Channel, FiniteCarrier, FuzzyPort, FuzzyProperty, GridCarrier,
                         can_connect, validate_port)
from ..strategies import FAMILIES, MappingStrategy
from .syntax import (BinOp, Call, CarrierSet, ComponentDecl, Diagnostic, Loc, Neg, Num, Ref,
                     SpecDocument)

FUNCTIONS = {"min": min, "max": max, "abs": abs}


def evaluate(expr, env: Mapping[str, float]) -> float:
    if isinstance(expr, Num):
        return expr.value
    if isinstance(expr, Ref):
        return float(env[expr.name])
    if isinstance(expr, Neg):
        return -evaluate(expr.operand, env)
    if isinstance(expr, BinOp):
        a, b = evaluate(expr.left, env), evaluate(expr.right, env)
        if expr.op == "+":
            return a + b
        if expr.op == "-":
            return a - b
        if expr.op == "*":
            return a * b
        if b == 0:
            raise ZeroDivisionError(f"division by zero at {expr.loc}")
        return a / b
    if isinstance(expr, Call):
        return float(FUNCTIONS[expr.func](*(evaluate(a, env) for a in expr.args)))
    raise TypeError(f"not an expression: {expr!r}")


def references(expr) -> list[Ref]:
    if isinstance(expr, Ref):
        return [expr]
    if isinstance(expr, Neg):
        return references(expr.operand)
    if isinstance(expr, BinOp):
        return references(expr.left) + references(expr.right)
    if isinstance(expr, Call):
        return [r for a in expr.args for r in references(a)]
    return []


def calls(expr) -> list[Call]:
    if isinstance(expr, Neg):
        return calls(expr.operand)
    if isinstance(expr, BinOp):
        return calls(expr.left) + calls(expr.right)
    if isinstance(expr, Call):
        return [expr] + [c for a in expr.args for c in calls(a)]
    return []


@dataclass(frozen=True)
class ExprFunction:
    """A behavior expression as a per-tick function of the input values.

    ``args`` lists the referenced inputs in declaration order, so the function
    can be called positionally (for the extension principle) or with a
    ``{channel: value}`` mapping.
    """

    expr: object
    args: tuple[str, ...]

    def __call__(self, *values):
        if len(values) == 1 and isinstance(values[0], Mapping):
            env = values[0]
        else:
            env = dict(zip(self.args, values))
        return evaluate(self.expr, env)


class _Checker:
    def __init__(self, decl: ComponentDecl):
        self.decl = decl
        self.diags: list[Diagnostic] = []

    def error(self, loc: Loc, code: str, msg: str):
        self.diags.append(Diagnostic("error", loc, code, msg))

    def warn(self, loc: Loc, code: str, msg: str):
        self.diags.append(Diagnostic("warning", loc, code, msg))

    def carrier(self, c, resolution) -> Carrier | None:
        if isinstance(c, CarrierSet):
            pts = [point(v) for v in c.values]
            if len(set(pts)) != len(pts):
                self.warn(c.loc, "carrier", "carrier lists a value more than once")
            return FiniteCarrier(tuple(pts), default_resolution=resolution)
        step = resolution if c.step is None else c.step
        if step <= 0:
            self.error(c.loc, "carrier", f"grid step must be positive, got {step:g}")
            return None
        if c.hi < c.lo:
            self.error(c.loc, "carrier", f"empty interval [{c.lo:g} .. {c.hi:g}]")
            return None
        return GridCarrier(c.lo, c.hi, step)

    def fuzzy_values(self, lit, what) -> dict[float, float] | None:
        grades, ok = {}, True
        for d, x in lit.pairs:
            if not 0 <= d <= 1:
                self.error(lit.loc, "degree", f"{what}: degree {d:g} at {x:g} is outside [0, 1]")
                ok = False
            x = point(x)
            if x in grades:
                self.error(lit.loc, "duplicate-point", f"{what}: value {x:g} is graded twice")
                ok = False
            grades[x] = d
        return grades if ok else None

    def run(self) -> Component | None:
        d = self.decl
        resolution = 1.0
        seen_settings: dict[tuple, Loc] = {}
        for s in d.settings:
            key = (s.kind, s.target)
            if key in seen_settings:
                what = s.kind if s.target is None else f"{s.kind} {s.target}"
                self.error(s.loc, "duplicate-setting", f"{what!r} is set more than once")
            seen_settings[key] = s.loc
            if s.kind == "resolution":
                if s.value <= 0:
                    self.error(s.loc, "resolution", "resolution must be positive")
                else:
                    resolution = float(s.value)

        # fuzzy types
        ftypes: dict[str, tuple[FuzzyType, Carrier]] = {}
        for ft in d.fuzzytypes:
            if ft.name in ftypes:
                self.error(ft.loc, "duplicate-name", f"fuzzy type {ft.name!r} is declared twice")
                continue
            carrier = self.carrier(ft.carrier, resolution)
            grades = self.fuzzy_values(ft.values, f"fuzzy type {ft.name}")
            if carrier is None or grades is None:
                continue
            stray = [x for x in grades if not carrier.contains(x)]
            if stray:
                self.error(ft.values.loc, "type-universe",
                           f"fuzzy type {ft.name!r} grades {[f'{x:g}' for x in stray]} "
                           f"outside its reference carrier")
                continue
            universe = carrier.grid()
            ftypes[ft.name] = (FuzzyType(ft.name, universe, FuzzySet(grades, universe, total=True)),
                               carrier)

        # channels
        channels: dict[str, Channel] = {}
        chan_fuzzy: dict[str, FuzzyType] = {}
        chan_loc: dict[str, Loc] = {}
        for ch in d.channels:
            if ch.name in channels or ch.name in chan_loc:
                self.error(ch.loc, "duplicate-name", f"channel {ch.name!r} is declared twice")
                continue
            chan_loc[ch.name] = ch.loc
            if ch.type_name is not None:
                if ch.type_name not in ftypes:
                    if ch.type_name not in {t.name for t in d.fuzzytypes}:
                        self.error(ch.loc, "unknown-type", f"channel {ch.name!r} has unknown fuzzy type "
                                                           f"{ch.type_name!r}")
                    continue
                ftype, carrier = ftypes[ch.type_name]
                chan_fuzzy[ch.name] = ftype
            else:
                carrier = self.carrier(ch.carrier, resolution)
                if carrier is None:
                    continue
            channels[ch.name] = Channel(ch.name, carrier, ch.direction)
        inputs = [channels[c.name] for c in d.channels if c.name in channels and c.direction == "in"]
        outputs = [channels[c.name] for c in d.channels if c.name in channels and c.direction == "out"]
        in_names = {c.name for c in d.channels if c.direction == "in"}
        out_names = {c.name for c in d.channels if c.direction == "out"}

        # ports
        ports: dict[str, FuzzyPort] = {}
        ports_by_name: dict[str, FuzzyPort] = {}
        port_names: set[str] = set()
        for p in d.ports:
            if p.name in port_names:
                self.error(p.loc, "duplicate-name", f"port {p.name!r} is declared twice")
                continue
            port_names.add(p.name)
            if p.channel not in chan_loc:
                self.error(p.channel_loc, "unknown-channel",
                           f"port {p.name!r} is bound to unknown channel {p.channel!r}")
                continue
            if p.channel in ports:
                self.error(p.channel_loc, "duplicate-binding",
                           f"channel {p.channel!r} is already bound to port {ports[p.channel].name!r}")
                continue
            if p.channel not in channels:
                continue
            channel = channels[p.channel]
            carrier = channel.carrier if p.carrier is None else self.carrier(p.carrier, resolution)
            if carrier is None:
                continue
            props, ok = [], True
            for prop in p.properties:
                grades = self.fuzzy_values(prop.values, f"property {p.name}.{prop.term}")
                if grades is None:
                    ok = False
                    continue
                universe = sorted(set(carrier.grid()) | set(grades))
                fs = FuzzySet(grades, universe, total=prop.total)
                props.append(FuzzyProperty(tuple(universe), prop.term, fs))
            if not ok:
                continue
            port = FuzzyPort(p.name, carrier, tuple(props), channel.direction)
            by_term = {}
            for prop in p.properties:
                by_term.setdefault(prop.term, []).append(prop)
            for v in validate_port(port):
                if v.condition == "c1":
                    loc = by_term[v.term][0].values.loc
                    self.error(loc, "c1", f"port {p.name!r}: every property universe must lie within "
                                          f"the port carrier; {v.detail}")
                else:
                    loc = by_term[v.term][1].loc
                    self.error(loc, "c2", f"port {p.name!r}: linguistic terms must be unique; {v.detail}")
            if not can_connect(channel, port):
                self.error(p.channel_loc, "connectivity",
                           f"channel {channel.name!r} cannot connect to port {p.name!r}: "
                           f"its carrier is not a subset of the port carrier")
            ports[p.channel] = port
            ports_by_name[p.name] = port

        # rule bases
        rulebases: dict[str, RuleBase] = {}
        used_inputs: set[str] = set()
        seen_rb: set[str] = set()
        for rb in d.rulebases:
            if rb.output in seen_rb:
                self.error(rb.loc, "duplicate-rulebase", f"output {rb.output!r} has two rule bases")
                continue
            seen_rb.add(rb.output)
            if rb.output not in out_names:
                self.error(rb.loc, "unknown-output", f"rule base targets {rb.output!r}, "
                                                     f"which is not an output channel")
                continue
            out_port = ports.get(rb.output)
            if out_port is None and rb.output in chan_loc:
                self.error(rb.loc, "missing-port", f"output {rb.output!r} has a rule base but no port")
            rules, ok = [], True
            for r in rb.rules:
                seen = set()
                for c in r.premises:
                    used_inputs.add(c.channel)
                    if c.channel in seen:
                        self.error(c.loc, "duplicate-premise",
                                   f"rule tests channel {c.channel!r} twice")
                        ok = False
                    seen.add(c.channel)
                    if c.channel not in in_names:
                        self.error(c.loc, "unknown-channel",
                                   f"premise channel {c.channel!r} is not an input channel")
                        ok = False
                    elif c.channel not in ports:
                        if c.channel in channels:
                            self.error(c.loc, "missing-port",
                                       f"premise channel {c.channel!r} is not bound to a port")
                        ok = False
                    elif c.term not in ports[c.channel].terms:
                        self.error(c.loc, "unknown-term",
                                   f"term {c.term!r} is not a property of port "
                                   f"{ports[c.channel].name!r}")
                        ok = False
                c = r.conclusion
                if c.channel != rb.output:
                    self.error(c.loc, "conclusion-channel",
                               f"rule in the base for {rb.output!r} concludes on {c.channel!r}")
                    ok = False
                elif out_port is not None and c.term not in out_port.terms:
                    self.error(c.loc, "unknown-term",
                               f"term {c.term!r} is not a property of port {out_port.name!r}")
                    ok = False
                rules.append(Rule(tuple((p.channel, p.term) for p in r.premises),
                                  (c.channel, c.term)))
            if ok and out_port is not None:
                rulebases[rb.output] = RuleBase(rb.output, tuple(rules))

        # behaviors
        behaviors: dict[str, ExprFunction] = {}
        for b in d.behaviors:
            if b.output not in out_names:
                self.error(b.loc, "unknown-output", f"behavior targets {b.output!r}, "
                                                    f"which is not an output channel")
                continue
            if b.output in behaviors or any(r.output == b.output for r in d.rulebases):
                self.error(b.loc, "duplicate-driver", f"output {b.output!r} is driven twice")
                continue
            ok = True
            for ref in references(b.expr):
                used_inputs.add(ref.name)
                if ref.name not in in_names:
                    self.error(ref.loc, "unknown-channel",
                               f"behavior refers to {ref.name!r}, which is not an input channel")
                    ok = False
            for call in calls(b.expr):
                if call.func not in FUNCTIONS:
                    self.error(call.loc, "unknown-function",
                               f"unknown function {call.func!r} (known: {', '.join(FUNCTIONS)})")
                    ok = False
            if ok:
                refs = {r.name for r in references(b.expr)}
                args = tuple(c.name for c in d.channels if c.direction == "in" and c.name in refs)
                behaviors[b.output] = ExprFunction(b.expr, args)

        driven = {rb.output for rb in d.rulebases} | {b.output for b in d.behaviors}
        for ch in d.channels:
            if ch.direction == "out" and ch.name not in driven:
                self.error(ch.loc, "undriven-output",
                           f"output {ch.name!r} has neither a rule base nor a behavior")
            if ch.direction == "in" and ch.name not in used_inputs:
                self.warn(ch.loc, "unused-input", f"input {ch.name!r} is never read")

        # strategies
        strategies = []
        for s in d.strategies:
            port = ports_by_name.get(s.port)
            if port is None:
                if s.port not in port_names:
                    self.error(s.loc, "unknown-port", f"strategy names unknown port {s.port!r}")
                continue
            if port.direction != "in":
                self.error(s.loc, "strategy-output", "mapping strategies apply to input ports only")
                continue
            if s.term not in port.terms:
                self.error(s.loc, "unknown-term", f"term {s.term!r} is not a property of port {s.port!r}")
                continue
            if s.family not in FAMILIES:
                self.error(s.loc, "unknown-family",
                           f"unknown membership family {s.family!r} (known: {', '.join(FAMILIES)})")
                continue
            if s.window != math.inf and s.window < 1:
                self.error(s.loc, "window", "strategy window must be at least 1")
                continue
            channel = next(ch for ch, p in ports.items() if p is port)
            if any(x.channel == channel and x.term == s.term for x in strategies):
                self.error(s.loc, "duplicate-strategy", f"{s.port}.{s.term} already has a strategy")
                continue
            strategies.append(MappingStrategy(channel, s.term, s.family, s.window,
                                              port.get(s.term).universe, port.carrier.resolution))

        # settings
        initial, fallback = {}, "error"
        for s in d.settings:
            if s.kind == "initial":
                if s.target not in out_names:
                    self.error(s.loc, "unknown-output",
                               f"initial value for {s.target!r}, which is not an output channel")
                elif s.target not in {rb.output for rb in d.rulebases}:
                    self.warn(s.loc, "unused-initial",
                              f"{s.target!r} is not rule-driven; its initial value is never emitted")
                else:
                    initial[s.target] = float(s.value)
            elif s.kind == "fallback":
                fallback = s.value

        if any(x.severity == "error" for x in self.diags):
            return None
        return Component(d.name, tuple(inputs), tuple(outputs), ports, rulebases, tuple(strategies),
                         behaviors, chan_fuzzy, initial, fallback)


def analyze(doc: SpecDocument) -> tuple[list[Component | None], list[Diagnostic]]:
    diags, comps = [], []
    names: set[str] = set()
    for decl in doc.components:
        checker = _Checker(decl)
        if decl.name in names:
            checker.error(decl.loc, "duplicate-name", f"component {decl.name!r} is declared twice")
        names.add(decl.name)
        comp = checker.run()
        if any(x.severity == "error" for x in checker.diags):
            comp = None
        comps.append(comp)
        diags.extend(checker.diags)
    diags.sort(key=Diagnostic.sort_key)
    return comps, diags


def validate(doc: SpecDocument) -> list[Diagnostic]:
    return analyze(doc)[1]


def build(doc: SpecDocument) -> list[Component]:
    comps, diags = analyze(doc)
    errors = [x for x in diags if x.severity == "error"]
    if errors:
        raise SpecError(errors)
    return comps

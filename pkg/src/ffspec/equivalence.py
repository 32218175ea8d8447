"""Random finite-grid specs and the machine-versus-simulation comparison."""

from __future__ import annotations

import random

from . import lang
from .errors import FfspecError
from .inference import Component, MooreMachine, simulate
from .streams import UntimedStream

TERMS = ("LOW", "MID", "HIGH")


def _degree(rng: random.Random) -> float:
    # one decimal so that ties (and hence multi-point maxima) are common
    return rng.randint(0, 10) / 10


def _carrier(rng, max_points):
    return sorted(rng.sample(range(0, 20), rng.randint(2, max_points)))


def _port(rng, name, channel, carrier, partial_ratio):
    lines = [f"  port {name} on {channel} {{"]
    terms = TERMS[:rng.randint(1, len(TERMS))]
    for term in terms:
        pts = rng.sample(carrier, rng.randint(1, len(carrier)))
        pairs = ", ".join(f"{_degree(rng):g}/{x}" for x in sorted(pts))
        total = "" if rng.random() < partial_ratio else "total "
        lines.append(f"    {total}property {term} = {{{pairs}}}")
    lines.append("  }")
    return lines, list(terms)


def random_spec_text(rng: random.Random, max_inputs=3, max_points=8, max_rules=5,
                     max_outputs=2, partial_ratio=0.2) -> str:
    lines = ["component R {"]
    inputs = {}
    for i in range(rng.randint(1, max_inputs)):
        inputs[f"i{i}"] = _carrier(rng, max_points)
    outputs = {}
    for j in range(rng.randint(1, max_outputs)):
        outputs[f"o{j}"] = _carrier(rng, max_points)
    for n, c in inputs.items():
        lines.append(f"  in {n} : {{{', '.join(map(str, c))}}}")
    for n, c in outputs.items():
        lines.append(f"  out {n} : {{{', '.join(map(str, c))}}}")
    terms = {}
    for n, c in {**inputs, **outputs}.items():
        block, terms[n] = _port(rng, f"P_{n}", n, c, partial_ratio if n in inputs else 0.0)
        lines.extend(block)
    for o in outputs:
        lines.append(f"  rules for {o} {{")
        for _ in range(rng.randint(1, max_rules)):
            chans = rng.sample(sorted(inputs), rng.randint(1, len(inputs)))
            lhs = " and ".join(f"{c} is {rng.choice(terms[c])}" for c in chans)
            lines.append(f"    if {lhs} then {o} is {rng.choice(terms[o])}")
        lines.append("  }")
        if rng.random() < 0.7:
            lines.append(f"  initial {o} = {rng.choice(outputs[o])}")
    fb = rng.choice(["error", "hold", str(rng.randint(0, 19))])
    lines.append(f"  fallback = {fb}")
    lines.append("}")
    return "\n".join(lines) + "\n"


def random_component(rng: random.Random, **kw) -> Component:
    comp = lang.load(random_spec_text(rng, **kw))
    return comp.with_policies(on_undefined=rng.choice(["error", "zero"]))


def random_streams(comp: Component, rng: random.Random, length: int) -> dict[str, UntimedStream]:
    return {c.name: UntimedStream(tuple(rng.choice(c.carrier.grid()) for _ in range(length)))
            for c in comp.inputs}


def _outcome(fn):
    try:
        return "ok", fn()
    except FfspecError as e:
        return "error", (type(e).__name__, str(e))


def compare_runs(comp: Component, machine: MooreMachine, streams, horizon=None) -> bool:
    """True when the machine and direct simulation agree exactly, errors included."""
    n = min(len(s.elements) for s in streams.values()) if horizon is None else horizon
    direct = _outcome(lambda: {o: s.elements for o, s in simulate(comp, streams, n).outputs.items()})
    via = _outcome(lambda: {o: s.elements for o, s in machine.run(streams, n).items()})
    return direct == via

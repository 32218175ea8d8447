"""``ffspec`` command-line driver.

Exit codes: 0 success, 1 parse or validation failure, 2 runtime error,
3 unsupported Moore extraction.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import random
import sys
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

from . import lang
from .behavior import (FuzzyChannel, FuzzyType, acceptance, check_alpha_realizable, extend_behavior)
from .errors import FfspecError, MultiMessageTick, SpecError, Unsupported
from .inference import Component, extract_moore, simulate
from .streams import UntimedStream

EXIT_OK, EXIT_SPEC, EXIT_RUNTIME, EXIT_UNSUPPORTED = 0, 1, 2, 3


class InputError(FfspecError, ValueError):
    pass


@dataclass
class RunConfig:
    spec: Path
    component: Optional[str] = None
    inputs: Optional[Path] = None
    horizon: Optional[int] = None
    fallback: Optional[str] = None
    on_undefined: Optional[str] = None
    acc: str = "lower"
    alpha: Optional[float] = None
    out: Optional[Path] = None
    trace_full: bool = False
    seed: int = 0
    verify: int = 0
    as_json: bool = False

    def __post_init__(self):
        if self.horizon is not None and self.horizon < 0:
            raise InputError("horizon must be >= 0")
        if self.alpha is not None and not 0 <= self.alpha <= 1:
            raise InputError("alpha must lie in [0, 1]")


# --- number and JSON formatting ---------------------------------------------

def num(x):
    """Numbers as printed in traces: at most 9 decimals, no trailing zeros."""
    if x is None:
        return None
    x = float(x)
    r = round(x, 9)
    if r.is_integer():
        return int(r)
    return r


def fmt(x) -> str:
    return "-" if x is None else json.dumps(num(x))


def dumps(obj) -> str:
    return json.dumps(obj, ensure_ascii=False)


# --- inputs -------------------------------------------------------------------

def _cell(value, channel, tick):
    if isinstance(value, list):
        if len(value) != 1:
            raise MultiMessageTick(f"tick {tick}: channel {channel!r} carries {len(value)} messages; "
                                   f"exactly one message per tick is supported")
        value = value[0]
    if value is None or (isinstance(value, str) and not value.strip()):
        raise InputError(f"tick {tick}: missing value for channel {channel!r}")
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise InputError(f"tick {tick}: channel {channel!r} value {value!r} is not a number") from None
    if not math.isfinite(v):
        raise InputError(f"tick {tick}: channel {channel!r} value {value!r} is not finite")
    return v


def read_inputs(path: Path, channels) -> dict[str, UntimedStream]:
    """Read per-tick input rows from CSV (header row of channel names) or JSON
    (array of ``{channel: value}`` objects)."""
    text = Path(path).read_text(encoding="utf-8")
    if Path(path).suffix.lower() == ".json":
        rows = json.loads(text)
        if not isinstance(rows, list) or not all(isinstance(r, dict) for r in rows):
            raise InputError("JSON inputs must be an array of tick objects")
        header = list(dict.fromkeys(k for r in rows for k in r))
    else:
        reader = csv.reader(text.splitlines())
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise InputError("input CSV is empty") from None
        rows = []
        for i, rec in enumerate(reader, 1):
            if not rec:
                continue
            if len(rec) > len(header):
                raise InputError(f"tick {i}: more cells than header columns")
            rows.append({h: (rec[j] if j < len(rec) else None) for j, h in enumerate(header)})
    unknown = [h for h in header if h not in channels]
    if unknown:
        raise InputError(f"input columns {unknown} are not input channels")
    missing = [c for c in channels if c not in header]
    if missing:
        raise InputError(f"no input column for channels {missing}")
    cols = {c: [] for c in channels}
    for t, row in enumerate(rows, 1):
        for c in channels:
            cols[c].append(_cell(row.get(c), c, t))
    return {c: UntimedStream(tuple(v)) for c, v in cols.items()}


# --- helpers --------------------------------------------------------------------

def _color(code: str, text: str) -> str:
    if os.environ.get("FFSPEC_COLOR", "1") == "0" or not sys.stderr.isatty():
        return text
    return f"\033[{code}m{text}\033[0m"


def _report(diags, source):
    for d in diags:
        sev = _color("31" if d.severity == "error" else "33", d.severity)
        print(f"{source}:{d.loc}: {sev}[{d.code}]: {d.message}", file=sys.stderr)


def _spec_failure(diags, source):
    _report(diags, source)
    return SpecError([d for d in diags if d.severity == "error"])


def _load(cfg: RunConfig) -> Component:
    try:
        text = Path(cfg.spec).read_text(encoding="utf-8")
    except (OSError, UnicodeDecodeError) as e:
        print(f"ffspec: cannot read spec: {e}", file=sys.stderr)
        raise SpecError([]) from None
    doc, diags = lang.check(text)
    if doc is None or any(d.severity == "error" for d in diags):
        raise _spec_failure(diags, cfg.spec)
    _report(diags, cfg.spec)
    comps = lang.build(doc)
    if cfg.component is None:
        comp = comps[0]
    else:
        named = [c for c in comps if c.name == cfg.component]
        if not named:
            raise _spec_failure([lang.Diagnostic("error", lang.Loc(1, 1), "unknown-component",
                                                 f"no component named {cfg.component!r}")],
                                cfg.spec)
        comp = named[0]
    fallback = cfg.fallback
    if fallback not in (None, "error", "hold"):
        try:
            fallback = float(fallback)
        except ValueError:
            raise InputError(f"--fallback takes error, hold or a number, not {fallback!r}") from None
    return comp.with_policies(fallback, cfg.on_undefined)


def output_types(comp: Component) -> dict[str, FuzzyType]:
    """Fuzzy type per output: declared on the channel, else extended through its behavior."""
    types = {o: comp.fuzzy_types[o] for o in comp.output_names if o in comp.fuzzy_types}
    for o, f in comp.behaviors.items():
        if o in types or not f.args or not all(a in comp.fuzzy_types for a in f.args):
            continue
        bhat = _fuzzy_behavior(comp, o)
        types[o] = bhat.output.type
    return types


def _fuzzy_behavior(comp: Component, o: str):
    f = comp.behaviors[o]
    ins = [FuzzyChannel(a, comp.fuzzy_types[a]) for a in f.args]
    return extend_behavior(f, ins, o, comp.channel(o).carrier.grid())


def _horizon(cfg, streams):
    n = min((len(s.elements) for s in streams.values()), default=0)
    return n if cfg.horizon is None else cfg.horizon


# --- subcommands -------------------------------------------------------------------

def cmd_check(cfg: RunConfig) -> int:
    _load(cfg)
    return EXIT_OK


def trace_lines(comp: Component, streams, horizon: int, full: bool = False):
    result = simulate(comp, streams, horizon)
    types = output_types(comp) if full else {}
    for rec in result.log:
        line = {
            "t": rec.t,
            "inputs": {k: num(v) for k, v in rec.inputs.items()},
            "outputs": {k: num(v) for k, v in rec.outputs.items()},
        }
        if full:
            line["applicability"] = {o: [num(a) for a in tr.applicability]
                                     for o, tr in rec.traces.items()}
            line["assembled"] = {o: [[num(x), num(d)] for x, d in tr.assembled.items()]
                                 for o, tr in rec.traces.items()}
            line["fallback"] = {o: tr.fallback for o, tr in rec.traces.items()}
            line["acc"] = {o: (num(types[o](v)) if o in types else None)
                           for o, v in rec.outputs.items()}
        yield dumps(line)


def cmd_simulate(cfg: RunConfig) -> int:
    comp = _load(cfg)
    streams = read_inputs(cfg.inputs, comp.input_names)
    lines = list(trace_lines(comp, streams, _horizon(cfg, streams), cfg.trace_full))
    text = "".join(line + "\n" for line in lines)
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        Path(cfg.out).write_text(text, encoding="utf-8")
    return EXIT_OK


def realizability(comp: Component, streams, alpha: float, mode: str = "lower", horizon=None):
    """One result dict per output channel that carries a fuzzy type."""
    types = output_types(comp)
    if not types:
        raise Unsupported("no output carries a fuzzy type: declare one on the channel or drive "
                          "the output by a behavior over fuzzy-typed inputs")
    n = min(len(s.elements) for s in streams.values()) if horizon is None else horizon
    clipped = {k: UntimedStream(s.elements[:n]) for k, s in streams.items()}
    sim = None
    results = []
    for o, ftype in types.items():
        if o in comp.behaviors and o not in comp.fuzzy_types:
            ok, report = check_alpha_realizable(_fuzzy_behavior(comp, o), clipped, alpha, mode)
        else:
            if sim is None:
                sim = simulate(comp, clipped, n)
            report = acceptance(FuzzyChannel(o, ftype, "out"), sim.outputs[o])
            ok = report.value(mode) >= alpha
        results.append({
            "output": o,
            "alpha": num(alpha),
            "acc": mode,
            "verdict": ok,
            "frontier": num(report.value(mode)),
            "lower": num(report.lower),
            "upper": num(report.upper),
            "mean": num(report.mean),
            "degrees": [num(d) for d in report.degrees],
        })
    return results


def cmd_realizability(cfg: RunConfig) -> int:
    comp = _load(cfg)
    streams = read_inputs(cfg.inputs, comp.input_names)
    try:
        results = realizability(comp, streams, cfg.alpha, cfg.acc, cfg.horizon)
    except Unsupported as e:
        raise FfspecError(str(e)) from None
    if cfg.as_json:
        print(dumps(results if len(results) > 1 else results[0]))
        return EXIT_OK
    for r in results:
        word = "yes" if r["verdict"] else "no"
        print(f"{r['output']}: {fmt(r['alpha'])}-realizable: {word} "
              f"(acc={r['acc']}, frontier={fmt(r['frontier'])})")
        print("  per-tick: " + " ".join(fmt(d) for d in r["degrees"]))
    return EXIT_OK


def cmd_moore(cfg: RunConfig) -> int:
    comp = _load(cfg)
    machine = extract_moore(comp)
    text = json.dumps(_jsonify(machine.to_json()), ensure_ascii=False, indent=1) + "\n"
    if cfg.out is None:
        sys.stdout.write(text)
    else:
        Path(cfg.out).write_text(text, encoding="utf-8")
    if cfg.verify:
        from .equivalence import compare_runs, random_streams
        rng = random.Random(cfg.seed)
        mismatches = 0
        for _ in range(cfg.verify):
            streams = random_streams(comp, rng, rng.randint(1, 20))
            if not compare_runs(comp, machine, streams):
                mismatches += 1
        print(f"verified {cfg.verify} random runs: {mismatches} mismatches", file=sys.stderr)
        if mismatches:
            return EXIT_RUNTIME
    return EXIT_OK


def _jsonify(obj):
    if isinstance(obj, dict):
        return {k: _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    if isinstance(obj, float):
        return num(obj)
    return obj


# --- argument parsing ----------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ffspec", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("spec", type=Path)
        sp.add_argument("--component", help="component to use when the file declares several")

    sp = sub.add_parser("check", help="parse and validate a spec")
    common(sp)

    sp = sub.add_parser("simulate", help="run the rule-based semantics and write a JSONL trace")
    common(sp)
    sp.add_argument("--inputs", type=Path, required=True)
    sp.add_argument("--horizon", type=int)
    sp.add_argument("--out", type=Path)
    sp.add_argument("--fallback", help="error | hold | <number>")
    sp.add_argument("--on-undefined", choices=("error", "zero"))
    sp.add_argument("--trace-full", action="store_true")

    sp = sub.add_parser("realizability", help="score outputs against fuzzy types")
    common(sp)
    sp.add_argument("--inputs", type=Path, required=True)
    sp.add_argument("--alpha", type=float, required=True)
    sp.add_argument("--acc", choices=("lower", "upper", "mean"), default="lower")
    sp.add_argument("--horizon", type=int)
    sp.add_argument("--fallback")
    sp.add_argument("--on-undefined", choices=("error", "zero"))
    sp.add_argument("--json", dest="as_json", action="store_true")

    sp = sub.add_parser("moore", help="extract the finite Moore machine")
    common(sp)
    sp.add_argument("--out", type=Path)
    sp.add_argument("--fallback")
    sp.add_argument("--on-undefined", choices=("error", "zero"))
    sp.add_argument("--verify", type=int, default=0, metavar="N",
                    help="compare machine runs with direct simulation on N random streams")
    sp.add_argument("--seed", type=int, default=0)
    return p


COMMANDS = {"check": cmd_check, "simulate": cmd_simulate, "realizability": cmd_realizability,
            "moore": cmd_moore}


def run(argv=None) -> int:
    args = vars(build_parser().parse_args(argv))
    command = args.pop("command")
    try:
        cfg = RunConfig(**args)
        return COMMANDS[command](cfg)
    except SpecError:
        return EXIT_SPEC
    except Unsupported as e:
        print(f"ffspec: unsupported: {e}", file=sys.stderr)
        return EXIT_UNSUPPORTED
    except (FfspecError, OSError, ValueError, ZeroDivisionError) as e:
        print(f"ffspec: error: {e}", file=sys.stderr)
        return EXIT_RUNTIME


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()

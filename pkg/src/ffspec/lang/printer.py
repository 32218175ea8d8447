"""Canonical text rendering of a parsed spec document."""

from __future__ import annotations

import math

from .syntax import (BinOp, Call, CarrierRange, CarrierSet, ComponentDecl, FuzzySetLit, Neg, Num,
                     Ref, SpecDocument)


def fmt_num(x: float) -> str:
    if float(x).is_integer():
        return str(int(x))
    return repr(float(x))


def _carrier(c) -> str:
    if isinstance(c, CarrierSet):
        return "{" + ", ".join(fmt_num(v) for v in c.values) + "}"
    step = "" if c.step is None else f" step {fmt_num(c.step)}"
    return f"[{fmt_num(c.lo)} .. {fmt_num(c.hi)}{step}]"


def _fuzzyset(fs: FuzzySetLit) -> str:
    return "{" + ", ".join(f"{fmt_num(d)}/{fmt_num(x)}" for d, x in fs.pairs) + "}"


def format_expr(e) -> str:
    if isinstance(e, Num):
        return fmt_num(e.value)
    if isinstance(e, Ref):
        return e.name
    if isinstance(e, Neg):
        return f"-({format_expr(e.operand)})"
    if isinstance(e, BinOp):
        return f"({format_expr(e.left)} {e.op} {format_expr(e.right)})"
    if isinstance(e, Call):
        return f"{e.func}(" + ", ".join(format_expr(a) for a in e.args) + ")"
    raise TypeError(f"not an expression: {e!r}")


def _component(c: ComponentDecl) -> list[str]:
    out = [f"component {c.name} {{"]
    for ft in c.fuzzytypes:
        out.append(f"  fuzzytype {ft.name} on {_carrier(ft.carrier)} = {_fuzzyset(ft.values)}")
    for ch in c.channels:
        typ = ch.type_name if ch.type_name is not None else _carrier(ch.carrier)
        out.append(f"  {ch.direction} {ch.name} : {typ}")
    for p in c.ports:
        carrier = "" if p.carrier is None else f" : {_carrier(p.carrier)}"
        out.append(f"  port {p.name}{carrier} on {p.channel} {{")
        for prop in p.properties:
            total = "total " if prop.total else ""
            out.append(f"    {total}property {prop.term} = {_fuzzyset(prop.values)}")
        out.append("  }")
    for rb in c.rulebases:
        out.append(f"  rules for {rb.output} {{")
        for r in rb.rules:
            lhs = " and ".join(f"{p.channel} is {p.term}" for p in r.premises)
            out.append(f"    if {lhs} then {r.conclusion.channel} is {r.conclusion.term}")
        out.append("  }")
    for s in c.strategies:
        window = "inf" if s.window == math.inf else str(int(s.window))
        out.append(f"  strategy {s.port}.{s.term} = {s.family}({window})")
    for b in c.behaviors:
        out.append(f"  behavior {b.output} = {format_expr(b.expr)}")
    for s in c.settings:
        value = s.value if isinstance(s.value, str) else fmt_num(s.value)
        if s.kind == "initial":
            out.append(f"  initial {s.target} = {value}")
        else:
            out.append(f"  {s.kind} = {value}")
    out.append("}")
    return out


def pretty(doc: SpecDocument) -> str:
    lines = []
    for i, c in enumerate(doc.components):
        if i:
            lines.append("")
        lines.extend(_component(c))
    return "\n".join(lines) + "\n"

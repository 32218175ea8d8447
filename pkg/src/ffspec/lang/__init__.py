"""The ``.ffspec`` specification language."""

from pathlib import Path

from ..errors import SpecError
from .printer import pretty
from .semantics import ExprFunction, analyze, build, evaluate, validate
from .syntax import Diagnostic, Loc, SpecDocument, parse

__all__ = ["Diagnostic", "ExprFunction", "Loc", "SpecDocument", "SpecError", "analyze", "build",
           "check", "evaluate", "load", "parse", "pretty", "validate"]


def check(text: str):
    """``(document or None, diagnostics)`` without raising."""
    try:
        doc = parse(text)
    except SpecError as e:
        return None, e.diagnostics
    return doc, validate(doc)


def load(source, name: str | None = None):
    """Build one component from spec text or a path; ``name`` picks among several."""
    if isinstance(source, Path) or (isinstance(source, str) and "\n" not in source
                                    and source.endswith(".ffspec")):
        source = Path(source).read_text(encoding="utf-8")
    comps = build(parse(source))
    if name is None:
        return comps[0]
    for c in comps:
        if c.name == name:
            return c
    raise KeyError(f"no component named {name!r}")

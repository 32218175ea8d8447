"""Lexer, AST and recursive-descent parser for ``.ffspec`` files.

Grammar (``#`` starts a line comment; keywords are contextual identifiers)::

    spec       := component+
    component  := "component" IDENT "{" item* "}"
    item       := channel | port | fuzzytype | rules | strategy | behavior | setting
    channel    := ("in" | "out") IDENT ":" (carrier | IDENT)
    carrier    := "{" num ("," num)* "}" | "[" num ".." num ("step" num)? "]"
    port       := "port" IDENT (":" carrier)? "on" IDENT "{" property+ "}"
    property   := "total"? "property" IDENT "=" fuzzyset
    fuzzyset   := "{" num "/" num ("," num "/" num)* "}"        # degree/value
    fuzzytype  := "fuzzytype" IDENT "on" carrier "=" fuzzyset
    rules      := "rules" "for" IDENT "{" rule+ "}"
    rule       := "if" IDENT "is" IDENT ("and" IDENT "is" IDENT)* "then" IDENT "is" IDENT
    strategy   := "strategy" IDENT "." IDENT "=" IDENT "(" ("inf" | INT) ")"
    behavior   := "behavior" IDENT "=" expr
    setting    := "initial" IDENT "=" num | "fallback" "=" ("error" | "hold" | num)
                | "resolution" "=" num
    expr       := term (("+" | "-") term)*
    term       := factor (("*" | "/") factor)*
    factor     := num | IDENT | IDENT "(" expr ("," expr)* ")" | "(" expr ")" | "-" factor
    num        := "-"? NUM
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from typing import Optional, Union

from ..errors import SpecError


@dataclass(frozen=True, order=True)
class Loc:
    line: int
    col: int

    def __str__(self):
        return f"{self.line}:{self.col}"


NOLOC = Loc(0, 0)


@dataclass(frozen=True)
class Diagnostic:
    severity: str  # "error" | "warning"
    loc: Loc
    code: str
    message: str

    @property
    def line(self):
        return self.loc.line

    @property
    def column(self):
        return self.loc.col

    def sort_key(self):
        return (self.loc, self.severity != "error", self.code, self.message)

    def __str__(self):
        return f"{self.loc}: {self.severity}[{self.code}]: {self.message}"


def _loc():
    return field(default=NOLOC, compare=False, repr=False)


# --- AST -------------------------------------------------------------------

@dataclass(frozen=True)
class CarrierSet:
    values: tuple[float, ...]
    loc: Loc = _loc()


@dataclass(frozen=True)
class CarrierRange:
    lo: float
    hi: float
    step: Optional[float] = None
    loc: Loc = _loc()


CarrierExpr = Union[CarrierSet, CarrierRange]


@dataclass(frozen=True)
class FuzzySetLit:
    pairs: tuple[tuple[float, float], ...]  # (degree, value)
    loc: Loc = _loc()


@dataclass(frozen=True)
class ChannelDecl:
    direction: str
    name: str
    carrier: Optional[CarrierExpr] = None
    type_name: Optional[str] = None
    loc: Loc = _loc()


@dataclass(frozen=True)
class PropertyDecl:
    term: str
    values: FuzzySetLit
    total: bool = False
    loc: Loc = _loc()


@dataclass(frozen=True)
class PortDecl:
    name: str
    channel: str
    properties: tuple[PropertyDecl, ...]
    carrier: Optional[CarrierExpr] = None
    loc: Loc = _loc()
    channel_loc: Loc = _loc()


@dataclass(frozen=True)
class FuzzyTypeDecl:
    name: str
    carrier: CarrierExpr
    values: FuzzySetLit
    loc: Loc = _loc()


@dataclass(frozen=True)
class Clause:
    channel: str
    term: str
    loc: Loc = _loc()


@dataclass(frozen=True)
class RuleDecl:
    premises: tuple[Clause, ...]
    conclusion: Clause
    loc: Loc = _loc()


@dataclass(frozen=True)
class RuleBaseDecl:
    output: str
    rules: tuple[RuleDecl, ...]
    loc: Loc = _loc()


@dataclass(frozen=True)
class StrategyDecl:
    port: str
    term: str
    family: str
    window: float  # int value or math.inf
    loc: Loc = _loc()


@dataclass(frozen=True)
class Num:
    value: float
    loc: Loc = _loc()


@dataclass(frozen=True)
class Ref:
    name: str
    loc: Loc = _loc()


@dataclass(frozen=True)
class Neg:
    operand: "Expr"
    loc: Loc = _loc()


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    loc: Loc = _loc()


@dataclass(frozen=True)
class Call:
    func: str
    args: tuple["Expr", ...]
    loc: Loc = _loc()


Expr = Union[Num, Ref, Neg, BinOp, Call]


@dataclass(frozen=True)
class BehaviorDecl:
    output: str
    expr: Expr
    loc: Loc = _loc()


@dataclass(frozen=True)
class SettingDecl:
    kind: str  # "initial" | "fallback" | "resolution"
    value: Union[float, str]
    target: Optional[str] = None
    loc: Loc = _loc()


@dataclass(frozen=True)
class ComponentDecl:
    name: str
    channels: tuple[ChannelDecl, ...] = ()
    ports: tuple[PortDecl, ...] = ()
    fuzzytypes: tuple[FuzzyTypeDecl, ...] = ()
    rulebases: tuple[RuleBaseDecl, ...] = ()
    strategies: tuple[StrategyDecl, ...] = ()
    behaviors: tuple[BehaviorDecl, ...] = ()
    settings: tuple[SettingDecl, ...] = ()
    loc: Loc = _loc()


@dataclass(frozen=True)
class SpecDocument:
    components: tuple[ComponentDecl, ...]


# --- lexer -----------------------------------------------------------------

@dataclass(frozen=True)
class Token:
    kind: str  # IDENT NUM PUNCT EOF
    value: str
    loc: Loc


_TOKEN_RE = re.compile(r"""
    (?P<ws>[ \t\r\f\v]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<NUM>\d+(?:\.\d+)?(?:[eE][+-]?\d+)?)
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<PUNCT>\.\.|[{}\[\](),/:=.+\-*])
""", re.VERBOSE)


def tokenize(text: str) -> list[Token]:
    tokens = []
    pos, line, line_start = 0, 1, 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        loc = Loc(line, pos - line_start + 1)
        if m is None:
            raise SpecError([Diagnostic("error", loc, "syntax",
                                        f"unexpected character {text[pos]!r}")])
        kind = m.lastgroup
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind in ("NUM", "IDENT", "PUNCT"):
            tokens.append(Token(kind, m.group(), loc))
        pos = m.end()
    tokens.append(Token("EOF", "", Loc(line, pos - line_start + 1)))
    return tokens


# --- parser ----------------------------------------------------------------

_ITEM_KEYWORDS = ("in", "out", "port", "fuzzytype", "rules", "strategy", "behavior",
                  "initial", "fallback", "resolution")


class _Fail(Exception):
    def __init__(self, diag):
        self.diag = diag


class Parser:
    def __init__(self, text: str):
        self.tokens = tokenize(text)
        self.i = 0

    # token helpers
    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def _advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "EOF":
            self.i += 1
        return t

    def _error(self, message, loc=None):
        raise _Fail(Diagnostic("error", loc or self.tok.loc, "syntax", message))

    def _describe(self, t: Token):
        return "end of input" if t.kind == "EOF" else repr(t.value)

    def _at(self, value, kind=None):
        t = self.tok
        return t.value == value and t.kind in ((kind,) if kind else ("IDENT", "PUNCT"))

    def _expect(self, value, opener: Token | None = None) -> Token:
        if self._at(value):
            return self._advance()
        if opener is not None and self.tok.kind == "EOF":
            self._error(f"unclosed {opener.value!r}", opener.loc)
        self._error(f"expected {value!r}, found {self._describe(self.tok)}")

    def _ident(self, what="identifier") -> Token:
        if self.tok.kind != "IDENT":
            self._error(f"expected {what}, found {self._describe(self.tok)}")
        return self._advance()

    def _number(self) -> float:
        neg = False
        if self._at("-", "PUNCT"):
            self._advance()
            neg = True
        if self.tok.kind != "NUM":
            self._error(f"expected number, found {self._describe(self.tok)}")
        v = float(self._advance().value)
        return -v if neg else v

    def _close(self, opener: Token):
        return self._expect({"{": "}", "[": "]", "(": ")"}[opener.value], opener)

    # grammar
    def parse(self) -> SpecDocument:
        comps = []
        while self.tok.kind != "EOF":
            comps.append(self.component())
        if not comps:
            self._error("expected at least one 'component' declaration")
        return SpecDocument(tuple(comps))

    def component(self) -> ComponentDecl:
        start = self._expect("component")
        name = self._ident("component name").value
        opener = self._expect("{")
        groups = {k: [] for k in ("channels", "ports", "fuzzytypes", "rulebases",
                                  "strategies", "behaviors", "settings")}
        while not self._at("}", "PUNCT"):
            if self.tok.kind == "EOF":
                self._error(f"unclosed {opener.value!r}", opener.loc)
            kind, node = self.item()
            groups[kind].append(node)
        self._close(opener)
        return ComponentDecl(name, **{k: tuple(v) for k, v in groups.items()}, loc=start.loc)

    def item(self):
        t = self.tok
        if t.kind != "IDENT" or t.value not in _ITEM_KEYWORDS:
            self._error(f"expected a component item ({', '.join(_ITEM_KEYWORDS)}), "
                        f"found {self._describe(t)}")
        return getattr(self, "item_" + t.value)()

    def item_in(self):
        return "channels", self._channel()

    item_out = item_in

    def _channel(self):
        d = self._advance()
        name = self._ident("channel name").value
        self._expect(":")
        if self.tok.kind == "IDENT":
            return ChannelDecl(d.value, name, type_name=self._advance().value, loc=d.loc)
        return ChannelDecl(d.value, name, carrier=self.carrier(), loc=d.loc)

    def carrier(self) -> CarrierExpr:
        t = self.tok
        if self._at("{", "PUNCT"):
            opener = self._advance()
            vals = [self._number()]
            while self._at(",", "PUNCT"):
                self._advance()
                vals.append(self._number())
            self._close(opener)
            return CarrierSet(tuple(vals), loc=t.loc)
        if self._at("[", "PUNCT"):
            opener = self._advance()
            lo = self._number()
            self._expect("..")
            hi = self._number()
            step = None
            if self._at("step", "IDENT"):
                self._advance()
                step = self._number()
            self._close(opener)
            return CarrierRange(lo, hi, step, loc=t.loc)
        self._error(f"expected a carrier '{{...}}' or '[lo .. hi]', found {self._describe(t)}")

    def fuzzyset(self) -> FuzzySetLit:
        t = self.tok
        opener = self._expect("{")
        pairs = []
        while True:
            d = self._number()
            self._expect("/")
            pairs.append((d, self._number()))
            if not self._at(",", "PUNCT"):
                break
            self._advance()
        self._close(opener)
        return FuzzySetLit(tuple(pairs), loc=t.loc)

    def item_port(self):
        start = self._advance()
        name = self._ident("port name").value
        carrier = None
        if self._at(":", "PUNCT"):
            self._advance()
            carrier = self.carrier()
        self._expect("on")
        ch = self._ident("channel name")
        opener = self._expect("{")
        props = []
        while not self._at("}", "PUNCT"):
            if self.tok.kind == "EOF":
                self._error(f"unclosed {opener.value!r}", opener.loc)
            props.append(self._property())
        if not props:
            self._error("a port declares at least one property")
        self._close(opener)
        return "ports", PortDecl(name, ch.value, tuple(props), carrier, loc=start.loc,
                                 channel_loc=ch.loc)

    def _property(self):
        start = self.tok
        total = False
        if self._at("total", "IDENT"):
            self._advance()
            total = True
        self._expect("property")
        term = self._ident("linguistic term").value
        self._expect("=")
        return PropertyDecl(term, self.fuzzyset(), total, loc=start.loc)

    def item_fuzzytype(self):
        start = self._advance()
        name = self._ident("fuzzy type name").value
        self._expect("on")
        carrier = self.carrier()
        self._expect("=")
        return "fuzzytypes", FuzzyTypeDecl(name, carrier, self.fuzzyset(), loc=start.loc)

    def _clause(self):
        ch = self._ident("channel name")
        self._expect("is")
        return Clause(ch.value, self._ident("linguistic term").value, loc=ch.loc)

    def item_rules(self):
        start = self._advance()
        self._expect("for")
        out = self._ident("output channel").value
        opener = self._expect("{")
        rules = []
        while not self._at("}", "PUNCT"):
            if self.tok.kind == "EOF":
                self._error(f"unclosed {opener.value!r}", opener.loc)
            r = self._expect("if")
            prem = [self._clause()]
            while self._at("and", "IDENT"):
                self._advance()
                prem.append(self._clause())
            self._expect("then")
            rules.append(RuleDecl(tuple(prem), self._clause(), loc=r.loc))
        if not rules:
            self._error("a rule base needs at least one rule")
        self._close(opener)
        return "rulebases", RuleBaseDecl(out, tuple(rules), loc=start.loc)

    def item_strategy(self):
        start = self._advance()
        port = self._ident("port name").value
        self._expect(".")
        term = self._ident("linguistic term").value
        self._expect("=")
        family = self._ident("membership family").value
        opener = self._expect("(")
        if self._at("inf", "IDENT"):
            self._advance()
            window = math.inf
        elif self.tok.kind == "NUM" and re.fullmatch(r"\d+", self.tok.value):
            window = float(int(self._advance().value))
        else:
            self._error(f"expected a window size (integer or 'inf'), found {self._describe(self.tok)}")
        self._close(opener)
        return "strategies", StrategyDecl(port, term, family, window, loc=start.loc)

    def item_behavior(self):
        start = self._advance()
        out = self._ident("output channel").value
        self._expect("=")
        return "behaviors", BehaviorDecl(out, self.expr(), loc=start.loc)

    def item_initial(self):
        start = self._advance()
        target = self._ident("output channel").value
        self._expect("=")
        return "settings", SettingDecl("initial", self._number(), target, loc=start.loc)

    def item_fallback(self):
        start = self._advance()
        self._expect("=")
        if self._at("error", "IDENT") or self._at("hold", "IDENT"):
            value = self._advance().value
        else:
            value = self._number()
        return "settings", SettingDecl("fallback", value, loc=start.loc)

    def item_resolution(self):
        start = self._advance()
        self._expect("=")
        return "settings", SettingDecl("resolution", self._number(), loc=start.loc)

    def expr(self) -> Expr:
        left = self.term()
        while self._at("+", "PUNCT") or self._at("-", "PUNCT"):
            op = self._advance()
            left = BinOp(op.value, left, self.term(), loc=op.loc)
        return left

    def term(self) -> Expr:
        left = self.factor()
        while self._at("*", "PUNCT") or self._at("/", "PUNCT"):
            op = self._advance()
            left = BinOp(op.value, left, self.factor(), loc=op.loc)
        return left

    def factor(self) -> Expr:
        t = self.tok
        if t.kind == "NUM":
            return Num(float(self._advance().value), loc=t.loc)
        if self._at("-", "PUNCT"):
            self._advance()
            if self.tok.kind == "NUM":
                return Num(-float(self._advance().value), loc=t.loc)
            return Neg(self.factor(), loc=t.loc)
        if self._at("(", "PUNCT"):
            opener = self._advance()
            e = self.expr()
            self._close(opener)
            return e
        if t.kind == "IDENT":
            self._advance()
            if self._at("(", "PUNCT"):
                opener = self._advance()
                args = [self.expr()]
                while self._at(",", "PUNCT"):
                    self._advance()
                    args.append(self.expr())
                self._close(opener)
                return Call(t.value, tuple(args), loc=t.loc)
            return Ref(t.value, loc=t.loc)
        self._error(f"expected an expression, found {self._describe(t)}")


def parse(text: str) -> SpecDocument:
    """Parse spec text; raises :class:`SpecError` carrying one syntax diagnostic."""
    try:
        return Parser(text).parse()
    except _Fail as f:
        raise SpecError([f.diag]) from None

"""The ``.adic`` session language: lexer, parser, printer and semantic checks.

Grammar::

    script      := (decl | cmd)*
    ring-decl   := "ring" NAME "=" FIELD "[" names "]" ["/" "<" polys ">"] ["order" ORDER] ";"
    ideal-decl  := "ideal" NAME "=" "<" polys ">" ";"
    module-decl := "module" NAME "=" "coker" "rows" INT matrix ["over" NAME "level" INT] ";"
    matrix      := "[" [column ("," column)*] "]"      (each column is one relation)
    tower-decl  := "tower" NAME "=" "induced" NAME ["over" NAME] "levels" INT ";"
                 | "tower" NAME "=" "explicit" "[" NAME ("," NAME)* "]" ["over" NAME] ";"
    cmd         := COMMAND arg* option* ";"
    option      := ("over" | "length" | "level" | "tests") value ("," value)*

Comments start with ``#``.  Every error carries line, column and, for syntax
errors, the set of tokens that would have been accepted.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple, Union


KEYWORDS = {
    "ring", "ideal", "module", "tower", "order", "coker", "rows", "induced",
    "explicit", "levels", "over", "level", "length", "tests", "QQ", "GF",
}
ORDERS = ("grevlex", "lex")
OPTION_KEYS = ("over", "length", "level", "tests")

# command -> (positional argument kinds, allowed options)
COMMANDS: Dict[str, Tuple[Tuple[str, ...], Tuple[str, ...]]] = {
    "gb": (("ideal|module",), ()),
    "resolve": (("module",), ("length",)),
    "tor": (("module", "module", "int"), ()),
    "koszul": (("ideal",), ()),
    "wpr": (("ideal",), ()),
    "torsion": (("module",), ("over",)),
    "flatcheck": (("module",), ("over", "tests")),
    "completion": (("module",), ("over",)),
    "tower-validate": (("tower",), ()),
    "system-resolution": (("tower",), ("length",)),
    "lift": (("tower",), ("level",)),
    "prop250": (("module",), ("over",)),
    "lemma290": (("tower",), ("length",)),
    "limit-flat": (("tower",), ("tests", "length")),
}


class DslError(Exception):
    """Parse or semantic error with a source position."""

    def __init__(self, kind: str, message: str, line: int, col: int, expected: Sequence[str] = ()):
        self.kind = kind
        self.message = message
        self.line = line
        self.col = col
        self.expected = tuple(sorted(set(expected)))
        text = f"{kind} error at line {line}, column {col}: {message}"
        if self.expected:
            text += f" (expected one of: {', '.join(self.expected)})"
        super().__init__(text)


# ---------------------------------------------------------------- lexer


@dataclass(frozen=True)
class Token:
    kind: str  # NAME, INT, PUNCT, EOF
    text: str
    line: int
    col: int


_TOKEN_RE = re.compile(r"\s+|#[^\n]*|[A-Za-z_][A-Za-z0-9_]*|\d+|[=;\[\]<>,()+\-*/^]")


def tokenize(text: str) -> List[Token]:
    toks: List[Token] = []
    line, col, i = 1, 1, 0
    n = len(text)
    while i < n:
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise DslError("lexical", f"unexpected character {text[i]!r}", line, col)
        s = m.group(0)
        if s[0].isspace() or s[0] == "#":
            pass
        elif s[0].isdigit():
            toks.append(Token("INT", s, line, col))
        elif s[0].isalpha() or s[0] == "_":
            toks.append(Token("NAME", s, line, col))
        else:
            toks.append(Token("PUNCT", s, line, col))
        nl = s.count("\n")
        if nl:
            line += nl
            col = len(s) - s.rfind("\n")
        else:
            col += len(s)
        i = m.end()
    toks.append(Token("EOF", "", line, col))
    # hyphenated command words are glued back together
    out: List[Token] = []
    j = 0
    while j < len(toks):
        t = toks[j]
        if t.kind == "NAME" and j + 2 < len(toks) and toks[j + 1].text == "-" and toks[j + 2].kind == "NAME":
            glued = f"{t.text}-{toks[j + 2].text}"
            adjacent = toks[j + 1].col == t.col + len(t.text) and toks[j + 2].col == toks[j + 1].col + 1
            if glued in COMMANDS and adjacent and toks[j + 1].line == t.line == toks[j + 2].line:
                out.append(Token("NAME", glued, t.line, t.col))
                j += 3
                continue
        out.append(t)
        j += 1
    return out


# ---------------------------------------------------------------- AST


@dataclass(frozen=True)
class Num:
    value: int
    pos: Tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Var:
    name: str
    pos: Tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Neg:
    arg: "Expr"
    pos: Tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class BinOp:
    op: str
    left: "Expr"
    right: "Expr"
    pos: Tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Pow:
    base: "Expr"
    exp: int
    pos: Tuple[int, int] = field(default=(0, 0), compare=False)


Expr = Union[Num, Var, Neg, BinOp, Pow]


@dataclass(frozen=True)
class RingDecl:
    name: str
    field: Tuple  # ("QQ",) or ("GF", p)
    variables: Tuple[str, ...]
    modulus: Tuple[Expr, ...] = ()
    order: Optional[str] = None
    pos: Tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class IdealDecl:
    name: str
    gens: Tuple[Expr, ...]
    pos: Tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class ModuleDecl:
    name: str
    rows: int
    columns: Tuple[Tuple[Expr, ...], ...]
    over: Optional[Tuple[str, int]] = None
    pos: Tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class TowerDecl:
    name: str
    kind: str  # "induced" | "explicit"
    modules: Tuple[str, ...]
    ideal: Optional[str] = None
    levels: Optional[int] = None
    pos: Tuple[int, int] = field(default=(0, 0), compare=False)


@dataclass(frozen=True)
class Command:
    name: str
    args: Tuple[Union[str, int], ...]
    options: Tuple[Tuple[str, Tuple[Union[str, int], ...]], ...] = ()
    pos: Tuple[int, int] = field(default=(0, 0), compare=False)
    arg_pos: Tuple[Tuple[int, int], ...] = field(default=(), compare=False)

    def option(self, key: str, default=None):
        for k, v in self.options:
            if k == key:
                return v
        return default


Statement = Union[RingDecl, IdealDecl, ModuleDecl, TowerDecl, Command]


@dataclass(frozen=True)
class SessionScript:
    statements: Tuple[Statement, ...]

    @property
    def declarations(self):
        return tuple(s for s in self.statements if not isinstance(s, Command))

    @property
    def commands(self):
        return tuple(s for s in self.statements if isinstance(s, Command))


# ---------------------------------------------------------------- parser


class _Parser:
    def __init__(self, tokens: List[Token]):
        self.toks = tokens
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def advance(self) -> Token:
        t = self.toks[self.i]
        if t.kind != "EOF":
            self.i += 1
        return t

    def fail(self, expected: Sequence[str], what: Optional[str] = None):
        t = self.tok
        got = "end of input" if t.kind == "EOF" else repr(t.text)
        raise DslError("syntax", what or f"unexpected {got}", t.line, t.col, expected)

    def expect(self, text: str) -> Token:
        if self.tok.text != text or self.tok.kind == "EOF":
            self.fail([repr(text)])
        return self.advance()

    def accept(self, text: str) -> bool:
        if self.tok.kind != "EOF" and self.tok.text == text:
            self.advance()
            return True
        return False

    def name(self) -> Token:
        t = self.tok
        if t.kind != "NAME" or t.text in KEYWORDS or t.text in COMMANDS:
            self.fail(["NAME"])
        return self.advance()

    def integer(self) -> int:
        if self.tok.kind != "INT":
            self.fail(["INT"])
        return int(self.advance().text)

    # polynomials -----------------------------------------------------
    def expr(self) -> Expr:
        left = self.term()
        while self.tok.text in ("+", "-") and self.tok.kind == "PUNCT":
            op = self.advance()
            right = self.term()
            left = BinOp(op.text, left, right, (op.line, op.col))
        return left

    def term(self) -> Expr:
        left = self.unary()
        while self.tok.text in ("*", "/") and self.tok.kind == "PUNCT":
            op = self.advance()
            right = self.unary()
            left = BinOp(op.text, left, right, (op.line, op.col))
        return left

    def unary(self) -> Expr:
        if self.tok.text == "-" and self.tok.kind == "PUNCT":
            t = self.advance()
            return Neg(self.unary(), (t.line, t.col))
        return self.power()

    def power(self) -> Expr:
        base = self.atom()
        if self.tok.text == "^" and self.tok.kind == "PUNCT":
            t = self.advance()
            return Pow(base, self.integer(), (t.line, t.col))
        return base

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "INT":
            self.advance()
            return Num(int(t.text), (t.line, t.col))
        if t.kind == "NAME" and t.text not in KEYWORDS:
            self.advance()
            return Var(t.text, (t.line, t.col))
        if t.text == "(" and t.kind == "PUNCT":
            self.advance()
            e = self.expr()
            self.expect(")")
            return e
        self.fail(["INT", "NAME", "'('", "'-'"])

    def poly_list(self, close: str) -> Tuple[Expr, ...]:
        items = [self.expr()]
        while self.accept(","):
            items.append(self.expr())
        self.expect(close)
        return tuple(items)

    # statements ------------------------------------------------------
    def script(self) -> SessionScript:
        out = []
        while self.tok.kind != "EOF":
            out.append(self.statement())
        return SessionScript(tuple(out))

    def statement(self) -> Statement:
        t = self.tok
        if t.kind == "NAME":
            if t.text == "ring":
                return self.ring_decl()
            if t.text == "ideal":
                return self.ideal_decl()
            if t.text == "module":
                return self.module_decl()
            if t.text == "tower":
                return self.tower_decl()
            if t.text in COMMANDS:
                return self.command()
        self.fail(["'ring'", "'ideal'", "'module'", "'tower'"] + [repr(c) for c in COMMANDS], None)

    def ring_decl(self) -> RingDecl:
        start = self.advance()
        name = self.name().text
        self.expect("=")
        if self.accept("QQ"):
            fld: Tuple = ("QQ",)
        elif self.accept("GF"):
            self.expect("(")
            fld = ("GF", self.integer())
            self.expect(")")
        else:
            self.fail(["'QQ'", "'GF'"])
        self.expect("[")
        names = [self.name().text]
        while self.accept(","):
            names.append(self.name().text)
        self.expect("]")
        modulus: Tuple[Expr, ...] = ()
        if self.accept("/"):
            self.expect("<")
            modulus = self.poly_list(">")
        order = None
        if self.accept("order"):
            t = self.tok
            if t.text not in ORDERS:
                self.fail([repr(o) for o in ORDERS])
            order = self.advance().text
        self.expect(";")
        return RingDecl(name, fld, tuple(names), modulus, order, (start.line, start.col))

    def ideal_decl(self) -> IdealDecl:
        start = self.advance()
        name = self.name().text
        self.expect("=")
        self.expect("<")
        gens = self.poly_list(">")
        self.expect(";")
        return IdealDecl(name, gens, (start.line, start.col))

    def module_decl(self) -> ModuleDecl:
        start = self.advance()
        name = self.name().text
        self.expect("=")
        self.expect("coker")
        self.expect("rows")
        rows = self.integer()
        self.expect("[")
        cols: List[Tuple[Expr, ...]] = []
        if not self.accept("]"):
            while True:
                self.expect("[")
                cols.append(self.poly_list("]"))
                if self.accept("]"):
                    break
                if not self.accept(","):
                    self.fail(["','", "']'"])
        over = None
        if self.accept("over"):
            ideal = self.name().text
            self.expect("level")
            over = (ideal, self.integer())
        self.expect(";")
        return ModuleDecl(name, rows, tuple(cols), over, (start.line, start.col))

    def tower_decl(self) -> TowerDecl:
        start = self.advance()
        name = self.name().text
        self.expect("=")
        if self.accept("induced"):
            mod = self.name().text
            ideal = self.name().text if self.accept("over") else None
            self.expect("levels")
            levels = self.integer()
            self.expect(";")
            return TowerDecl(name, "induced", (mod,), ideal, levels, (start.line, start.col))
        if self.accept("explicit"):
            self.expect("[")
            mods = [self.name().text]
            while self.accept(","):
                mods.append(self.name().text)
            self.expect("]")
            ideal = self.name().text if self.accept("over") else None
            self.expect(";")
            return TowerDecl(name, "explicit", tuple(mods), ideal, None, (start.line, start.col))
        self.fail(["'induced'", "'explicit'"])

    def value(self):
        if self.tok.kind == "INT":
            return int(self.advance().text)
        return self.name().text

    def command(self) -> Command:
        start = self.advance()
        args, arg_pos = [], []
        while self.tok.kind in ("NAME", "INT") and self.tok.text not in OPTION_KEYS:
            arg_pos.append((self.tok.line, self.tok.col))
            args.append(self.value())
        options = []
        while self.tok.text in OPTION_KEYS and self.tok.kind == "NAME":
            key = self.advance().text
            vals = [self.value()]
            while self.accept(","):
                vals.append(self.value())
            options.append((key, tuple(vals)))
        if self.tok.text != ";":
            self.fail(["';'", "NAME", "INT"] + [repr(k) for k in OPTION_KEYS])
        self.advance()
        return Command(start.text, tuple(args), tuple(options), (start.line, start.col), tuple(arg_pos))


def parse_syntax(text: str) -> SessionScript:
    """Parse without semantic checks."""
    return _Parser(tokenize(text)).script()


def parse(text: str) -> SessionScript:
    """Parse and validate a script (declaration order, arities, variable names)."""
    script = parse_syntax(text)
    check_semantics(script)
    return script


def parse_polynomial(text: str, ring):
    """Evaluate a polynomial expression over ``ring``."""
    p = _Parser(tokenize(text))
    e = p.expr()
    if p.tok.kind != "EOF":
        p.fail(["operator", "end of input"])
    return eval_expr(e, ring)


def eval_expr(e: Expr, ring):
    """Evaluate an expression tree in a :class:`PolynomialRing`."""
    if isinstance(e, Num):
        return ring.constant(e.value)
    if isinstance(e, Var):
        if e.name not in ring.names:
            raise DslError("undeclared", f"unknown variable {e.name!r}", *e.pos)
        return ring.var(ring.names.index(e.name))
    if isinstance(e, Neg):
        return -eval_expr(e.arg, ring)
    if isinstance(e, Pow):
        return eval_expr(e.base, ring) ** e.exp
    a = eval_expr(e.left, ring)
    b = eval_expr(e.right, ring)
    if e.op == "+":
        return a + b
    if e.op == "-":
        return a - b
    if e.op == "*":
        return a * b
    if not b.is_constant() or b.is_zero():
        raise DslError("mismatch", "division only by nonzero constants", *e.pos)
    return a.scale(ring.field.inv(b.constant_term()))


def expr_variables(e: Expr):
    if isinstance(e, Var):
        yield e
    elif isinstance(e, Neg):
        yield from expr_variables(e.arg)
    elif isinstance(e, Pow):
        yield from expr_variables(e.base)
    elif isinstance(e, BinOp):
        yield from expr_variables(e.left)
        yield from expr_variables(e.right)


# ---------------------------------------------------------------- semantics


def check_semantics(script: SessionScript) -> None:
    kinds: Dict[str, str] = {}
    ring: Optional[RingDecl] = None
    seen_ideal = False

    def need(name: str, kind: str, pos):
        if name not in kinds:
            raise DslError("undeclared", f"name {name!r} used before declaration", *pos)
        if kinds[name] not in kind.split("|"):
            article = "an" if kinds[name][0] in "aeiou" else "a"
            raise DslError("mismatch", f"{name!r} is {article} {kinds[name]}, expected {kind}", *pos)

    def check_polys(exprs, pos):
        if ring is None:
            raise DslError("undeclared", "no ring declared", *pos)
        for e in exprs:
            for v in expr_variables(e):
                if v.name not in ring.variables:
                    raise DslError("undeclared", f"unknown variable {v.name!r}", *v.pos)

    def declare(name, kind, pos):
        if name in kinds:
            raise DslError("mismatch", f"name {name!r} declared twice", *pos)
        kinds[name] = kind

    for s in script.statements:
        if isinstance(s, RingDecl):
            if ring is not None:
                raise DslError("mismatch", "only one ring per script", *s.pos)
            if len(set(s.variables)) != len(s.variables):
                raise DslError("mismatch", "variable names must be distinct", *s.pos)
            if s.field[0] == "GF" and not _is_prime(s.field[1]):
                raise DslError("mismatch", f"GF({s.field[1]}) needs a prime", *s.pos)
            ring = s
            declare(s.name, "ring", s.pos)
            check_polys(s.modulus, s.pos)
        elif isinstance(s, IdealDecl):
            check_polys(s.gens, s.pos)
            declare(s.name, "ideal", s.pos)
            seen_ideal = True
        elif isinstance(s, ModuleDecl):
            for c in s.columns:
                if len(c) != s.rows:
                    raise DslError("mismatch", f"relation has {len(c)} entries, module has {s.rows} rows", *s.pos)
                check_polys(c, s.pos)
            if ring is None:
                raise DslError("undeclared", "no ring declared", *s.pos)
            if s.over is not None:
                need(s.over[0], "ideal", s.pos)
            declare(s.name, "module", s.pos)
        elif isinstance(s, TowerDecl):
            if not seen_ideal:
                raise DslError("undeclared", "an ideal must be declared before any tower", *s.pos)
            for m in s.modules:
                need(m, "module", s.pos)
            if s.ideal is not None:
                need(s.ideal, "ideal", s.pos)
            declare(s.name, "tower", s.pos)
        else:
            argkinds, opts = COMMANDS[s.name]
            if len(s.args) != len(argkinds):
                raise DslError("mismatch", f"{s.name} takes {len(argkinds)} argument(s), got {len(s.args)}", *s.pos)
            positions = s.arg_pos or (s.pos,) * len(s.args)
            for a, kind, apos in zip(s.args, argkinds, positions):
                if kind == "int":
                    if not isinstance(a, int):
                        raise DslError("mismatch", f"{s.name} expects an integer, got {a!r}", *apos)
                else:
                    if isinstance(a, int):
                        raise DslError("mismatch", f"{s.name} expects a name, got {a}", *apos)
                    need(a, kind, apos)
            for key, vals in s.options:
                if key not in opts:
                    raise DslError("mismatch", f"{s.name} does not accept option {key!r}", *s.pos)
                if key == "over":
                    if len(vals) != 1 or isinstance(vals[0], int):
                        raise DslError("mismatch", "'over' takes one ideal name", *s.pos)
                    need(vals[0], "ideal", s.pos)
                elif key == "tests":
                    for v in vals:
                        if isinstance(v, int):
                            raise DslError("mismatch", "'tests' takes module names", *s.pos)
                        need(v, "module", s.pos)
                elif len(vals) != 1 or not isinstance(vals[0], int):
                    raise DslError("mismatch", f"'{key}' takes one integer", *s.pos)
            if s.name in ("flatcheck", "completion", "prop250", "torsion", "koszul", "wpr") and not seen_ideal:
                raise DslError("undeclared", "an ideal must be declared before this command", *s.pos)


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    i = 2
    while i * i <= p:
        if p % i == 0:
            return False
        i += 1
    return True


# ---------------------------------------------------------------- printer

_PREC = {"+": 1, "-": 1, "*": 2, "/": 2}


def format_expr(e: Expr) -> str:
    if isinstance(e, Num):
        return str(e.value)
    if isinstance(e, Var):
        return e.name
    if isinstance(e, Pow):
        b = format_expr(e.base)
        if not isinstance(e.base, (Num, Var)):
            b = f"({b})"
        return f"{b}^{e.exp}"
    if isinstance(e, Neg):
        inner = format_expr(e.arg)
        if isinstance(e.arg, BinOp):
            inner = f"({inner})"
        return f"-{inner}"
    p = _PREC[e.op]
    left = format_expr(e.left)
    if isinstance(e.left, BinOp) and _PREC[e.left.op] < p:
        left = f"({left})"
    right = format_expr(e.right)
    if isinstance(e.right, BinOp) and _PREC[e.right.op] <= p:
        right = f"({right})"
    elif isinstance(e.right, Neg) and p >= 1:
        right = f"({right})"
    return f"{left} {e.op} {right}" if p == 1 else f"{left}*{right}" if e.op == "*" else f"{left}/{right}"


def format_statement(s: Statement) -> str:
    if isinstance(s, RingDecl):
        fld = "QQ" if s.field[0] == "QQ" else f"GF({s.field[1]})"
        out = f"ring {s.name} = {fld}[{', '.join(s.variables)}]"
        if s.modulus:
            out += " / <" + ", ".join(format_expr(e) for e in s.modulus) + ">"
        if s.order:
            out += f" order {s.order}"
        return out + ";"
    if isinstance(s, IdealDecl):
        return f"ideal {s.name} = <" + ", ".join(format_expr(e) for e in s.gens) + ">;"
    if isinstance(s, ModuleDecl):
        cols = ", ".join("[" + ", ".join(format_expr(e) for e in c) + "]" for c in s.columns)
        out = f"module {s.name} = coker rows {s.rows} [{cols}]"
        if s.over:
            out += f" over {s.over[0]} level {s.over[1]}"
        return out + ";"
    if isinstance(s, TowerDecl):
        if s.kind == "induced":
            out = f"tower {s.name} = induced {s.modules[0]}"
            if s.ideal:
                out += f" over {s.ideal}"
            return out + f" levels {s.levels};"
        out = f"tower {s.name} = explicit [{', '.join(s.modules)}]"
        if s.ideal:
            out += f" over {s.ideal}"
        return out + ";"
    parts = [s.name] + [str(a) for a in s.args]
    for key, vals in s.options:
        parts.append(key + " " + ", ".join(str(v) for v in vals))
    return " ".join(parts) + ";"


def format_script(script: SessionScript) -> str:
    return "".join(format_statement(s) + "\n" for s in script.statements)


def describe_error(err: DslError) -> dict:
    return {"kind": err.kind, "message": err.message, "line": err.line, "column": err.col, "expected": list(err.expected)}


__all__ = [
    "BinOp", "Command", "DslError", "IdealDecl", "ModuleDecl", "Neg", "Num", "Pow", "RingDecl",
    "SessionScript", "Token", "TowerDecl", "Var", "check_semantics", "eval_expr", "format_expr",
    "format_script", "format_statement", "parse", "parse_polynomial", "parse_syntax", "tokenize",
]

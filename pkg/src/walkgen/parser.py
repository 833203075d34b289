"""Recursive-descent parser for ``.wt`` programs.

Grammar::

    program   := decl+ stmt+
    decl      := "var" IDENT ":" ("int32" | "real" "(" NUM "," NUM "," INT ")") [";"]
               | "local" IDENT ":" ("int" | "real" "(" INT ")") [";"]
    stmt      := IDENT "=" expr ";"
               | "if" "(" bexpr ")" block ["else" (block | if-stmt)]
               | "while" "(" bexpr ")" block
               | "target" (IDENT | INT) ";"
    block     := "{" stmt* "}" | stmt
    bexpr     := band ("||" band)*
    band      := bunary ("&&" bunary)*
    bunary    := "!" bunary | "true" | "false" | "(" bexpr ")" | expr RELOP expr
    expr      := term (("+" | "-") term)*
    term      := factor (("*" | "/" | "%") factor)*
    factor    := "-" factor | NUM | IDENT | "(" expr ")"

``#`` starts a line comment.  Decisions are numbered in source order from 0.
"""

from __future__ import annotations

import re
from decimal import Decimal
from pathlib import Path

from walkgen.syntax import (
    And,
    Assign,
    BinOp,
    BoolLit,
    DecisionNode,
    If,
    LocalVar,
    Neg,
    Not,
    Num,
    Or,
    ProgramModel,
    Rel,
    Target,
    Var,
    VariableDomain,
    While,
)

KEYWORDS = {"var", "local", "if", "else", "while", "target", "true", "false", "int32", "int", "real"}
RELOPS = {"==", "!=", "<", "<=", ">", ">="}

_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<nl>\n)
  | (?P<comment>\#[^\n]*)
  | (?P<num>\d+(?:\.\d+)?)
  | (?P<ident>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>==|!=|<=|>=|&&|\|\||[-+*/%<>=!(){};:,])
    """,
    re.VERBOSE,
)


class ParseError(Exception):
    """Syntax or static-semantics error, located at ``line``:``column``."""

    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"{line}:{column}: {message}" if line else message)


class Token:
    __slots__ = ("kind", "text", "line", "column")

    def __init__(self, kind, text, line, column):
        self.kind = kind
        self.text = text
        self.line = line
        self.column = column

    def __repr__(self):
        return f"Token({self.kind}, {self.text!r}, {self.line}:{self.column})"


def tokenize(source: str) -> list[Token]:
    tokens = []
    line, line_start, pos = 1, 0, 0
    while pos < len(source):
        m = _TOKEN.match(source, pos)
        if m is None:
            raise ParseError(f"unexpected character {source[pos]!r}", line, pos - line_start + 1)
        kind = m.lastgroup
        text = m.group()
        if kind == "nl":
            line += 1
            line_start = m.end()
        elif kind == "ident" and text in KEYWORDS:
            tokens.append(Token("kw", text, line, pos - line_start + 1))
        elif kind not in ("ws", "comment"):
            tokens.append(Token(kind, text, line, pos - line_start + 1))
        pos = m.end()
    tokens.append(Token("eof", "", line, pos - line_start + 1))
    return tokens


def _combine_types(op, left, right, tok):
    types = {left.type, right.type}
    if types == {"int", "real"}:
        raise ParseError(f"type mismatch: int {op} real", tok.line, tok.column)
    if "real" in types and op == "%":
        raise ParseError("'%' is only defined for integers", tok.line, tok.column)
    if "real" in types:
        return "real"
    if "int" in types:
        return "int"
    return "num"


class _Parser:
    def __init__(self, source: str):
        self.tokens = tokenize(source)
        self.pos = 0
        self.variables: dict[str, VariableDomain] = {}
        self.locals: dict[str, LocalVar] = {}
        self.decisions: list[DecisionNode] = []
        self._atom_counter = 0

    # -- token helpers ------------------------------------------------------

    @property
    def tok(self) -> Token:
        return self.tokens[self.pos]

    def error(self, message, tok=None):
        tok = tok or self.tok
        return ParseError(message, tok.line, tok.column)

    def check(self, text) -> bool:
        return self.tok.text == text and self.tok.kind in ("op", "kw")

    def accept(self, text) -> Token | None:
        if self.check(text):
            tok = self.tok
            self.pos += 1
            return tok
        return None

    def expect(self, text) -> Token:
        tok = self.accept(text)
        if tok is None:
            found = self.tok.text or "end of input"
            raise self.error(f"expected {text!r}, found {found!r}")
        return tok

    def expect_ident(self) -> Token:
        tok = self.tok
        if tok.kind != "ident":
            raise self.error(f"expected identifier, found {tok.text or 'end of input'!r}")
        self.pos += 1
        return tok

    def signed_number(self) -> Decimal:
        sign = -1 if self.accept("-") else 1
        if self.tok.kind != "num":
            raise self.error("expected number")
        value = Decimal(self.tok.text) * sign
        self.pos += 1
        return value

    def integer(self) -> int:
        if self.tok.kind != "num" or "." in self.tok.text:
            raise self.error("expected integer")
        value = int(self.tok.text)
        self.pos += 1
        return value

    # -- declarations -------------------------------------------------------

    def declared(self, name):
        return name in self.variables or name in self.locals

    def declarations(self):
        while self.check("var") or self.check("local"):
            is_input = self.tok.text == "var"
            self.pos += 1
            name_tok = self.expect_ident()
            name = name_tok.text
            if self.declared(name):
                raise self.error(f"duplicate declaration of {name!r}", name_tok)
            self.expect(":")
            if is_input:
                if self.accept("int32"):
                    domain = VariableDomain(name, "int32")
                elif self.accept("real"):
                    self.expect("(")
                    lo = self.signed_number()
                    self.expect(",")
                    hi = self.signed_number()
                    self.expect(",")
                    decimals = self.integer()
                    self.expect(")")
                    try:
                        domain = VariableDomain(name, "real", lo, hi, decimals)
                    except ValueError as exc:
                        raise self.error(str(exc), name_tok) from None
                else:
                    raise self.error("expected 'int32' or 'real(min, max, decimals)'")
                self.variables[name] = domain
            else:
                if self.accept("int") or self.accept("int32"):
                    local = LocalVar(name, "int")
                elif self.accept("real"):
                    self.expect("(")
                    local = LocalVar(name, "real", self.integer())
                    self.expect(")")
                else:
                    raise self.error("expected 'int' or 'real(decimals)'")
                self.locals[name] = local
            self.accept(";")
        if not self.variables:
            raise self.error("no input variables")

    def var_ref(self, tok) -> Var:
        name = tok.text
        if name in self.variables:
            d = self.variables[name]
            return Var(name, "real" if d.kind == "real" else "int", d.scale)
        if name in self.locals:
            loc = self.locals[name]
            return Var(name, loc.type, loc.scale)
        raise ParseError(f"undeclared variable {name!r}", tok.line, tok.column)

    # -- statements ---------------------------------------------------------

    def program(self) -> tuple:
        self.declarations()
        body = []
        while self.tok.kind != "eof":
            if self.check("var") or self.check("local"):
                raise self.error("declarations must precede statements")
            body.append(self.statement())
        if not body:
            raise self.error("program has no statements")
        return tuple(body)

    def block(self) -> tuple:
        if self.accept("{"):
            stmts = []
            while not self.check("}"):
                if self.tok.kind == "eof":
                    raise self.error("unterminated block, expected '}'")
                stmts.append(self.statement())
            self.expect("}")
            return tuple(stmts)
        return (self.statement(),)

    def decision(self, kind, tok):
        self.expect("(")
        self._atom_counter = 0
        cond = self.bexpr()
        self.expect(")")
        node_id = len(self.decisions)
        self.decisions.append(DecisionNode(node_id, cond, tok.line, tok.column, kind))
        return node_id, cond

    def statement(self):
        tok = self.tok
        if self.accept("if"):
            node_id, cond = self.decision("if", tok)
            then = self.block()
            orelse = ()
            if self.accept("else"):
                orelse = (self.statement(),) if self.check("if") else self.block()
            return If(cond, node_id, then, orelse, tok.line)
        if self.accept("while"):
            node_id, cond = self.decision("while", tok)
            return While(cond, node_id, self.block(), tok.line)
        if self.accept("target"):
            label_tok = self.tok
            if label_tok.kind not in ("ident", "num"):
                raise self.error("expected target label")
            self.pos += 1
            self.expect(";")
            return Target(label_tok.text, tok.line)
        if tok.kind == "ident":
            self.pos += 1
            target = self.var_ref(tok)
            eq = self.expect("=")
            expr = self.expr()
            if {target.type, expr.type} == {"int", "real"}:
                raise self.error(f"type mismatch: cannot assign {expr.type} to {target.type}", eq)
            self.expect(";")
            return Assign(tok.text, expr, tok.line)
        raise self.error(f"unexpected {tok.text or 'end of input'!r}")

    # -- conditions ---------------------------------------------------------

    def bexpr(self):
        left = self.band()
        while self.accept("||"):
            left = Or(left, self.band())
        return left

    def band(self):
        left = self.bunary()
        while self.accept("&&"):
            left = And(left, self.bunary())
        return left

    def atom_id(self) -> int:
        n = self._atom_counter
        self._atom_counter += 1
        return n

    def bunary(self):
        if self.accept("!"):
            return Not(self.bunary())
        if self.check("true") or self.check("false"):
            value = self.tok.text == "true"
            self.pos += 1
            return BoolLit(value, self.atom_id())
        if self.check("("):
            # "(" opens either a nested condition or an arithmetic operand.
            start, counter = self.pos, self._atom_counter
            try:
                return self.relation()
            except ParseError:
                self.pos, self._atom_counter = start, counter
            self.expect("(")
            inner = self.bexpr()
            self.expect(")")
            return inner
        return self.relation()

    def relation(self) -> Rel:
        left = self.expr()
        tok = self.tok
        if tok.text == "=" and tok.kind == "op":
            raise self.error("assignment inside a condition is not allowed (conditions must be side-effect free)")
        if tok.kind != "op" or tok.text not in RELOPS:
            raise self.error(f"expected relational operator, found {tok.text or 'end of input'!r}")
        self.pos += 1
        right = self.expr()
        if {left.type, right.type} == {"int", "real"}:
            raise ParseError(f"type mismatch: int {tok.text} real", tok.line, tok.column)
        return Rel(tok.text, left, right, self.atom_id())

    # -- arithmetic ---------------------------------------------------------

    def expr(self):
        left = self.term()
        while self.check("+") or self.check("-"):
            tok = self.tok
            self.pos += 1
            right = self.term()
            kind = _combine_types(tok.text, left, right, tok)
            left = BinOp(tok.text, left, right, kind, max(left.scale, right.scale))
        return left

    def term(self):
        left = self.factor()
        while self.check("*") or self.check("/") or self.check("%"):
            tok = self.tok
            self.pos += 1
            right = self.factor()
            kind = _combine_types(tok.text, left, right, tok)
            if tok.text == "*":
                scale = left.scale + right.scale
            else:
                scale = max(left.scale, right.scale)
            left = BinOp(tok.text, left, right, kind, scale)
        return left

    def factor(self):
        tok = self.tok
        if self.accept("-"):
            operand = self.factor()
            return Neg(operand, operand.type, operand.scale)
        if tok.kind == "num":
            self.pos += 1
            if "." in tok.text:
                scale = len(tok.text.split(".")[1])
                return Num(int(tok.text.replace(".", "")), "real", scale)
            return Num(int(tok.text))
        if tok.kind == "ident":
            self.pos += 1
            return self.var_ref(tok)
        if self.accept("("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise self.error(f"expected expression, found {tok.text or 'end of input'!r}")


def parse_program(source: str, name: str = "program") -> ProgramModel:
    """Parse ``.wt`` source text into a :class:`ProgramModel`."""
    p = _Parser(source)
    body = p.program()
    return ProgramModel(
        variables=tuple(p.variables.values()),
        locals=tuple(p.locals.values()),
        body=body,
        decisions=tuple(p.decisions),
        name=name,
        source=source,
    )


def load_program(path) -> ProgramModel:
    path = Path(path)
    return parse_program(path.read_text(encoding="utf-8"), name=path.stem)

"""Concrete syntax: tokenizer, declaration parser, pretty printer.

The surface language is a small Dedukti-style format:

    Lev : Type.                      static constant
    def eps : i : Lev -> T i -> Type.  definable constant (may get rules)
    def two := suc (suc zero).       definition, type inferred
    def f (x : A) : B := body.       parameterized definition sugar
    [x, y] plus (suc x) y --> suc (plus x y).   rewrite rule

Terms: `x : A -> B` (product), `A -> B` (non-dependent product),
`x : A => b` and `x => b` (abstraction), juxtaposition (application),
`Type` (the sort of types).  Comments are `(; ... ;)` and nest.

Identifier resolution happens at parse time: binder-bound names and rule
pattern variables become Var, previously declared names become Const.
Anything else is a free Var in term position but an error inside rewrite
rules, where an unbound identifier is always a mistake.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Union

from .terms import (App, Const, Lam, Pi, Sort, Term, TYPE, Var, free_vars,
                    fresh_name, spine)

__all__ = [
    "SourceSpan", "ParseError", "Token",
    "StaticConst", "DefinableConst", "Definition", "RuleDecl", "Declaration",
    "tokenize", "parse_file", "parse_files", "parse_term",
    "pretty", "print_declaration",
]


@dataclass(frozen=True)
class SourceSpan:
    file: str
    line: int
    col: int

    def __str__(self) -> str:
        return f"{self.file}:{self.line}:{self.col}"


class ParseError(Exception):
    def __init__(self, msg: str, span: SourceSpan):
        super().__init__(f"{span}: {msg}")
        self.msg = msg
        self.span = span


@dataclass(frozen=True)
class Token:
    kind: str  # "ident", "sym", "eof"
    text: str
    line: int
    col: int


@dataclass(frozen=True)
class StaticConst:
    name: str
    ty: Term
    span: SourceSpan


@dataclass(frozen=True)
class DefinableConst:
    name: str
    ty: Term
    span: SourceSpan


@dataclass(frozen=True)
class Definition:
    name: str
    ty: Optional[Term]  # None: infer from the body
    body: Term
    span: SourceSpan


@dataclass(frozen=True)
class RuleDecl:
    pat_vars: tuple[str, ...]
    lhs: Term
    rhs: Term
    span: SourceSpan


Declaration = Union[StaticConst, DefinableConst, Definition, RuleDecl]

_SYMBOLS = (":=", "-->", "->", "=>", ":", "(", ")", "[", "]", ",", ".")


def _ident_char(c: str) -> bool:
    return c.isalnum() or c == "_" or c == "'"


def tokenize(text: str, file: str = "<input>") -> list[Token]:
    toks: list[Token] = []
    i, line, col = 0, 1, 1
    n = len(text)
    while i < n:
        c = text[i]
        if c == "\n":
            i += 1
            line += 1
            col = 1
            continue
        if c.isspace():
            i += 1
            col += 1
            continue
        if text.startswith("(;", i):
            depth = 1
            sl, sc = line, col
            i += 2
            col += 2
            while i < n and depth > 0:
                if text.startswith("(;", i):
                    depth += 1
                    i += 2
                    col += 2
                elif text.startswith(";)", i):
                    depth -= 1
                    i += 2
                    col += 2
                elif text[i] == "\n":
                    i += 1
                    line += 1
                    col = 1
                else:
                    i += 1
                    col += 1
            if depth > 0:
                raise ParseError("unterminated comment", SourceSpan(file, sl, sc))
            continue
        for sym in _SYMBOLS:
            if text.startswith(sym, i):
                toks.append(Token("sym", sym, line, col))
                i += len(sym)
                col += len(sym)
                break
        else:
            if _ident_char(c):
                j = i
                while j < n and _ident_char(text[j]):
                    j += 1
                toks.append(Token("ident", text[i:j], line, col))
                col += j - i
                i = j
            else:
                raise ParseError(f"unexpected character {c!r}",
                                 SourceSpan(file, line, col))
    toks.append(Token("eof", "", line, col))
    return toks


class _Parser:
    def __init__(self, toks: list[Token], file: str, consts: set[str],
                 defs: Optional[set[str]] = None):
        self.toks = toks
        self.pos = 0
        self.file = file
        self.consts = consts
        self.defs = defs if defs is not None else set()
        self.strict = False  # inside a rewrite rule: no free identifiers

    def peek(self, ahead: int = 0) -> Token:
        return self.toks[min(self.pos + ahead, len(self.toks) - 1)]

    def next(self) -> Token:
        t = self.toks[self.pos]
        if t.kind != "eof":
            self.pos += 1
        return t

    def span(self, tok: Token) -> SourceSpan:
        return SourceSpan(self.file, tok.line, tok.col)

    def fail(self, msg: str, tok: Optional[Token] = None):
        raise ParseError(msg, self.span(tok or self.peek()))

    def at_sym(self, s: str) -> bool:
        t = self.peek()
        return t.kind == "sym" and t.text == s

    def expect_sym(self, s: str) -> Token:
        if not self.at_sym(s):
            self.fail(f"expected {s!r}, found {self.peek().text!r}")
        return self.next()

    def expect_ident(self) -> Token:
        t = self.peek()
        if t.kind != "ident":
            self.fail(f"expected an identifier, found {t.text!r}")
        return self.next()

    # -- terms ------------------------------------------------------------

    def term(self, bound: frozenset[str]) -> Term:
        t = self.peek()
        if t.kind == "ident" and t.text != "Type" and self.peek(1).kind == "sym":
            nxt = self.peek(1).text
            if nxt == ":":
                name = self.next().text
                self.next()
                dom = self.appl(bound)
                if self.at_sym("->"):
                    self.next()
                    return Pi(name, dom, self.term(bound | {name}))
                if self.at_sym("=>"):
                    self.next()
                    return Lam(name, dom, self.term(bound | {name}))
                self.fail("expected '->' or '=>' after binder")
            if nxt == "=>":
                name = self.next().text
                self.next()
                return Lam(name, None, self.term(bound | {name}))
        left = self.appl(bound)
        if self.at_sym("->"):
            self.next()
            cod = self.term(bound)
            v = fresh_name("_", free_vars(cod))
            return Pi(v, left, cod)
        return left

    def appl(self, bound: frozenset[str]) -> Term:
        t = self.atom(bound)
        while True:
            nxt = self.peek()
            if nxt.kind == "ident" and not (
                    nxt.text != "Type" and self.peek(1).kind == "sym"
                    and self.peek(1).text == ":"):
                t = App(t, self.atom(bound))
            elif self.at_sym("("):
                t = App(t, self.atom(bound))
            else:
                return t

    def atom(self, bound: frozenset[str]) -> Term:
        t = self.peek()
        if self.at_sym("("):
            self.next()
            inner = self.term(bound)
            self.expect_sym(")")
            return inner
        if t.kind == "ident":
            self.next()
            if t.text == "Type":
                return TYPE
            if t.text in bound:
                return Var(t.text)
            if t.text in self.consts:
                return Const(t.text)
            if self.strict:
                self.fail(f"unbound identifier {t.text!r} in rewrite rule", t)
            return Var(t.text)
        self.fail(f"expected a term, found {t.text!r}", t)

    # -- declarations -----------------------------------------------------

    def declare(self, name: str, tok: Token, definable: bool = False):
        if name in self.consts:
            self.fail(f"{name!r} is already declared", tok)
        if name == "Type":
            self.fail("'Type' is reserved", tok)
        self.consts.add(name)
        if definable:
            self.defs.add(name)

    def declaration(self) -> Declaration:
        start = self.peek()
        if self.at_sym("["):
            return self.rule()
        if start.kind == "ident" and start.text == "def":
            self.next()
            return self.definition(start)
        name_tok = self.expect_ident()
        self.expect_sym(":")
        ty = self.term(frozenset())
        self.expect_sym(".")
        self.declare(name_tok.text, name_tok)
        return StaticConst(name_tok.text, ty, self.span(name_tok))

    def definition(self, start: Token) -> Declaration:
        name_tok = self.expect_ident()
        name = name_tok.text
        params: list[tuple[str, Term]] = []
        bound: frozenset[str] = frozenset()
        while self.at_sym("("):
            self.next()
            p = self.expect_ident()
            self.expect_sym(":")
            pty = self.term(bound)
            self.expect_sym(")")
            params.append((p.text, pty))
            bound = bound | {p.text}
        ty: Optional[Term] = None
        if self.at_sym(":"):
            self.next()
            ty = self.term(bound)
        if self.at_sym("."):
            self.next()
            if ty is None:
                self.fail("definition needs a type or a body", name_tok)
            if params:
                self.fail("a definable constant cannot take parameters",
                          name_tok)
            self.declare(name, name_tok, definable=True)
            return DefinableConst(name, ty, self.span(name_tok))
        self.expect_sym(":=")
        body = self.term(bound)
        self.expect_sym(".")
        for p, pty in reversed(params):
            body = Lam(p, pty, body)
            if ty is not None:
                ty = Pi(p, pty, ty)
        self.declare(name, name_tok, definable=True)
        return Definition(name, ty, body, self.span(name_tok))

    def rule(self) -> RuleDecl:
        start = self.expect_sym("[")
        pat_vars: list[str] = []
        if not self.at_sym("]"):
            while True:
                v = self.expect_ident()
                if v.text in pat_vars:
                    self.fail(f"duplicate pattern variable {v.text!r}", v)
                pat_vars.append(v.text)
                # an explicit arity annotation is tolerated and ignored
                if self.peek().kind == "ident" and self.peek().text.isdigit():
                    self.next()
                if self.at_sym(","):
                    self.next()
                else:
                    break
        self.expect_sym("]")
        self.strict = True
        try:
            bound = frozenset(pat_vars)
            lhs = self.term(bound)
            self.expect_sym("-->")
            rhs = self.term(bound)
        finally:
            self.strict = False
        self.expect_sym(".")
        head, _ = spine(lhs)
        if not (isinstance(head, Const) and head.name in self.defs):
            self.fail("rule left-hand side must be headed by a 'def' constant",
                      start)
        return RuleDecl(tuple(pat_vars), lhs, rhs, self.span(start))

    def file_decls(self) -> list[Declaration]:
        out = []
        while self.peek().kind != "eof":
            out.append(self.declaration())
        return out


def parse_file(text: str, file: str = "<input>",
               consts: Optional[set[str]] = None,
               defs: Optional[set[str]] = None) -> list[Declaration]:
    """Parse one file's declarations.

    `consts` carries names declared by earlier files, `defs` the subset
    introduced by `def`; both are updated in place.
    """
    p = _Parser(tokenize(text, file), file,
                consts if consts is not None else set(), defs)
    return p.file_decls()


def parse_files(files: list[tuple[str, str]]) -> list[Declaration]:
    """Parse (name, text) pairs in order, threading declarations across."""
    consts: set[str] = set()
    defs: set[str] = set()
    out: list[Declaration] = []
    for file, text in files:
        out.extend(parse_file(text, file, consts, defs))
    return out


def parse_term(text: str, consts: set[str] | frozenset[str] = frozenset(),
               file: str = "<term>") -> Term:
    p = _Parser(tokenize(text, file), file, set(consts))
    t = p.term(frozenset())
    if p.peek().kind != "eof":
        p.fail(f"trailing input {p.peek().text!r}")
    return t


# -- printing -------------------------------------------------------------

def pretty(t: Term) -> str:
    return _pp(t, 0)


def _pp(t: Term, level: int) -> str:
    # level 0: anything, 1: application, 2: atom
    match t:
        case Sort(k):
            return "Type" if k == "TYPE" else "Kind"
        case Const(n) | Var(n):
            return n
        case App(f, a):
            s = f"{_pp(f, 1)} {_pp(a, 2)}"
            return f"({s})" if level > 1 else s
        case Lam(v, dom, body):
            if dom is None:
                s = f"{v} => {_pp(body, 0)}"
            else:
                s = f"{v} : {_pp(dom, 1)} => {_pp(body, 0)}"
            return f"({s})" if level > 0 else s
        case Pi(v, dom, cod):
            if v in free_vars(cod):
                s = f"{v} : {_pp(dom, 1)} -> {_pp(cod, 0)}"
            else:
                s = f"{_pp(dom, 1)} -> {_pp(cod, 0)}"
            return f"({s})" if level > 0 else s
    raise TypeError(f"not a term: {t!r}")


def print_declaration(d: Declaration) -> str:
    match d:
        case StaticConst(name, ty, _):
            return f"{name} : {pretty(ty)}."
        case DefinableConst(name, ty, _):
            return f"def {name} : {pretty(ty)}."
        case Definition(name, None, body, _):
            return f"def {name} := {pretty(body)}."
        case Definition(name, ty, body, _):
            return f"def {name} : {pretty(ty)} := {pretty(body)}."
        case RuleDecl(pat_vars, lhs, rhs, _):
            return f"[{', '.join(pat_vars)}] {pretty(lhs)} --> {pretty(rhs)}."
    raise TypeError(f"not a declaration: {d!r}")

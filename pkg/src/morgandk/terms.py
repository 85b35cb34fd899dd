"""Core term syntax for a lambda-Pi kernel with named binders.

Terms are immutable, so they can be shared freely and used as dict keys.
Substitution is capture-avoiding; alpha equivalence ignores binder names
and lambda domain annotations (Pi domains are always compared).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Union

__all__ = [
    "Sort", "Const", "Var", "App", "Lam", "Pi", "Term",
    "TYPE", "KIND",
    "app", "spine", "pi_chain", "lam_chain",
    "free_vars", "fresh_name", "subst", "msubst", "alpha_eq",
    "Ctx",
]


@dataclass(frozen=True)
class Sort:
    kind: str  # "TYPE" or "KIND"


TYPE = Sort("TYPE")
KIND = Sort("KIND")


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Var:
    name: str


@dataclass(frozen=True)
class App:
    fn: "Term"
    arg: "Term"


@dataclass(frozen=True)
class Lam:
    var: str
    dom: Optional["Term"]  # annotation is optional on lambdas
    body: "Term"


@dataclass(frozen=True)
class Pi:
    var: str
    dom: "Term"
    cod: "Term"


Term = Union[Sort, Const, Var, App, Lam, Pi]


def app(fn: Term, *args: Term) -> Term:
    """Left-nested application of fn to args."""
    for a in args:
        fn = App(fn, a)
    return fn


def spine(t: Term) -> tuple[Term, list[Term]]:
    """Split a term into its head and argument list: spine(f a b) = (f, [a, b])."""
    args: list[Term] = []
    while isinstance(t, App):
        args.append(t.arg)
        t = t.fn
    args.reverse()
    return t, args


def pi_chain(binders: Iterable[tuple[str, Term]], cod: Term) -> Term:
    out = cod
    for name, dom in reversed(list(binders)):
        out = Pi(name, dom, out)
    return out


def lam_chain(binders: Iterable[tuple[str, Optional[Term]]], body: Term) -> Term:
    out = body
    for name, dom in reversed(list(binders)):
        out = Lam(name, dom, out)
    return out


def free_vars(t: Term) -> frozenset[str]:
    """Names of unbound Var occurrences in t."""
    match t:
        case Var(n):
            return frozenset((n,))
        case App(f, a):
            return free_vars(f) | free_vars(a)
        case Lam(v, dom, body):
            fv = free_vars(body) - {v}
            if dom is not None:
                fv |= free_vars(dom)
            return fv
        case Pi(v, dom, cod):
            return (free_vars(cod) - {v}) | free_vars(dom)
        case _:
            return frozenset()


def fresh_name(base: str, avoid: frozenset[str] | set[str]) -> str:
    if base not in avoid:
        return base
    n = 0
    while f"{base}_{n}" in avoid:
        n += 1
    return f"{base}_{n}"


def subst(t: Term, name: str, repl: Term) -> Term:
    """Substitute repl for the free variable `name` in t, renaming binders
    when they would capture a free variable of repl."""
    match t:
        case Var(n):
            return repl if n == name else t
        case Sort() | Const():
            return t
        case App(f, a):
            return App(subst(f, name, repl), subst(a, name, repl))
        case Lam(v, dom, body):
            nd = subst(dom, name, repl) if dom is not None else None
            if v == name or name not in free_vars(body):
                return t if nd is dom else Lam(v, nd, body)
            if v in free_vars(repl):
                w = fresh_name(v, free_vars(repl) | free_vars(body) | {name})
                body = subst(body, v, Var(w))
                v = w
            return Lam(v, nd, subst(body, name, repl))
        case Pi(v, dom, cod):
            nd = subst(dom, name, repl)
            if v == name or name not in free_vars(cod):
                return t if nd is dom else Pi(v, nd, cod)
            if v in free_vars(repl):
                w = fresh_name(v, free_vars(repl) | free_vars(cod) | {name})
                cod = subst(cod, v, Var(w))
                v = w
            return Pi(v, nd, subst(cod, name, repl))
    raise TypeError(f"not a term: {t!r}")


def msubst(t: Term, sub: dict[str, Term]) -> Term:
    """Simultaneous capture-avoiding substitution of several variables.

    Not the same as folding subst: a replacement term may contain a free
    variable that is also a substituted name, and must not be rewritten
    again."""
    if not sub:
        return t
    match t:
        case Var(n):
            return sub.get(n, t)
        case Sort() | Const():
            return t
        case App(f, a):
            return App(msubst(f, sub), msubst(a, sub))
        case Lam(v, dom, body):
            nd = msubst(dom, sub) if dom is not None else None
            inner = {k: r for k, r in sub.items() if k != v and k in free_vars(body)}
            if not inner:
                return Lam(v, nd, body)
            clash = frozenset().union(*(free_vars(r) for r in inner.values()))
            if v in clash:
                w = fresh_name(v, clash | free_vars(body))
                body = subst(body, v, Var(w))
                v = w
            return Lam(v, nd, msubst(body, inner))
        case Pi(v, dom, cod):
            nd = msubst(dom, sub)
            inner = {k: r for k, r in sub.items() if k != v and k in free_vars(cod)}
            if not inner:
                return Pi(v, nd, cod)
            clash = frozenset().union(*(free_vars(r) for r in inner.values()))
            if v in clash:
                w = fresh_name(v, clash | free_vars(cod))
                cod = subst(cod, v, Var(w))
                v = w
            return Pi(v, nd, msubst(cod, inner))
    raise TypeError(f"not a term: {t!r}")


def alpha_eq(a: Term, b: Term) -> bool:
    """Equality up to renaming of bound variables."""
    return _alpha(a, b, {}, {}, 0)


def _alpha(a: Term, b: Term, ea: dict, eb: dict, depth: int) -> bool:
    match a, b:
        case Sort(x), Sort(y):
            return x == y
        case Const(x), Const(y):
            return x == y
        case Var(x), Var(y):
            return ea.get(x, x) == eb.get(y, y)
        case App(f1, a1), App(f2, a2):
            return _alpha(f1, f2, ea, eb, depth) and _alpha(a1, a2, ea, eb, depth)
        case Lam(v1, _, b1), Lam(v2, _, b2):
            return _alpha(b1, b2, {**ea, v1: depth}, {**eb, v2: depth}, depth + 1)
        case Pi(v1, d1, c1), Pi(v2, d2, c2):
            return _alpha(d1, d2, ea, eb, depth) and _alpha(
                c1, c2, {**ea, v1: depth}, {**eb, v2: depth}, depth + 1)
        case _:
            return False


@dataclass(frozen=True)
class Ctx:
    """Typing context: ordered name/type pairs, innermost binding last.

    Lookup resolves to the innermost entry, so pushing an existing name
    shadows the older entry.
    """

    entries: tuple[tuple[str, Term], ...] = ()

    def push(self, name: str, ty: Term) -> "Ctx":
        return Ctx(self.entries + ((name, ty),))

    def lookup(self, name: str) -> Optional[Term]:
        for n, ty in reversed(self.entries):
            if n == name:
                return ty
        return None

    def names(self) -> frozenset[str]:
        return frozenset(n for n, _ in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

"""Rewriting engine: first-order rules over lambda terms, weak-head and
full normalization with eta, conversion, reduction traces with replay,
and critical pair analysis.

Rule left-hand sides are applicative patterns: a constant head applied to
argument patterns built from constants, applications and pattern
variables, with no binders.  Matching is modulo reduction (arguments are
weak-head normalized as far as the pattern shape demands) and a repeated
pattern variable compares its matches up to conversion, so non-left-linear
rules behave definitionally.

Traced reduction instead takes one leftmost-outermost step at a time with
plain syntactic matching, so every recorded step can be replayed without
hidden work.  On well-typed terms the two strategies compute the same
normal forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional, Sequence

from .algebra import Fails, Holds, Verdict
from .terms import (App, Const, Lam, Pi, Sort, Term, Var, alpha_eq, app,
                    free_vars, fresh_name, msubst, spine, subst)

__all__ = [
    "DEFAULT_FUEL", "Fuel", "FuelExhausted",
    "RewriteRule", "RuleCompileError", "compile_rule",
    "Reducer", "ReplayError", "match_pattern",
    "CriticalPair", "critical_pairs", "unify", "joinable",
    "Verdict", "Holds", "Fails",
]

DEFAULT_FUEL = 100_000


class FuelExhausted(Exception):
    """The step budget ran out.  Deliberately not a rewriting verdict:
    callers must not read it as 'normal form reached' or 'not joinable'."""


class Fuel:
    """Mutable step budget shared by every operation derived from it."""

    __slots__ = ("remaining",)

    def __init__(self, steps: int = DEFAULT_FUEL):
        self.remaining = steps

    def tick(self) -> None:
        if self.remaining <= 0:
            raise FuelExhausted("reduction step budget exhausted")
        self.remaining -= 1


class RuleCompileError(Exception):
    pass


@dataclass(frozen=True)
class RewriteRule:
    name: str
    head: str
    pat_vars: tuple[str, ...]
    lhs: Term
    rhs: Term
    lhs_args: tuple[Term, ...]


def _check_pattern(t: Term, pat_vars: frozenset[str]) -> None:
    match t:
        case Var(n):
            if n not in pat_vars:
                raise RuleCompileError(f"unbound variable {n!r} in pattern")
        case Const():
            pass
        case App(f, a):
            _check_pattern(f, pat_vars)
            _check_pattern(a, pat_vars)
        case _:
            raise RuleCompileError(
                "rule left-hand sides are applicative: no binders or sorts")


def compile_rule(name: str, pat_vars: Sequence[str], lhs: Term,
                 rhs: Term) -> RewriteRule:
    head, args = spine(lhs)
    if not isinstance(head, Const):
        raise RuleCompileError("rule left-hand side must be headed by a constant")
    pv = frozenset(pat_vars)
    _check_pattern(lhs, pv)
    used = free_vars(lhs)
    loose = free_vars(rhs) - used - pv
    if loose:
        raise RuleCompileError(
            f"right-hand side has unbound variables: {sorted(loose)}")
    missing = (free_vars(rhs) & pv) - used
    if missing:
        raise RuleCompileError(
            f"pattern variables {sorted(missing)} appear only on the right-hand side")
    ordered = tuple(v for v in pat_vars if v in used)
    return RewriteRule(name, head.name, ordered, lhs, rhs, tuple(args))


# -- reduction ------------------------------------------------------------

Step = tuple[tuple[str, ...], str]  # (position, rule name)


class ReplayError(Exception):
    pass


def _eta_body(t: Term) -> Optional[Term]:
    """If t is  x => f x  with x not free in f, return f."""
    if (isinstance(t, Lam) and isinstance(t.body, App)
            and isinstance(t.body.arg, Var) and t.body.arg.name == t.var
            and t.var not in free_vars(t.body.fn)):
        return t.body.fn
    return None


class Reducer:
    """Reduction engine over a fixed head-indexed rule set.

    Caches (when provided) are keyed by the term alone, so they are only
    sound while the rule set does not change; the owning signature clears
    them on mutation.  A cache hit costs no fuel.
    """

    def __init__(self, rules: dict[str, list[RewriteRule]],
                 fuel: Optional[Fuel] = None,
                 whnf_cache: Optional[dict[Term, Term]] = None,
                 nf_cache: Optional[dict[Term, Term]] = None):
        self.rules = rules
        self.fuel = fuel if fuel is not None else Fuel()
        self.whnf_cache = whnf_cache
        self.nf_cache = nf_cache

    # matching, modulo reduction

    def match(self, pat: Term, t: Term, sub: dict[str, Term]) -> bool:
        match pat:
            case Var(v):
                if v in sub:
                    return self.conv(sub[v], t)
                sub[v] = t
                return True
            case Const(c):
                t = self.whnf(t)
                return isinstance(t, Const) and t.name == c
            case App(pf, pa):
                t = self.whnf(t)
                return (isinstance(t, App) and self.match(pf, t.fn, sub)
                        and self.match(pa, t.arg, sub))
        return False

    def _match_args(self, pats: tuple[Term, ...], args: list[Term],
                    sub: dict[str, Term]) -> bool:
        return all(self.match(p, a, sub) for p, a in zip(pats, args))

    def whnf(self, t: Term) -> Term:
        if self.whnf_cache is not None and t in self.whnf_cache:
            return self.whnf_cache[t]
        orig = t
        while True:
            head, args = spine(t)
            if isinstance(head, Lam) and args:
                self.fuel.tick()
                t = app(subst(head.body, head.var, args[0]), *args[1:])
                continue
            nxt = None
            if isinstance(head, Const):
                for r in self.rules.get(head.name, ()):
                    n = len(r.lhs_args)
                    if n <= len(args):
                        sub: dict[str, Term] = {}
                        if self._match_args(r.lhs_args, args[:n], sub):
                            nxt = app(msubst(r.rhs, sub), *args[n:])
                            break
            if nxt is None:
                break
            self.fuel.tick()
            t = nxt
        if self.whnf_cache is not None:
            self.whnf_cache[orig] = t
            self.whnf_cache[t] = t
        return t

    def normalize(self, t: Term) -> Term:
        if self.nf_cache is not None and t in self.nf_cache:
            return self.nf_cache[t]
        orig = t
        t = self.whnf(t)
        match t:
            case App(f, a):
                t = App(self.normalize(f), self.normalize(a))
            case Lam(v, d, b):
                nb = self.normalize(b)
                nd = self.normalize(d) if d is not None else None
                contracted = _eta_body(Lam(v, nd, nb))
                if contracted is not None:
                    self.fuel.tick()
                    t = contracted
                else:
                    t = Lam(v, nd, nb)
            case Pi(v, d, c):
                t = Pi(v, self.normalize(d), self.normalize(c))
            case _:
                pass
        if self.nf_cache is not None:
            self.nf_cache[orig] = t
            self.nf_cache[t] = t
        return t

    # conversion

    def conv(self, a: Term, b: Term) -> bool:
        """Incremental conversion: weak-head both sides, compare outer
        structure, recurse.  Eta: an abstraction converts with anything
        whose application to the bound variable converts with its body."""
        if alpha_eq(a, b):
            return True
        a = self.whnf(a)
        b = self.whnf(b)
        match a, b:
            case Sort(x), Sort(y):
                return x == y
            case Pi(v1, d1, c1), Pi(v2, d2, c2):
                if not self.conv(d1, d2):
                    return False
                w = fresh_name(v1, free_vars(c1) | free_vars(c2))
                return self.conv(subst(c1, v1, Var(w)), subst(c2, v2, Var(w)))
            case Lam(v1, _, b1), Lam(v2, _, b2):
                w = fresh_name(v1, free_vars(b1) | free_vars(b2))
                return self.conv(subst(b1, v1, Var(w)), subst(b2, v2, Var(w)))
            case (Lam(v, _, body), other) | (other, Lam(v, _, body)):
                if isinstance(other, (Sort, Pi)):
                    return False
                w = fresh_name(v, free_vars(body) | free_vars(other))
                return self.conv(subst(body, v, Var(w)), App(other, Var(w)))
            case _:
                h1, args1 = spine(a)
                h2, args2 = spine(b)
                if len(args1) != len(args2) or type(h1) is not type(h2):
                    return False
                match h1, h2:
                    case Const(x), Const(y):
                        same = x == y
                    case Var(x), Var(y):
                        same = x == y
                    case Sort(x), Sort(y):
                        same = x == y
                    case _:
                        same = False
                return same and all(
                    self.conv(x, y) for x, y in zip(args1, args2))

    def conv_norm(self, a: Term, b: Term) -> bool:
        """Reference conversion: compare full normal forms.  Agrees with
        conv wherever the budget suffices; the incremental version is
        tested against this one."""
        return alpha_eq(self.normalize(a), self.normalize(b))

    # traced reduction

    def _rule_step_at_root(self, t: Term) -> Optional[tuple[str, Term]]:
        if isinstance(t, App) and isinstance(t.fn, Lam):
            return "beta", subst(t.fn.body, t.fn.var, t.arg)
        contracted = _eta_body(t)
        if contracted is not None:
            return "eta", contracted
        head, args = spine(t)
        if isinstance(head, Const):
            for r in self.rules.get(head.name, ()):
                if len(r.lhs_args) == len(args):
                    sub: dict[str, Term] = {}
                    if _match_syntactic(r.lhs_args, args, sub):
                        return r.name, msubst(r.rhs, sub)
        return None

    def _find_step(self, t: Term,
                   pos: tuple[str, ...]) -> Optional[tuple[tuple[str, ...], str, Term]]:
        hit = self._rule_step_at_root(t)
        if hit is not None:
            return pos, hit[0], hit[1]
        match t:
            case App(f, a):
                return (self._find_step(f, pos + ("fn",))
                        or self._find_step(a, pos + ("arg",)))
            case Lam(_, d, b):
                found = self._find_step(d, pos + ("dom",)) if d is not None else None
                return found or self._find_step(b, pos + ("body",))
            case Pi(_, d, c):
                return (self._find_step(d, pos + ("dom",))
                        or self._find_step(c, pos + ("cod",)))
            case _:
                return None

    def normalize_traced(self, t: Term) -> tuple[Term, list[Step]]:
        steps: list[Step] = []
        while True:
            found = self._find_step(t, ())
            if found is None:
                return t, steps
            self.fuel.tick()
            pos, name, repl = found
            t = _replace_at(t, pos, repl)
            steps.append((pos, name))

    def replay(self, t: Term, steps: Sequence[Step]) -> Term:
        by_name = {r.name: r for rs in self.rules.values() for r in rs}
        for pos, name in steps:
            sub_t = _subterm_at(t, pos)
            if name == "beta":
                if not (isinstance(sub_t, App) and isinstance(sub_t.fn, Lam)):
                    raise ReplayError(f"no beta redex at {'/'.join(pos) or 'root'}")
                repl = subst(sub_t.fn.body, sub_t.fn.var, sub_t.arg)
            elif name == "eta":
                repl = _eta_body(sub_t)
                if repl is None:
                    raise ReplayError(f"no eta redex at {'/'.join(pos) or 'root'}")
            else:
                r = by_name.get(name)
                if r is None:
                    raise ReplayError(f"unknown rule {name!r}")
                head, args = spine(sub_t)
                binding: dict[str, Term] = {}
                if not (isinstance(head, Const) and head.name == r.head
                        and len(args) == len(r.lhs_args)
                        and _match_syntactic(r.lhs_args, args, binding)):
                    raise ReplayError(
                        f"rule {name!r} does not apply at {'/'.join(pos) or 'root'}")
                repl = msubst(r.rhs, binding)
            t = _replace_at(t, pos, repl)
        return t


def match_pattern(pat: Term, t: Term,
                  conv: Optional[Callable[[Term, Term], bool]] = None,
                  ) -> Optional[dict[str, Term]]:
    """First-order match of an applicative pattern against a term, with no
    reduction of the subject.  A repeated pattern variable compares its
    matches with `conv` when given, alpha-equality otherwise.  Returns the
    substitution on success."""
    eq = conv if conv is not None else alpha_eq
    sub: dict[str, Term] = {}

    def go(p: Term, s: Term) -> bool:
        match p:
            case Var(v):
                if v in sub:
                    return eq(sub[v], s)
                sub[v] = s
                return True
            case Const(c):
                return isinstance(s, Const) and s.name == c
            case App(pf, pa):
                return isinstance(s, App) and go(pf, s.fn) and go(pa, s.arg)
        return False

    return sub if go(pat, t) else None


def _match_syntactic(pats: tuple[Term, ...], args: Sequence[Term],
                     sub: dict[str, Term]) -> bool:
    def go(p: Term, t: Term) -> bool:
        match p:
            case Var(v):
                if v in sub:
                    return alpha_eq(sub[v], t)
                sub[v] = t
                return True
            case Const(c):
                return isinstance(t, Const) and t.name == c
            case App(pf, pa):
                return isinstance(t, App) and go(pf, t.fn) and go(pa, t.arg)
        return False
    return all(go(p, a) for p, a in zip(pats, args))


def _subterm_at(t: Term, pos: tuple[str, ...]) -> Term:
    for k in pos:
        match t, k:
            case App(f, _), "fn":
                t = f
            case App(_, a), "arg":
                t = a
            case Lam(_, d, _), "dom" if d is not None:
                t = d
            case Lam(_, _, b), "body":
                t = b
            case Pi(_, d, _), "dom":
                t = d
            case Pi(_, _, c), "cod":
                t = c
            case _:
                raise ReplayError(f"position {'/'.join(pos)} does not exist")
    return t


def _replace_at(t: Term, pos: tuple[str, ...], repl: Term) -> Term:
    if not pos:
        return repl
    k, rest = pos[0], pos[1:]
    match t, k:
        case App(f, a), "fn":
            return App(_replace_at(f, rest, repl), a)
        case App(f, a), "arg":
            return App(f, _replace_at(a, rest, repl))
        case Lam(v, d, b), "dom" if d is not None:
            return Lam(v, _replace_at(d, rest, repl), b)
        case Lam(v, d, b), "body":
            return Lam(v, d, _replace_at(b, rest, repl))
        case Pi(v, d, c), "dom":
            return Pi(v, _replace_at(d, rest, repl), c)
        case Pi(v, d, c), "cod":
            return Pi(v, d, _replace_at(c, rest, repl))
        case _:
            raise ReplayError(f"position {'/'.join(pos)} does not exist")


# -- critical pairs -------------------------------------------------------

@dataclass(frozen=True)
class CriticalPair:
    """An overlap between two rules: `peak` reduces to `left` by rule1 at
    the root and to `right` by rule2 at `position` inside rule1's
    left-hand side."""

    rule1: str
    rule2: str
    position: tuple[str, ...]
    peak: Term
    left: Term
    right: Term


def unify(a: Term, b: Term) -> Optional[dict[str, Term]]:
    """Syntactic unification of applicative pattern terms.  Returns a
    triangular substitution, or None."""
    sub: dict[str, Term] = {}

    def walk(t: Term) -> Term:
        while isinstance(t, Var) and t.name in sub:
            t = sub[t.name]
        return t

    def occurs(name: str, t: Term) -> bool:
        t = walk(t)
        match t:
            case Var(n):
                return n == name
            case App(f, x):
                return occurs(name, f) or occurs(name, x)
            case _:
                return False

    todo = [(a, b)]
    while todo:
        x, y = todo.pop()
        x, y = walk(x), walk(y)
        match x, y:
            case Var(n), Var(m) if n == m:
                pass
            case Var(n), _:
                if occurs(n, y):
                    return None
                sub[n] = y
            case _, Var(m):
                if occurs(m, x):
                    return None
                sub[m] = x
            case Const(n), Const(m) if n == m:
                pass
            case App(f1, a1), App(f2, a2):
                todo.append((f1, f2))
                todo.append((a1, a2))
            case _:
                return None
    return sub


def _resolve(t: Term, sub: dict[str, Term]) -> Term:
    match t:
        case Var(n) if n in sub:
            return _resolve(sub[n], sub)
        case App(f, a):
            return App(_resolve(f, sub), _resolve(a, sub))
        case _:
            return t


def _apply_unifier(t: Term, sub: dict[str, Term]) -> Term:
    flat = {k: _resolve(v, sub) for k, v in sub.items()}
    return msubst(t, flat)


def _pattern_positions(t: Term) -> list[tuple[tuple[str, ...], Term]]:
    out = [((), t)]
    if isinstance(t, App):
        out.extend(((("fn",) + p), s) for p, s in _pattern_positions(t.fn))
        out.extend(((("arg",) + p), s) for p, s in _pattern_positions(t.arg))
    return out


def _rename_apart(rule: RewriteRule, avoid: frozenset[str]) -> RewriteRule:
    taken = set(avoid) | set(rule.pat_vars)
    ren: dict[str, Term] = {}
    fresh: list[str] = []
    for v in rule.pat_vars:
        w = fresh_name(v, taken) if v in avoid else v
        taken.add(w)
        fresh.append(w)
        if w != v:
            ren[v] = Var(w)
    if not ren:
        return rule
    return RewriteRule(rule.name, rule.head, tuple(fresh),
                       msubst(rule.lhs, ren), msubst(rule.rhs, ren),
                       tuple(msubst(p, ren) for p in rule.lhs_args))


def critical_pairs(rules: Sequence[RewriteRule]) -> list[CriticalPair]:
    """All critical pairs of the rule set: proper-subterm overlaps for
    every ordered pair (a rule may overlap itself), root overlaps once
    per unordered pair of distinct rules."""
    out: list[CriticalPair] = []
    for i, r1 in enumerate(rules):
        avoid = frozenset(r1.pat_vars)
        for j, r2 in enumerate(rules):
            r2r = _rename_apart(r2, avoid)
            for pos, sub_t in _pattern_positions(r1.lhs):
                if not pos or isinstance(sub_t, Var):
                    continue
                mgu = unify(sub_t, r2r.lhs)
                if mgu is None:
                    continue
                out.append(CriticalPair(
                    r1.name, r2.name, pos,
                    peak=_apply_unifier(r1.lhs, mgu),
                    left=_apply_unifier(r1.rhs, mgu),
                    right=_apply_unifier(_replace_at(r1.lhs, pos, r2r.rhs), mgu)))
            if j > i:
                mgu = unify(r1.lhs, r2r.lhs)
                if mgu is not None:
                    out.append(CriticalPair(
                        r1.name, r2.name, (),
                        peak=_apply_unifier(r1.lhs, mgu),
                        left=_apply_unifier(r1.rhs, mgu),
                        right=_apply_unifier(r2r.rhs, mgu)))
    return out


def joinable(red: Reducer, cp: CriticalPair) -> Verdict:
    """Decide whether a critical pair's reducts meet again: normalize both
    sides and compare.  Fails carries the pair of distinct normal forms.
    A fuel shortage surfaces as FuelExhausted, never as a verdict."""
    left = red.normalize(cp.left)
    right = red.normalize(cp.right)
    if alpha_eq(left, right):
        return Holds()
    return Fails((left, right))

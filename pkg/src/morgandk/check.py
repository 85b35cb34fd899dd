"""Bidirectional type checking for the lambda-Pi calculus modulo the
rewrite rules accumulated in a signature.

Definitional equality is conversion: beta, eta, the signature's rewrite
rules, and unfolding of definitions (a definition is installed as a
rule `name --> body` named `name.def`).

Rule checking derives each pattern variable's type from the position it
occupies in the left-hand side, then checks the right-hand side against
the left-hand side's type in that context.  Shape errors (over-applied
heads, non-bare variable heads, a variable used at two incompatible
types) are rejected; the residual constraint that a constructor
subpattern's computed type matches the surrounding expected type is not
enforced, since it quantifies over the pattern variables and routinely
fails for perfectly sound rules (projections whose indices the pattern
refines).  Unsound rules still surface when the right-hand side fails to
check.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .parser import (Declaration, DefinableConst, Definition, RuleDecl,
                     SourceSpan, StaticConst, pretty)
from .rewrite import (DEFAULT_FUEL, Fuel, Reducer, RewriteRule,
                      RuleCompileError, compile_rule)
from .terms import (App, Const, Ctx, KIND, Lam, Pi, Sort, TYPE, Term, Var,
                    free_vars, fresh_name, spine, subst)

__all__ = [
    "TypeCheckError", "ConstInfo", "Signature",
    "infer", "check", "check_rule", "check_declaration", "check_signature",
    "whnf", "normalize", "convertible",
]


class TypeCheckError(Exception):
    """Any failure of declaration or term checking.

    `kind` is a coarse machine-readable tag: one of mismatch,
    not-a-function, unbound, sort-error, rule-ill-typed, redeclaration,
    fuel.
    """

    def __init__(self, msg: str, span: Optional[SourceSpan] = None,
                 expected: Optional[Term] = None,
                 actual: Optional[Term] = None,
                 kind: str = "mismatch"):
        super().__init__(msg)
        self.msg = msg
        self.span = span
        self.expected = expected
        self.actual = actual
        self.kind = kind

    def render(self) -> str:
        head = f"[{self.kind}] {self.msg}"
        if self.span:
            head = f"{self.span}: {head}"
        lines = [head]
        if self.expected is not None:
            lines.append(f"  expected: {pretty(self.expected)}")
        if self.actual is not None:
            lines.append(f"  actual:   {pretty(self.actual)}")
        return "\n".join(lines)

    def __str__(self) -> str:
        return self.render()


@dataclass(frozen=True)
class ConstInfo:
    name: str
    ty: Term
    static: bool
    body: Optional[Term] = None


class Signature:
    """Declared constants plus head-indexed rewrite rules, with caches
    for reduction that are dropped whenever the rule set changes."""

    def __init__(self):
        self.consts: dict[str, ConstInfo] = {}
        self.order: list[str] = []
        self.rules: dict[str, list[RewriteRule]] = {}
        self.provenance: dict[str, Optional[SourceSpan]] = {}
        self._whnf_cache: dict[Term, Term] = {}
        self._nf_cache: dict[Term, Term] = {}

    def reducer(self, fuel: Optional[Fuel] = None, cached: bool = True) -> Reducer:
        if cached:
            return Reducer(self.rules, fuel, self._whnf_cache, self._nf_cache)
        return Reducer(self.rules, fuel)

    def add_const(self, info: ConstInfo,
                  span: Optional[SourceSpan] = None) -> None:
        if info.name in self.consts:
            raise TypeCheckError(f"{info.name!r} is already declared",
                                 kind="redeclaration")
        self.consts[info.name] = info
        self.order.append(info.name)
        self.provenance[info.name] = span

    def add_rule(self, rule: RewriteRule) -> None:
        self.rules.setdefault(rule.head, []).append(rule)
        self._whnf_cache.clear()
        self._nf_cache.clear()

    def rule_list(self) -> list[RewriteRule]:
        """Every installed rule, in declaration order of the head and
        then rule order; definition-unfolding rules included."""
        out = []
        for name in self.order:
            out.extend(self.rules.get(name, ()))
        return out

    def names(self) -> set[str]:
        return set(self.consts)

    def copy(self) -> "Signature":
        s = Signature()
        s.consts = dict(self.consts)
        s.order = list(self.order)
        s.rules = {k: list(v) for k, v in self.rules.items()}
        s.provenance = dict(self.provenance)
        return s


def infer(sig: Signature, ctx: Ctx, t: Term, red: Reducer) -> Term:
    match t:
        case Sort(k):
            if k == "TYPE":
                return KIND
            raise TypeCheckError("Kind has no type", kind="sort-error")
        case Const(n):
            info = sig.consts.get(n)
            if info is None:
                raise TypeCheckError(f"undeclared constant {n!r}", kind="unbound")
            return info.ty
        case Var(n):
            ty = ctx.lookup(n)
            if ty is None:
                raise TypeCheckError(f"unbound variable {n!r}", kind="unbound")
            return ty
        case App(f, a):
            tf = red.whnf(infer(sig, ctx, f, red))
            if not isinstance(tf, Pi):
                raise TypeCheckError("application of a non-function",
                                     actual=tf, kind="not-a-function")
            check(sig, ctx, a, tf.dom, red)
            return subst(tf.cod, tf.var, a)
        case Lam(v, dom, body):
            if dom is None:
                raise TypeCheckError(
                    "cannot infer the type of an unannotated abstraction")
            _check_is_type(sig, ctx, dom, red)
            tb = infer(sig, ctx.push(v, dom), body, red)
            if tb == KIND:
                raise TypeCheckError("an abstraction cannot produce a kind",
                                     kind="sort-error")
            return Pi(v, dom, tb)
        case Pi(v, dom, cod):
            _check_is_type(sig, ctx, dom, red)
            s = red.whnf(infer(sig, ctx.push(v, dom), cod, red))
            if not isinstance(s, Sort):
                raise TypeCheckError("product codomain must be a type or a kind",
                                     actual=s, kind="sort-error")
            return s
    raise TypeCheckError(f"not a term: {t!r}")


def _check_is_type(sig: Signature, ctx: Ctx, t: Term, red: Reducer) -> None:
    s = red.whnf(infer(sig, ctx, t, red))
    if s != TYPE:
        raise TypeCheckError("expected a type", expected=TYPE, actual=s,
                             kind="sort-error")


def check(sig: Signature, ctx: Ctx, t: Term, ty: Term, red: Reducer) -> None:
    if isinstance(t, Lam):
        w = red.whnf(ty)
        if not isinstance(w, Pi):
            raise TypeCheckError("abstraction checked against a non-product type",
                                 expected=ty)
        if t.dom is not None and not red.conv(t.dom, w.dom):
            raise TypeCheckError("domain annotation does not match",
                                 expected=w.dom, actual=t.dom)
        v, body = t.var, t.body
        if w.var == v:
            cod = w.cod
        else:
            if v in free_vars(w.cod):
                nv = fresh_name(v, free_vars(w.cod) | free_vars(body))
                body = subst(body, v, Var(nv))
                v = nv
            cod = subst(w.cod, w.var, Var(v))
        check(sig, ctx.push(v, w.dom), body, cod, red)
        return
    it = infer(sig, ctx, t, red)
    if not red.conv(it, ty):
        raise TypeCheckError("type mismatch", expected=ty, actual=it)


def _check_const_type(sig: Signature, ty: Term, red: Reducer) -> None:
    s = red.whnf(infer(sig, Ctx(), ty, red))
    if not isinstance(s, Sort):
        raise TypeCheckError("a declared type must be a type or a kind",
                             actual=s, kind="sort-error")


def check_rule(sig: Signature, rule: RewriteRule, red: Reducer) -> None:
    types: dict[str, Term] = {}
    order: list[str] = []

    def bind(v: str, ty: Term) -> None:
        if v in types:
            if not red.conv(types[v], ty):
                raise TypeCheckError(
                    f"pattern variable {v!r} is used at incompatible types",
                    expected=types[v], actual=ty)
        else:
            types[v] = ty
            order.append(v)

    def walk(p: Term, expected: Term) -> None:
        match p:
            case Var(v):
                bind(v, expected)
            case _:
                head, args = spine(p)
                if not isinstance(head, Const):
                    raise TypeCheckError(
                        "pattern variables must occur bare in left-hand sides")
                info = sig.consts.get(head.name)
                if info is None:
                    raise TypeCheckError(f"undeclared constant {head.name!r}", kind="unbound")
                ty = info.ty
                for a in args:
                    w = red.whnf(ty)
                    if not isinstance(w, Pi):
                        raise TypeCheckError(
                            f"over-applied constant {head.name!r} in pattern")
                    walk(a, w.dom)
                    ty = subst(w.cod, w.var, a)
                # the computed type of this subpattern is not compared with
                # `expected`: it mentions pattern variables the match will
                # only later determine, and sound rules routinely refine it

    info = sig.consts.get(rule.head)
    if info is None:
        raise TypeCheckError(f"undeclared constant {rule.head!r}", kind="unbound")
    if info.static:
        raise TypeCheckError(
            f"{rule.head!r} is static: rules need a definable head")
    if info.body is not None:
        raise TypeCheckError(
            f"{rule.head!r} already has a body; it cannot take rules")
    ty = info.ty
    for p in rule.lhs_args:
        w = red.whnf(ty)
        if not isinstance(w, Pi):
            raise TypeCheckError(f"rule head {rule.head!r} is over-applied")
        walk(p, w.dom)
        ty = subst(w.cod, w.var, p)

    ctx = Ctx()
    for v in order:
        ctx = ctx.push(v, types[v])
    check(sig, ctx, rule.rhs, ty, red)


def check_declaration(sig: Signature, decl: Declaration,
                      fuel_steps: int = DEFAULT_FUEL) -> Signature:
    red = sig.reducer(Fuel(fuel_steps))
    try:
        match decl:
            case StaticConst(name, ty, span):
                _check_const_type(sig, ty, red)
                sig.add_const(ConstInfo(name, ty, static=True), span)
            case DefinableConst(name, ty, span):
                _check_const_type(sig, ty, red)
                sig.add_const(ConstInfo(name, ty, static=False), span)
            case Definition(name, ty, body, span):
                if ty is None:
                    ty = infer(sig, Ctx(), body, red)
                else:
                    _check_const_type(sig, ty, red)
                    check(sig, Ctx(), body, ty, red)
                sig.add_const(ConstInfo(name, ty, static=False, body=body),
                              span)
                sig.add_rule(RewriteRule(f"{name}.def", name, (),
                                         Const(name), body, ()))
            case RuleDecl(pat_vars, lhs, rhs, _):
                head, _ = spine(lhs)
                if not isinstance(head, Const):
                    raise TypeCheckError(
                        "rule left-hand side must be headed by a constant",
                        kind="rule-ill-typed")
                info = sig.consts.get(head.name)
                if info is None:
                    raise TypeCheckError(
                        f"rule head {head.name!r} is not declared",
                        kind="unbound")
                if info.static:
                    raise TypeCheckError(
                        f"rule head {head.name!r} is static; only 'def' "
                        "constants may be rewritten", kind="rule-ill-typed")
                serial = len(sig.rules.get(head.name, ())) + 1
                try:
                    rule = compile_rule(f"{head.name}.{serial}",
                                        pat_vars, lhs, rhs)
                    check_rule(sig, rule, red)
                except TypeCheckError as e:
                    e.kind = "rule-ill-typed"
                    raise
                sig.add_rule(rule)
            case _:
                raise TypeCheckError(f"not a declaration: {decl!r}")
    except RuleCompileError as e:
        raise TypeCheckError(str(e), span=decl.span,
                             kind="rule-ill-typed") from e
    except TypeCheckError as e:
        if e.span is None:
            e.span = decl.span
        raise
    return sig


def check_signature(decls: Sequence[Declaration],
                    fuel_steps: int = DEFAULT_FUEL,
                    sig: Optional[Signature] = None) -> Signature:
    """Check declarations in order, extending `sig` (a fresh signature
    by default) and returning it."""
    if sig is None:
        sig = Signature()
    for d in decls:
        check_declaration(sig, d, fuel_steps)
    return sig


# -- convenience entry points over a checked signature ---------------------

def whnf(sig: Signature, t: Term, fuel_steps: int = DEFAULT_FUEL) -> Term:
    return sig.reducer(Fuel(fuel_steps)).whnf(t)


def normalize(sig: Signature, t: Term, fuel_steps: int = DEFAULT_FUEL) -> Term:
    return sig.reducer(Fuel(fuel_steps)).normalize(t)


def convertible(sig: Signature, a: Term, b: Term,
                fuel_steps: int = DEFAULT_FUEL) -> bool:
    return sig.reducer(Fuel(fuel_steps)).conv(a, b)

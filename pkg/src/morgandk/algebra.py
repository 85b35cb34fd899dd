"""Semantic oracles for interval and face expressions.

The rewrite system orients only part of the De Morgan laws (commutativity,
idempotence and distributivity stay external), so kernel convertibility is
deliberately weaker than equality in the free De Morgan algebra.  The
functions here decide the full equational theories from outside the kernel:

* interval expressions are evaluated in the four-element diamond algebra;
  an identity holds in the free De Morgan algebra iff it holds under every
  assignment of generators to the four elements,
* face expressions get a point semantics in which every generator sits at
  an endpoint of its axis or strictly inside it; two faces are equal iff
  they contain the same points.

Nothing in this module calls the rewrite engine.  The confluence analyzer
and the test suite use these oracles to audit the shipped rules, which is
only meaningful if the auditor cannot share a bug with the kernel.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from typing import Mapping, Union

from .terms import Term, Const, Var, spine


class OracleError(Exception):
    """Malformed oracle query (unbound generator, bad expression)."""


class OutOfDomain(Exception):
    """Raised when a term or rule falls outside the interval/face fragment.

    Distinct from a Fails verdict: an out-of-domain rule is not wrong,
    the oracle just has nothing to say about it.
    """


# ---------------------------------------------------------------------------
# Expression grammars


@dataclass(frozen=True)
class Zero:
    pass


@dataclass(frozen=True)
class One:
    pass


@dataclass(frozen=True)
class Gen:
    name: str


@dataclass(frozen=True)
class Neg:
    arg: "IExpr"


@dataclass(frozen=True)
class Meet:
    left: "IExpr"
    right: "IExpr"


@dataclass(frozen=True)
class Join:
    left: "IExpr"
    right: "IExpr"


IExpr = Union[Zero, One, Gen, Neg, Meet, Join]


@dataclass(frozen=True)
class FBot:
    pass


@dataclass(frozen=True)
class FTop:
    pass


@dataclass(frozen=True)
class Eq0:
    arg: IExpr


@dataclass(frozen=True)
class Eq1:
    arg: IExpr


@dataclass(frozen=True)
class FMeet:
    left: "FExpr"
    right: "FExpr"


@dataclass(frozen=True)
class FJoin:
    left: "FExpr"
    right: "FExpr"


FExpr = Union[FBot, FTop, Eq0, Eq1, FMeet, FJoin]


# ---------------------------------------------------------------------------
# Verdicts

# Shared with the confluence analyzer: Holds, or Fails with a witness.
# For the oracles the witness is a refuting assignment; for joinability
# queries it is the pair of distinct normal forms.


@dataclass(frozen=True)
class Holds:
    pass


@dataclass(frozen=True)
class Fails:
    witness: object


Verdict = Union[Holds, Fails]


# ---------------------------------------------------------------------------
# The four-element De Morgan algebra

# Encoded as bit pairs on the 2x2 diamond: meet/join are componentwise,
# negation swaps the components complemented.  That encoding makes the
# sweep literally a boolean sweep over twice as many bits, which is the
# same fact that makes the four-element algebra complete for the variety.


class DM4Value(Enum):
    BOT = (0, 0)
    A = (1, 0)
    B = (0, 1)
    TOP = (1, 1)


def dm_meet(x: DM4Value, y: DM4Value) -> DM4Value:
    return DM4Value((min(x.value[0], y.value[0]), min(x.value[1], y.value[1])))


def dm_join(x: DM4Value, y: DM4Value) -> DM4Value:
    return DM4Value((max(x.value[0], y.value[0]), max(x.value[1], y.value[1])))


def dm_neg(x: DM4Value) -> DM4Value:
    p, q = x.value
    return DM4Value((1 - q, 1 - p))


# Witness search order: descending, so the first refuting assignment of a
# degenerate identity names the top element rather than the bottom one.
_DM4_SWEEP = (DM4Value.TOP, DM4Value.A, DM4Value.B, DM4Value.BOT)


def generators(e: IExpr) -> set:
    match e:
        case Zero() | One():
            return set()
        case Gen(name):
            return {name}
        case Neg(a):
            return generators(a)
        case Meet(a, b) | Join(a, b):
            return generators(a) | generators(b)
    raise OracleError(f"not an interval expression: {e!r}")


def eval_interval(e: IExpr, rho: Mapping[str, DM4Value]) -> DM4Value:
    match e:
        case Zero():
            return DM4Value.BOT
        case One():
            return DM4Value.TOP
        case Gen(name):
            if name not in rho:
                raise OracleError(f"unbound generator: {name}")
            return rho[name]
        case Neg(a):
            return dm_neg(eval_interval(a, rho))
        case Meet(a, b):
            return dm_meet(eval_interval(a, rho), eval_interval(b, rho))
        case Join(a, b):
            return dm_join(eval_interval(a, rho), eval_interval(b, rho))
    raise OracleError(f"not an interval expression: {e!r}")


def interval_eq(a: IExpr, b: IExpr) -> Verdict:
    """Decide a = b in the free De Morgan algebra by exhaustive sweep."""
    names = sorted(generators(a) | generators(b))
    for values in itertools.product(_DM4_SWEEP, repeat=len(names)):
        rho = dict(zip(names, values))
        if eval_interval(a, rho) is not eval_interval(b, rho):
            return Fails(rho)
    return Holds()


# ---------------------------------------------------------------------------
# Faces: three-valued point semantics

# A point of the n-cube is classified per axis: at 0, at 1, or strictly
# inside.  Two values would not do: with only vertices, the union of the
# two endpoint faces of an axis would wrongly cover the whole cube.


class Chain3(Enum):
    ZERO = 0
    HALF = 1
    ONE = 2


_CHAIN3_SWEEP = (Chain3.ONE, Chain3.HALF, Chain3.ZERO)


def _c3_neg(v: Chain3) -> Chain3:
    return Chain3(2 - v.value)


def eval_interval3(e: IExpr, rho: Mapping[str, Chain3]) -> Chain3:
    """Interval expression at a cube point (the Kleene chain 0 < 1/2 < 1)."""
    match e:
        case Zero():
            return Chain3.ZERO
        case One():
            return Chain3.ONE
        case Gen(name):
            if name not in rho:
                raise OracleError(f"unbound generator: {name}")
            return rho[name]
        case Neg(a):
            return _c3_neg(eval_interval3(a, rho))
        case Meet(a, b):
            return Chain3(min(eval_interval3(a, rho).value, eval_interval3(b, rho).value))
        case Join(a, b):
            return Chain3(max(eval_interval3(a, rho).value, eval_interval3(b, rho).value))
    raise OracleError(f"not an interval expression: {e!r}")


def face_generators(f: FExpr) -> set:
    match f:
        case FBot() | FTop():
            return set()
        case Eq0(a) | Eq1(a):
            return generators(a)
        case FMeet(a, b) | FJoin(a, b):
            return face_generators(a) | face_generators(b)
    raise OracleError(f"not a face expression: {f!r}")


def eval_face(f: FExpr, rho: Mapping[str, Chain3]) -> bool:
    """Does the cube point rho lie on the face f?"""
    match f:
        case FBot():
            return False
        case FTop():
            return True
        case Eq0(a):
            return eval_interval3(a, rho) is Chain3.ZERO
        case Eq1(a):
            return eval_interval3(a, rho) is Chain3.ONE
        case FMeet(a, b):
            return eval_face(a, rho) and eval_face(b, rho)
        case FJoin(a, b):
            return eval_face(a, rho) or eval_face(b, rho)
    raise OracleError(f"not a face expression: {f!r}")


def face_eq(a: FExpr, b: FExpr) -> Verdict:
    """Decide face equality: same set of cube points, all 3^n of them."""
    names = sorted(face_generators(a) | face_generators(b))
    for values in itertools.product(_CHAIN3_SWEEP, repeat=len(names)):
        rho = dict(zip(names, values))
        if eval_face(a, rho) != eval_face(b, rho):
            return Fails(rho)
    return Holds()


# ---------------------------------------------------------------------------
# Cross-check: canonical normal forms in the free algebra

# The free De Morgan algebra on X is the free bounded distributive lattice
# on the literals {x, ~x | x in X}: negation normalizes away by De Morgan
# and involution and leaves no relation between a literal and its partner.
# So a canonical form is the antichain of minimal monomials of the DNF,
# with 0 the empty join and 1 the empty monomial.  This is a second,
# independently-derived decision procedure; the test suite runs it against
# the DM4 sweep on small expressions so each guards the other.

# A literal is (generator name, polarity); a monomial a frozenset of them.


def _nnf(e: IExpr, positive: bool):
    match e:
        case Zero():
            return ("const", not positive)
        case One():
            return ("const", positive)
        case Gen(name):
            return ("lit", (name, positive))
        case Neg(a):
            return _nnf(a, not positive)
        case Meet(a, b):
            op = "meet" if positive else "join"
            return (op, _nnf(a, positive), _nnf(b, positive))
        case Join(a, b):
            op = "join" if positive else "meet"
            return (op, _nnf(a, positive), _nnf(b, positive))
    raise OracleError(f"not an interval expression: {e!r}")


def _dnf(n) -> frozenset:
    match n:
        case ("const", True):
            return frozenset({frozenset()})
        case ("const", False):
            return frozenset()
        case ("lit", lit):
            return frozenset({frozenset({lit})})
        case ("join", a, b):
            return _dnf(a) | _dnf(b)
        case ("meet", a, b):
            return frozenset(ma | mb for ma in _dnf(a) for mb in _dnf(b))
    raise OracleError(f"bad normal form node: {n!r}")


def canonical_dnf(e: IExpr) -> frozenset:
    """Canonical form: minimal monomials only (absorption)."""
    monomials = _dnf(_nnf(e, True))
    return frozenset(
        m
        for m in monomials
        if not any(other < m for other in monomials)
    )


def interval_eq_canonical(a: IExpr, b: IExpr) -> bool:
    return canonical_dnf(a) == canonical_dnf(b)


# ---------------------------------------------------------------------------
# Terms to expressions

# Pattern and free variables become generators, named after themselves, so
# non-linear occurrences share a generator.  A variable sitting in face
# position stands for an arbitrary face; `Eq1` of a fresh generator is a
# complete stand-in because it takes both truth values across the sweep and
# distinct variables get independent generators.

_INTERVAL_HEADS = {"0", "1", "sym", "Imin", "Imax"}
_FACE_HEADS = {"0f", "1f", "eq0", "eq1", "Fmin", "Fmax"}


def interval_from_term(t: Term) -> IExpr:
    head, args = spine(t)
    match head:
        case Var(name) if not args:
            return Gen(name)
        case Const("0") if not args:
            return Zero()
        case Const("1") if not args:
            return One()
        case Const("sym") if len(args) == 1:
            return Neg(interval_from_term(args[0]))
        case Const("Imin") if len(args) == 2:
            return Meet(interval_from_term(args[0]), interval_from_term(args[1]))
        case Const("Imax") if len(args) == 2:
            return Join(interval_from_term(args[0]), interval_from_term(args[1]))
    raise OutOfDomain(f"not an interval term: {t!r}")


def face_from_term(t: Term) -> FExpr:
    head, args = spine(t)
    match head:
        case Var(name) if not args:
            return Eq1(Gen(name))
        case Const("0f") if not args:
            return FBot()
        case Const("1f") if not args:
            return FTop()
        case Const("eq0") if len(args) == 1:
            return Eq0(interval_from_term(args[0]))
        case Const("eq1") if len(args) == 1:
            return Eq1(interval_from_term(args[0]))
        case Const("Fmin") if len(args) == 2:
            return FMeet(face_from_term(args[0]), face_from_term(args[1]))
        case Const("Fmax") if len(args) == 2:
            return FJoin(face_from_term(args[0]), face_from_term(args[1]))
    raise OutOfDomain(f"not a face term: {t!r}")


def check_rule_sound(rule) -> Verdict:
    """Audit one rewrite rule against the algebraic semantics.

    Accepts anything with `.lhs` and `.rhs` term attributes.  Rules headed
    outside the interval/face signature raise OutOfDomain; they are not
    wrong, merely invisible to the oracle.
    """
    head, _ = spine(rule.lhs)
    name = head.name if isinstance(head, Const) else None
    if name in ("sym", "Imin", "Imax"):
        return interval_eq(interval_from_term(rule.lhs), interval_from_term(rule.rhs))
    if name in ("eq0", "eq1", "Fmin", "Fmax"):
        return face_eq(face_from_term(rule.lhs), face_from_term(rule.rhs))
    raise OutOfDomain(f"rule head outside the interval/face fragment: {name}")


def audit_equation(ty: Term) -> Verdict:
    """Audit an external-equation constant by its declared type.

    The type must be a Pi telescope ending in `ceps (cEq I lhs rhs)` or
    `ceps (cEq F lhs rhs)`; bound variables become generators.
    """
    from .terms import Pi  # local: keep the module's import surface small

    core = ty
    while isinstance(core, Pi):
        core = core.cod
    head, args = spine(core)
    if not (isinstance(head, Const) and head.name == "ceps" and len(args) == 1):
        raise OutOfDomain(f"equation type does not end in ceps: {core!r}")
    eq_head, eq_args = spine(args[0])
    if not (isinstance(eq_head, Const) and eq_head.name == "cEq" and len(eq_args) == 3):
        raise OutOfDomain(f"equation type does not end in cEq: {args[0]!r}")
    carrier, lhs, rhs = eq_args
    match carrier:
        case Const("I"):
            return interval_eq(interval_from_term(lhs), interval_from_term(rhs))
        case Const("F"):
            return face_eq(face_from_term(lhs), face_from_term(rhs))
    raise OutOfDomain(f"equation carrier is neither I nor F: {carrier!r}")

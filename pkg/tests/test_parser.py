import pytest

from morgandk.parser import (Definition, ParseError, RuleDecl, StaticConst,
                             parse_file, parse_term, pretty,
                             print_declaration)
from morgandk.terms import TYPE, App, Const, Lam, Pi, Sort, Var, alpha_eq
from morgandk.theory import FULL_CONFIG, blocks_for


def test_static_decl():
    decls = parse_file("T : Lev -> Type.", "<t>", {"Lev"}, set())
    assert len(decls) == 1
    d = decls[0]
    assert isinstance(d, StaticConst)
    assert d.name == "T"
    assert isinstance(d.ty, Pi)
    assert d.ty.cod == TYPE


def test_rule_decl_pattern_vars():
    consts = {"p1", "pair"}
    decls = parse_file(
        "[i, A, B, a, b] p1 i A B (pair i A B a b) --> a.",
        "<t>", consts, {"p1", "pair"})
    (d,) = decls
    assert isinstance(d, RuleDecl)
    assert d.pat_vars == ("i", "A", "B", "a", "b")


def test_empty_input():
    assert parse_file("", "<t>", set(), set()) == []
    assert parse_file("(; only a comment ;)", "<t>", set(), set()) == []


def test_parse_term_lambda():
    t = parse_term("x : A => x")
    assert t == Lam("x", Var("A"), Var("x"))


def test_parse_term_left_assoc():
    t = parse_term("Imax (sym i) j", frozenset({"Imax", "sym"}))
    assert t == App(App(Const("Imax"), App(Const("sym"), Var("i"))),
                    Var("j"))


def test_parse_term_pi():
    t = parse_term("i : Lev -> T (lsuc i)", frozenset({"Lev", "T", "lsuc"}))
    assert t == Pi("i", Const("Lev"),
                   App(Const("T"), App(Const("lsuc"), Var("i"))))


def test_annotation_may_end_in_application():
    # the domain of A extends to `T i`; the arrow after it is the binder's
    t = parse_term("i : Lev => A : T i => A", frozenset({"Lev", "T"}))
    assert t == Lam("i", Const("Lev"),
                    Lam("A", App(Const("T"), Var("i")), Var("A")))


def test_pretty_sort():
    assert pretty(TYPE) == "Type"


def test_pretty_reparses():
    t = Lam("x", None, Var("x"))
    assert alpha_eq(parse_term(pretty(t)), t)


def test_rule_head_must_be_definable():
    with pytest.raises(ParseError):
        parse_file("[i] T i --> T i.", "<t>", {"T"}, set())


def test_redeclaration_rejected():
    with pytest.raises(ParseError):
        parse_file("A : Type.\nA : Type.", "<t>", set(), set())


def test_reserved_name():
    with pytest.raises(ParseError):
        parse_file("Type : Type.", "<t>", set(), set())


def test_parameterized_definition_sugar():
    decls = parse_file(
        "def f (i : Lev) (A : T i) : T i := A.",
        "<t>", {"Lev", "T"}, set())
    (d,) = decls
    assert isinstance(d, Definition)
    assert isinstance(d.ty, Pi) and isinstance(d.body, Lam)
    assert d.body.var == "i" and d.body.body.var == "A"


def _decl_equiv(a, b) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, RuleDecl):
        return (a.pat_vars == b.pat_vars and alpha_eq(a.lhs, b.lhs)
                and alpha_eq(a.rhs, b.rhs))
    if isinstance(a, Definition):
        ty_ok = (a.ty is None and b.ty is None) or (
            a.ty is not None and b.ty is not None and alpha_eq(a.ty, b.ty))
        return a.name == b.name and ty_ok and alpha_eq(a.body, b.body)
    return a.name == b.name and alpha_eq(a.ty, b.ty)


@pytest.mark.parametrize("fname,text", blocks_for(FULL_CONFIG),
                         ids=lambda v: v if isinstance(v, str) and
                         v.endswith(".dk") else None)
def test_roundtrip_corpus_block(fname, text):
    consts: set[str] = set()
    defs: set[str] = set()
    # feed every earlier block so cross-block references resolve
    for f2, t2 in blocks_for(FULL_CONFIG):
        if f2 == fname:
            break
        parse_file(t2, f2, consts, defs)
    first = parse_file(text, fname, set(consts), set(defs))
    printed = "\n".join(print_declaration(d) for d in first)
    second = parse_file(printed, fname + "<reprint>", set(consts), set(defs))
    assert len(first) == len(second)
    for a, b in zip(first, second):
        assert _decl_equiv(a, b), print_declaration(a)

import pytest
from hypothesis import given, strategies as st

from morgandk.algebra import (Chain3, DM4Value, Eq0, Eq1, Fails, FBot,
                              FJoin, FMeet, FTop, Gen, Holds, Join, Meet,
                              Neg, One, OutOfDomain, Zero, audit_equation,
                              canonical_dnf, check_rule_sound, eval_face,
                              eval_interval, face_eq, face_from_term,
                              interval_eq, interval_eq_canonical,
                              interval_from_term)
from morgandk.parser import parse_term
from morgandk.rewrite import compile_rule
from morgandk.terms import App, Const, Var, app


def test_eval_meet_zero_annihilates():
    for v in DM4Value:
        assert eval_interval(Meet(Gen("i"), Zero()), {"i": v}) \
            == DM4Value.BOT


def test_eval_double_negation():
    for v in DM4Value:
        assert eval_interval(Neg(Neg(Gen("i"))), {"i": v}) == v


def test_eval_no_excluded_middle():
    got = eval_interval(Join(Gen("i"), Neg(Gen("i"))), {"i": DM4Value.A})
    assert got == DM4Value.A


def test_interval_commutativity_holds():
    v = interval_eq(Meet(Gen("i"), Gen("j")), Meet(Gen("j"), Gen("i")))
    assert isinstance(v, Holds)


def test_interval_distributivity_holds():
    lhs = Join(Meet(Gen("i"), Gen("j")), Gen("k"))
    rhs = Meet(Join(Gen("i"), Gen("k")), Join(Gen("j"), Gen("k")))
    assert isinstance(interval_eq(lhs, rhs), Holds)


def test_interval_excluded_middle_fails_with_witness():
    v = interval_eq(Join(Gen("i"), Neg(Gen("i"))), One())
    assert isinstance(v, Fails)
    assert v.witness == {"i": DM4Value.A}


def test_face_opposite_faces_never_meet():
    f = FMeet(Eq0(Gen("i")), Eq1(Gen("i")))
    for v in Chain3:
        assert eval_face(f, {"i": v}) is False


def test_face_union_misses_interior():
    f = FJoin(Eq0(Gen("i")), Eq1(Gen("i")))
    assert eval_face(f, {"i": Chain3.HALF}) is False
    assert eval_face(FTop(), {"i": Chain3.HALF}) is True


def test_face_discreteness_holds():
    v = face_eq(FMeet(Eq0(Gen("i")), Eq1(Gen("i"))), FBot())
    assert isinstance(v, Holds)


def test_face_test_distributes_over_join():
    v = face_eq(Eq1(Join(Gen("i"), Gen("j"))),
                FJoin(Eq1(Gen("i")), Eq1(Gen("j"))))
    assert isinstance(v, Holds)


def test_face_union_not_top_interior_witness():
    v = face_eq(FJoin(Eq0(Gen("i")), Eq1(Gen("i"))), FTop())
    assert isinstance(v, Fails)
    assert v.witness == {"i": Chain3.HALF}


def _rule(pat_vars, lhs, rhs):
    return compile_rule("fixture", pat_vars, lhs, rhs)


def test_rule_sound_de_morgan():
    r = _rule(("i", "j"),
              App(Const("sym"), app(Const("Imin"), Var("i"), Var("j"))),
              app(Const("Imax"), App(Const("sym"), Var("i")),
                  App(Const("sym"), Var("j"))))
    assert isinstance(check_rule_sound(r), Holds)


def test_rule_sound_right_unit_and_miscopy():
    good = _rule(("i",), app(Const("Imax"), Var("i"), Const("0")), Var("i"))
    assert isinstance(check_rule_sound(good), Holds)
    bad = _rule(("i",), app(Const("Imax"), Var("i"), Const("1")),
                Const("0"))
    v = check_rule_sound(bad)
    assert isinstance(v, Fails)
    assert v.witness == {"i": DM4Value.TOP}


def test_rule_sound_face_substitution():
    r = _rule(("e",), App(Const("eq1"), App(Const("sym"), Var("e"))),
              App(Const("eq0"), Var("e")))
    assert isinstance(check_rule_sound(r), Holds)


def test_rule_sound_rejects_non_algebraic(full_sig):
    r = next(r for r in full_sig.rule_list() if r.head == "p1")
    with pytest.raises(OutOfDomain):
        check_rule_sound(r)


def test_term_translation():
    t = parse_term("Imax (sym i) 0", frozenset({"Imax", "sym", "0"}))
    assert interval_from_term(t) == Join(Neg(Gen("i")), Zero())
    f = parse_term("Fmin (eq0 i) 1f", frozenset({"Fmin", "eq0", "1f"}))
    assert face_from_term(f) == FMeet(Eq0(Gen("i")), FTop())


def test_term_translation_out_of_domain():
    with pytest.raises(OutOfDomain):
        interval_from_term(App(Const("succ"), Const("0")))


def test_audit_equation(full_sig):
    assert isinstance(audit_equation(full_sig.consts["Imax_comm"].ty),
                      Holds)
    assert isinstance(audit_equation(full_sig.consts["Fdiscr"].ty), Holds)


_gens = st.sampled_from(["i", "j", "k"])


def _iexprs():
    leaves = st.one_of(_gens.map(Gen),
                       st.sampled_from([Zero(), One()]))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            sub.map(Neg),
            st.tuples(sub, sub).map(lambda p: Meet(*p)),
            st.tuples(sub, sub).map(lambda p: Join(*p))),
        max_leaves=8)


@given(_iexprs(), _iexprs())
def test_canonical_dnf_agrees_with_sweep(a, b):
    assert interval_eq_canonical(a, b) \
        == isinstance(interval_eq(a, b), Holds)


@given(_iexprs())
def test_interval_eq_reflexive(a):
    assert isinstance(interval_eq(a, a), Holds)


@given(_iexprs(), _iexprs())
def test_interval_eq_symmetric(a, b):
    assert isinstance(interval_eq(a, b), Holds) \
        == isinstance(interval_eq(b, a), Holds)


@given(_iexprs(), _iexprs())
def test_interval_eq_congruence_under_neg(a, b):
    if isinstance(interval_eq(a, b), Holds):
        assert isinstance(interval_eq(Neg(a), Neg(b)), Holds)


@given(_iexprs())
def test_canonical_dnf_is_minimal_and_involution_stable(a):
    nf = canonical_dnf(a)
    assert not any(m1 < m2 for m1 in nf for m2 in nf)
    assert canonical_dnf(Neg(Neg(a))) == nf

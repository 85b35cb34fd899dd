from hypothesis import given, strategies as st

from morgandk.terms import (TYPE, App, Const, Ctx, Lam, Pi, Sort, Var,
                            alpha_eq, app, free_vars, fresh_name, spine,
                            subst)


def test_subst_identity_target():
    assert subst(Var("x"), "x", Const("0")) == Const("0")


def test_subst_homomorphic():
    t = app(Const("Imin"), Var("i"), Var("i"))
    got = subst(t, "i", Const("1"))
    assert got == app(Const("Imin"), Const("1"), Const("1"))


def test_subst_capture_avoidance():
    # substituting a free x under Lam x must rename the binder
    t = Lam("x", None, Var("y"))
    got = subst(t, "y", Var("x"))
    assert isinstance(got, Lam)
    assert got.var != "x"
    assert got.body == Var("x")


def test_alpha_eq_binders():
    assert alpha_eq(Lam("x", None, Var("x")), Lam("y", None, Var("y")))
    assert not alpha_eq(Lam("x", None, Lam("y", None, Var("x"))),
                        Lam("a", None, Lam("b", None, Var("b"))))
    a = Pi("x", Const("I"), Const("A"))
    b = Pi("z", Const("I"), Const("A"))
    assert alpha_eq(a, b)


def test_free_vars():
    assert free_vars(Lam("x", None, Var("x"))) == frozenset()
    assert free_vars(App(Var("f"), Var("x"))) == {"f", "x"}
    assert free_vars(Pi("x", Var("A"), App(Var("B"), Var("x")))) == {"A", "B"}


def test_spine_left_associative():
    t = app(Const("f"), Var("a"), Var("b"), Var("c"))
    head, args = spine(t)
    assert head == Const("f")
    assert list(args) == [Var("a"), Var("b"), Var("c")]


def test_fresh_name_avoids():
    n = fresh_name("x", frozenset({"x", "x'"}))
    assert n not in {"x", "x'"}


def test_ctx_shadowing():
    ctx = Ctx().push("x", Const("A")).push("x", Const("B"))
    assert ctx.lookup("x") == Const("B")
    assert ctx.lookup("y") is None


def test_sorts():
    assert TYPE == Sort("TYPE")


_names = st.sampled_from(["x", "y", "z"])


def _terms():
    leaves = st.one_of(_names.map(Var), st.sampled_from(
        [Const("0"), Const("1"), TYPE]))
    return st.recursive(
        leaves,
        lambda sub: st.one_of(
            st.tuples(sub, sub).map(lambda p: App(*p)),
            st.tuples(_names, sub, sub).map(lambda t: Lam(t[0], t[1], t[2])),
            st.tuples(_names, sub, sub).map(lambda t: Pi(t[0], t[1], t[2]))),
        max_leaves=12)


@given(_terms(), _names)
def test_subst_with_same_var_is_identity(t, x):
    assert alpha_eq(subst(t, x, Var(x)), t)


@given(_terms(), _names, _terms())
def test_subst_removes_the_variable(t, x, s):
    if x in free_vars(s):
        return
    assert x not in free_vars(subst(t, x, s))

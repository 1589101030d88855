from hypothesis import given, settings, strategies as st

from minicore.core_ir import (
    DEFAULT, Alt, App, Case, Lam, Let, MkVar, NonRec, Rec, TypeAtom, mk_global,
    mk_local,
)
from minicore.freevars import bind_free_vars, expr_free_vars
from minicore.lint import well_scoped
from minicore.lint.naive import free_local_uniques
from minicore.testgen import gen_expr, gen_subst_pair
from minicore.varset import empty_var_set, mk_var_set, sub_var_set, unit_var_set

f = mk_local("f", 1)
x = mk_local("x", 2)
y = mk_local("y", 3)
b = mk_local("b", 4)
g = mk_global("g", 1)


def test_globals_are_filtered():
    assert expr_free_vars(App(MkVar(f), MkVar(g))) == unit_var_set(f)


def test_nonrec_rhs_sees_outer_scope():
    assert expr_free_vars(Let(NonRec(x, MkVar(x)), MkVar(x))) == unit_var_set(x)


def test_bind_free_vars():
    assert bind_free_vars(NonRec(x, MkVar(y))) == unit_var_set(y)
    assert bind_free_vars(Rec(((f, MkVar(f)),))) == empty_var_set


def test_lambda_and_case_binders():
    assert expr_free_vars(Lam(x, App(MkVar(x), MkVar(y)))) == unit_var_set(y)
    e = Case(MkVar(x), b, TypeAtom("T0"), (Alt(DEFAULT, (y,), App(MkVar(b), MkVar(f))),))
    assert expr_free_vars(e) == mk_var_set([x, f])


@settings(max_examples=200)
@given(st.integers(0, 100_000), st.integers(0, 40), st.sampled_from([0.0, 0.3, 1.0]))
def test_agrees_with_union_minus_oracle(seed, size, shadow):
    scope = [mk_local("s", 7), mk_local("t", 8)]
    e = gen_expr(seed, size, scope, shadow)
    keys = {(int(u.scope_class), u.number) for u in expr_free_vars(e).uniques()}
    assert keys == free_local_uniques(e)


@settings(max_examples=200)
@given(st.integers(0, 100_000), st.integers(1, 30))
def test_well_scoped_subset(seed, size):
    _, vs, e = gen_subst_pair(seed, size)
    assert well_scoped(e, vs)
    assert sub_var_set(expr_free_vars(e), vs)

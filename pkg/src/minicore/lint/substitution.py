"""Hypotheses of the scope-preservation result for substitution."""

from __future__ import annotations

from typing import Sequence

from ..core_ir import MkVar, Var
from ..subst import Subst
from ..varset import (
    VarSet, extend_var_set_list, get_in_scope_vars, lookup_var_env_by_unique,
    lookup_var_set, minus_dom,
)
from ..core_ir import almost_equal
from .scope import good_local_var, no_dup_uniques, well_scoped


def strong_subset(a: VarSet, b: VarSet) -> bool:
    """Every member of ``a`` has an almost-equal entry in ``b``."""
    for v in a:
        found = lookup_var_set(b, v)
        if found is None or not almost_equal(v, found):
            return False
    return True


def strong_equal(a: VarSet, b: VarSet) -> bool:
    return strong_subset(a, b) and strong_subset(b, a)


def well_scoped_subst(s: Subst, expr_scope: VarSet) -> bool:
    in_scope = get_in_scope_vars(s.in_scope)
    if not strong_subset(minus_dom(expr_scope, s.id_env), in_scope):
        return False
    return all(well_scoped(e, in_scope) for _, e in s.id_env.items())


def subst_extends_conditions(s1: Subst, vars1: Sequence[Var],
                             s2: Subst, vars2: Sequence[Var]) -> list[bool]:
    """The seven conditions, in order, relating a substitution before and
    after a run of binder substitutions."""
    scope1 = get_in_scope_vars(s1.in_scope)
    scope2 = get_in_scope_vars(s2.in_scope)

    def partner_or_old(u, e) -> bool:
        for old, new in zip(vars1, vars2):
            if old.real_unique == u and e == MkVar(new):
                return True
        return lookup_var_env_by_unique(s1.id_env, u) == e

    return [
        len(vars1) == len(vars2),
        no_dup_uniques(vars2),
        all(good_local_var(v) for v in vars2),
        all(lookup_var_set(scope1, v) is None for v in vars2),
        strong_equal(scope2, extend_var_set_list(scope1, vars2)),
        strong_subset(minus_dom(extend_var_set_list(scope1, vars1), s2.id_env), scope2),
        all(partner_or_old(u, e) for u, e in s2.id_env.items()),
    ]


def subst_extends(s1: Subst, vars1: Sequence[Var], s2: Subst, vars2: Sequence[Var]) -> bool:
    return all(subst_extends_conditions(s1, vars1, s2, vars2))

"""Capture-avoiding parallel substitution over Core expressions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .core_ir import (
    Alt, App, Bind, Case, Cast, Expr, Lam, Let, Lit, MkCoercion, MkType, MkVar,
    NonRec, Rec, Unique, Var, is_local_var, set_var_unique, var_unique,
)
from .varset import (
    InScopeSet, VarEnv, del_var_env, empty_var_env, extend_in_scope_set,
    get_in_scope_vars, lookup_in_scope, lookup_var_env, extend_var_env,
    VarSet,
)


@dataclass(frozen=True)
class Subst:
    in_scope: InScopeSet
    id_env: VarEnv


@dataclass(frozen=True)
class ScopeWarning:
    doc: str
    offending_var: Var

    def __str__(self):
        return f"{self.doc}: variable not in scope: {self.offending_var!r}"


def mk_empty_subst(iss: InScopeSet) -> Subst:
    return Subst(iss, empty_var_env)


def mk_subst(iss: InScopeSet, env: VarEnv) -> Subst:
    return Subst(iss, env)


def get_subst_in_scope_vars(s: Subst) -> VarSet:
    return get_in_scope_vars(s.in_scope)


def uniq_away(iss: InScopeSet, v: Var) -> Var:
    """Return ``v`` if its unique is free in ``iss``; otherwise a copy renamed to
    the first unused unique above it in the same scope class.

    Probing is linear and always terminates because ``iss`` is finite.
    """
    taken = get_in_scope_vars(iss)._m
    u = var_unique(v)
    if u not in taken:
        return v
    n = u.number + 1
    while Unique(u.scope_class, n) in taken:
        n += 1
    return set_var_unique(v, Unique(u.scope_class, n))


def lookup_id_subst(doc: str, s: Subst, v: Var) -> tuple[Expr, ScopeWarning | None]:
    if not is_local_var(v):
        return MkVar(v), None
    hit = lookup_var_env(s.id_env, v)
    if hit is not None:
        return hit, None
    refined = lookup_in_scope(s.in_scope, v)
    if refined is not None:
        return MkVar(refined), None
    return MkVar(v), ScopeWarning(doc, v)


def subst_id_bndr(doc: str, s: Subst, old_id: Var) -> tuple[Subst, Var]:
    # type/coercion environments are absent and IdInfo substitution is the
    # identity, so the freshened binder is the new binder
    new_id = uniq_away(s.in_scope, old_id)
    if var_unique(new_id) == var_unique(old_id):
        env = del_var_env(s.id_env, old_id)
    else:
        env = extend_var_env(s.id_env, old_id, MkVar(new_id))
    return Subst(extend_in_scope_set(s.in_scope, new_id), env), new_id


subst_bndr = subst_id_bndr


def subst_bndrs(doc: str, s: Subst, bndrs: Sequence[Var]) -> tuple[Subst, list[Var]]:
    out = []
    for b in bndrs:
        s, b2 = subst_id_bndr(doc, s, b)
        out.append(b2)
    return s, out


def subst_rec_bndrs(doc: str, s: Subst, bndrs: Sequence[Var]) -> tuple[Subst, list[Var]]:
    return subst_bndrs(doc, s, bndrs)


class _Substituter:
    def __init__(self, doc: str):
        self.doc = doc
        self.warnings: list[ScopeWarning] = []

    def expr(self, s: Subst, e: Expr) -> Expr:
        match e:
            case MkVar(v):
                out, warning = lookup_id_subst(self.doc, s, v)
                if warning is not None:
                    self.warnings.append(warning)
                return out
            case Lit() | MkType() | MkCoercion():
                return e
            case App(f, a):
                return App(self.expr(s, f), self.expr(s, a))
            case Lam(v, body):
                s2, v2 = subst_bndr(self.doc, s, v)
                return Lam(v2, self.expr(s2, body))
            case Let(b, body):
                s2, b2 = self.bind(s, b)
                return Let(b2, self.expr(s2, body))
            case Case(scrut, cb, ty, alts):
                scrut2 = self.expr(s, scrut)
                s2, cb2 = subst_bndr(self.doc, s, cb)
                return Case(scrut2, cb2, ty, tuple(self.alt(s2, a) for a in alts))
            case Cast(inner, co):
                return Cast(self.expr(s, inner), co)
        raise TypeError(f"not an expression: {e!r}")

    def alt(self, s: Subst, alt: Alt) -> Alt:
        s2, pats = subst_bndrs(self.doc, s, alt.pats)
        return Alt(alt.con, tuple(pats), self.expr(s2, alt.rhs))

    def bind(self, s: Subst, b: Bind) -> tuple[Subst, Bind]:
        if isinstance(b, NonRec):
            rhs = self.expr(s, b.rhs)
            s2, v2 = subst_bndr(self.doc, s, b.binder)
            return s2, NonRec(v2, rhs)
        s2, vs = subst_rec_bndrs(self.doc, s, [v for v, _ in b.pairs])
        return s2, Rec(tuple((v2, self.expr(s2, rhs)) for v2, (_, rhs) in zip(vs, b.pairs)))


def subst_expr(doc: str, s: Subst, e: Expr) -> tuple[Expr, list[ScopeWarning]]:
    """Apply ``s`` to ``e``, renaming binders that would capture.

    Scope violations do not abort; they come back as warnings in traversal
    order alongside the result.
    """
    worker = _Substituter(doc)
    out = worker.expr(s, e)
    return out, worker.warnings


def subst_bind(doc: str, s: Subst, b: Bind) -> tuple[Subst, Bind, list[ScopeWarning]]:
    worker = _Substituter(doc)
    s2, b2 = worker.bind(s, b)
    return s2, b2, worker.warnings

"""Exitification: float the exit paths of recursive join groups into fresh
non-recursive join points placed just outside the group.

``ExitifyMode.LEGACY_BUG`` reproduces the abstraction step as it was before
shadowed binders were handled, so the capture it causes can be observed.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .core_ir import (
    DEFAULT_TYPE, Alt, App, Bind, Case, Cast, CoreProgram, Expr, IdScope,
    JoinId, Lam, Let, Lit, MkCoercion, MkType, MkVar, Name, NonRec, Rec,
    Unique, Var, binders_of, binders_of_binds, collect_n_binders, is_join_id,
    is_join_id_maybe, mk_lams, mk_lets, mk_var_apps, zap_info,
)
from .freevars import expr_free_vars
from .subst import uniq_away
from .varset import (
    InScopeSet, VarSet, del_var_set, disjoint_var_set, elem_var_set,
    extend_in_scope_set_list, extend_var_set_list, get_in_scope_vars,
    is_empty_var_set, minus_var_set, mk_in_scope_set, mk_var_set,
    union_var_set,
)

INIT_EXIT_JOIN_UNIQUE = Unique.local(1000)


class ExitifyMode(enum.Enum):
    FIXED = "fixed"
    LEGACY_BUG = "legacy-bug"


@dataclass
class ExitState:
    next_exit_number: int = INIT_EXIT_JOIN_UNIQUE.number
    exits: list[tuple[Var, Expr]] = field(default_factory=list)
    # every exit binder minted so far in this pass invocation
    minted: list[Var] = field(default_factory=list)


def pick_abs_vars(mode: ExitifyMode, captured: Sequence[Var], fvs: VarSet) -> list[Var]:
    """Choose the captured binders the exit expression must be abstracted over."""
    if mode is ExitifyMode.LEGACY_BUG:
        return [zap_info(v) for v in captured if elem_var_set(v, fvs)]
    remaining = fvs
    picked = []
    for v in reversed(captured):
        if elem_var_set(v, remaining):
            picked.append(zap_info(v))
            remaining = del_var_set(remaining, v)
    picked.reverse()
    return picked


def _is_trivial(e: Expr) -> bool:
    return isinstance(e, (MkVar, Lit))


class _RecExitifier:
    def __init__(self, mode: ExitifyMode, in_scope0: InScopeSet,
                 pairs: Sequence[tuple[Var, Expr]], state: ExitState,
                 avoid: VarSet):
        self.mode = mode
        self.state = state
        self.group = [v for v, _ in pairs]
        self.recursive_calls = mk_var_set(self.group)
        self.avoid = union_var_set(
            union_var_set(get_in_scope_vars(in_scope0), self.recursive_calls), avoid)
        self.pairs = pairs

    def run(self) -> list[Bind]:
        first_exit = len(self.state.exits)
        new_pairs = []
        for v, rhs in self.pairs:
            arity = is_join_id_maybe(v)
            if arity is None:
                raise ValueError(f"exitify_rec: {v!r} is not a join id")
            params, body = collect_n_binders(arity, rhs)
            new_pairs.append((v, mk_lams(params, self.go(list(params), body))))
        exits = [NonRec(j, rhs) for j, rhs in self.state.exits[first_exit:]]
        return [*exits, Rec(tuple(new_pairs))]

    def go(self, captured: list[Var], e: Expr) -> Expr:
        fvs = expr_free_vars(e)
        if disjoint_var_set(fvs, self.recursive_calls):
            return self.exit_candidate(captured, e, fvs)
        match e:
            case Let(NonRec(j, rhs), body) if is_join_id(j):
                params, rbody = collect_n_binders(is_join_id_maybe(j), rhs)
                rhs2 = mk_lams(params, self.go(captured + params, rbody))
                return Let(NonRec(j, rhs2), self.go(captured + [j], body))
            case Let(Rec(pairs), body) if pairs and all(is_join_id(v) for v, _ in pairs):
                group = [v for v, _ in pairs]
                new_pairs = []
                for v, rhs in pairs:
                    params, rbody = collect_n_binders(is_join_id_maybe(v), rhs)
                    new_pairs.append((v, mk_lams(params, self.go(captured + group + params, rbody))))
                return Let(Rec(tuple(new_pairs)), self.go(captured + group, body))
            case Let(b, body):
                return Let(b, self.go(captured + binders_of(b), body))
            case Case(scrut, cb, ty, alts):
                return Case(scrut, cb, ty, tuple(
                    Alt(a.con, a.pats, self.go(captured + [cb, *a.pats], a.rhs)) for a in alts))
        return e

    def exit_candidate(self, captured: list[Var], e: Expr, fvs: VarSet) -> Expr:
        if _is_trivial(e):
            return e
        if is_empty_var_set(minus_var_set(fvs, mk_var_set(captured))):
            return e
        abs_vars = pick_abs_vars(self.mode, captured, fvs)
        if any(is_join_id(v) for v in abs_vars):
            return e
        exit_id = self.mint(len(abs_vars), captured)
        self.state.exits.append((exit_id, mk_lams(abs_vars, e)))
        return mk_var_apps(MkVar(exit_id), abs_vars)

    def mint(self, arity: int, captured: list[Var]) -> Var:
        st = self.state
        u = Unique.local(st.next_exit_number)
        candidate = Var(Name("exit", u), u, DEFAULT_TYPE, IdScope.LOCAL_ID, JoinId(arity))
        avoid = extend_var_set_list(self.avoid, captured)
        avoid = extend_var_set_list(avoid, st.minted)
        exit_id = uniq_away(mk_in_scope_set(avoid), candidate)
        st.next_exit_number = exit_id.real_unique.number + 1
        st.minted.append(exit_id)
        return exit_id


def exitify_rec(mode: ExitifyMode, in_scope0: InScopeSet,
                pairs: Sequence[tuple[Var, Expr]],
                state: ExitState | None = None,
                avoid: VarSet | None = None) -> list[Bind]:
    """Exitify one recursive join group.

    Returns the new exit join binds, in creation order, followed by the
    rewritten group. ``avoid`` holds extra variables whose uniques the exit
    binders must not reuse; by default every binder inside ``pairs``.
    """
    if state is None:
        state = ExitState()
    if avoid is None:
        avoid = mk_var_set(_all_binders_in_pairs(pairs))
    return _RecExitifier(mode, in_scope0, pairs, state, avoid).run()


def _all_binders_in_pairs(pairs: Iterable[tuple[Var, Expr]]) -> list[Var]:
    out = []
    for v, rhs in pairs:
        out.append(v)
        out.extend(all_binders(rhs))
    return out


def all_binders(e: Expr) -> list[Var]:
    """Every binder occurring anywhere inside ``e``."""
    out: list[Var] = []
    stack = [e]
    while stack:
        match stack.pop():
            case App(f, a):
                stack += [f, a]
            case Lam(v, body):
                out.append(v)
                stack.append(body)
            case Let(b, body):
                for v, rhs in _pairs(b):
                    out.append(v)
                    stack.append(rhs)
                stack.append(body)
            case Case(scrut, cb, _, alts):
                out.append(cb)
                stack.append(scrut)
                for a in alts:
                    out.extend(a.pats)
                    stack.append(a.rhs)
            case Cast(inner, _):
                stack.append(inner)
    return out


def _pairs(b: Bind) -> Sequence[tuple[Var, Expr]]:
    return [(b.binder, b.rhs)] if isinstance(b, NonRec) else b.pairs


class _ProgramExitifier:
    def __init__(self, mode: ExitifyMode, avoid: VarSet):
        self.mode = mode
        self.avoid = avoid
        self.state = ExitState()

    def expr(self, e: Expr, scope: InScopeSet) -> Expr:
        match e:
            case MkVar() | Lit() | MkType() | MkCoercion():
                return e
            case App(f, a):
                return App(self.expr(f, scope), self.expr(a, scope))
            case Lam(v, body):
                return Lam(v, self.expr(body, extend_in_scope_set_list(scope, [v])))
            case Let(NonRec(v, rhs), body):
                rhs2 = self.expr(rhs, scope)
                return Let(NonRec(v, rhs2), self.expr(body, extend_in_scope_set_list(scope, [v])))
            case Let(Rec(pairs), body):
                inner = extend_in_scope_set_list(scope, (v for v, _ in pairs))
                pairs2 = tuple((v, self.expr(rhs, inner)) for v, rhs in pairs)
                body2 = self.expr(body, inner)
                if pairs2 and all(is_join_id(v) for v, _ in pairs2):
                    binds = exitify_rec(self.mode, scope, pairs2, self.state, self.avoid)
                    return mk_lets(binds, body2)
                return Let(Rec(pairs2), body2)
            case Case(scrut, cb, ty, alts):
                scrut2 = self.expr(scrut, scope)
                return Case(scrut2, cb, ty, tuple(
                    Alt(a.con, a.pats, self.expr(a.rhs, extend_in_scope_set_list(scope, [cb, *a.pats])))
                    for a in alts))
            case Cast(inner, co):
                return Cast(self.expr(inner, scope), co)
        raise TypeError(f"not an expression: {e!r}")

    def bind(self, b: Bind, scope: InScopeSet) -> Bind:
        if isinstance(b, NonRec):
            return NonRec(b.binder, self.expr(b.rhs, scope))
        return Rec(tuple((v, self.expr(rhs, scope)) for v, rhs in b.pairs))


def exitify_program(mode: ExitifyMode, p: CoreProgram) -> list[Bind]:
    """Exitify every recursive join group in the program.

    Exit binders get uniques distinct from every binder in the input and from
    each other, so they never shadow anything.
    """
    top = binders_of_binds(p)
    every = list(top)
    for _, rhs in (pair for b in p for pair in _pairs(b)):
        every.extend(all_binders(rhs))
    worker = _ProgramExitifier(mode, mk_var_set(every))
    scope = mk_in_scope_set(mk_var_set(top))
    return [worker.bind(b, scope) for b in p]

"""Random Core programs and substitution instances that satisfy the scoping
and join-point invariants by construction.

The generator tracks the scope (unique -> binder) and the set of join points
that may be jumped to from the current position, and only ever emits
occurrences those two maps allow. Shadowing reuses an in-scope unique with a
different type atom.
"""

from __future__ import annotations

import random
from dataclasses import replace
from typing import Iterator, Sequence

from .core_ir import (
    DEFAULT, Alt, App, Bind, Case, Cast, CoercionAtom, CoreProgram, DataAlt,
    Expr, IdScope, JoinId, Lam, Let, Lit, LitAlt, LitInt, LitString,
    MkCoercion, MkType, MkVar, Name, NonRec, Rec, TypeAtom, Unique, VANILLA,
    Var, expr_size, is_join_id, mk_global, program_size,
)
from .exitify import all_binders
from .lint.joins import is_join_points_valid_program
from .lint.scope import well_scoped_program
from .subst import Subst
from .varset import InScopeSet, VarEnv, VarSet, mk_var_set

_TYPES = ["T0", "TInt", "TBool", "TList", "TChar"]
_LOCAL_NAMES = ["x", "y", "z", "n", "acc", "k", "w"]
_JOIN_NAMES = ["j", "go", "loop", "jx"]
_CONS = ["Nil", "Cons", "Just", "Nothing", "Pair"]
_IMPORTED = [mk_global(name, 900 + i) for i, name in
             enumerate(["plus", "minus", "times", "foo", "bar", "eq"])]


class _Gen:
    def __init__(self, rng: random.Random, shadow_p: float, join_density: float):
        self.rng = rng
        self.shadow_p = shadow_p
        self.join_density = join_density
        self.next_local = 1
        self.globals: list[Var] = list(_IMPORTED)
        self.fresh_types = 0

    # -- binders --------------------------------------------------------------
    def new_type(self) -> TypeAtom:
        return TypeAtom(self.rng.choice(_TYPES))

    def shadow_type(self, old: TypeAtom) -> TypeAtom:
        self.fresh_types += 1
        choices = [t for t in _TYPES if t != old.atom_name]
        return TypeAtom(self.rng.choice(choices))

    def binder(self, scope: dict, join_arity: int | None = None,
               avoid: frozenset = frozenset(), occ: str | None = None) -> Var:
        rng = self.rng
        details = VANILLA if join_arity is None else JoinId(join_arity)
        if occ is None:
            occ = rng.choice(_JOIN_NAMES if join_arity is not None else _LOCAL_NAMES)
        if scope and rng.random() < self.shadow_p:
            options = [u for u in scope if u not in avoid]
            if options:
                u = rng.choice(sorted(options))
                old = scope[u]
                return Var(Name(occ, u), u, self.shadow_type(old.var_type),
                           IdScope.LOCAL_ID, details, "")
        u = Unique.local(self.next_local)
        self.next_local += 1
        info = rng.choice(["", "", "", "hot"])
        return Var(Name(occ, u), u, self.new_type(), IdScope.LOCAL_ID, details, info)

    # -- expressions --------------------------------------------------------------
    def leaf(self, scope: dict) -> Expr:
        rng = self.rng
        locals_ = [v for v in scope.values() if not is_join_id(v)]
        r = rng.random()
        if locals_ and r < 0.5:
            return MkVar(rng.choice(locals_))
        if r < 0.7:
            return MkVar(rng.choice(self.globals))
        if r < 0.9:
            return Lit(LitInt(rng.randint(-3, 20)))
        if r < 0.94:
            return Lit(LitString(rng.choice(["a", "hello", ""])))
        if r < 0.97:
            return MkType(self.new_type())
        return MkCoercion(CoercionAtom(rng.choice(["Co", "Csym", "Cnt"])))

    def jump(self, size: int, scope: dict, jps: dict) -> Expr:
        rng = self.rng
        j = rng.choice([jps[u] for u in sorted(jps)])
        nargs = j.id_details.join_arity + (1 if rng.random() < 0.1 else 0)
        e: Expr = MkVar(j)
        budget = max(size - 1, 0)
        for _ in range(nargs):
            e = App(e, self.expr(budget // max(nargs, 1), scope, {}))
        return e

    def expr(self, size: int, scope: dict, jps: dict) -> Expr:
        rng = self.rng
        if jps and rng.random() < 0.3:
            return self.jump(size, scope, jps)
        if size <= 1:
            return self.leaf(scope)
        r = rng.random()
        if r < 0.15:
            return self.app(size, scope)
        if r < 0.25:
            v = self.binder(scope)
            return Lam(v, self.expr(size - 1, {**scope, v.real_unique: v}, {}))
        if r < 0.40:
            return self.let_nonrec(size, scope, jps)
        if r < 0.50:
            return self.let_join(size, scope, jps)
        if r < 0.65:
            if rng.random() < self.join_density:
                return self.letrec_join(size, scope, jps)
            return self.letrec_plain(size, scope, jps)
        if r < 0.92:
            return self.case(size, scope, jps)
        return Cast(self.expr(size - 1, scope, jps), CoercionAtom("Cast"))

    def app(self, size: int, scope: dict) -> Expr:
        s1 = self.rng.randint(1, size - 1)
        return App(self.expr(s1, scope, {}), self.expr(size - s1, scope, {}))

    def let_nonrec(self, size: int, scope: dict, jps: dict) -> Expr:
        v = self.binder(scope)
        s1 = self.rng.randint(1, max(1, size - 2))
        rhs = self.expr(s1, scope, {})
        inner_jps = {u: j for u, j in jps.items() if u != v.real_unique}
        body = self.expr(size - s1 - 1, {**scope, v.real_unique: v}, inner_jps)
        return Let(NonRec(v, rhs), body)

    def join_rhs(self, size: int, arity: int, scope: dict, jps: dict) -> Expr:
        params = []
        for _ in range(arity):
            p = self.binder(scope)
            params.append(p)
            scope = {**scope, p.real_unique: p}
            jps = {u: j for u, j in jps.items() if u != p.real_unique}
        body = self.loop_body(size, scope, jps) if jps and self.rng.random() < 0.6 \
            else self.expr(size, scope, jps)
        for p in reversed(params):
            body = Lam(p, body)
        return body

    def loop_body(self, size: int, scope: dict, jps: dict) -> Expr:
        """A case whose alternatives mix jumps and exit-shaped expressions."""
        rng = self.rng
        scrut = self.leaf(scope)
        cb = self.binder(scope, occ="c")
        inner = {**scope, cb.real_unique: cb}
        inner_jps = {u: j for u, j in jps.items() if u != cb.real_unique}
        alts = [Alt(LitAlt(LitInt(0)), (), self.exit_expr(max(size // 2, 2), inner))]
        if inner_jps:
            alts.append(Alt(DEFAULT, (), self.jump(max(size // 2, 1), inner, inner_jps)))
        else:
            alts.append(Alt(DEFAULT, (), self.expr(max(size // 2, 1), inner, inner_jps)))
        rng.shuffle(alts)
        # DEFAULT is not required to come first; order is left random
        return Case(scrut, cb, self.new_type(), tuple(alts))

    def exit_expr(self, size: int, scope: dict) -> Expr:
        locals_ = [v for v in scope.values() if not is_join_id(v)]
        f: Expr = MkVar(self.rng.choice(locals_)) if locals_ else MkVar(self.rng.choice(self.globals))
        e = f
        for _ in range(self.rng.randint(1, 2)):
            e = App(e, self.expr(max(size // 2, 1), scope, {}))
        return e

    def let_join(self, size: int, scope: dict, jps: dict) -> Expr:
        arity = self.rng.randint(0, 3)
        j = self.binder(scope, join_arity=arity)
        s1 = self.rng.randint(1, max(1, size - 2))
        rhs = self.join_rhs(s1, arity, scope, jps)
        body_jps = {**jps, j.real_unique: j}
        body = self.expr(size - s1 - 1, {**scope, j.real_unique: j}, body_jps)
        return Let(NonRec(j, rhs), body)

    def group(self, scope: dict, joins: bool) -> list[Var]:
        n = self.rng.randint(1, 3)
        group: list[Var] = []
        taken: set = set()
        for _ in range(n):
            arity = self.rng.randint(0, 3) if joins else None
            v = self.binder(scope, join_arity=arity, avoid=frozenset(taken))
            if v.real_unique in taken:
                continue
            taken.add(v.real_unique)
            group.append(v)
        return group

    def letrec_join(self, size: int, scope: dict, jps: dict) -> Expr:
        group = self.group(scope, joins=True)
        inner = {**scope, **{v.real_unique: v for v in group}}
        inner_jps = {**jps, **{v.real_unique: v for v in group}}
        per = max(1, (size - 1) // (len(group) + 1))
        pairs = tuple((v, self.join_rhs(per, v.id_details.join_arity, inner, inner_jps))
                      for v in group)
        return Let(Rec(pairs), self.expr(per, inner, inner_jps))

    def letrec_plain(self, size: int, scope: dict, jps: dict) -> Expr:
        group = self.group(scope, joins=False)
        inner = {**scope, **{v.real_unique: v for v in group}}
        uniques = {v.real_unique for v in group}
        inner_jps = {u: j for u, j in jps.items() if u not in uniques}
        per = max(1, (size - 1) // (len(group) + 1))
        pairs = tuple((v, self.expr(per, inner, {})) for v in group)
        return Let(Rec(pairs), self.expr(per, inner, inner_jps))

    def case(self, size: int, scope: dict, jps: dict) -> Expr:
        rng = self.rng
        s_scrut = rng.randint(1, max(1, size // 3))
        scrut = self.expr(s_scrut, scope, {})
        cb = self.binder(scope, occ="c")
        scope1 = {**scope, cb.real_unique: cb}
        jps1 = {u: j for u, j in jps.items() if u != cb.real_unique}
        nalts = rng.randint(1, 3)
        per = max(1, (size - s_scrut - 1) // nalts)
        alts = []
        for i in range(nalts):
            kind = rng.random()
            pats: list[Var] = []
            if i == nalts - 1 and kind < 0.4:
                con = DEFAULT
            elif kind < 0.7:
                con = DataAlt(rng.choice(_CONS))
                scope2 = scope1
                for _ in range(rng.randint(0, 2)):
                    p = self.binder(scope2)
                    pats.append(p)
                    scope2 = {**scope2, p.real_unique: p}
            else:
                con = LitAlt(LitInt(rng.randint(0, 9)))
            scope2 = {**scope1, **{p.real_unique: p for p in pats}}
            pu = {p.real_unique for p in pats}
            jps2 = {u: j for u, j in jps1.items() if u not in pu}
            alts.append(Alt(con, tuple(pats), self.expr(per, scope2, jps2)))
        return Case(scrut, cb, self.new_type(), tuple(alts))

    # -- programs -------------------------------------------------------------------
    def program(self, size: int) -> list[Bind]:
        rng = self.rng
        ntop = rng.randint(1, 4)
        top = [mk_global(rng.choice(["f", "g", "main", "h"]), i + 1, self.rng.choice(_TYPES))
               for i in range(ntop)]
        self.globals = list(_IMPORTED) + top
        binds: list[Bind] = []
        i = 0
        while i < ntop:
            if size == 0:
                binds.append(NonRec(top[i], Lit(LitInt(rng.randint(0, 9)))))
                i += 1
                continue
            per = max(1, size // ntop)
            if i + 1 < ntop and rng.random() < 0.25:
                binds.append(Rec(((top[i], self.expr(per, {}, {})),
                                  (top[i + 1], self.expr(per, {}, {})))))
                i += 2
            else:
                binds.append(NonRec(top[i], self.expr(per, {}, {})))
                i += 1
        return binds


def gen_program(seed: int, size: int, shadow_p: float = 0.2,
                join_density: float = 0.5) -> list[Bind]:
    """Deterministic in ``seed``; the result satisfies both program checkers."""
    if size < 0:
        raise ValueError("size must be non-negative")
    return _Gen(random.Random(seed), shadow_p, join_density).program(size)


def gen_expr(seed: int, size: int, scope: Sequence[Var] = (), shadow_p: float = 0.2,
             join_density: float = 0.5) -> Expr:
    g = _Gen(random.Random(seed), shadow_p, join_density)
    g.next_local = max([v.real_unique.number for v in scope] + [0]) + 1
    return g.expr(size, {v.real_unique: v for v in scope}, {})


def gen_subst_pair(seed: int, size: int, shadow_p: float = 0.3) -> tuple[Subst, VarSet, Expr]:
    """A substitution, an expression scope, and an expression meeting the
    hypotheses of the scope-preservation result."""
    rng = random.Random(seed)
    g = _Gen(rng, shadow_p, 0.5)
    expr_scope: list[Var] = [g.binder({}) for _ in range(rng.randint(0, 4))]
    e = g.expr(size, {v.real_unique: v for v in expr_scope}, {})

    empty_env = seed % 4 == 0
    domain = [] if empty_env else [v for v in expr_scope if rng.random() < 0.5]
    dom_u = {v.real_unique for v in domain}
    kept = [v for v in expr_scope if v.real_unique not in dom_u]
    kept_u = {v.real_unique for v in kept}
    # almost-equal copies: the in-scope entry may carry different IdInfo
    in_scope: dict[Unique, Var] = {
        v.real_unique: replace(v, id_info=rng.choice([v.id_info, "", "seen"])) for v in kept}

    # collide with binders of e so substitution has to rename
    for b in all_binders(e):
        if b.real_unique not in kept_u and b.real_unique not in in_scope and rng.random() < 0.5:
            in_scope[b.real_unique] = replace(b, var_type=g.new_type(), id_info="",
                                              id_details=VANILLA)
    for _ in range(rng.randint(0, 2)):
        v = g.binder({})
        in_scope[v.real_unique] = v

    env: dict[Unique, Expr] = {}
    for d in domain:
        kind = rng.random()
        if kind < 0.4:
            targets = sorted(in_scope)
            if not targets or rng.random() < 0.3:
                w = g.binder({})
                in_scope[w.real_unique] = w
            else:
                w = in_scope[rng.choice(targets)]
            env[d.real_unique] = MkVar(w)
        elif kind < 0.7:
            env[d.real_unique] = g.expr(rng.randint(1, 6), {}, {})
        else:
            env[d.real_unique] = g.expr(rng.randint(1, 6), dict(in_scope), {})
    subst = Subst(InScopeSet(mk_var_set(in_scope.values())), VarEnv(env))
    return subst, mk_var_set(expr_scope), e


def gen_binder_case(seed: int) -> tuple[Subst, list[Var]]:
    """A substitution and a list of good local binders, some of which collide
    with the in-scope set or with each other."""
    rng = random.Random(seed)
    g = _Gen(rng, 0.0, 0.5)
    in_scope = [g.binder({}) for _ in range(rng.randint(0, 6))]
    env: dict[Unique, Expr] = {}
    for v in in_scope:
        if rng.random() < 0.3:
            env[v.real_unique] = g.expr(rng.randint(1, 4), {w.real_unique: w for w in in_scope}, {})
    binders: list[Var] = []
    for _ in range(rng.randint(0, 6)):
        r = rng.random()
        if in_scope and r < 0.35:
            base = rng.choice(in_scope)
            binders.append(replace(base, var_type=g.new_type()))
        elif binders and r < 0.5:
            binders.append(rng.choice(binders))
        else:
            binders.append(g.binder({}))
    return Subst(InScopeSet(mk_var_set(in_scope)), VarEnv(env)), binders


def gen_uniq_away_case(seed: int) -> tuple[InScopeSet, Var]:
    rng = random.Random(seed)
    base = rng.randint(0, 30)
    members = []
    for _ in range(rng.randint(0, 12)):
        num = base + rng.randint(0, 10)
        if rng.random() < 0.25:
            members.append(mk_global("g", num))
        else:
            members.append(Var(Name("m", Unique.local(num)), Unique.local(num)))
    num = base + rng.randint(0, 10)
    is_global = rng.random() < 0.25
    u = Unique.global_(num) if is_global else Unique.local(num)
    details = JoinId(rng.randint(0, 3)) if rng.random() < 0.3 else VANILLA
    # not every probe input is a good variable
    name_u = u if rng.random() < 0.9 else Unique.local(num + 1)
    scope = IdScope.GLOBAL_ID if is_global else IdScope.LOCAL_ID
    v = Var(Name("v", name_u), u, TypeAtom(rng.choice(_TYPES)), scope, details,
            rng.choice(["", "x"]))
    return InScopeSet(mk_var_set(members)), v


# --- shrinking --------------------------------------------------------------------------

_ZERO = Lit(LitInt(0))


def _edits(e: Expr) -> Iterator[Expr]:
    if expr_size(e) > 1:
        yield _ZERO
    match e:
        case App(f, a):
            yield from (App(f2, a) for f2 in _edits(f))
            yield from (App(f, a2) for a2 in _edits(a))
        case Lam(v, body):
            yield from (Lam(v, b2) for b2 in _edits(body))
        case Let(NonRec(v, rhs), body):
            yield body
            yield from (Let(NonRec(v, r2), body) for r2 in _edits(rhs))
            yield from (Let(NonRec(v, rhs), b2) for b2 in _edits(body))
        case Let(Rec(pairs), body):
            yield body
            for i in range(len(pairs)):
                if len(pairs) > 1:
                    yield Let(Rec(pairs[:i] + pairs[i + 1:]), body)
                v, rhs = pairs[i]
                for r2 in _edits(rhs):
                    yield Let(Rec(pairs[:i] + ((v, r2),) + pairs[i + 1:]), body)
            yield from (Let(Rec(pairs), b2) for b2 in _edits(body))
        case Case(scrut, cb, ty, alts):
            yield from (Case(s2, cb, ty, alts) for s2 in _edits(scrut))
            for i, alt in enumerate(alts):
                yield Case(scrut, cb, ty, alts[:i] + alts[i + 1:])
                for r2 in _edits(alt.rhs):
                    yield Case(scrut, cb, ty, alts[:i] + (Alt(alt.con, alt.pats, r2),) + alts[i + 1:])
        case Cast(inner, co):
            yield inner
            yield from (Cast(i2, co) for i2 in _edits(inner))


def _program_edits(p: Sequence[Bind]) -> Iterator[list[Bind]]:
    p = list(p)
    for i in range(len(p)):
        yield p[:i] + p[i + 1:]
    for i, b in enumerate(p):
        if isinstance(b, NonRec):
            for r2 in _edits(b.rhs):
                yield p[:i] + [NonRec(b.binder, r2)] + p[i + 1:]
        else:
            for k, (v, rhs) in enumerate(b.pairs):
                if len(b.pairs) > 1:
                    yield p[:i] + [Rec(b.pairs[:k] + b.pairs[k + 1:])] + p[i + 1:]
                for r2 in _edits(rhs):
                    yield p[:i] + [Rec(b.pairs[:k] + ((v, r2),) + b.pairs[k + 1:])] + p[i + 1:]


def shrink(p: CoreProgram) -> list[list[Bind]]:
    """Strictly smaller variants of ``p`` that still pass both program checkers."""
    base = program_size(p)
    out = []
    for cand in _program_edits(p):
        if program_size(cand) < base and well_scoped_program(cand) \
                and is_join_points_valid_program(cand):
            out.append(cand)
    return out


def minimize(p: CoreProgram, still_fails) -> list[Bind]:
    """Greedy shrink loop: keep the first candidate that still fails."""
    current = list(p)
    progress = True
    while progress:
        progress = False
        for cand in shrink(current):
            if still_fails(cand):
                current = cand
                progress = True
                break
    return current

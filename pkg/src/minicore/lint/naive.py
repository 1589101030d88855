"""Literal transcriptions of the scoping and join-point predicates.

These exist only as an oracle for the production checkers: plain dicts keyed
by ``(tag, number)`` tuples, no VarSet, no reports, one clause per case.
"""

from ..core_ir import (
    App, Case, Cast, JoinId, Lam, Let, Lit, MkCoercion, MkType, MkVar, NonRec,
    Rec, IdScope, ScopeClass,
)


def _key(v):
    return (int(v.real_unique.scope_class), v.real_unique.number)


def _is_local(v):
    return v.id_scope == IdScope.LOCAL_ID


def _join(v):
    return v.id_details.join_arity if isinstance(v.id_details, JoinId) else None


def _good(v):
    return ((v.id_scope == IdScope.LOCAL_ID) == (v.real_unique.scope_class == ScopeClass.LOCAL)
            and v.var_name.name_unique == v.real_unique)


def _good_local(v):
    return _good(v) and _is_local(v)


def _ae(a, b):
    return (a.var_name, a.real_unique, a.var_type, a.id_scope, a.id_details) == \
        (b.var_name, b.real_unique, b.var_type, b.id_scope, b.id_details)


def _ext(scope, vs):
    out = dict(scope)
    for v in vs:
        out[_key(v)] = v
    return out


def _nodup(vs):
    keys = [_key(v) for v in vs]
    return len(keys) == len(set(keys))


def _binders(b):
    return [b.binder] if isinstance(b, NonRec) else [v for v, _ in b.pairs]


def ws_var(v, scope):
    if _is_local(v):
        w = scope.get(_key(v))
        if w is None:
            return False
        return _ae(v, w) and _good(v)
    return _good(v)


def ws(e, scope):
    if isinstance(e, MkVar):
        return ws_var(e.var, scope)
    if isinstance(e, (Lit, MkType, MkCoercion)):
        return True
    if isinstance(e, App):
        return ws(e.fun, scope) and ws(e.arg, scope)
    if isinstance(e, Lam):
        return _good_local(e.binder) and ws(e.body, _ext(scope, [e.binder]))
    if isinstance(e, Let):
        return ws_bind(e.bind, scope) and ws(e.body, _ext(scope, _binders(e.bind)))
    if isinstance(e, Case):
        return (ws(e.scrut, scope) and _good_local(e.case_bndr)
                and all(all(_good_local(p) for p in alt.pats)
                        and ws(alt.rhs, _ext(scope, [e.case_bndr, *alt.pats]))
                        for alt in e.alts))
    if isinstance(e, Cast):
        return ws(e.expr, scope)
    raise TypeError(e)


def ws_bind(b, scope):
    if isinstance(b, NonRec):
        return _good_local(b.binder) and ws(b.rhs, scope)
    vs = [v for v, _ in b.pairs]
    inner = _ext(scope, vs)
    return (all(_good_local(v) for v in vs) and _nodup(vs)
            and all(ws(rhs, inner) for _, rhs in b.pairs))


def ws_program(pgm):
    top = [v for b in pgm for v in _binders(b)]
    scope = _ext({}, top)
    pairs = [p for b in pgm for p in ([(b.binder, b.rhs)] if isinstance(b, NonRec) else b.pairs)]
    return _nodup(top) and all(ws(rhs, scope) for _, rhs in pairs)


def _upd(jps, v):
    out = dict(jps)
    if _join(v) is not None:
        out[_key(v)] = v
    else:
        out.pop(_key(v), None)
    return out


def _del(jps, vs):
    out = dict(jps)
    for v in vs:
        out.pop(_key(v), None)
    return out


def jpv_pair(v, rhs, jps):
    a = _join(v)
    if a is None:
        return jpv(rhs, 0, {})
    if a == 0:
        return jpv(rhs, 0, jps)
    return join_rhs_aux(a, rhs, jps)


def join_rhs_aux(a, rhs, jps):
    if a < 1:
        return False
    if isinstance(rhs, Lam):
        if _join(rhs.binder) is not None:
            return False
        if a == 1:
            return jpv(rhs.body, 0, _del(jps, [rhs.binder]))
        return join_rhs_aux(a - 1, rhs.body, _del(jps, [rhs.binder]))
    return False


def jpv(e, n, jps):
    if isinstance(e, MkVar):
        a = _join(e.var)
        if a is None:
            return True
        return _is_local(e.var) and a <= n and _key(e.var) in jps
    if isinstance(e, (Lit, MkType, MkCoercion)):
        return True
    if isinstance(e, App):
        return jpv(e.fun, n + 1, jps) and jpv(e.arg, 0, {})
    if isinstance(e, Lam):
        return _join(e.binder) is None and jpv(e.body, 0, {})
    if isinstance(e, Let) and isinstance(e.bind, NonRec):
        v, rhs = e.bind.binder, e.bind.rhs
        return jpv_pair(v, rhs, jps) and jpv(e.body, 0, _upd(jps, v))
    if isinstance(e, Let) and isinstance(e.bind, Rec):
        pairs = e.bind.pairs
        jps2 = jps
        for v, _ in pairs:
            jps2 = _upd(jps2, v)
        return (len(pairs) > 0
                and (all(_join(v) is None for v, _ in pairs) or all(_join(v) is not None for v, _ in pairs))
                and all(jpv_pair(v, rhs, jps2) for v, rhs in pairs)
                and jpv(e.body, 0, jps2))
    if isinstance(e, Case):
        if _join(e.case_bndr) is not None:
            return False
        if not jpv(e.scrut, 0, {}):
            return False
        jps1 = _del(jps, [e.case_bndr])
        return all(all(_join(p) is None for p in alt.pats) and jpv(alt.rhs, 0, _del(jps1, alt.pats))
                   for alt in e.alts)
    if isinstance(e, Cast):
        return jpv(e.expr, 0, jps)
    raise TypeError(e)


def jpv_program(pgm):
    pairs = [p for b in pgm for p in ([(b.binder, b.rhs)] if isinstance(b, NonRec) else b.pairs)]
    return all(_join(v) is None and jpv(rhs, 0, {}) for v, rhs in pairs)


def free_local_uniques(e):
    """Set of ``(tag, number)`` keys of free local-unique variables, computed
    bottom-up by union and removal."""
    if isinstance(e, MkVar):
        k = _key(e.var)
        return {k} if e.var.real_unique.scope_class == ScopeClass.LOCAL else set()
    if isinstance(e, (Lit, MkType, MkCoercion)):
        return set()
    if isinstance(e, App):
        return free_local_uniques(e.fun) | free_local_uniques(e.arg)
    if isinstance(e, Lam):
        return free_local_uniques(e.body) - {_key(e.binder)}
    if isinstance(e, Let):
        bound = {_key(v) for v in _binders(e.bind)}
        if isinstance(e.bind, NonRec):
            rhs_fvs = free_local_uniques(e.bind.rhs)
        else:
            rhs_fvs = set().union(*(free_local_uniques(r) for _, r in e.bind.pairs)) - bound
        return rhs_fvs | (free_local_uniques(e.body) - bound)
    if isinstance(e, Case):
        out = free_local_uniques(e.scrut)
        for alt in e.alts:
            out |= free_local_uniques(alt.rhs) - {_key(e.case_bndr)} - {_key(p) for p in alt.pats}
        return out
    if isinstance(e, Cast):
        return free_local_uniques(e.expr)
    raise TypeError(e)

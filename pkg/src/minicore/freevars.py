"""Free local variables of Core expressions.

Locality is decided from the unique's scope tag, not from ``id_scope``.
Type and coercion payloads are opaque and contribute nothing.
"""

from __future__ import annotations

from .core_ir import (
    App, Bind, Case, Cast, Expr, Lam, Let, Lit, MkCoercion, MkType, MkVar,
    NonRec, Unique, Var, is_local_unique,
)
from .varset import VarSet


def expr_free_vars(e: Expr) -> VarSet:
    """Free local variables of ``e``.

    When several free occurrences share a unique, the left-most one in a
    left-to-right traversal is the representative kept in the set.
    """
    acc: dict[Unique, Var] = {}
    _expr_fvs(e, frozenset(), acc)
    return VarSet._from_raw(acc)


def bind_free_vars(b: Bind) -> VarSet:
    acc: dict[Unique, Var] = {}
    _bind_fvs(b, frozenset(), acc)
    return VarSet._from_raw(acc)


def _note(v: Var, bound: frozenset, acc: dict) -> None:
    u = v.real_unique
    if is_local_unique(u) and u not in bound and u not in acc:
        acc[u] = v


def _bind_fvs(b: Bind, bound: frozenset, acc: dict) -> frozenset:
    """Collect the rhs free vars of ``b``; return the scope for its body."""
    if isinstance(b, NonRec):
        _expr_fvs(b.rhs, bound, acc)
        return bound | {b.binder.real_unique}
    inner = bound | {v.real_unique for v, _ in b.pairs}
    for _, rhs in b.pairs:
        _expr_fvs(rhs, inner, acc)
    return inner


def _expr_fvs(e: Expr, bound: frozenset, acc: dict) -> None:
    while True:
        match e:
            case MkVar(v):
                _note(v, bound, acc)
                return
            case Lit() | MkType() | MkCoercion():
                return
            case App(f, a):
                _expr_fvs(f, bound, acc)
                e = a
            case Lam(v, body):
                bound = bound | {v.real_unique}
                e = body
            case Let(b, body):
                bound = _bind_fvs(b, bound, acc)
                e = body
            case Case(scrut, cb, _, alts):
                _expr_fvs(scrut, bound, acc)
                inner = bound | {cb.real_unique}
                for alt in alts:
                    _expr_fvs(alt.rhs, inner | {p.real_unique for p in alt.pats}, acc)
                return
            case Cast(inner_e, _):
                e = inner_e
            case _:
                raise TypeError(f"not an expression: {e!r}")

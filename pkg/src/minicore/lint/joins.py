"""Join-point validity.

``n`` counts the arguments applied to the expression under inspection and
``jps`` holds the join points that may be jumped to from this position; both
are reset whenever the position is not a tail position.
"""

from __future__ import annotations

from typing import Iterable

from ..core_ir import (
    App, Case, Cast, CoreProgram, Expr, Lam, Let, Lit, MkCoercion, MkType,
    MkVar, NonRec, Var, flatten_binds, is_join_id, is_join_id_maybe,
    is_local_var,
)
from ..varset import (
    VarSet, del_var_set, del_var_set_list, elem_var_set, empty_var_set,
    extend_var_set,
)
from .report import Collector, LintReport, Path


def upd_jps(jps: VarSet, v: Var) -> VarSet:
    """Track ``v`` if it is a join point; otherwise it shadows any join point
    sharing its unique."""
    return extend_var_set(jps, v) if is_join_id(v) else del_var_set(jps, v)


def upd_jpss(jps: VarSet, vs: Iterable[Var]) -> VarSet:
    for v in vs:
        jps = upd_jps(jps, v)
    return jps


class _JoinChecker(Collector):

    def expr(self, e: Expr, n: int, jps: VarSet, path: Path) -> bool:
        match e:
            case MkVar(v):
                a = is_join_id_maybe(v)
                if a is None:
                    return True
                if not is_local_var(v):
                    return self.fail(path, "Jump/notLocal", f"join id {v!r} is not local")
                if a > n:
                    return self.fail(path, "Jump/arity",
                                     f"jump to {v!r} has {n} argument(s), needs {a}")
                if not elem_var_set(v, jps):
                    return self.fail(path, "Jump/notTail",
                                     f"{v!r} occurs outside a tail position of its binding")
                return True
            case Lit() | MkType() | MkCoercion():
                return True
            case App(f, a):
                ok = self.expr(f, n + 1, jps, path / "fun")
                return self.expr(a, 0, empty_var_set, path / "arg") and ok
            case Lam(v, body):
                ok = True
                if is_join_id(v):
                    ok = self.fail(path, "Lam/joinBinder", f"lambda binds join id {v!r}")
                return self.expr(body, 0, empty_var_set, path / "body") and ok
            case Let(NonRec(v, rhs), body):
                ok = self.pair(v, rhs, jps, path / f"rhs({v!r})")
                return self.expr(body, 0, upd_jps(jps, v), path / "in") and ok
            case Let(rec, body):
                ok = True
                if not rec.pairs:
                    ok = self.fail(path, "Rec/empty", "empty recursive group")
                joins = [is_join_id(v) for v, _ in rec.pairs]
                if not (all(joins) or not any(joins)):
                    ok = self.fail(path, "Rec/mixed",
                                   "recursive group mixes join and non-join binders")
                inner = upd_jpss(jps, (v for v, _ in rec.pairs))
                for v, rhs in rec.pairs:
                    ok = self.pair(v, rhs, inner, path / f"rhs({v!r})") and ok
                return self.expr(body, 0, inner, path / "in") and ok
            case Case(scrut, cb, _, alts):
                ok = True
                if is_join_id(cb):
                    ok = self.fail(path, "Case/joinBinder", f"case binder {cb!r} is a join id")
                ok = self.expr(scrut, 0, empty_var_set, path / "scrut") and ok
                jps1 = del_var_set(jps, cb)
                for i, alt in enumerate(alts):
                    ap = path / f"alt[{i}]"
                    for p in alt.pats:
                        if is_join_id(p):
                            ok = self.fail(ap, "Alt/joinPat", f"pattern binds join id {p!r}")
                    ok = self.expr(alt.rhs, 0, del_var_set_list(jps1, alt.pats), ap) and ok
                return ok
            case Cast(inner_e, _):
                return self.expr(inner_e, 0, jps, path / "cast")
        raise TypeError(f"not an expression: {e!r}")

    def pair(self, v: Var, rhs: Expr, jps: VarSet, path: Path) -> bool:
        a = is_join_id_maybe(v)
        if a is None:
            return self.expr(rhs, 0, empty_var_set, path)
        return self.join_rhs(rhs, a, jps, path)

    def join_rhs(self, rhs: Expr, a: int, jps: VarSet, path: Path) -> bool:
        if a == 0:
            return self.expr(rhs, 0, jps, path)
        ok = True
        for _ in range(a):
            if not isinstance(rhs, Lam):
                return self.fail(path, "JoinRHS/lambdas",
                                 f"join right-hand side needs {a} leading lambdas")
            if is_join_id(rhs.binder):
                ok = self.fail(path, "JoinRHS/joinParam",
                               f"join parameter {rhs.binder!r} is a join id")
            jps = del_var_set(jps, rhs.binder)
            path = path / f"lam({rhs.binder!r})"
            rhs = rhs.body
        return self.expr(rhs, 0, jps, path) and ok

    def program(self, p: CoreProgram) -> bool:
        ok = True
        for v, rhs in flatten_binds(p):
            path = Path(None, f"top({v!r})")
            if is_join_id(v):
                ok = self.fail(path, "Program/topJoin", f"top-level binder {v!r} is a join id")
            ok = self.expr(rhs, 0, empty_var_set, path) and ok
        return ok


def is_join_points_valid_report(e: Expr, n: int = 0, jps: VarSet = empty_var_set) -> LintReport:
    c = _JoinChecker()
    c.expr(e, n, jps, Path(None, "expr"))
    return c.report()


def is_join_points_valid(e: Expr, n: int, jps: VarSet) -> bool:
    return is_join_points_valid_report(e, n, jps).ok


def is_join_rhs(rhs: Expr, a: int, jps: VarSet) -> bool:
    return _JoinChecker().join_rhs(rhs, a, jps, Path(None, "rhs"))


def is_join_points_valid_pair(v: Var, rhs: Expr, jps: VarSet) -> bool:
    return _JoinChecker().pair(v, rhs, jps, Path(None, "rhs"))


def is_valid_join_points_pair(v: Var, rhs: Expr, jps: VarSet) -> bool:
    """Like ``is_join_points_valid_pair`` but also demands that ``v`` is a join id."""
    a = is_join_id_maybe(v)
    return a is not None and is_join_rhs(rhs, a, jps)


def is_join_points_valid_program_report(p: CoreProgram) -> LintReport:
    c = _JoinChecker()
    c.program(p)
    return c.report()


def is_join_points_valid_program(p: CoreProgram) -> bool:
    return is_join_points_valid_program_report(p).ok

"""Variable sanity and well-scopedness checks."""

from __future__ import annotations

from typing import Sequence

from ..core_ir import (
    App, Bind, Case, Cast, CoreProgram, Expr, Lam, Let, Lit, MkCoercion,
    MkType, MkVar, NonRec, Var, almost_equal, binders_of, binders_of_binds,
    flatten_binds, is_local_unique, is_local_var,
)
from ..varset import (
    VarSet, extend_var_set, extend_var_set_list, lookup_var_set, mk_var_set,
    valid_var_set,
)
from .report import Collector, LintReport, Path


def good_var(v: Var) -> bool:
    """Scope flag agrees with the unique's tag, and both unique copies agree."""
    return (is_local_var(v) == is_local_unique(v.real_unique)
            and v.real_unique == v.var_name.name_unique)


def good_local_var(v: Var) -> bool:
    return good_var(v) and is_local_var(v)


def well_scoped_var(v: Var, in_scope: VarSet) -> bool:
    if is_local_var(v):
        found = lookup_var_set(in_scope, v)
        return found is not None and almost_equal(v, found) and good_var(v)
    return good_var(v)


def no_dup_uniques(vs: Sequence[Var]) -> bool:
    us = [v.real_unique for v in vs]
    return len(us) == len(set(us))


def valid_var_set_check(vs: VarSet) -> bool:
    return valid_var_set(vs)


class _ScopeChecker(Collector):

    def var(self, v: Var, in_scope: VarSet, path: Path) -> bool:
        if is_local_var(v):
            found = lookup_var_set(in_scope, v)
            if found is None:
                return self.fail(path, "WellScopedVar/None", f"{v!r} is not in scope")
            if not almost_equal(v, found):
                return self.fail(path, "WellScopedVar/almostEqual",
                                 f"{v!r} differs from the in-scope binder {found!r}")
        if not good_var(v):
            return self.fail(path, "GoodVar", f"{v!r} is not a good variable")
        return True

    def binder(self, v: Var, path: Path) -> bool:
        if not good_local_var(v):
            return self.fail(path, "GoodLocalVar", f"binder {v!r} is not a good local variable")
        return True

    def expr(self, e: Expr, in_scope: VarSet, path: Path) -> bool:
        match e:
            case MkVar(v):
                return self.var(v, in_scope, path)
            case Lit() | MkType() | MkCoercion():
                return True
            case App(f, a):
                ok = self.expr(f, in_scope, path / "fun")
                return self.expr(a, in_scope, path / "arg") and ok
            case Lam(v, body):
                ok = self.binder(v, path / f"lam({v!r})")
                return self.expr(body, extend_var_set(in_scope, v), path / "body") and ok
            case Let(b, body):
                ok = self.bind(b, in_scope, path / "let")
                inner = extend_var_set_list(in_scope, binders_of(b))
                return self.expr(body, inner, path / "in") and ok
            case Case(scrut, cb, _, alts):
                ok = self.expr(scrut, in_scope, path / "scrut")
                ok = self.binder(cb, path / f"as({cb!r})") and ok
                for i, alt in enumerate(alts):
                    ap = path / f"alt[{i}]"
                    for p in alt.pats:
                        ok = self.binder(p, ap / f"pat({p!r})") and ok
                    inner = extend_var_set_list(in_scope, [cb, *alt.pats])
                    ok = self.expr(alt.rhs, inner, ap) and ok
                return ok
            case Cast(inner_e, _):
                return self.expr(inner_e, in_scope, path / "cast")
        raise TypeError(f"not an expression: {e!r}")

    def bind(self, b: Bind, in_scope: VarSet, path: Path) -> bool:
        if isinstance(b, NonRec):
            ok = self.binder(b.binder, path / f"bndr({b.binder!r})")
            return self.expr(b.rhs, in_scope, path / f"rhs({b.binder!r})") and ok
        group = [v for v, _ in b.pairs]
        ok = True
        for v in group:
            ok = self.binder(v, path / f"bndr({v!r})") and ok
        if not no_dup_uniques(group):
            ok = self.fail(path, "Rec/NoDup", "recursive group binds a unique twice")
        inner = extend_var_set_list(in_scope, group)
        for v, rhs in b.pairs:
            ok = self.expr(rhs, inner, path / f"rhs({v!r})") and ok
        return ok

    def program(self, p: CoreProgram) -> bool:
        top = binders_of_binds(p)
        ok = True
        if not no_dup_uniques(top):
            ok = self.fail(Path(None, "program"), "Program/NoDup",
                           "top-level binders share a unique")
        scope = mk_var_set(top)
        for v, rhs in flatten_binds(p):
            ok = self.expr(rhs, scope, Path(None, f"top({v!r})")) and ok
        return ok


def well_scoped_report(e: Expr, in_scope: VarSet) -> LintReport:
    c = _ScopeChecker()
    c.expr(e, in_scope, Path(None, "expr"))
    return c.report()


def well_scoped(e: Expr, in_scope: VarSet) -> bool:
    return well_scoped_report(e, in_scope).ok


def well_scoped_bind(b: Bind, in_scope: VarSet) -> bool:
    c = _ScopeChecker()
    return c.bind(b, in_scope, Path(None, "bind"))


def well_scoped_program_report(p: CoreProgram) -> LintReport:
    c = _ScopeChecker()
    c.program(p)
    return c.report()


def well_scoped_program(p: CoreProgram) -> bool:
    return well_scoped_program_report(p).ok

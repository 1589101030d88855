"""A small executable model of GHC Core: AST, scope machinery, invariant
checkers, capture-avoiding substitution, and exitification."""

from .core_ir import *  # noqa: F401,F403
from .varset import *  # noqa: F401,F403
from .freevars import bind_free_vars, expr_free_vars
from .subst import (
    ScopeWarning, Subst, get_subst_in_scope_vars, lookup_id_subst, mk_empty_subst,
    subst_bind, subst_bndr, subst_bndrs, subst_expr, subst_id_bndr, subst_rec_bndrs,
    uniq_away,
)
from .exitify import ExitifyMode, ExitState, exitify_program, exitify_rec, pick_abs_vars
from .syntax import ParseError, SubstSpec, parse_program, parse_subst_spec, print_program

__version__ = "0.1.0"

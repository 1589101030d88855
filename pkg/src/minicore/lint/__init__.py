"""Executable invariant checkers for Core programs."""

from .joins import (
    is_join_points_valid, is_join_points_valid_pair, is_join_points_valid_program,
    is_join_points_valid_program_report, is_join_points_valid_report, is_join_rhs,
    is_valid_join_points_pair, upd_jps, upd_jpss,
)
from .report import LintReport, Violation
from .scope import (
    good_local_var, good_var, valid_var_set_check, well_scoped, well_scoped_bind,
    well_scoped_program, well_scoped_program_report, well_scoped_report,
    well_scoped_var,
)
from .substitution import (
    strong_equal, strong_subset, subst_extends, subst_extends_conditions,
    well_scoped_subst,
)


def lint_program(p, join_points: bool = False) -> LintReport:
    report = well_scoped_program_report(p)
    if join_points:
        report = report.merge(is_join_points_valid_program_report(p))
    return report


__all__ = [
    "LintReport", "Violation", "good_local_var", "good_var", "is_join_points_valid",
    "is_join_points_valid_pair", "is_join_points_valid_program",
    "is_join_points_valid_program_report", "is_join_points_valid_report",
    "is_join_rhs", "is_valid_join_points_pair", "lint_program", "strong_equal",
    "strong_subset", "subst_extends", "subst_extends_conditions", "upd_jps",
    "upd_jpss", "valid_var_set_check", "well_scoped", "well_scoped_bind",
    "well_scoped_program", "well_scoped_program_report", "well_scoped_report",
    "well_scoped_subst", "well_scoped_var",
]

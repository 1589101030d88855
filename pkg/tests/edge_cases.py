"""Hand-written edge programs with their expected checker verdicts.

Each entry is ``(name, program, well_scoped, join_points_valid)`` where the
program is concrete syntax, or an AST when the syntax cannot express it.
"""

from minicore.core_ir import Let, Lit, LitInt, NonRec, Rec, mk_global

_J1 = "let j_2!j1 = \\a_3 -> a_3 in "

EDGE_CASES = [
    # scoping basics
    ("empty_program", "", True, True),
    ("global_self_reference", "let g_1g = g_1g;", True, True),
    ("unbound_local", "let f_1g = x_2;", False, True),
    ("occurrence_type_mismatch", "let f_1g = \\x_2:TInt -> x_2:TBool;", False, True),
    ("occurrence_info_differs", "let f_1g = \\x_2%a -> x_2%b;", True, True),
    ("local_top_binders_forward", "let f_1 = h_2; let h_2 = 1;", True, True),
    ("bad_global_marker", "let h_2g? = 1; let f_1g = h_2g?;", False, True),
    ("global_lambda_binder", "let f_1g = \\x_2g -> 1;", False, True),
    ("type_and_coercion_args", "let f_1g = f_1g @T0 @~Cco;", True, True),
    # shadowing
    ("shadow_inner_reference", "let f_1g = \\x_2:TBool -> \\x_2:TInt -> x_2:TInt;", True, True),
    ("shadow_outer_reference", "let f_1g = \\x_2:TBool -> \\x_2:TInt -> x_2:TBool;", False, True),
    ("case_binder_shadows_param",
     "let f_1g = \\x_2:TInt -> case x_2:TInt as x_2:TBool of { DEFAULT -> x_2:TBool };", True, True),
    ("case_binder_shadow_stale_use",
     "let f_1g = \\x_2:TInt -> case x_2:TInt as x_2:TBool of { DEFAULT -> x_2:TInt };", False, True),
    ("pattern_shadows_case_binder",
     "let f_1g = \\x_2 -> case x_2 as c_3 of { K c_3:TInt -> c_3:TInt };", True, True),
    # duplicates
    ("top_duplicate_binder", "let f_1g = 1; let f_1g = 2;", False, True),
    ("top_duplicate_unique_other_name", "let f_1g = 1; let h_1g = 2;", False, True),
    ("rec_duplicate_binders", "let f_1g = letrec a_2 = 1 and a_2 = 2 in a_2;", False, True),
    # let forms
    ("rec_mutual_reference", "let f_1g = letrec a_2 = b_3 and b_3 = a_2 in a_2;", True, True),
    ("nonrec_self_reference", "let f_1g = let a_2 = a_2 in a_2;", False, True),
    ("rec_self_reference", "let f_1g = letrec a_2 = a_2 in a_2;", True, True),
    # case forms
    ("case_patterns_in_scope",
     "let f_1g = \\x_2 -> case x_2 as c_3 of { K a_4 b_5 -> c_3 a_4 b_5 };", True, True),
    ("pattern_escapes_alt",
     "let f_1g = \\x_2 -> case x_2 as c_3 of { K a_4 -> a_4; DEFAULT -> a_4 };", False, True),
    ("case_binder_in_scrutinee", "let f_1g = case c_3 as c_3 of { DEFAULT -> 1 };", False, True),
    # join points: valid shapes
    ("join_simple", "let f_1g = " + _J1 + "j_2!j1 1;", True, True),
    ("join_arity_zero", "let f_1g = let j_2!j0 = 7 in j_2!j0;", True, True),
    ("join_arity_zero_applied", "let f_1g = let j_2!j0 = plus_9g in j_2!j0 1;", True, True),
    ("jump_over_saturated", "let f_1g = " + _J1 + "j_2!j1 1 2;", True, True),
    ("jump_in_case_alt",
     "let f_1g = " + _J1 + "case 1 as c_4 of { DEFAULT -> j_2!j1 c_4 };", True, True),
    ("jump_inside_cast", "let f_1g = " + _J1 + "(j_2!j1 1 |> Cco);", True, True),
    ("jump_to_enclosing_join",
     "let f_1g = let k_2!j1 = \\a_3 -> a_3 in let j_4!j1 = \\b_5 -> k_2!j1 b_5 in j_4!j1 1;",
     True, True),
    ("join_rec_loop",
     "let f_1g = letrec go_2!j1 = \\n_3 -> case n_3 as c_4 of { 0 -> 1; DEFAULT -> go_2!j1 n_3 }"
     " in go_2!j1 5;", True, True),
    ("join_rec_mutual",
     "let f_1g = letrec a_2!j1 = \\x_3 -> b_4!j1 x_3 and b_4!j1 = \\y_5 -> a_2!j1 y_5 in a_2!j1 0;",
     True, True),
    ("join_param_shadows_join_name",
     "let f_1g = letrec j_2!j1 = \\j_2 -> j_2 in j_2!j1 1;", True, True),
    # join points: invalid shapes
    ("jump_under_saturated", "let f_1g = let j_2!j2 = \\a_3 b_4 -> a_3 in j_2!j2 1;", True, False),
    ("jump_as_argument", "let f_1g = " + _J1 + "plus_9g (j_2!j1 1);", True, False),
    ("jump_under_lambda", "let f_1g = " + _J1 + "\\y_4 -> j_2!j1 y_4;", True, False),
    ("jump_in_scrutinee",
     "let f_1g = " + _J1 + "case j_2!j1 1 as c_4 of { DEFAULT -> 0 };", True, False),
    ("jump_in_nonjoin_rhs", "let f_1g = " + _J1 + "let y_4 = j_2!j1 1 in y_4;", True, False),
    ("join_rhs_too_few_lambdas", "let f_1g = let j_2!j2 = \\a_3 -> a_3 in j_2!j2 1 2;", True, False),
    ("lambda_binds_join", "let f_1g = \\j_2!j0 -> 1;", True, False),
    ("case_binder_is_join", "let f_1g = case 1 as c_2!j0 of { DEFAULT -> 0 };", True, False),
    ("pattern_is_join", "let f_1g = case 1 as c_2 of { K p_3!j0 -> 0 };", True, False),
    ("join_param_is_join", "let f_1g = let j_2!j1 = \\p_3!j0 -> 0 in j_2!j1 1;", True, False),
    ("top_level_join", "let j_1!j0 = 1;", True, False),
    ("rec_mixed_group",
     "let f_1g = letrec j_2!j1 = \\a_3 -> j_2!j1 a_3 and y_4 = 1 in y_4;", True, False),
    ("global_join_occurrence", "let f_1g = \\x_2 -> h_3g!j0;", True, False),
    ("rec_empty_group", [NonRec(mk_global("f", 1), Let(Rec(()), Lit(LitInt(0))))], True, False),
    # join points: both checkers object
    ("nonjoin_shadows_join",
     "let f_1g = let j_2!j0 = 1 in let j_2 = 2 in j_2!j0;", False, False),
    ("join_param_shadows_outer_join",
     "let f_1g = let k_2!j0 = 1 in let j_3!j1 = \\k_2 -> k_2!j0 in j_3!j1 0;", False, False),
    ("nonrec_join_self_jump", "let f_1g = let j_2!j1 = \\a_3 -> j_2!j1 a_3 in j_2!j1 1;", False, False),
]

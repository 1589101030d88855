"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line.

Run with ``pytest tests/test_acceptance.py -v``; the terminal summary lists
all criteria together.
"""

import random
import subprocess
import sys
import time
from dataclasses import replace

from edge_cases import EDGE_CASES
from minicore.core_ir import (
    DEFAULT, Alt, App, Case, Cast, CoercionAtom, Lam, Let, Lit,
    LitInt, MkCoercion, MkType, MkVar, NonRec, Rec, TypeAtom, collect_args,
    collect_n_binders, expr_size, is_join_id_maybe, is_local_var, mk_global,
    mk_local,
)
from minicore.exitify import ExitifyMode, exitify_program
from minicore.freevars import expr_free_vars
from minicore.lint import (
    good_local_var, is_join_points_valid_program, naive, subst_extends,
    valid_var_set_check, well_scoped, well_scoped_program,
    well_scoped_program_report, well_scoped_subst,
)
from minicore.subst import (
    get_subst_in_scope_vars, subst_bndrs, subst_expr, subst_rec_bndrs, uniq_away,
)
from minicore.syntax import parse_program, print_program
from minicore.testgen import (
    _program_edits, gen_binder_case, gen_program, gen_subst_pair,
    gen_uniq_away_case,
)
from minicore.varset import (
    del_var_set, del_var_set_list, empty_var_set, extend_var_set,
    extend_var_set_list, filter_var_set, get_in_scope_vars, intersect_var_set,
    lookup_var_set, minus_var_set, mk_var_set, union_var_set,
)

from conftest import FIXTURES

N = 10_000
SHADOWS = (0.0, 0.3, 1.0)


def _size(seed: int) -> int:
    return 5 + seed % 45


def test_criterion_01_substitution_preserves_scope(acceptance):
    start = time.perf_counter()
    violations = warnings = bad_inputs = 0
    for seed in range(N):
        s, vs, e = gen_subst_pair(seed, _size(seed))
        if not (well_scoped_subst(s, vs) and well_scoped(e, vs)):
            bad_inputs += 1
            continue
        out, ws = subst_expr("acceptance", s, e)
        warnings += len(ws)
        violations += not well_scoped(out, get_subst_in_scope_vars(s))
    elapsed = time.perf_counter() - start
    acceptance(1, "substitution preserves scoping",
               violations == 0 and warnings == 0 and bad_inputs == 0 and elapsed < 120,
               f"{N} cases, {violations} violations, {warnings} warnings, "
               f"{bad_inputs} ill-formed inputs, {elapsed:.1f}s")


def test_criterion_02_exitify_preserves_invariants(acceptance):
    failures = inputs_invalid = changed = 0
    for seed in range(N):
        p = gen_program(seed, _size(seed), SHADOWS[seed % 3], 0.5 + (seed % 6) / 10)
        if not (well_scoped_program(p) and is_join_points_valid_program(p)):
            inputs_invalid += 1
            continue
        out = exitify_program(ExitifyMode.FIXED, p)
        changed += out != p
        failures += not (well_scoped_program(out) and is_join_points_valid_program(out))
    acceptance(2, "exitify (fixed) preserves both invariants",
               failures == 0 and inputs_invalid == 0,
               f"{N} programs, {failures} failing outputs, {inputs_invalid} invalid inputs, "
               f"{changed} rewritten")


def _exit_binds(e):
    stack, found = [e], []
    while stack:
        match stack.pop():
            case Let(NonRec(v, rhs), body):
                if v.var_name.occ_text == "exit":
                    found.append((v, rhs))
                stack += [rhs, body]
            case Let(Rec(pairs), body):
                stack += [r for _, r in pairs] + [body]
            case App(f, a):
                stack += [f, a]
            case Lam(_, body):
                stack.append(body)
            case Case(scrut, _, _, alts):
                stack += [scrut] + [a.rhs for a in alts]
            case Cast(inner, _):
                stack.append(inner)
    return found


def _jumps_to(e, target):
    """Argument lists of every application spine headed by ``target``."""
    stack, found = [e], []
    while stack:
        match stack.pop():
            case App() as app:
                head, args = collect_args(app)
                if head == MkVar(target):
                    found.append(args)
                stack += [head, *args]
            case Let(b, body):
                stack += [r for _, r in ([(b.binder, b.rhs)] if isinstance(b, NonRec) else b.pairs)]
                stack.append(body)
            case Lam(_, body):
                stack.append(body)
            case Case(scrut, _, _, alts):
                stack += [scrut] + [a.rhs for a in alts]
            case Cast(inner, _):
                stack.append(inner)
    return found


def test_criterion_03_shadowing_bug(acceptance):
    p = parse_program((FIXTURES / "shadow.core").read_text())
    checks = {}
    legacy = exitify_program(ExitifyMode.LEGACY_BUG, p)
    report = well_scoped_program_report(legacy)
    [(exit_l, _)] = _exit_binds(legacy[0].rhs)
    jumps = _jumps_to(legacy[0].rhs, exit_l)
    checks["legacy fails wellScoped"] = not report.ok
    checks["almostEqual violation at a jump argument"] = any(
        v.rule == "WellScopedVar/almostEqual" and v.path.endswith("/arg") for v in report.violations)
    checks["legacy jump passes two same-unique args"] = bool(jumps) and all(
        len(args) == 2 and args[0].var.real_unique == args[1].var.real_unique
        and args[0].var.var_type != args[1].var.var_type for args in jumps)

    fixed = exitify_program(ExitifyMode.FIXED, p)
    [(exit_f, rhs_f)] = _exit_binds(fixed[0].rhs)
    params, _ = collect_n_binders(is_join_id_maybe(exit_f), rhs_f)
    checks["fixed passes both checkers"] = well_scoped_program(fixed) and is_join_points_valid_program(fixed)
    checks["fixed exit has exactly one parameter"] = is_join_id_maybe(exit_f) == 1 and len(params) == 1
    failed = [k for k, ok in checks.items() if not ok]
    acceptance(3, "legacy exitify reproduces the shadowing capture", not failed,
               "all exact checks hold" if not failed else "failed: " + "; ".join(failed))


def test_criterion_04_worked_example(acceptance):
    p = parse_program((FIXTURES / "jgo.core").read_text())
    out = exitify_program(ExitifyMode.FIXED, p)
    golden = parse_program((FIXTURES / "jgo.exitified.core").read_text())
    t = mk_local("t", 4)
    x = mk_local("x", 7, "TInt")
    exits = _exit_binds(out[0].rhs)
    checks = {"golden equality after fmt": print_program(out) == print_program(golden)}
    checks["exactly one new exit join"] = len(exits) == 1
    if len(exits) == 1:
        j, rhs = exits[0]
        params, body = collect_n_binders(is_join_id_maybe(j), rhs)
        checks["exit has arity 1 over x"] = is_join_id_maybe(j) == 1 and params == [x]
        checks["exit body applies t"] = collect_args(body)[0] == MkVar(t)
        checks["exit branch jumps to it"] = [MkVar(x)] in _jumps_to(out[0].rhs, j)
    failed = [k for k, ok in checks.items() if not ok]
    acceptance(4, "j_go exit path floated into a join point", not failed,
               "matches golden file" if not failed else "failed: " + "; ".join(failed))


def test_criterion_05_uniq_away_axioms(acceptance):
    counts = dict.fromkeys(
        ["fresh", "nameUnique sync", "isLocalId", "id_details", "idScope", "eq_same"], 0)
    for seed in range(N):
        iss, v = gen_uniq_away_case(seed)
        out = uniq_away(iss, v)
        counts["fresh"] += lookup_var_set(get_in_scope_vars(iss), out) is not None
        if v.var_name.name_unique == v.real_unique:
            counts["nameUnique sync"] += out.var_name.name_unique != out.real_unique
        counts["isLocalId"] += is_local_var(out) != is_local_var(v)
        counts["id_details"] += out.id_details != v.id_details
        counts["idScope"] += out.id_scope != v.id_scope
        if out.real_unique == v.real_unique:
            counts["eq_same"] += out != v
    total = sum(counts.values())
    acceptance(5, "uniqAway axioms", total == 0,
               f"{N} cases, failures per axiom: " + ", ".join(f"{k}={n}" for k, n in counts.items()))


def test_criterion_06_well_scoped_subset(acceptance):
    failures = 0
    for seed in range(N):
        _, vs, e = gen_subst_pair(seed + N, _size(seed))
        assert well_scoped(e, vs)
        failures += not expr_free_vars(e).uniques() <= vs.uniques()
    acceptance(6, "free variables of well-scoped terms lie in scope", failures == 0,
               f"{N} cases, {failures} failures")


def test_criterion_07_checker_fidelity(acceptance):
    disagreements, seen_false = 0, 0
    for seed in range(N):
        p = gen_program(seed + 2 * N, _size(seed), SHADOWS[seed % 3], 0.6)
        edits = list(_program_edits(p))
        mutant = random.Random(seed).choice(edits) if edits else p
        for q in (p, mutant):
            ws, jpv = well_scoped_program(q), is_join_points_valid_program(q)
            disagreements += (ws != naive.ws_program(q)) + (jpv != naive.jpv_program(q))
            seen_false += not (ws and jpv)
    fixture_mismatch = 0
    for _, program, ws, jpv in EDGE_CASES:
        q = parse_program(program) if isinstance(program, str) else program
        results = (well_scoped_program(q), naive.ws_program(q),
                   is_join_points_valid_program(q), naive.jpv_program(q))
        fixture_mismatch += results != (ws, ws, jpv, jpv)
    acceptance(7, "production checkers match the naive transcription",
               disagreements == 0 and fixture_mismatch == 0 and len(EDGE_CASES) == 50,
               f"{N} programs (+{N} mutants, {seen_false} rejected): {disagreements} disagreements; "
               f"{len(EDGE_CASES)} edge fixtures: {fixture_mismatch} mismatches")


def test_criterion_08_subst_extends(acceptance):
    failures = bad_inputs = 0
    for seed in range(N):
        s, binders = gen_binder_case(seed)
        bad_inputs += not all(good_local_var(v) for v in binders)
        for fn in (subst_bndrs, subst_rec_bndrs):
            s2, out = fn("acceptance", s, binders)
            failures += not subst_extends(s, binders, s2, out)
    acceptance(8, "binder substitution extends the substitution",
               failures == 0 and bad_inputs == 0,
               f"{N} binder lists x 2 functions, {failures} failures, {bad_inputs} bad inputs")


_POOL = [mk_local(n, u, ty) for n, u, ty in
         [("a", 1, "T0"), ("a", 1, "TInt"), ("b", 2, "T0"), ("c", 3, "TBool"),
          ("d", 4, "T0"), ("d", 4, "T0"), ("e", 17, "TChar")]] + [mk_global("g", 1), mk_global("h", 4)]
_POOL[5] = replace(_POOL[5], id_info="seen")


def test_criterion_09_valid_var_set(acceptance):
    invalid = ops = 0
    for seed in range(N):
        rng = random.Random(seed)
        vs = empty_var_set
        for _ in range(rng.randint(0, 100)):
            arg = rng.sample(_POOL, rng.randint(0, 3))
            other = mk_var_set(arg)
            match rng.randrange(9):
                case 0: vs = extend_var_set(vs, rng.choice(_POOL))
                case 1: vs = extend_var_set_list(vs, arg)
                case 2: vs = del_var_set(vs, rng.choice(_POOL))
                case 3: vs = del_var_set_list(vs, arg)
                case 4: vs = union_var_set(vs, other)
                case 5: vs = union_var_set(other, vs)
                case 6: vs = minus_var_set(vs, other)
                case 7: vs = intersect_var_set(vs, other)
                case 8: vs = filter_var_set(lambda v: v.real_unique.number % 2 == 1, vs)
            ops += 1
            invalid += not valid_var_set_check(vs)
    acceptance(9, "var sets stay valid under every operation", invalid == 0,
               f"{N} sequences, {ops} operations, {invalid} invalid sets")


_x = mk_local("x", 1)
_b = mk_local("b", 2)
_y = mk_local("y", 3)
_one = Lit(LitInt(1))
_T0 = TypeAtom("T0")
SIZE_TABLE = [
    ("Lit", Lit(LitInt(42)), 1),
    ("MkVar", MkVar(_x), 1),
    ("MkType", MkType(_T0), 1),
    ("MkCoercion", MkCoercion(CoercionAtom("Co")), 1),
    ("App", App(MkVar(_x), _one), 2),
    ("Lam", Lam(_x, MkVar(_x)), 2),
    ("Cast", Cast(MkVar(_x), CoercionAtom("Co")), 2),
    ("Let NonRec", Let(NonRec(_x, _one), MkVar(_x)), 3),
    ("Let Rec", Let(Rec(((_x, _one), (_y, MkVar(_x)))), MkVar(_y)), 5),
    ("Case Default", Case(MkVar(_x), _b, _T0, (Alt(DEFAULT, (), _one),)), 5),
    ("Case two alts with patterns",
     Case(MkVar(_x), _b, _T0, (Alt(DEFAULT, (_y, _x), _one), Alt(DEFAULT, (), MkVar(_b)))), 7),
    ("Case no alts", Case(MkVar(_x), _b, _T0, ()), 3),
    ("nested", Lam(_x, App(App(MkVar(_x), _one), Let(NonRec(_y, _one), MkVar(_y)))), 6),
]


def test_criterion_10_expr_size(acceptance):
    wrong = [f"{name}={expr_size(e)} (want {want})" for name, e, want in SIZE_TABLE
             if expr_size(e) != want]
    acceptance(10, "exprSize clauses", not wrong,
               f"{len(SIZE_TABLE)} clause cases exact" if not wrong else "; ".join(wrong))


def _cli(*args):
    proc = subprocess.run([sys.executable, "-m", "minicore", *args], capture_output=True, text=True)
    return proc.returncode, proc.stdout, proc.stderr


def test_criterion_11_frontend(acceptance):
    round_trip_failures = 0
    for seed in range(N):
        p = gen_program(seed + 3 * N, _size(seed), SHADOWS[seed % 3], 0.5)
        text = print_program(p)
        q = parse_program(text)
        round_trip_failures += q != p or print_program(q) != text
    fx = {name: str(FIXTURES / name) for name in
          ["jgo.core", "shadow.core", "unbound.core", "capture.core", "capture.spec",
           "unscoped.spec", "malformed.core", "broken.bad"]}
    fmt_once = _cli("fmt", fx["jgo.core"])[1]
    fmt_tmp = FIXTURES.parent / ".fmt_once.core"
    fmt_tmp.write_text(fmt_once)
    try:
        idempotent = _cli("fmt", str(fmt_tmp))[1] == fmt_once
    finally:
        fmt_tmp.unlink()
    expected = [
        (("lint", "--join-points", fx["jgo.core"]), 0),
        (("lint", fx["unbound.core"]), 1),
        (("lint", fx["broken.bad"]), 2),
        (("lint",), 3),
        (("subst", fx["capture.core"], "--spec", fx["capture.spec"]), 0),
        (("subst", fx["capture.core"], "--spec", fx["unscoped.spec"]), 1),
        (("subst", fx["broken.bad"], "--spec", fx["capture.spec"]), 2),
        (("exitify", fx["shadow.core"]), 0),
        (("exitify", fx["malformed.core"]), 1),
        (("exitify", fx["broken.bad"]), 2),
        (("exitify", "--bogus", fx["jgo.core"]), 3),
    ]
    wrong_codes = [f"{' '.join(a[:1] + a[1:2])}->{code}" for a, want in expected
                   if (code := _cli(*a)[0]) != want]
    ok = round_trip_failures == 0 and idempotent and not wrong_codes
    acceptance(11, "parse/print round trip, fmt idempotence, exit codes", ok,
               f"{N} round trips, {round_trip_failures} failures; fmt idempotent={idempotent}; "
               f"{len(expected)} exit-code checks, wrong: {wrong_codes or 'none'}")

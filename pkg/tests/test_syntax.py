from dataclasses import replace

import pytest
from hypothesis import given, settings, strategies as st

from minicore.core_ir import (
    IdScope, Lam, MkType, MkVar, NonRec, ScopeClass, TypeAtom, Unique, mk_global,
    mk_local,
)
from minicore.syntax import (
    ParseError, SubstSpec, parse_program, parse_subst_spec, parse_var,
    print_program, print_subst_spec, print_var,
)
from minicore.testgen import gen_program

from conftest import FIXTURES


def test_parse_simple_program():
    x = mk_local("x", 2)
    assert parse_program("let f_1g = \\x_2 -> x_2 ;") == [NonRec(mk_global("f", 1), Lam(x, MkVar(x)))]


def test_parse_var_annotations():
    v = parse_var("x_2:T5")
    assert v.real_unique == Unique.local(2) and v.var_type == TypeAtom("T5")
    j = parse_var("go_loop_12!j3:TInt%strict")
    assert j.var_name.occ_text == "go_loop" and j.id_details.join_arity == 3
    assert j.id_info == "strict"


def test_bad_global_marker():
    v = parse_var("h_2g?")
    assert v.real_unique.scope_class is ScopeClass.GLOBAL
    assert v.id_scope is IdScope.LOCAL_ID
    assert print_var(v) == "h_2g?"


def test_type_atom_rhs():
    assert parse_program("let f_1g = @T0 ;") == [NonRec(mk_global("f", 1), MkType(TypeAtom("T0")))]


def test_printing_defaults_are_elided():
    assert print_var(mk_local("x", 2)) == "x_2"
    assert print_program([]) == ""


def test_unprintable_var_rejected():
    with pytest.raises(ValueError):
        print_var(replace(mk_local("x", 2), var_name=mk_local("x", 3).var_name))


@pytest.mark.parametrize("text, line, col", [
    ("let f_1g = ;", 1, 12),
    ("let f_1g = \\x_2 -> x_2\n", 2, 1),
    ("let f_1g = case x_2 as c_3 of { DEFAULT -> 1 ", 1, 46),
    ("let f_1g =\n  (x_2 ;", 2, 8),
])
def test_parse_error_positions(text, line, col):
    with pytest.raises(ParseError) as info:
        parse_program(text)
    assert (info.value.line, info.value.col) == (line, col)
    assert info.value.expected


def test_comments_and_whitespace_ignored():
    a = parse_program("-- header\nlet f_1g =   1 ; -- trailing\n")
    assert a == parse_program("let f_1g = 1;")


def test_subst_spec_round_trip():
    text = "inscope { x_1, y_2:TInt } map { x_1 => y_2:TInt; }"
    spec = parse_subst_spec(text)
    assert isinstance(spec, SubstSpec) and len(spec.inscope) == 2
    assert parse_subst_spec(print_subst_spec(spec)) == spec


def test_subst_spec_duplicate_mapping():
    with pytest.raises(ParseError):
        parse_subst_spec("inscope { } map { x_1 => 1; x_1 => 2; }")


@pytest.mark.parametrize("name", sorted(p.name for p in FIXTURES.glob("*.core")))
def test_fixture_round_trip(name):
    p = parse_program((FIXTURES / name).read_text())
    text = print_program(p)
    assert parse_program(text) == p
    assert print_program(parse_program(text)) == text


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 1_000_000), st.integers(0, 50), st.sampled_from([0.0, 0.3, 1.0]))
def test_generated_round_trip(seed, size, shadow):
    p = gen_program(seed, size, shadow)
    text = print_program(p)
    assert parse_program(text) == p
    assert print_program(parse_program(text)) == text

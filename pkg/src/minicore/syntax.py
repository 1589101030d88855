"""Concrete syntax for Core programs and substitution specs.

Variables are written with their unique spelled out, so shadowing by a
binder with the same unique is expressible::

    x_2            local x, unique L2
    f_1g           global f, unique G1
    j_7!j2         local join point of arity 2
    x_5:TInt%hot   type atom TInt, info token "hot"
    b_3g?          global unique on a LocalId (deliberately bad)
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import NoReturn

from .core_ir import (
    DEFAULT, DEFAULT_INFO, DEFAULT_TYPE, Alt, AltCon, App, Bind, Case, Cast,
    CoercionAtom, CoreProgram, DataAlt, DefaultAlt, Expr, IdScope, JoinId, Lam,
    Let, Lit, LitAlt, LitInt, LitString, MkCoercion, MkType, MkVar, Name,
    NonRec, Rec, ScopeClass, TypeAtom, Unique, VANILLA, Var, collect_args,
    collect_binders,
)

KEYWORDS = {"let", "letrec", "and", "in", "case", "as", "return", "of",
            "DEFAULT", "inscope", "map"}

_OCC = r"[a-z][A-Za-z0-9']*(?:_[A-Za-z][A-Za-z0-9']*)*"
_VAR_RE = re.compile(
    rf"(?P<occ>{_OCC})_(?P<num>\d+)(?P<g>g\??)?(?:!j(?P<ar>\d+))?"
    r"(?::(?P<ty>T[A-Za-z0-9_']+))?(?:%(?P<info>[A-Za-z0-9_']+))?(?![A-Za-z0-9_'?!:%])"
)
_OCC_RE = re.compile(rf"{_OCC}\Z")
_TOKEN_RE = re.compile(r"""
    (?P<ws>\s+|--[^\n]*)
  | (?P<string>"(?:[^"\\\n]|\\.)*")
  | (?P<int>-?\d+)
  | (?P<sym>->|=>|\|>|@~|@|\\|\(|\)|\{|\}|;|=|,)
  | (?P<word>[A-Za-z][A-Za-z0-9_']*)
""", re.VERBOSE)


class ParseError(ValueError):
    def __init__(self, line: int, col: int, expected: list[str], found: str):
        self.line, self.col = line, col
        self.expected = sorted(set(expected))
        self.found = found
        super().__init__(f"{line}:{col}: expected {' or '.join(self.expected)}, found {found}")


@dataclass(frozen=True)
class Token:
    kind: str  # var, string, int, sym, kw, word, eof
    text: str
    line: int
    col: int
    value: object = None


def _var_from_match(m: re.Match) -> Var:
    num = int(m["num"])
    g = m["g"]
    if g == "g":
        u, scope = Unique(ScopeClass.GLOBAL, num), IdScope.GLOBAL_ID
    elif g == "g?":
        u, scope = Unique(ScopeClass.GLOBAL, num), IdScope.LOCAL_ID
    else:
        u, scope = Unique(ScopeClass.LOCAL, num), IdScope.LOCAL_ID
    details = VANILLA if m["ar"] is None else JoinId(int(m["ar"]))
    ty = TypeAtom(m["ty"]) if m["ty"] else DEFAULT_TYPE
    return Var(Name(m["occ"], u), u, ty, scope, details, m["info"] or DEFAULT_INFO)


def tokenize(text: str) -> list[Token]:
    toks = []
    pos, line, line_start = 0, 1, 0
    n = len(text)
    while pos < n:
        col = pos - line_start + 1
        m = _VAR_RE.match(text, pos)
        if m:
            toks.append(Token("var", m.group(), line, col, _var_from_match(m)))
            pos = m.end()
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m:
            raise ParseError(line, col, ["a token"], repr(text[pos]))
        kind = m.lastgroup
        s = m.group()
        if kind == "ws":
            nl = s.count("\n")
            if nl:
                line += nl
                line_start = pos + s.rindex("\n") + 1
        elif kind == "string":
            toks.append(Token("string", s, line, col, json.loads(s)))
        elif kind == "int":
            toks.append(Token("int", s, line, col, int(s)))
        elif kind == "word":
            toks.append(Token("kw" if s in KEYWORDS else "word", s, line, col))
        else:
            toks.append(Token("sym", s, line, col))
        pos = m.end()
    toks.append(Token("eof", "end of input", line, pos - line_start + 1))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = tokenize(text)
        self.i = 0

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def error(self, *expected: str) -> NoReturn:
        t = self.tok
        raise ParseError(t.line, t.col, list(expected), repr(t.text) if t.kind != "eof" else t.text)

    def at(self, text: str) -> bool:
        t = self.tok
        return t.kind in ("sym", "kw") and t.text == text

    def eat(self, text: str) -> Token:
        if not self.at(text):
            self.error(repr(text))
        t = self.tok
        self.i += 1
        return t

    def binder(self) -> Var:
        t = self.tok
        if t.kind != "var":
            self.error("a variable")
        self.i += 1
        return t.value

    def atom_name(self, prefix: str, what: str) -> str:
        t = self.tok
        if t.kind != "word" or not t.text.startswith(prefix) or len(t.text) < 2:
            self.error(what)
        self.i += 1
        return t.text

    def tyatom(self) -> TypeAtom:
        return TypeAtom(self.atom_name("T", "a type atom"))

    def coatom(self) -> CoercionAtom:
        return CoercionAtom(self.atom_name("C", "a coercion atom"))

    # -- programs -----------------------------------------------------------
    def program(self) -> list[Bind]:
        binds = []
        while self.tok.kind != "eof":
            if self.at("let"):
                self.i += 1
                binds.append(NonRec(*self.pair()))
            elif self.at("letrec"):
                self.i += 1
                binds.append(Rec(self.rec_pairs()))
            else:
                self.error("'let'", "'letrec'", "end of input")
            self.eat(";")
        return binds

    def pair(self) -> tuple[Var, Expr]:
        v = self.binder()
        self.eat("=")
        return v, self.expr()

    def rec_pairs(self) -> tuple[tuple[Var, Expr], ...]:
        pairs = [self.pair()]
        while self.at("and"):
            self.i += 1
            pairs.append(self.pair())
        return tuple(pairs)

    # -- expressions ----------------------------------------------------------
    def expr(self) -> Expr:
        if self.at("\\"):
            self.i += 1
            params = [self.binder()]
            while self.tok.kind == "var":
                params.append(self.binder())
            self.eat("->")
            body = self.expr()
            for p in reversed(params):
                body = Lam(p, body)
            return body
        if self.at("let") or self.at("letrec"):
            rec = self.tok.text == "letrec"
            self.i += 1
            bind: Bind = Rec(self.rec_pairs()) if rec else NonRec(*self.pair())
            self.eat("in")
            return Let(bind, self.expr())
        if self.at("case"):
            return self.case()
        return self.app()

    def case(self) -> Expr:
        self.eat("case")
        scrut = self.expr()
        self.eat("as")
        cb = self.binder()
        ty = DEFAULT_TYPE
        if self.at("return"):
            self.i += 1
            ty = self.tyatom()
        self.eat("of")
        self.eat("{")
        alts = []
        if not self.at("}"):
            alts.append(self.alt())
            while self.at(";"):
                self.i += 1
                alts.append(self.alt())
        self.eat("}")
        return Case(scrut, cb, ty, tuple(alts))

    def alt(self) -> Alt:
        t = self.tok
        con: AltCon
        if self.at("DEFAULT"):
            con = DEFAULT
        elif t.kind == "word" and t.text[0].isupper():
            con = DataAlt(t.text)
        elif t.kind == "int":
            con = LitAlt(LitInt(t.value))
        elif t.kind == "string":
            con = LitAlt(LitString(t.value))
        else:
            self.error("'DEFAULT'", "a constructor", "an integer literal")
        self.i += 1
        pats = []
        while self.tok.kind == "var":
            pats.append(self.binder())
        self.eat("->")
        return Alt(con, tuple(pats), self.expr())

    def starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ("var", "int", "string") or (
            t.kind == "sym" and t.text in ("(", "@", "@~"))

    def app(self) -> Expr:
        if not self.starts_atom():
            self.error("an expression")
        e = self.atom()
        while self.starts_atom():
            e = App(e, self.atom())
        return e

    def atom(self) -> Expr:
        t = self.tok
        if t.kind == "var":
            self.i += 1
            return MkVar(t.value)
        if t.kind == "int":
            self.i += 1
            return Lit(LitInt(t.value))
        if t.kind == "string":
            self.i += 1
            return Lit(LitString(t.value))
        if self.at("@"):
            self.i += 1
            return MkType(self.tyatom())
        if self.at("@~"):
            self.i += 1
            return MkCoercion(self.coatom())
        self.eat("(")
        e = self.expr()
        if self.at("|>"):
            self.i += 1
            e = Cast(e, self.coatom())
        self.eat(")")
        return e

    def finish(self) -> None:
        if self.tok.kind != "eof":
            self.error("end of input")

    # -- substitution spec ------------------------------------------------------
    def subst_spec(self) -> SubstSpec:
        self.eat("inscope")
        self.eat("{")
        inscope = []
        while self.tok.kind == "var":
            inscope.append(self.binder())
            if self.at(","):
                self.i += 1
        self.eat("}")
        self.eat("map")
        self.eat("{")
        mappings = []
        seen = set()
        while self.tok.kind == "var":
            t = self.tok
            v = self.binder()
            if v.real_unique in seen:
                raise ParseError(t.line, t.col, ["a variable not already mapped"], repr(t.text))
            seen.add(v.real_unique)
            self.eat("=>")
            mappings.append((v, self.expr()))
            self.eat(";")
        self.eat("}")
        return SubstSpec(tuple(inscope), tuple(mappings))


@dataclass(frozen=True)
class SubstSpec:
    inscope: tuple[Var, ...]
    mappings: tuple[tuple[Var, Expr], ...]


def parse_program(text: str) -> list[Bind]:
    p = _Parser(text)
    out = p.program()
    p.finish()
    return out


def parse_expr(text: str) -> Expr:
    p = _Parser(text)
    e = p.expr()
    p.finish()
    return e


def parse_var(text: str) -> Var:
    m = _VAR_RE.fullmatch(text.strip())
    if not m:
        raise ParseError(1, 1, ["a variable"], repr(text))
    return _var_from_match(m)


def parse_subst_spec(text: str) -> SubstSpec:
    p = _Parser(text)
    spec = p.subst_spec()
    p.finish()
    return spec


# --- printing -----------------------------------------------------------------------

def print_var(v: Var) -> str:
    u = v.real_unique
    if v.var_name.name_unique != u:
        raise ValueError(f"cannot print {v!r}: name unique and real unique differ")
    if not _OCC_RE.match(v.var_name.occ_text):
        raise ValueError(f"cannot print occurrence name {v.var_name.occ_text!r}")
    out = [v.var_name.occ_text, "_", str(u.number)]
    if u.scope_class is ScopeClass.GLOBAL:
        out.append("g" if v.id_scope is IdScope.GLOBAL_ID else "g?")
    elif v.id_scope is IdScope.GLOBAL_ID:
        raise ValueError(f"cannot print {v!r}: local unique on a GlobalId")
    if isinstance(v.id_details, JoinId):
        out.append(f"!j{v.id_details.join_arity}")
    if v.var_type != DEFAULT_TYPE:
        out.append(":" + v.var_type.atom_name)
    if v.id_info != DEFAULT_INFO:
        out.append("%" + v.id_info)
    return "".join(out)


def _print_lit(lit) -> str:
    if isinstance(lit, LitInt):
        return str(lit.value)
    return json.dumps(lit.value, ensure_ascii=False)


def _print_con(con: AltCon) -> str:
    if isinstance(con, DefaultAlt):
        return "DEFAULT"
    if isinstance(con, DataAlt):
        return con.con_name
    return _print_lit(con.lit)


_TOP, _FUN, _ARG = 0, 1, 2


def print_expr(e: Expr, prec: int = _TOP) -> str:
    match e:
        case MkVar(v):
            return print_var(v)
        case Lit(lit):
            return _print_lit(lit)
        case MkType(ty):
            return "@" + ty.atom_name
        case MkCoercion(co):
            return "@~" + co.atom_name
        case Cast(inner, co):
            return f"({print_expr(inner)} |> {co.atom_name})"
        case App():
            head, args = collect_args(e)
            s = " ".join([print_expr(head, _ARG)] + [print_expr(a, _ARG) for a in args])
            return f"({s})" if prec >= _ARG else s
    match e:
        case Lam():
            params, body = collect_binders(e)
            s = "\\" + " ".join(print_var(p) for p in params) + " -> " + print_expr(body)
        case Let(b, body):
            s = f"{_print_bind(b)} in {print_expr(body)}"
        case Case(scrut, cb, ty, alts):
            ret = "" if ty == DEFAULT_TYPE else f" return {ty.atom_name}"
            body = "; ".join(
                " ".join([_print_con(a.con), *(print_var(p) for p in a.pats), "->", print_expr(a.rhs)])
                for a in alts)
            s = f"case {print_expr(scrut)} as {print_var(cb)}{ret} of {{{body}}}"
        case _:
            raise TypeError(f"not an expression: {e!r}")
    return f"({s})" if prec >= _FUN else s


def _print_pair(v: Var, rhs: Expr) -> str:
    return f"{print_var(v)} = {print_expr(rhs)}"


def _print_bind(b: Bind) -> str:
    if isinstance(b, NonRec):
        return "let " + _print_pair(b.binder, b.rhs)
    if not b.pairs:
        raise ValueError("cannot print an empty recursive group")
    return "letrec " + " and ".join(_print_pair(v, rhs) for v, rhs in b.pairs)


def print_program(p: CoreProgram) -> str:
    return "".join(_print_bind(b) + ";\n" for b in p)


def print_subst_spec(spec: SubstSpec) -> str:
    lines = ["inscope { " + ", ".join(print_var(v) for v in spec.inscope) + " }", "map {"]
    lines += [f"  {print_var(v)} => {print_expr(e)};" for v, e in spec.mappings]
    lines.append("}")
    return "\n".join(lines) + "\n"

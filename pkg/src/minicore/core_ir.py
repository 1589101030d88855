"""Core AST: uniques, variables, expressions, binds, and structural helpers."""

from __future__ import annotations

import enum
from dataclasses import dataclass, replace
from typing import Iterable, Sequence, Union


class MalformedJoinRhs(ValueError):
    """A join binder's right-hand side lacks the lambdas its arity demands."""


class ScopeClass(enum.IntEnum):
    LOCAL = 0
    GLOBAL = 1


@dataclass(frozen=True, order=True)
class Unique:
    scope_class: ScopeClass
    number: int

    def __post_init__(self):
        if self.number < 0:
            raise ValueError(f"unique number must be non-negative, got {self.number}")

    @classmethod
    def local(cls, number: int) -> Unique:
        return cls(ScopeClass.LOCAL, number)

    @classmethod
    def global_(cls, number: int) -> Unique:
        return cls(ScopeClass.GLOBAL, number)

    def __repr__(self):
        tag = "L" if self.scope_class is ScopeClass.LOCAL else "G"
        return f"{tag}{self.number}"


@dataclass(frozen=True)
class Name:
    occ_text: str
    name_unique: Unique


class IdScope(enum.Enum):
    LOCAL_ID = "LocalId"
    GLOBAL_ID = "GlobalId"


@dataclass(frozen=True)
class VanillaId:
    pass


@dataclass(frozen=True)
class JoinId:
    join_arity: int

    def __post_init__(self):
        if self.join_arity < 0:
            raise ValueError("join arity must be non-negative")


IdDetails = Union[VanillaId, JoinId]
VANILLA = VanillaId()


@dataclass(frozen=True)
class TypeAtom:
    atom_name: str


@dataclass(frozen=True)
class CoercionAtom:
    atom_name: str


DEFAULT_TYPE = TypeAtom("T0")
DEFAULT_INFO = ""


@dataclass(frozen=True)
class Var:
    var_name: Name
    real_unique: Unique
    var_type: TypeAtom = DEFAULT_TYPE
    id_scope: IdScope = IdScope.LOCAL_ID
    id_details: IdDetails = VANILLA
    id_info: str = DEFAULT_INFO

    def __repr__(self):
        bits = [f"{self.var_name.occ_text}_{self.real_unique!r}"]
        if isinstance(self.id_details, JoinId):
            bits.append(f"!j{self.id_details.join_arity}")
        if self.var_type != DEFAULT_TYPE:
            bits.append(f":{self.var_type.atom_name}")
        if self.id_info:
            bits.append(f"%{self.id_info}")
        return "".join(bits)


def mk_local(occ: str, number: int, ty: str = "T0", join_arity: int | None = None,
             info: str = "") -> Var:
    """Build a GoodVar local identifier."""
    u = Unique.local(number)
    details = VANILLA if join_arity is None else JoinId(join_arity)
    return Var(Name(occ, u), u, TypeAtom(ty), IdScope.LOCAL_ID, details, info)


def mk_global(occ: str, number: int, ty: str = "T0", info: str = "") -> Var:
    u = Unique.global_(number)
    return Var(Name(occ, u), u, TypeAtom(ty), IdScope.GLOBAL_ID, VANILLA, info)


def set_var_unique(v: Var, u: Unique) -> Var:
    """Replace both copies of the unique, keeping everything else."""
    return replace(v, var_name=Name(v.var_name.occ_text, u), real_unique=u)


def zap_info(v: Var) -> Var:
    return v if v.id_info == DEFAULT_INFO else replace(v, id_info=DEFAULT_INFO)


# --- literals and alternatives ------------------------------------------------

@dataclass(frozen=True)
class LitInt:
    value: int


@dataclass(frozen=True)
class LitString:
    value: str


Literal = Union[LitInt, LitString]


@dataclass(frozen=True)
class DataAlt:
    con_name: str


@dataclass(frozen=True)
class LitAlt:
    lit: Literal


@dataclass(frozen=True)
class DefaultAlt:
    pass


AltCon = Union[DataAlt, LitAlt, DefaultAlt]
DEFAULT = DefaultAlt()


# --- expressions ----------------------------------------------------------------

@dataclass(frozen=True)
class MkVar:
    var: Var


@dataclass(frozen=True)
class Lit:
    lit: Literal


@dataclass(frozen=True)
class App:
    fun: Expr
    arg: Expr


@dataclass(frozen=True)
class Lam:
    binder: Var
    body: Expr


@dataclass(frozen=True)
class Let:
    bind: Bind
    body: Expr


@dataclass(frozen=True)
class Alt:
    con: AltCon
    pats: tuple[Var, ...]
    rhs: Expr


@dataclass(frozen=True)
class Case:
    scrut: Expr
    case_bndr: Var
    result_ty: TypeAtom
    alts: tuple[Alt, ...]


@dataclass(frozen=True)
class Cast:
    expr: Expr
    co: CoercionAtom


@dataclass(frozen=True)
class MkType:
    ty: TypeAtom


@dataclass(frozen=True)
class MkCoercion:
    co: CoercionAtom


Expr = Union[MkVar, Lit, App, Lam, Let, Case, Cast, MkType, MkCoercion]


@dataclass(frozen=True)
class NonRec:
    binder: Var
    rhs: Expr


@dataclass(frozen=True)
class Rec:
    pairs: tuple[tuple[Var, Expr], ...]


Bind = Union[NonRec, Rec]
CoreProgram = Sequence[Bind]


# --- variable queries --------------------------------------------------------------

def var_unique(v: Var) -> Unique:
    return v.real_unique


def is_local_var(v: Var) -> bool:
    return v.id_scope is IdScope.LOCAL_ID


def is_local_unique(u: Unique) -> bool:
    return u.scope_class is ScopeClass.LOCAL


def is_join_id(v: Var) -> bool:
    return isinstance(v.id_details, JoinId)


def is_join_id_maybe(v: Var) -> int | None:
    details = v.id_details
    return details.join_arity if isinstance(details, JoinId) else None


def almost_equal(v1: Var, v2: Var) -> bool:
    """Equal in every field except the IdInfo token."""
    return (v1.var_name == v2.var_name
            and v1.real_unique == v2.real_unique
            and v1.var_type == v2.var_type
            and v1.id_scope is v2.id_scope
            and v1.id_details == v2.id_details)


# --- binds ----------------------------------------------------------------------------

def binders_of(b: Bind) -> list[Var]:
    if isinstance(b, NonRec):
        return [b.binder]
    return [v for v, _ in b.pairs]


def binders_of_binds(p: Iterable[Bind]) -> list[Var]:
    return [v for b in p for v in binders_of(b)]


def flatten_binds(p: Iterable[Bind]) -> list[tuple[Var, Expr]]:
    out: list[tuple[Var, Expr]] = []
    for b in p:
        if isinstance(b, NonRec):
            out.append((b.binder, b.rhs))
        else:
            out.extend(b.pairs)
    return out


# --- spines ---------------------------------------------------------------------------

def collect_args(e: Expr) -> tuple[Expr, list[Expr]]:
    args = []
    while isinstance(e, App):
        args.append(e.arg)
        e = e.fun
    args.reverse()
    return e, args


def collect_n_binders(n: int, e: Expr) -> tuple[list[Var], Expr]:
    params = []
    for _ in range(n):
        if not isinstance(e, Lam):
            raise MalformedJoinRhs(f"expected {n} leading lambdas, found {len(params)}")
        params.append(e.binder)
        e = e.body
    return params, e


def collect_binders(e: Expr) -> tuple[list[Var], Expr]:
    params = []
    while isinstance(e, Lam):
        params.append(e.binder)
        e = e.body
    return params, e


def mk_lams(params: Sequence[Var], body: Expr) -> Expr:
    for v in reversed(params):
        body = Lam(v, body)
    return body


def mk_apps(f: Expr, args: Iterable[Expr]) -> Expr:
    for a in args:
        f = App(f, a)
    return f


def mk_var_apps(f: Expr, vs: Iterable[Var]) -> Expr:
    return mk_apps(f, (MkVar(v) for v in vs))


def mk_lets(binds: Sequence[Bind], body: Expr) -> Expr:
    for b in reversed(binds):
        body = Let(b, body)
    return body


# --- size ---------------------------------------------------------------------------------

def bndr_size(_binders) -> int:
    # constant for a single binder and for an alternative's whole pattern list
    return 1


def expr_size(e: Expr) -> int:
    """Node-count measure; always at least 1."""

    def alt_size(alt: Alt) -> int:
        return bndr_size(alt.pats) + expr_size(alt.rhs)

    match e:
        case MkVar() | Lit() | MkType() | MkCoercion():
            return 1
        case App(f, a):
            return expr_size(f) + expr_size(a)
        case Lam(b, body):
            return bndr_size(b) + expr_size(body)
        case Let(b, body):
            return bind_size(b) + expr_size(body)
        case Case(scrut, b, _, alts):
            return expr_size(scrut) + bndr_size(b) + 1 + sum(alt_size(a) for a in alts)
        case Cast(inner, _):
            return 1 + expr_size(inner)
    raise TypeError(f"not an expression: {e!r}")


def bind_size(b: Bind) -> int:
    def pair_size(pair: tuple[Var, Expr]) -> int:
        v, rhs = pair
        return bndr_size(v) + expr_size(rhs)

    if isinstance(b, NonRec):
        return bndr_size(b.binder) + expr_size(b.rhs)
    return sum(pair_size(p) for p in b.pairs)


def program_size(p: Iterable[Bind]) -> int:
    return sum(bind_size(b) for b in p)

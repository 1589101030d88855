"""Unique-keyed variable sets, environments, and in-scope sets.

All three are persistent: every "modifying" operation returns a new value.
Iteration is in ascending unique order so printing is deterministic.
"""

from __future__ import annotations

from typing import Callable, Generic, Iterable, Iterator, Mapping, TypeVar

from .core_ir import Unique, Var, var_unique

V = TypeVar("V")


class VarSet:
    """Finite map from uniques to the variables stored under them.

    Entries are only ever inserted at ``var_unique(v)``, so every set built
    through this module satisfies the valid-varset invariant.
    """

    __slots__ = ("_m",)

    def __init__(self, vars: Iterable[Var] = ()):
        self._m: dict[Unique, Var] = {var_unique(v): v for v in vars}

    @classmethod
    def _from_raw(cls, m: Mapping[Unique, Var]) -> VarSet:
        # bypasses the key discipline; only for exercising the checker
        vs = cls.__new__(cls)
        vs._m = dict(m)
        return vs

    def items(self) -> list[tuple[Unique, Var]]:
        return sorted(self._m.items())

    def uniques(self) -> set[Unique]:
        return set(self._m)

    def __iter__(self) -> Iterator[Var]:
        return (v for _, v in self.items())

    def __len__(self) -> int:
        return len(self._m)

    def __contains__(self, v: Var) -> bool:
        return v.real_unique in self._m

    def __eq__(self, other) -> bool:
        return isinstance(other, VarSet) and self._m == other._m

    def __hash__(self):
        return hash(frozenset(self._m.items()))

    def __repr__(self):
        return "{" + ", ".join(repr(v) for v in self) + "}"


empty_var_set = VarSet()


def unit_var_set(v: Var) -> VarSet:
    return VarSet([v])


def mk_var_set(vs: Iterable[Var]) -> VarSet:
    return extend_var_set_list(empty_var_set, vs)


def extend_var_set(vs: VarSet, v: Var) -> VarSet:
    m = dict(vs._m)
    m[var_unique(v)] = v
    return VarSet._from_raw(m)


def extend_var_set_list(vs: VarSet, seq: Iterable[Var]) -> VarSet:
    m = dict(vs._m)
    for v in seq:
        m[var_unique(v)] = v
    return VarSet._from_raw(m)


def del_var_set(vs: VarSet, v: Var) -> VarSet:
    u = var_unique(v)
    if u not in vs._m:
        return vs
    m = dict(vs._m)
    del m[u]
    return VarSet._from_raw(m)


def del_var_set_list(vs: VarSet, seq: Iterable[Var]) -> VarSet:
    m = dict(vs._m)
    for v in seq:
        m.pop(var_unique(v), None)
    return VarSet._from_raw(m)


def lookup_var_set(vs: VarSet, v: Var) -> Var | None:
    return vs._m.get(var_unique(v))


def lookup_var_set_by_unique(vs: VarSet, u: Unique) -> Var | None:
    return vs._m.get(u)


def elem_var_set(v: Var, vs: VarSet) -> bool:
    return var_unique(v) in vs._m


def is_empty_var_set(vs: VarSet) -> bool:
    return not vs._m


def union_var_set(a: VarSet, b: VarSet) -> VarSet:
    m = dict(a._m)
    m.update(b._m)
    return VarSet._from_raw(m)


def minus_var_set(a: VarSet, b: VarSet) -> VarSet:
    return VarSet._from_raw({u: v for u, v in a._m.items() if u not in b._m})


def intersect_var_set(a: VarSet, b: VarSet) -> VarSet:
    return VarSet._from_raw({u: v for u, v in a._m.items() if u in b._m})


def disjoint_var_set(a: VarSet, b: VarSet) -> bool:
    small, big = (a, b) if len(a) <= len(b) else (b, a)
    return not any(u in big._m for u in small._m)


def sub_var_set(a: VarSet, b: VarSet) -> bool:
    """Domain inclusion on uniques; the stored variables are not compared."""
    return all(u in b._m for u in a._m)


def any_var_set(pred: Callable[[Var], bool], vs: VarSet) -> bool:
    return any(pred(v) for v in vs._m.values())


def filter_var_set(pred: Callable[[Var], bool], vs: VarSet) -> VarSet:
    return VarSet._from_raw({u: v for u, v in vs._m.items() if pred(v)})


def valid_var_set(vs: VarSet) -> bool:
    return all(var_unique(v) == u for u, v in vs._m.items())


class VarEnv(Generic[V]):
    """Finite map from variable uniques to arbitrary payloads."""

    __slots__ = ("_m",)

    def __init__(self, m: Mapping[Unique, V] | None = None):
        self._m: dict[Unique, V] = dict(m) if m else {}

    def items(self) -> list[tuple[Unique, V]]:
        return sorted(self._m.items(), key=lambda kv: kv[0])

    def __len__(self) -> int:
        return len(self._m)

    def __eq__(self, other) -> bool:
        return isinstance(other, VarEnv) and self._m == other._m

    def __repr__(self):
        return "{" + ", ".join(f"{u!r} -> {x!r}" for u, x in self.items()) + "}"


empty_var_env: VarEnv = VarEnv()


def lookup_var_env(env: VarEnv[V], v: Var) -> V | None:
    return env._m.get(var_unique(v))


def lookup_var_env_by_unique(env: VarEnv[V], u: Unique) -> V | None:
    return env._m.get(u)


def extend_var_env(env: VarEnv[V], v: Var, x: V) -> VarEnv[V]:
    m = dict(env._m)
    m[var_unique(v)] = x
    return VarEnv(m)


def mk_var_env(pairs: Iterable[tuple[Var, V]]) -> VarEnv[V]:
    return VarEnv({var_unique(v): x for v, x in pairs})


def del_var_env(env: VarEnv[V], v: Var) -> VarEnv[V]:
    u = var_unique(v)
    if u not in env._m:
        return env
    m = dict(env._m)
    del m[u]
    return VarEnv(m)


def is_empty_var_env(env: VarEnv) -> bool:
    return not env._m


def domain_uniques(env: VarEnv) -> set[Unique]:
    return set(env._m)


def minus_dom(vs: VarSet, env: VarEnv) -> VarSet:
    """Restrict ``vs`` to the uniques outside ``env``'s domain."""
    return VarSet._from_raw({u: v for u, v in vs._m.items() if u not in env._m})


class InScopeSet:
    __slots__ = ("vars",)

    def __init__(self, vs: VarSet = empty_var_set):
        self.vars = vs

    def __eq__(self, other) -> bool:
        return isinstance(other, InScopeSet) and self.vars == other.vars

    def __repr__(self):
        return f"InScopeSet({self.vars!r})"


empty_in_scope_set = InScopeSet()


def mk_in_scope_set(vs: VarSet) -> InScopeSet:
    return InScopeSet(vs)


def get_in_scope_vars(iss: InScopeSet) -> VarSet:
    return iss.vars


def extend_in_scope_set(iss: InScopeSet, v: Var) -> InScopeSet:
    return InScopeSet(extend_var_set(iss.vars, v))


def extend_in_scope_set_list(iss: InScopeSet, seq: Iterable[Var]) -> InScopeSet:
    seq = list(seq)
    if not seq:
        return iss
    return InScopeSet(extend_var_set_list(iss.vars, seq))


def lookup_in_scope(iss: InScopeSet, v: Var) -> Var | None:
    return lookup_var_set(iss.vars, v)


def elem_in_scope_set(v: Var, iss: InScopeSet) -> bool:
    return elem_var_set(v, iss.vars)

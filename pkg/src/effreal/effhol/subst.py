"""Shifting and capture-avoiding substitution for all six categories.

Each namespace shifts independently: ``shift_*`` takes one delta and one
cutoff per namespace that can occur in the category.  Substitution removes
the substituted variable from scope (indices above it decrement), which is
exactly what beta-reduction and the quantifier elimination rules need.
"""

from __future__ import annotations

from functools import lru_cache

from .syntax import (
    Abs,
    After,
    App,
    Bind,
    Comp,
    Compr,
    ComprBase,
    EApp,
    EffExpr,
    EffIndex,
    EffProgram,
    EffSpec,
    EffType,
    EForall,
    EVar,
    Fun,
    IForall,
    PVar,
    Ref,
    RefBase,
    Ret,
    SForallExpr,
    SForallProg,
    SForallType,
    SImp,
    SMem,
    SMemBase,
    TAbs,
    TApp,
    TForall,
    TVar,
    TyAbs,
    TyApp,
)


@lru_cache(maxsize=262144)
def shift_type(t: EffType, dt: int, ct: int = 0) -> EffType:
    if dt == 0:
        return t
    match t:
        case TVar(k):
            return TVar(k + dt) if k >= ct else t
        case TApp(fn, arg):
            return TApp(shift_type(fn, dt, ct), shift_type(arg, dt, ct))
        case TAbs(kind, body):
            return TAbs(kind, shift_type(body, dt, ct + 1))
        case Fun(dom, cod):
            return Fun(shift_type(dom, dt, ct), shift_type(cod, dt, ct))
        case TForall(kind, body):
            return TForall(kind, shift_type(body, dt, ct + 1))
        case Comp(inner):
            return Comp(shift_type(inner, dt, ct))
    raise TypeError(f"unexpected type {t!r}")


@lru_cache(maxsize=262144)
def shift_index(s: EffIndex, dt: int, ct: int = 0) -> EffIndex:
    if dt == 0:
        return s
    match s:
        case RefBase(carrier):
            return RefBase(shift_type(carrier, dt, ct))
        case Ref(carrier, arg):
            return Ref(shift_type(carrier, dt, ct), shift_index(arg, dt, ct))
        case IForall(kind, body):
            return IForall(kind, shift_index(body, dt, ct + 1))
    raise TypeError(f"unexpected index {s!r}")


@lru_cache(maxsize=262144)
def shift_prog(p: EffProgram, dt: int = 0, dp: int = 0, ct: int = 0, cp: int = 0) -> EffProgram:
    if dt == 0 and dp == 0:
        return p
    match p:
        case PVar(k):
            return PVar(k + dp) if k >= cp else p
        case TyAbs(kind, body):
            return TyAbs(kind, shift_prog(body, dt, dp, ct + 1, cp))
        case Abs(ty, body):
            return Abs(shift_type(ty, dt, ct), shift_prog(body, dt, dp, ct, cp + 1))
        case TyApp(fn, arg):
            return TyApp(shift_prog(fn, dt, dp, ct, cp), shift_type(arg, dt, ct))
        case App(fn, arg):
            return App(shift_prog(fn, dt, dp, ct, cp), shift_prog(arg, dt, dp, ct, cp))
        case Ret(inner):
            return Ret(shift_prog(inner, dt, dp, ct, cp))
        case Bind(ty, first, rest):
            return Bind(
                shift_type(ty, dt, ct),
                shift_prog(first, dt, dp, ct, cp),
                shift_prog(rest, dt, dp, ct, cp + 1),
            )
    raise TypeError(f"unexpected program {p!r}")


@lru_cache(maxsize=262144)
def shift_expr(
    e: EffExpr, dt: int = 0, dp: int = 0, de: int = 0, ct: int = 0, cp: int = 0, ce: int = 0
) -> EffExpr:
    if dt == 0 and dp == 0 and de == 0:
        return e
    match e:
        case EVar(k):
            return EVar(k + de) if k >= ce else e
        case Compr(ty, idx, body):
            return Compr(
                shift_type(ty, dt, ct),
                shift_index(idx, dt, ct),
                shift_spec(body, dt, dp, de, ct, cp + 1, ce + 1),
            )
        case ComprBase(ty, body):
            return ComprBase(
                shift_type(ty, dt, ct), shift_spec(body, dt, dp, de, ct, cp + 1, ce)
            )
        case EForall(kind, body):
            return EForall(kind, shift_expr(body, dt, dp, de, ct + 1, cp, ce))
        case EApp(fn, arg):
            return EApp(shift_expr(fn, dt, dp, de, ct, cp, ce), shift_type(arg, dt, ct))
    raise TypeError(f"unexpected expression {e!r}")


@lru_cache(maxsize=262144)
def shift_spec(
    f: EffSpec, dt: int = 0, dp: int = 0, de: int = 0, ct: int = 0, cp: int = 0, ce: int = 0
) -> EffSpec:
    if dt == 0 and dp == 0 and de == 0:
        return f
    match f:
        case SMem(p, fn, arg):
            return SMem(
                shift_prog(p, dt, dp, ct, cp),
                shift_expr(fn, dt, dp, de, ct, cp, ce),
                shift_expr(arg, dt, dp, de, ct, cp, ce),
            )
        case SMemBase(p, fn):
            return SMemBase(shift_prog(p, dt, dp, ct, cp), shift_expr(fn, dt, dp, de, ct, cp, ce))
        case SImp(a, b):
            return SImp(
                shift_spec(a, dt, dp, de, ct, cp, ce), shift_spec(b, dt, dp, de, ct, cp, ce)
            )
        case After(p, ty, body):
            return After(
                shift_prog(p, dt, dp, ct, cp),
                shift_type(ty, dt, ct),
                shift_spec(body, dt, dp, de, ct, cp + 1, ce),
            )
        case SForallType(kind, body):
            return SForallType(kind, shift_spec(body, dt, dp, de, ct + 1, cp, ce))
        case SForallProg(ty, body):
            return SForallProg(
                shift_type(ty, dt, ct), shift_spec(body, dt, dp, de, ct, cp + 1, ce)
            )
        case SForallExpr(idx, body):
            return SForallExpr(
                shift_index(idx, dt, ct), shift_spec(body, dt, dp, de, ct, cp, ce + 1)
            )
    raise TypeError(f"unexpected specification {f!r}")


# Type substitution.  The substituted type lives in the ambient kind
# context; only type-binder crossings shift it (types contain no program
# or expression variables).


def subst_type_in_type(t: EffType, j: int, sub: EffType) -> EffType:
    match t:
        case TVar(k):
            if k == j:
                return sub
            return TVar(k - 1) if k > j else t
        case TApp(fn, arg):
            return TApp(subst_type_in_type(fn, j, sub), subst_type_in_type(arg, j, sub))
        case TAbs(kind, body):
            return TAbs(kind, subst_type_in_type(body, j + 1, shift_type(sub, 1)))
        case Fun(dom, cod):
            return Fun(subst_type_in_type(dom, j, sub), subst_type_in_type(cod, j, sub))
        case TForall(kind, body):
            return TForall(kind, subst_type_in_type(body, j + 1, shift_type(sub, 1)))
        case Comp(inner):
            return Comp(subst_type_in_type(inner, j, sub))
    raise TypeError(f"unexpected type {t!r}")


def subst_type_in_index(s: EffIndex, j: int, sub: EffType) -> EffIndex:
    match s:
        case RefBase(carrier):
            return RefBase(subst_type_in_type(carrier, j, sub))
        case Ref(carrier, arg):
            return Ref(subst_type_in_type(carrier, j, sub), subst_type_in_index(arg, j, sub))
        case IForall(kind, body):
            return IForall(kind, subst_type_in_index(body, j + 1, shift_type(sub, 1)))
    raise TypeError(f"unexpected index {s!r}")


def subst_type_in_prog(p: EffProgram, j: int, sub: EffType) -> EffProgram:
    match p:
        case PVar(_):
            return p
        case TyAbs(kind, body):
            return TyAbs(kind, subst_type_in_prog(body, j + 1, shift_type(sub, 1)))
        case Abs(ty, body):
            return Abs(subst_type_in_type(ty, j, sub), subst_type_in_prog(body, j, sub))
        case TyApp(fn, arg):
            return TyApp(subst_type_in_prog(fn, j, sub), subst_type_in_type(arg, j, sub))
        case App(fn, arg):
            return App(subst_type_in_prog(fn, j, sub), subst_type_in_prog(arg, j, sub))
        case Ret(inner):
            return Ret(subst_type_in_prog(inner, j, sub))
        case Bind(ty, first, rest):
            return Bind(
                subst_type_in_type(ty, j, sub),
                subst_type_in_prog(first, j, sub),
                subst_type_in_prog(rest, j, sub),
            )
    raise TypeError(f"unexpected program {p!r}")


def subst_type_in_expr(e: EffExpr, j: int, sub: EffType) -> EffExpr:
    match e:
        case EVar(_):
            return e
        case Compr(ty, idx, body):
            return Compr(
                subst_type_in_type(ty, j, sub),
                subst_type_in_index(idx, j, sub),
                subst_type_in_spec(body, j, sub),
            )
        case ComprBase(ty, body):
            return ComprBase(subst_type_in_type(ty, j, sub), subst_type_in_spec(body, j, sub))
        case EForall(kind, body):
            return EForall(kind, subst_type_in_expr(body, j + 1, shift_type(sub, 1)))
        case EApp(fn, arg):
            return EApp(subst_type_in_expr(fn, j, sub), subst_type_in_type(arg, j, sub))
    raise TypeError(f"unexpected expression {e!r}")


def subst_type_in_spec(f: EffSpec, j: int, sub: EffType) -> EffSpec:
    match f:
        case SMem(p, fn, arg):
            return SMem(
                subst_type_in_prog(p, j, sub),
                subst_type_in_expr(fn, j, sub),
                subst_type_in_expr(arg, j, sub),
            )
        case SMemBase(p, fn):
            return SMemBase(subst_type_in_prog(p, j, sub), subst_type_in_expr(fn, j, sub))
        case SImp(a, b):
            return SImp(subst_type_in_spec(a, j, sub), subst_type_in_spec(b, j, sub))
        case After(p, ty, body):
            return After(
                subst_type_in_prog(p, j, sub),
                subst_type_in_type(ty, j, sub),
                subst_type_in_spec(body, j, sub),
            )
        case SForallType(kind, body):
            return SForallType(kind, subst_type_in_spec(body, j + 1, shift_type(sub, 1)))
        case SForallProg(ty, body):
            return SForallProg(subst_type_in_type(ty, j, sub), subst_type_in_spec(body, j, sub))
        case SForallExpr(idx, body):
            return SForallExpr(subst_type_in_index(idx, j, sub), subst_type_in_spec(body, j, sub))
    raise TypeError(f"unexpected specification {f!r}")


# Program substitution.  The substituted program can contain type and
# program variables, so both kinds of binder crossing shift it.


def subst_prog_in_prog(p: EffProgram, j: int, sub: EffProgram) -> EffProgram:
    match p:
        case PVar(k):
            if k == j:
                return sub
            return PVar(k - 1) if k > j else p
        case TyAbs(kind, body):
            return TyAbs(kind, subst_prog_in_prog(body, j, shift_prog(sub, dt=1)))
        case Abs(ty, body):
            return Abs(ty, subst_prog_in_prog(body, j + 1, shift_prog(sub, dp=1)))
        case TyApp(fn, arg):
            return TyApp(subst_prog_in_prog(fn, j, sub), arg)
        case App(fn, arg):
            return App(subst_prog_in_prog(fn, j, sub), subst_prog_in_prog(arg, j, sub))
        case Ret(inner):
            return Ret(subst_prog_in_prog(inner, j, sub))
        case Bind(ty, first, rest):
            return Bind(
                ty,
                subst_prog_in_prog(first, j, sub),
                subst_prog_in_prog(rest, j + 1, shift_prog(sub, dp=1)),
            )
    raise TypeError(f"unexpected program {p!r}")


def subst_prog_in_expr(e: EffExpr, j: int, sub: EffProgram) -> EffExpr:
    match e:
        case EVar(_):
            return e
        case Compr(ty, idx, body):
            return Compr(ty, idx, subst_prog_in_spec(body, j + 1, shift_prog(sub, dp=1)))
        case ComprBase(ty, body):
            return ComprBase(ty, subst_prog_in_spec(body, j + 1, shift_prog(sub, dp=1)))
        case EForall(kind, body):
            return EForall(kind, subst_prog_in_expr(body, j, shift_prog(sub, dt=1)))
        case EApp(fn, arg):
            return EApp(subst_prog_in_expr(fn, j, sub), arg)
    raise TypeError(f"unexpected expression {e!r}")


def subst_prog_in_spec(f: EffSpec, j: int, sub: EffProgram) -> EffSpec:
    match f:
        case SMem(p, fn, arg):
            return SMem(
                subst_prog_in_prog(p, j, sub),
                subst_prog_in_expr(fn, j, sub),
                subst_prog_in_expr(arg, j, sub),
            )
        case SMemBase(p, fn):
            return SMemBase(subst_prog_in_prog(p, j, sub), subst_prog_in_expr(fn, j, sub))
        case SImp(a, b):
            return SImp(subst_prog_in_spec(a, j, sub), subst_prog_in_spec(b, j, sub))
        case After(p, ty, body):
            return After(
                subst_prog_in_prog(p, j, sub),
                ty,
                subst_prog_in_spec(body, j + 1, shift_prog(sub, dp=1)),
            )
        case SForallType(kind, body):
            return SForallType(kind, subst_prog_in_spec(body, j, shift_prog(sub, dt=1)))
        case SForallProg(ty, body):
            return SForallProg(ty, subst_prog_in_spec(body, j + 1, shift_prog(sub, dp=1)))
        case SForallExpr(idx, body):
            return SForallExpr(idx, subst_prog_in_spec(body, j, sub))
    raise TypeError(f"unexpected specification {f!r}")


# Expression substitution.  The substituted expression can contain
# variables of all three namespaces.


def subst_expr_in_expr(e: EffExpr, j: int, sub: EffExpr) -> EffExpr:
    match e:
        case EVar(k):
            if k == j:
                return sub
            return EVar(k - 1) if k > j else e
        case Compr(ty, idx, body):
            return Compr(
                ty, idx, subst_expr_in_spec(body, j + 1, shift_expr(sub, dp=1, de=1))
            )
        case ComprBase(ty, body):
            return ComprBase(ty, subst_expr_in_spec(body, j, shift_expr(sub, dp=1)))
        case EForall(kind, body):
            return EForall(kind, subst_expr_in_expr(body, j, shift_expr(sub, dt=1)))
        case EApp(fn, arg):
            return EApp(subst_expr_in_expr(fn, j, sub), arg)
    raise TypeError(f"unexpected expression {e!r}")


def subst_expr_in_spec(f: EffSpec, j: int, sub: EffExpr) -> EffSpec:
    match f:
        case SMem(p, fn, arg):
            return SMem(p, subst_expr_in_expr(fn, j, sub), subst_expr_in_expr(arg, j, sub))
        case SMemBase(p, fn):
            return SMemBase(p, subst_expr_in_expr(fn, j, sub))
        case SImp(a, b):
            return SImp(subst_expr_in_spec(a, j, sub), subst_expr_in_spec(b, j, sub))
        case After(p, ty, body):
            return After(p, ty, subst_expr_in_spec(body, j, shift_expr(sub, dp=1)))
        case SForallType(kind, body):
            return SForallType(kind, subst_expr_in_spec(body, j, shift_expr(sub, dt=1)))
        case SForallProg(ty, body):
            return SForallProg(ty, subst_expr_in_spec(body, j, shift_expr(sub, dp=1)))
        case SForallExpr(idx, body):
            return SForallExpr(idx, subst_expr_in_spec(body, j + 1, shift_expr(sub, de=1)))
    raise TypeError(f"unexpected specification {f!r}")

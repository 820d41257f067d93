"""Syntax of the effectful higher-order program logic.

Six categories: kinds, types, programs, indices, expressions and
specifications.  There are three independent de Bruijn namespaces —
type variables (kind context), program variables (type context) and
expression variables (index context) — and each binder extends exactly
one of them:

  type var    TAbs, TForall, TyAbs, IForall, EForall, SForallType
  program var Abs, Bind (in rest), Compr (with its expr var), ComprBase,
              After (in body), SForallProg
  expr var    Compr (paired with its program var), SForallExpr

Everything is immutable; structural equality is alpha-equality.
"""

from __future__ import annotations

from .._astnode import astnode


class Kind:
    __slots__ = ()


@astnode
class KBase(Kind):
    def __repr__(self) -> str:
        return "*"


@astnode
class KCon(Kind):
    """Kind of constructors taking one argument of ``inner`` and returning a type."""

    inner: Kind

    def __repr__(self) -> str:
        return f"({self.inner!r} => *)"


KSTAR = KBase()


class EffType:
    __slots__ = ()


@astnode
class TVar(EffType):
    index: int


@astnode
class TApp(EffType):
    fn: EffType
    arg: EffType


@astnode
class TAbs(EffType):
    binder_kind: Kind
    body: EffType


@astnode
class Fun(EffType):
    dom: EffType
    cod: EffType


@astnode
class TForall(EffType):
    binder_kind: Kind
    body: EffType


@astnode
class Comp(EffType):
    """Computation type: the monad applied to ``inner``."""

    inner: EffType


class EffProgram:
    __slots__ = ()


@astnode
class PVar(EffProgram):
    index: int


@astnode
class TyAbs(EffProgram):
    binder_kind: Kind
    body: EffProgram


@astnode
class Abs(EffProgram):
    binder_type: EffType
    body: EffProgram


@astnode
class TyApp(EffProgram):
    fn: EffProgram
    arg: EffType


@astnode
class App(EffProgram):
    fn: EffProgram
    arg: EffProgram


@astnode
class Ret(EffProgram):
    inner: EffProgram


@astnode
class Bind(EffProgram):
    """bind x:binder_type <- first; rest — binds one program variable in rest.

    The annotation keeps type checking syntax-directed.
    """

    binder_type: EffType
    first: EffProgram
    rest: EffProgram


class EffIndex:
    __slots__ = ()


@astnode
class RefBase(EffIndex):
    carrier: EffType


@astnode
class Ref(EffIndex):
    carrier: EffType
    arg: EffIndex


@astnode
class IForall(EffIndex):
    binder_kind: Kind
    body: EffIndex


class EffExpr:
    __slots__ = ()


class EffSpec:
    __slots__ = ()


@astnode
class EVar(EffExpr):
    index: int


@astnode
class Compr(EffExpr):
    """{x:prog_type ; y:arg_index | body} — binds one program variable and
    one expression variable in body."""

    prog_type: EffType
    arg_index: EffIndex
    body: EffSpec


@astnode
class ComprBase(EffExpr):
    """{x:prog_type | body}0 — binds one program variable in body."""

    prog_type: EffType
    body: EffSpec


@astnode
class EForall(EffExpr):
    binder_kind: Kind
    body: EffExpr


@astnode
class EApp(EffExpr):
    fn: EffExpr
    arg: EffType


@astnode
class SMem(EffSpec):
    """prog ∈ fn⟨arg⟩ — fn is the refining expression, arg its expression argument."""

    prog: EffProgram
    fn: EffExpr
    arg: EffExpr


@astnode
class SMemBase(EffSpec):
    prog: EffProgram
    fn: EffExpr


@astnode
class SImp(EffSpec):
    lhs: EffSpec
    rhs: EffSpec


@astnode
class After(EffSpec):
    """after prog (x:binder_type) body — body holds of the result of running prog."""

    prog: EffProgram
    binder_type: EffType
    body: EffSpec


@astnode
class SForallType(EffSpec):
    binder_kind: Kind
    body: EffSpec


@astnode
class SForallProg(EffSpec):
    binder_type: EffType
    body: EffSpec


@astnode
class SForallExpr(EffSpec):
    binder_index: EffIndex
    body: EffSpec


@astnode
class EffContexts:
    """Kind, index and type contexts; innermost entry last.

    Index and type entries are always expressed relative to the full kind
    context (entries get their type variables shifted when a judgment
    descends under a kind binder).
    """

    kinds: tuple[Kind, ...] = ()
    indices: tuple[EffIndex, ...] = ()
    types: tuple[EffType, ...] = ()


def is_value(p: EffProgram) -> bool:
    """Values of the base call-by-value strategy."""
    return isinstance(p, (PVar, TyAbs, Abs))


# The standard falsity encodings in the effect-free fragment.
BOT_TYPE = TForall(KSTAR, TVar(0))
BOT_SPEC = SForallType(
    KSTAR, SForallProg(TVar(0), SForallExpr(RefBase(TVar(0)), SMemBase(PVar(0), EVar(0))))
)

# Truth: a program universal over a vacuous (self-implying) membership.
_TOP_CELL = ComprBase(BOT_TYPE, BOT_SPEC)
TOP_SPEC = SForallProg(
    BOT_TYPE,
    SImp(SMemBase(PVar(0), _TOP_CELL), SMemBase(PVar(0), _TOP_CELL)),
)


def neg(tau: EffType) -> EffType:
    return Fun(tau, BOT_TYPE)

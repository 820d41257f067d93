from .syntax import (
    Abs,
    After,
    App,
    Bind,
    BOT_SPEC,
    BOT_TYPE,
    Comp,
    Compr,
    ComprBase,
    EApp,
    EffContexts,
    EffExpr,
    EffIndex,
    EffProgram,
    EffSpec,
    EffType,
    EForall,
    EVar,
    Fun,
    IForall,
    is_value,
    KBase,
    KCon,
    Kind,
    KSTAR,
    neg,
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
    TOP_SPEC,
    TVar,
    TyAbs,
    TyApp,
)
from .conversion import conv_normalize, convertible
from .reduction import Strategy, multi_step, reduces_to, step
from .theory import (
    EFF_RULES,
    EffDerivation,
    EffSequent,
    add_hypotheses,
    check,
    make_triple,
    sequent_wf,
    weaken_index,
    weaken_kind,
    weaken_type,
)
from .typing import index_of, index_wf, kind_of, spec_wf, type_of
from .forgetful import forget_derivation, forget_expr, forget_index, forget_sequent, forget_spec

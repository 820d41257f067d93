from .syntax import (
    Base,
    Compr,
    ComprBase,
    FALSUM,
    Forall,
    HolProp,
    HolTerm,
    Imp,
    Mem,
    MemBase,
    Pred,
    STAR,
    Sort,
    Var,
    shift_prop,
    shift_term,
    subst_prop,
    subst_term,
)
from .checker import (
    HOL_RULES,
    HolDerivation,
    Sequent,
    check,
    prop_wf,
    sort_of,
    sequent_wf,
)

__all__ = [
    "Base", "Compr", "ComprBase", "FALSUM", "Forall", "HolProp", "HolTerm",
    "Imp", "Mem", "MemBase", "Pred", "STAR", "Sort", "Var",
    "shift_prop", "shift_term", "subst_prop", "subst_term",
    "HOL_RULES", "HolDerivation", "Sequent", "check", "prop_wf", "sort_of",
    "sequent_wf",
]

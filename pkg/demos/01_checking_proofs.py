"""Checking serialized proofs in both calculi.

Derivations are explicit trees: every node carries its claimed conclusion
sequent, elimination nodes carry their instantiation witnesses, and the
checker re-derives each conclusion without search.  This script builds a
few derivations in memory, checks them, and shows how failures come back
with the path of the offending node.
"""

from effreal.hol import (
    FALSUM,
    Forall,
    HolDerivation,
    Imp,
    MemBase,
    STAR,
    Sequent,
    Var,
    check,
)
from effreal.errors import KernelError

# The identity theorem: falsity implies falsity.
identity = HolDerivation(
    "ImpI",
    Sequent((), (), Imp(FALSUM, FALSUM)),
    (HolDerivation("Id", Sequent((), (FALSUM,), FALSUM)),),
)
print("identity theorem:", check(identity).goal)

# Universal introduction: the premise context gains the bound sort and the
# hypotheses shift.  Nothing is implicit: the checker verifies both.
forall_refl = HolDerivation(
    "UniI",
    Sequent((), (), Forall(STAR, Imp(MemBase(Var(0)), MemBase(Var(0))))),
    (
        HolDerivation(
            "ImpI",
            Sequent((STAR,), (), Imp(MemBase(Var(0)), MemBase(Var(0)))),
            (HolDerivation("Id", Sequent((STAR,), (MemBase(Var(0)),), MemBase(Var(0)))),),
        ),
    ),
)
print("universal identity:", check(forall_refl).goal)

# A bogus proof of falsity: the checker rejects it and reports where.
bogus = HolDerivation(
    "ImpE",
    Sequent((), (), FALSUM),
    (
        HolDerivation("Id", Sequent((), (), Imp(FALSUM, FALSUM))),
        HolDerivation("Id", Sequent((), (), FALSUM)),
    ),
)
try:
    check(bogus)
except KernelError as exc:
    print("rejected as expected:", exc)

# The same machinery drives the file-based toolchain:
#   effreal check-hol corpus/hol_basic.hol
#   effreal check-effhol corpus/effhol_basic.eff

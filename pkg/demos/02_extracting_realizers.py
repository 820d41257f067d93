"""From proofs to programs: the realizability translation and extraction.

Every proposition translates to the type of its realizers and to a
specification saying which programs of that type realize it.  A checked
derivation then yields a program — one construct per rule — together with
a provable Hoare-style triple; with ``derive=True`` the proof of that
triple is replayed in the target theory and re-checked.
"""

from effreal.hol import FALSUM, Forall, HolDerivation, Imp, MemBase, STAR, Sequent, Var
from effreal.effhol import check as eff_check, type_of
from effreal.effhol.forgetful import forget_derivation
from effreal.hol import check as hol_check
from effreal.surface import print_program, print_spec, print_type
from effreal.translation import extract_realizer, translate_prop

pA = Imp(FALSUM, FALSUM)
pB = Forall(STAR, MemBase(Var(0)))

out = translate_prop((), Imp(pA, pB))
print("realizer type: ", print_type(out.type))
print("realizer spec:  ", print_spec(out.spec, 0, 1, 0))
print()

# K: pA implies (pB implies pA).  The extracted realizer is the K
# combinator wrapped in returns, exactly the shape the soundness argument
# assigns to the two implication introductions.
k = HolDerivation(
    "ImpI",
    Sequent((), (), Imp(pA, Imp(pB, pA))),
    (
        HolDerivation(
            "ImpI",
            Sequent((), (pA,), Imp(pB, pA)),
            (HolDerivation("Id", Sequent((), (pA, pB), pA)),),
        ),
    ),
)
res = extract_realizer(k, derive=True)
print("extracted realizer:", print_program(res.realizer))
seq = res.goal_triple
print("realizer type:     ", print_type(type_of(seq.ctxs.kinds, seq.ctxs.types, res.realizer)))

# The replayed triple derivation is an ordinary derivation: re-check it.
eff_check(res.derivation)
print("triple derivation re-checked:", res.derivation.rule, "at the root")

# Erasing all the program/type structure from that derivation gives back a
# proof of the original theorem in the source logic.
hd = forget_derivation(res.derivation)
hol_check(hd)
print("forgetful image proves:", hd.conclusion.goal == k.conclusion.goal)

# File-based equivalent:
#   effreal extract corpus/hol_basic.hol --derivation k-combinator --derive

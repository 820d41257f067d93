"""Well-formedness and derivation checking for the higher-order logic.

Sequents are ``S ⊢ Ψ ⇛ ψ``.  Sort contexts are tuples whose last entry is
the innermost binder (de Bruijn index 0).  Derivations are explicit trees:
every node carries its claimed conclusion, so checking never searches.
Well-formedness of the full sequent is enforced once at the root; each node
then re-derives its conclusion from the premises' claims plus explicit
witnesses and compares structurally.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import (
    IllFormedBody,
    IllTyped,
    RuleMismatch,
    SortMismatch,
    UnboundVariable,
)
from .syntax import (
    Compr,
    ComprBase,
    Forall,
    HolProp,
    HolTerm,
    Imp,
    Mem,
    MemBase,
    Pred,
    Sort,
    STAR,
    Var,
    shift_prop,
    subst_prop,
)

SortContext = tuple[Sort, ...]


def ctx_lookup(ctx: SortContext, index: int, path=None) -> Sort:
    if 0 <= index < len(ctx):
        return ctx[len(ctx) - 1 - index]
    raise UnboundVariable(f"variable {index} unbound in context of size {len(ctx)}", path)


def sort_of(ctx: SortContext, t: HolTerm, path=None) -> Sort:
    """Compute the unique sort of ``t`` in ``ctx``."""
    match t:
        case Var(k):
            return ctx_lookup(ctx, k, path)
        case Compr(s, body):
            try:
                prop_wf(ctx + (s,), body, path)
            except SortMismatch as e:
                raise IllFormedBody(f"comprehension body ill-formed: {e.message}", path)
            return Pred(s)
        case ComprBase(body):
            try:
                prop_wf(ctx, body, path)
            except SortMismatch as e:
                raise IllFormedBody(f"base comprehension body ill-formed: {e.message}", path)
            return STAR
    raise TypeError(f"unexpected term {t!r}")


def prop_wf(ctx: SortContext, p: HolProp, path=None) -> None:
    """Check that ``p`` is a well-formed proposition in ``ctx``."""
    match p:
        case MemBase(t):
            s = sort_of(ctx, t, path)
            if s != STAR:
                raise SortMismatch(f"base membership needs sort *, got {s!r}", path)
        case Mem(e, st):
            se = sort_of(ctx, e, path)
            ss = sort_of(ctx, st, path)
            if ss != Pred(se):
                raise SortMismatch(
                    f"membership needs set sort (P {se!r}), got {ss!r}", path
                )
        case Imp(a, b):
            prop_wf(ctx, a, path)
            prop_wf(ctx, b, path)
        case Forall(s, body):
            prop_wf(ctx + (s,), body, path)
        case _:
            raise TypeError(f"unexpected proposition {p!r}")


@dataclass(frozen=True, slots=True)
class Sequent:
    ctx: SortContext
    hyps: tuple[HolProp, ...]
    goal: HolProp


def sequent_wf(seq: Sequent, path=None) -> None:
    for h in seq.hyps:
        prop_wf(seq.ctx, h, path)
    prop_wf(seq.ctx, seq.goal, path)


# Rule tags.
IMP_I = "ImpI"
IMP_E = "ImpE"
UNI_I = "UniI"
UNI_E = "UniE"
MEM_I = "MemI"
MEM_E = "MemE"
MEM0_I = "Mem0I"
MEM0_E = "Mem0E"
ID = "Id"

HOL_RULES = frozenset({IMP_I, IMP_E, UNI_I, UNI_E, MEM_I, MEM_E, MEM0_I, MEM0_E, ID})


@dataclass(frozen=True)
class HolDerivation:
    rule: str
    conclusion: Sequent
    premises: tuple["HolDerivation", ...] = ()
    # UniE carries the instantiating term; other rules need no witness
    # because every premise node carries its own claimed conclusion.
    witness: HolTerm | None = field(default=None)


def _expect_premises(d: HolDerivation, n: int, path) -> None:
    if len(d.premises) != n:
        raise RuleMismatch(f"{d.rule} expects {n} premise(s), got {len(d.premises)}", path)


def _same_frame(d: HolDerivation, p: Sequent, path) -> None:
    c = d.conclusion
    if p.ctx != c.ctx:
        raise RuleMismatch(f"{d.rule}: premise context differs from conclusion", path)
    if set(p.hyps) != set(c.hyps):
        raise RuleMismatch(f"{d.rule}: premise hypotheses differ from conclusion", path)


def check(d: HolDerivation) -> Sequent:
    """Verify ``d`` and return its conclusion sequent.

    Raises RuleMismatch/IllTyped with the path of the offending node.
    """
    sequent_wf(d.conclusion, ())
    _check(d, ())
    return d.conclusion


def _check(d: HolDerivation, path: tuple[int, ...]) -> None:
    c = d.conclusion
    match d.rule:
        case "Id":
            _expect_premises(d, 0, path)
            if not any(h == c.goal for h in c.hyps):
                raise RuleMismatch("Id: goal is not among the hypotheses", path)

        case "ImpI":
            _expect_premises(d, 1, path)
            if not isinstance(c.goal, Imp):
                raise RuleMismatch("ImpI: goal is not an implication", path)
            (p,) = d.premises
            want = Sequent(c.ctx, c.hyps + (c.goal.lhs,), c.goal.rhs)
            if p.conclusion.ctx != want.ctx or p.conclusion.goal != want.goal:
                raise RuleMismatch("ImpI: premise does not match discharged form", path)
            if set(p.conclusion.hyps) != set(want.hyps):
                raise RuleMismatch("ImpI: premise hypotheses do not match", path)

        case "ImpE":
            _expect_premises(d, 2, path)
            fn, arg = d.premises
            _same_frame(d, fn.conclusion, path)
            _same_frame(d, arg.conclusion, path)
            g = fn.conclusion.goal
            if not isinstance(g, Imp):
                raise RuleMismatch("ImpE: first premise is not an implication", path)
            if g.lhs != arg.conclusion.goal:
                raise RuleMismatch("ImpE: argument premise does not match antecedent", path)
            if g.rhs != c.goal:
                raise RuleMismatch("ImpE: conclusion does not match consequent", path)

        case "UniI":
            _expect_premises(d, 1, path)
            if not isinstance(c.goal, Forall):
                raise RuleMismatch("UniI: goal is not a universal", path)
            (p,) = d.premises
            pc = p.conclusion
            if pc.ctx != c.ctx + (c.goal.binder_sort,):
                raise RuleMismatch("UniI: premise context is not the extension by the bound sort", path)
            if set(pc.hyps) != {shift_prop(h, 1) for h in c.hyps}:
                raise RuleMismatch("UniI: premise hypotheses are not the shifted hypotheses", path)
            if pc.goal != c.goal.body:
                raise RuleMismatch("UniI: premise goal is not the universal body", path)

        case "UniE":
            _expect_premises(d, 1, path)
            if d.witness is None:
                raise RuleMismatch("UniE: missing instantiation witness", path)
            (p,) = d.premises
            _same_frame(d, p.conclusion, path)
            g = p.conclusion.goal
            if not isinstance(g, Forall):
                raise RuleMismatch("UniE: premise is not a universal", path)
            s = sort_of(c.ctx, d.witness, path)
            if s != g.binder_sort:
                raise IllTyped(f"UniE: witness has sort {s!r}, expected {g.binder_sort!r}", path)
            if subst_prop(g.body, 0, d.witness) != c.goal:
                raise RuleMismatch("UniE: conclusion is not the instantiated body", path)

        case "MemI":
            _expect_premises(d, 1, path)
            g = c.goal
            if not (isinstance(g, Mem) and isinstance(g.set, Compr)):
                raise RuleMismatch("MemI: goal is not membership in a comprehension", path)
            s = sort_of(c.ctx, g.element, path)
            if s != g.set.binder_sort:
                raise IllTyped(f"MemI: element has sort {s!r}, expected {g.set.binder_sort!r}", path)
            (p,) = d.premises
            _same_frame(d, p.conclusion, path)
            if p.conclusion.goal != subst_prop(g.set.body, 0, g.element):
                raise RuleMismatch("MemI: premise is not the substituted body", path)

        case "MemE":
            _expect_premises(d, 1, path)
            (p,) = d.premises
            _same_frame(d, p.conclusion, path)
            g = p.conclusion.goal
            if not (isinstance(g, Mem) and isinstance(g.set, Compr)):
                raise RuleMismatch("MemE: premise is not membership in a comprehension", path)
            if c.goal != subst_prop(g.set.body, 0, g.element):
                raise RuleMismatch("MemE: conclusion is not the substituted body", path)

        case "Mem0I":
            _expect_premises(d, 1, path)
            g = c.goal
            if not (isinstance(g, MemBase) and isinstance(g.term, ComprBase)):
                raise RuleMismatch("Mem0I: goal is not base membership of a base comprehension", path)
            (p,) = d.premises
            _same_frame(d, p.conclusion, path)
            if p.conclusion.goal != g.term.body:
                raise RuleMismatch("Mem0I: premise is not the comprehension body", path)

        case "Mem0E":
            _expect_premises(d, 1, path)
            (p,) = d.premises
            _same_frame(d, p.conclusion, path)
            g = p.conclusion.goal
            if not (isinstance(g, MemBase) and isinstance(g.term, ComprBase)):
                raise RuleMismatch("Mem0E: premise is not base membership of a base comprehension", path)
            if c.goal != g.term.body:
                raise RuleMismatch("Mem0E: conclusion is not the comprehension body", path)

        case _:
            raise RuleMismatch(f"unknown rule {d.rule!r}", path)

    for i, p in enumerate(d.premises):
        _check(p, path + (i,))

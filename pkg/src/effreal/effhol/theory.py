"""Sequents, derivations and the deductive theory checker.

Derivation nodes carry their claimed conclusion sequent and explicit
witnesses, so checking is search-free.  The checker compares formulas up
to conversion (normal forms), which soundly absorbs the conversion rule;
an explicit Conv node is still accepted.  Well-formedness of the whole
sequent is enforced once at the root.

``weaken_*`` implement context weakening on checked derivations: they
insert a fresh entry at a root position (or add hypotheses) and rebuild
every node.  They are used to replay the soundness and instance-law
derivations, and their output is always re-checked.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from ..errors import IllTyped, ReductionMismatch, RuleMismatch
from .conversion import convertible, normalize_index, normalize_spec, normalize_type
from .reduction import Strategy, reduces_to
from .subst import (
    shift_index,
    shift_prog,
    shift_spec,
    shift_type,
    subst_expr_in_spec,
    subst_prog_in_spec,
    subst_type_in_spec,
)
from .syntax import (
    After,
    Bind,
    Compr,
    ComprBase,
    EffContexts,
    EffExpr,
    EffProgram,
    EffSpec,
    EffType,
    Kind,
    Ret,
    SForallExpr,
    SForallProg,
    SForallType,
    SImp,
    SMem,
    SMemBase,
)
from .typing import index_of, index_wf, kind_of, spec_wf, type_of


@dataclass(frozen=True, slots=True)
class EffSequent:
    ctxs: EffContexts
    hyps: tuple[EffSpec, ...]
    goal: EffSpec


# Rule tags.
UNIPROG_I = "UniProgI"
UNIPROG_E = "UniProgE"
UNIEXP_I = "UniExpI"
UNIEXP_E = "UniExpE"
UNITYPE_I = "UniTypeI"
UNITYPE_E = "UniTypeE"
IMP_I = "ImpI"
IMP_E = "ImpE"
MOD_I = "ModI"
MOD_E = "ModE"
MON = "Mon"
MEM_I = "MemI"
MEM_E = "MemE"
MEM0_I = "Mem0I"
MEM0_E = "Mem0E"
ID = "Id"
CONV = "Conv"
ANTIRED = "AntiRed"

EFF_RULES = frozenset({
    UNIPROG_I, UNIPROG_E, UNIEXP_I, UNIEXP_E, UNITYPE_I, UNITYPE_E,
    IMP_I, IMP_E, MOD_I, MOD_E, MON, MEM_I, MEM_E, MEM0_I, MEM0_E,
    ID, CONV, ANTIRED,
})


@dataclass(frozen=True)
class EffDerivation:
    rule: str
    conclusion: EffSequent
    premises: tuple["EffDerivation", ...] = ()
    witness_prog: EffProgram | None = None
    witness_expr: EffExpr | None = None
    witness_type: EffType | None = None
    # Anti-reduction evidence: ``hole_spec`` has the reduced program's
    # position as program variable 0; the context variables start at 1.
    hole_spec: EffSpec | None = None
    hole_type: EffType | None = None
    prog_before: EffProgram | None = None
    prog_after: EffProgram | None = None
    steps: int = 0
    strategy: Strategy = Strategy.BASE


def sequent_wf(seq: EffSequent, path=None) -> None:
    k, i, t = seq.ctxs.kinds, seq.ctxs.indices, seq.ctxs.types
    for s in i:
        index_wf(k, s, path)
    for ty in t:
        kind_of(k, ty, path)
    for h in seq.hyps:
        spec_wf(k, i, t, h, path)
    spec_wf(k, i, t, seq.goal, path)


def _hypset(hyps) -> frozenset:
    return frozenset(normalize_spec(h) for h in hyps)


def _same_ctxs(a: EffContexts, b: EffContexts) -> bool:
    return (
        a.kinds == b.kinds
        and tuple(map(normalize_index, a.indices)) == tuple(map(normalize_index, b.indices))
        and tuple(map(normalize_type, a.types)) == tuple(map(normalize_type, b.types))
    )


def _same_frame(d: EffDerivation, p: EffSequent, path) -> None:
    c = d.conclusion
    if not _same_ctxs(p.ctxs, c.ctxs):
        raise RuleMismatch(f"{d.rule}: premise contexts differ from conclusion", path)
    if _hypset(p.hyps) != _hypset(c.hyps):
        raise RuleMismatch(f"{d.rule}: premise hypotheses differ from conclusion", path)


def _expect(d: EffDerivation, n: int, path) -> None:
    if len(d.premises) != n:
        raise RuleMismatch(f"{d.rule} expects {n} premise(s), got {len(d.premises)}", path)


def check(d: EffDerivation) -> EffSequent:
    """Verify ``d`` node by node; returns the (claimed, now verified) root sequent."""
    sequent_wf(d.conclusion, ())
    _check(d, ())
    return d.conclusion


def _check(d: EffDerivation, path: tuple[int, ...]) -> None:
    c = d.conclusion
    ctxs = c.ctxs
    goal = normalize_spec(c.goal)

    match d.rule:
        case "Id":
            _expect(d, 0, path)
            if goal not in _hypset(c.hyps):
                raise RuleMismatch("Id: goal is not among the hypotheses", path)

        case "Conv":
            _expect(d, 1, path)
            (p,) = d.premises
            _same_frame(d, p.conclusion, path)
            if normalize_spec(p.conclusion.goal) != goal:
                raise RuleMismatch("Conv: premise is not convertible to the goal", path)

        case "ImpI":
            _expect(d, 1, path)
            if not isinstance(goal, SImp):
                raise RuleMismatch("ImpI: goal is not an implication", path)
            (p,) = d.premises
            pc = p.conclusion
            if not _same_ctxs(pc.ctxs, ctxs):
                raise RuleMismatch("ImpI: premise contexts differ", path)
            if _hypset(pc.hyps) != _hypset(c.hyps) | {normalize_spec(goal.lhs)}:
                raise RuleMismatch("ImpI: premise hypotheses are not the discharged set", path)
            if normalize_spec(pc.goal) != normalize_spec(goal.rhs):
                raise RuleMismatch("ImpI: premise goal is not the consequent", path)

        case "ImpE":
            _expect(d, 2, path)
            fn, arg = d.premises
            _same_frame(d, fn.conclusion, path)
            _same_frame(d, arg.conclusion, path)
            g = normalize_spec(fn.conclusion.goal)
            if not isinstance(g, SImp):
                raise RuleMismatch("ImpE: first premise is not an implication", path)
            if normalize_spec(arg.conclusion.goal) != g.lhs:
                raise RuleMismatch("ImpE: argument premise does not match antecedent", path)
            if g.rhs != goal:
                raise RuleMismatch("ImpE: conclusion does not match consequent", path)

        case "UniProgI":
            _expect(d, 1, path)
            if not isinstance(goal, SForallProg):
                raise RuleMismatch("UniProgI: goal is not a program universal", path)
            (p,) = d.premises
            pc = p.conclusion
            want = EffContexts(ctxs.kinds, ctxs.indices, ctxs.types + (goal.binder_type,))
            if not _same_ctxs(pc.ctxs, want):
                raise RuleMismatch("UniProgI: premise context is not the extension", path)
            if _hypset(pc.hyps) != frozenset(
                normalize_spec(shift_spec(h, dp=1)) for h in c.hyps
            ):
                raise RuleMismatch("UniProgI: premise hypotheses are not the shifted set", path)
            if normalize_spec(pc.goal) != normalize_spec(goal.body):
                raise RuleMismatch("UniProgI: premise goal is not the body", path)

        case "UniExpI":
            _expect(d, 1, path)
            if not isinstance(goal, SForallExpr):
                raise RuleMismatch("UniExpI: goal is not an expression universal", path)
            (p,) = d.premises
            pc = p.conclusion
            want = EffContexts(ctxs.kinds, ctxs.indices + (goal.binder_index,), ctxs.types)
            if not _same_ctxs(pc.ctxs, want):
                raise RuleMismatch("UniExpI: premise context is not the extension", path)
            if _hypset(pc.hyps) != frozenset(
                normalize_spec(shift_spec(h, de=1)) for h in c.hyps
            ):
                raise RuleMismatch("UniExpI: premise hypotheses are not the shifted set", path)
            if normalize_spec(pc.goal) != normalize_spec(goal.body):
                raise RuleMismatch("UniExpI: premise goal is not the body", path)

        case "UniTypeI":
            _expect(d, 1, path)
            if not isinstance(goal, SForallType):
                raise RuleMismatch("UniTypeI: goal is not a type universal", path)
            (p,) = d.premises
            pc = p.conclusion
            want = EffContexts(
                ctxs.kinds + (goal.binder_kind,),
                tuple(shift_index(s, 1) for s in ctxs.indices),
                tuple(shift_type(t, 1) for t in ctxs.types),
            )
            if not _same_ctxs(pc.ctxs, want):
                raise RuleMismatch("UniTypeI: premise context is not the extension", path)
            if _hypset(pc.hyps) != frozenset(
                normalize_spec(shift_spec(h, dt=1)) for h in c.hyps
            ):
                raise RuleMismatch("UniTypeI: premise hypotheses are not the shifted set", path)
            if normalize_spec(pc.goal) != normalize_spec(goal.body):
                raise RuleMismatch("UniTypeI: premise goal is not the body", path)

        case "UniProgE":
            _expect(d, 1, path)
            w = d.witness_prog
            if w is None:
                raise RuleMismatch("UniProgE: missing program witness", path)
            (p,) = d.premises
            _same_frame(d, p.conclusion, path)
            g = normalize_spec(p.conclusion.goal)
            if not isinstance(g, SForallProg):
                raise RuleMismatch("UniProgE: premise is not a program universal", path)
            tw = type_of(ctxs.kinds, ctxs.types, w, path)
            if tw != normalize_type(g.binder_type):
                raise IllTyped(
                    f"UniProgE: witness has type {tw!r}, expected {g.binder_type!r}", path
                )
            if normalize_spec(subst_prog_in_spec(g.body, 0, w)) != goal:
                raise RuleMismatch("UniProgE: conclusion is not the instantiated body", path)

        case "UniExpE":
            _expect(d, 1, path)
            w = d.witness_expr
            if w is None:
                raise RuleMismatch("UniExpE: missing expression witness", path)
            (p,) = d.premises
            _same_frame(d, p.conclusion, path)
            g = normalize_spec(p.conclusion.goal)
            if not isinstance(g, SForallExpr):
                raise RuleMismatch("UniExpE: premise is not an expression universal", path)
            sw = index_of(ctxs.kinds, ctxs.indices, ctxs.types, w, path)
            if sw != normalize_index(g.binder_index):
                raise IllTyped(
                    f"UniExpE: witness has index {sw!r}, expected {g.binder_index!r}", path
                )
            if normalize_spec(subst_expr_in_spec(g.body, 0, w)) != goal:
                raise RuleMismatch("UniExpE: conclusion is not the instantiated body", path)

        case "UniTypeE":
            _expect(d, 1, path)
            w = d.witness_type
            if w is None:
                raise RuleMismatch("UniTypeE: missing type witness", path)
            (p,) = d.premises
            _same_frame(d, p.conclusion, path)
            g = normalize_spec(p.conclusion.goal)
            if not isinstance(g, SForallType):
                raise RuleMismatch("UniTypeE: premise is not a type universal", path)
            kw = kind_of(ctxs.kinds, w, path)
            if kw != g.binder_kind:
                raise IllTyped(
                    f"UniTypeE: witness has kind {kw!r}, expected {g.binder_kind!r}", path
                )
            if normalize_spec(subst_type_in_spec(g.body, 0, w)) != goal:
                raise RuleMismatch("UniTypeE: conclusion is not the instantiated body", path)

        case "ModI":
            _expect(d, 1, path)
            if not (isinstance(goal, After) and isinstance(goal.prog, Ret)):
                raise RuleMismatch("ModI: goal is not a modality over a return", path)
            (p,) = d.premises
            _same_frame(d, p.conclusion, path)
            want = subst_prog_in_spec(goal.body, 0, goal.prog.inner)
            if normalize_spec(p.conclusion.goal) != normalize_spec(want):
                raise RuleMismatch("ModI: premise is not the substituted body", path)

        case "ModE":
            _expect(d, 1, path)
            if not (isinstance(goal, After) and isinstance(goal.prog, Bind)):
                raise RuleMismatch("ModE: goal is not a modality over a bind", path)
            b = goal.prog
            (p,) = d.premises
            _same_frame(d, p.conclusion, path)
            inner = After(b.rest, goal.binder_type, shift_spec(goal.body, dp=1, cp=1))
            want = After(b.first, b.binder_type, inner)
            if normalize_spec(p.conclusion.goal) != normalize_spec(want):
                raise RuleMismatch("ModE: premise is not the nested modality", path)

        case "Mon":
            _expect(d, 2, path)
            if not isinstance(goal, After):
                raise RuleMismatch("Mon: goal is not a modality", path)
            ent, mod = d.premises
            _same_frame(d, mod.conclusion, path)
            g2 = normalize_spec(mod.conclusion.goal)
            if not isinstance(g2, After):
                raise RuleMismatch("Mon: second premise is not a modality", path)
            if g2.prog != goal.prog or g2.binder_type != goal.binder_type:
                raise RuleMismatch("Mon: modality premise runs a different computation", path)
            ec = ent.conclusion
            want = EffContexts(ctxs.kinds, ctxs.indices, ctxs.types + (goal.binder_type,))
            if not _same_ctxs(ec.ctxs, want):
                raise RuleMismatch("Mon: entailment premise context is not the extension", path)
            shifted = frozenset(normalize_spec(shift_spec(h, dp=1)) for h in c.hyps)
            if _hypset(ec.hyps) != shifted | {g2.body}:
                raise RuleMismatch("Mon: entailment hypotheses are not the shifted set", path)
            if normalize_spec(ec.goal) != normalize_spec(goal.body):
                raise RuleMismatch("Mon: entailment goal is not the modality body", path)

        case "MemI":
            _expect(d, 1, path)
            if not (isinstance(goal, SMem) and isinstance(goal.fn, Compr)):
                raise RuleMismatch("MemI: goal is not membership in a comprehension", path)
            comp = goal.fn
            tp = type_of(ctxs.kinds, ctxs.types, goal.prog, path)
            if tp != normalize_type(comp.prog_type):
                raise IllTyped(f"MemI: member has type {tp!r}, expected {comp.prog_type!r}", path)
            sa = index_of(ctxs.kinds, ctxs.indices, ctxs.types, goal.arg, path)
            if sa != normalize_index(comp.arg_index):
                raise IllTyped(
                    f"MemI: argument has index {sa!r}, expected {comp.arg_index!r}", path
                )
            (p,) = d.premises
            _same_frame(d, p.conclusion, path)
            want = subst_expr_in_spec(
                subst_prog_in_spec(comp.body, 0, goal.prog), 0, goal.arg
            )
            if normalize_spec(p.conclusion.goal) != normalize_spec(want):
                raise RuleMismatch("MemI: premise is not the substituted body", path)

        case "MemE":
            _expect(d, 1, path)
            (p,) = d.premises
            _same_frame(d, p.conclusion, path)
            g = normalize_spec(p.conclusion.goal)
            if not (isinstance(g, SMem) and isinstance(g.fn, Compr)):
                raise RuleMismatch("MemE: premise is not membership in a comprehension", path)
            want = subst_expr_in_spec(subst_prog_in_spec(g.fn.body, 0, g.prog), 0, g.arg)
            if normalize_spec(want) != goal:
                raise RuleMismatch("MemE: conclusion is not the substituted body", path)

        case "Mem0I":
            _expect(d, 1, path)
            if not (isinstance(goal, SMemBase) and isinstance(goal.fn, ComprBase)):
                raise RuleMismatch("Mem0I: goal is not base membership in a comprehension", path)
            comp = goal.fn
            tp = type_of(ctxs.kinds, ctxs.types, goal.prog, path)
            if tp != normalize_type(comp.prog_type):
                raise IllTyped(f"Mem0I: member has type {tp!r}, expected {comp.prog_type!r}", path)
            (p,) = d.premises
            _same_frame(d, p.conclusion, path)
            want = subst_prog_in_spec(comp.body, 0, goal.prog)
            if normalize_spec(p.conclusion.goal) != normalize_spec(want):
                raise RuleMismatch("Mem0I: premise is not the substituted body", path)

        case "Mem0E":
            _expect(d, 1, path)
            (p,) = d.premises
            _same_frame(d, p.conclusion, path)
            g = normalize_spec(p.conclusion.goal)
            if not (isinstance(g, SMemBase) and isinstance(g.fn, ComprBase)):
                raise RuleMismatch("Mem0E: premise is not base membership in a comprehension", path)
            want = subst_prog_in_spec(g.fn.body, 0, g.prog)
            if normalize_spec(want) != goal:
                raise RuleMismatch("Mem0E: conclusion is not the substituted body", path)

        case "AntiRed":
            _expect(d, 1, path)
            if d.hole_spec is None or d.prog_before is None or d.prog_after is None:
                raise RuleMismatch("AntiRed: missing reduction witnesses", path)
            if d.hole_type is None:
                raise RuleMismatch("AntiRed: missing binder type", path)
            (p,) = d.premises
            _same_frame(d, p.conclusion, path)
            before = subst_prog_in_spec(d.hole_spec, 0, d.prog_before)
            after = subst_prog_in_spec(d.hole_spec, 0, d.prog_after)
            if normalize_spec(before) != goal:
                raise RuleMismatch("AntiRed: conclusion is not the pre-reduction form", path)
            if normalize_spec(after) != normalize_spec(p.conclusion.goal):
                raise RuleMismatch("AntiRed: premise is not the post-reduction form", path)
            t1 = type_of(ctxs.kinds, ctxs.types, d.prog_before, path)
            t2 = type_of(ctxs.kinds, ctxs.types, d.prog_after, path)
            want_t = normalize_type(d.hole_type)
            if t1 != want_t or t2 != want_t:
                raise IllTyped("AntiRed: reduction does not preserve the declared type", path)
            if not reduces_to(d.prog_before, d.prog_after, d.strategy, d.steps):
                raise ReductionMismatch(
                    f"AntiRed: claimed reduction does not hold within {d.steps} steps", path
                )

        case _:
            raise RuleMismatch(f"unknown rule {d.rule!r}", path)

    for i, p in enumerate(d.premises):
        _check(p, path + (i,))


def make_triple(
    ctxs: EffContexts,
    hyps: tuple[EffSpec, ...],
    binder_type: EffType,
    prog: EffProgram,
    body: EffSpec,
) -> EffSequent:
    """The Hoare-style triple: hyps entail ``after prog (x:binder_type) body``."""
    tp = type_of(ctxs.kinds, ctxs.types, prog)
    from .syntax import Comp

    if tp != normalize_type(Comp(binder_type)):
        raise IllTyped(f"triple program has type {tp!r}, expected M {binder_type!r}")
    return EffSequent(ctxs, hyps, After(prog, binder_type, body))


# Context weakening on derivations.  Positions are list positions in the
# ROOT conclusion's contexts (0 = outermost); every rebuilt derivation must
# be re-checked by the caller.


def _map_node(d: EffDerivation, fn) -> EffDerivation:
    return replace(
        d,
        conclusion=fn(d.conclusion),
        premises=tuple(_map_node(p, fn) for p in d.premises),
        witness_prog=None if d.witness_prog is None else fn.prog(d.conclusion, d.witness_prog),
        witness_expr=None if d.witness_expr is None else fn.expr(d.conclusion, d.witness_expr),
        witness_type=None if d.witness_type is None else fn.type(d.conclusion, d.witness_type),
        hole_spec=None if d.hole_spec is None else fn.hole(d.conclusion, d.hole_spec),
        hole_type=None if d.hole_type is None else fn.type(d.conclusion, d.hole_type),
        prog_before=None if d.prog_before is None else fn.prog(d.conclusion, d.prog_before),
        prog_after=None if d.prog_after is None else fn.prog(d.conclusion, d.prog_after),
    )


class _Weaken:
    """One insertion into one namespace, applied node by node.

    ``ns`` is "kind", "type" or "index"; ``pos`` is the root-context list
    position at which ``entry`` (expressed in the root context) is
    inserted.
    """

    def __init__(self, ns: str, pos: int, entry, root: EffSequent):
        self.ns = ns
        self.pos = pos
        self.entry = entry
        self.root = root

    def _cuts(self, seq: EffSequent) -> tuple[int, int, int]:
        ct = cp = ce = 0
        if self.ns == "kind":
            ct = len(seq.ctxs.kinds) - self.pos
        elif self.ns == "type":
            cp = len(seq.ctxs.types) - self.pos
        else:
            ce = len(seq.ctxs.indices) - self.pos
        return ct, cp, ce

    def _deltas(self, seq: EffSequent) -> tuple[int, int, int]:
        r = self.root.ctxs
        return (
            len(seq.ctxs.kinds) - len(r.kinds),
            len(seq.ctxs.types) - len(r.types),
            len(seq.ctxs.indices) - len(r.indices),
        )

    def spec(self, seq: EffSequent, f: EffSpec) -> EffSpec:
        ct, cp, ce = self._cuts(seq)
        dt = 1 if self.ns == "kind" else 0
        dp = 1 if self.ns == "type" else 0
        de = 1 if self.ns == "index" else 0
        return shift_spec(f, dt=dt, dp=dp, de=de, ct=ct, cp=cp, ce=ce)

    def hole(self, seq: EffSequent, f: EffSpec) -> EffSpec:
        # The hole variable occupies program index 0 of the spec.
        ct, cp, ce = self._cuts(seq)
        dt = 1 if self.ns == "kind" else 0
        dp = 1 if self.ns == "type" else 0
        de = 1 if self.ns == "index" else 0
        return shift_spec(f, dt=dt, dp=dp, de=de, ct=ct, cp=cp + 1, ce=ce)

    def prog(self, seq: EffSequent, p: EffProgram) -> EffProgram:
        ct, cp, _ = self._cuts(seq)
        dt = 1 if self.ns == "kind" else 0
        dp = 1 if self.ns == "type" else 0
        return shift_prog(p, dt=dt, dp=dp, ct=ct, cp=cp)

    def expr(self, seq: EffSequent, e: EffExpr):
        ct, cp, ce = self._cuts(seq)
        dt = 1 if self.ns == "kind" else 0
        dp = 1 if self.ns == "type" else 0
        de = 1 if self.ns == "index" else 0
        from .subst import shift_expr

        return shift_expr(e, dt=dt, dp=dp, de=de, ct=ct, cp=cp, ce=ce)

    def type(self, seq: EffSequent, t: EffType) -> EffType:
        ct, _, _ = self._cuts(seq)
        return shift_type(t, 1, ct) if self.ns == "kind" else t

    def index(self, seq: EffSequent, s):
        ct, _, _ = self._cuts(seq)
        return shift_index(s, 1, ct) if self.ns == "kind" else s

    def __call__(self, seq: EffSequent) -> EffSequent:
        dk, _, _ = self._deltas(seq)
        kinds = list(seq.ctxs.kinds)
        indices = [self.index(seq, s) for s in seq.ctxs.indices]
        types = [self.type(seq, t) for t in seq.ctxs.types]
        if self.ns == "kind":
            kinds.insert(self.pos, self.entry)
        elif self.ns == "type":
            types.insert(self.pos, shift_type(self.entry, dk))
        else:
            indices.insert(self.pos, shift_index(self.entry, dk))
        return EffSequent(
            EffContexts(tuple(kinds), tuple(indices), tuple(types)),
            tuple(self.spec(seq, h) for h in seq.hyps),
            self.spec(seq, seq.goal),
        )


def weaken_kind(d: EffDerivation, pos: int, kind: Kind) -> EffDerivation:
    return _map_node(d, _Weaken("kind", pos, kind, d.conclusion))


def weaken_type(d: EffDerivation, pos: int, ty: EffType) -> EffDerivation:
    return _map_node(d, _Weaken("type", pos, ty, d.conclusion))


def weaken_index(d: EffDerivation, pos: int, idx) -> EffDerivation:
    return _map_node(d, _Weaken("index", pos, idx, d.conclusion))


class _AddHyps:
    """Add hypotheses (expressed in the root context) at every node."""

    def __init__(self, hyps: tuple[EffSpec, ...], root: EffSequent):
        self.hyps = hyps
        self.root = root

    def _shift(self, seq: EffSequent, h: EffSpec) -> EffSpec:
        r = self.root.ctxs
        dk = len(seq.ctxs.kinds) - len(r.kinds)
        dt = len(seq.ctxs.types) - len(r.types)
        de = len(seq.ctxs.indices) - len(r.indices)
        return shift_spec(h, dt=dk, dp=dt, de=de)

    def spec(self, seq, f):
        return f

    hole = spec
    prog = spec
    expr = spec
    type = spec

    def __call__(self, seq: EffSequent) -> EffSequent:
        extra = tuple(self._shift(seq, h) for h in self.hyps)
        return EffSequent(seq.ctxs, seq.hyps + extra, seq.goal)


def add_hypotheses(d: EffDerivation, hyps: tuple[EffSpec, ...]) -> EffDerivation:
    return _map_node(d, _AddHyps(hyps, d.conclusion))

"""The realizability translation and constructive realizer extraction.

Sorts become kinds and (type-parameterized) indices; terms become types
and expressions; propositions become types (of their realizers) and
specifications (of which programs realize them).  A free logic variable at
context position i maps to the type variable and the expression variable
at the same position, so the lifted kind and index contexts stay aligned
with the sort context.

Specifications produced by ``trspec`` have exactly one free program
variable, index 0: the distinguished realizer.

``extract_realizer`` walks a checked derivation and emits the realizer
dictated by the soundness proof, one construct per rule; ``derive_triple``
additionally replays the proof of the resulting triple inside the target
theory (supported for the implication and universal rules plus hypotheses;
the membership rules require substitution reasoning and fail gracefully).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import IllSorted, LemmaViolation, TemplateMissing
from .hol import checker as hc
from .hol import syntax as h
from .effhol import syntax as e
from .effhol.reduction import Strategy, root_step
from .effhol.subst import (
    shift_index,
    shift_prog,
    shift_spec,
    shift_type,
    subst_expr_in_expr,
    subst_expr_in_spec,
    subst_prog_in_spec,
    subst_type_in_expr,
    subst_type_in_spec,
    subst_type_in_type,
)
from .effhol.theory import (
    EffDerivation,
    EffSequent,
    add_hypotheses,
    make_triple,
    weaken_type,
)


def trkind(s: h.Sort) -> e.Kind:
    match s:
        case h.Base():
            return e.KSTAR
        case h.Pred(inner):
            return e.KCon(trkind(inner))
    raise TypeError(f"unexpected sort {s!r}")


def trind(tau: e.EffType, s: h.Sort) -> e.EffIndex:
    match s:
        case h.Base():
            return e.RefBase(tau)
        case h.Pred(inner):
            return e.IForall(
                trkind(inner),
                e.Ref(e.TApp(shift_type(tau, 1), e.TVar(0)), trind(e.TVar(0), inner)),
            )
    raise TypeError(f"unexpected sort {s!r}")


def tretype(sctx: hc.SortContext, t: h.HolTerm) -> e.EffType:
    match t:
        case h.Var(i):
            return e.TVar(i)
        case h.Compr(s, body):
            return e.TAbs(trkind(s), trtype(sctx + (s,), body))
        case h.ComprBase(body):
            return trtype(sctx, body)
    raise TypeError(f"unexpected term {t!r}")


def trtrm(sctx: hc.SortContext, t: h.HolTerm) -> e.EffExpr:
    match t:
        case h.Var(i):
            return e.EVar(i)
        case h.Compr(s, body):
            inner = sctx + (s,)
            return e.EForall(
                trkind(s),
                e.Compr(trtype(inner, body), trind(e.TVar(0), s), trspec(inner, body)),
            )
        case h.ComprBase(body):
            return e.ComprBase(trtype(sctx, body), trspec(sctx, body))
    raise TypeError(f"unexpected term {t!r}")


def trtype(sctx: hc.SortContext, p: h.HolProp) -> e.EffType:
    match p:
        case h.Imp(a, b):
            return e.Fun(trtype(sctx, a), e.Comp(trtype(sctx, b)))
        case h.Forall(s, body):
            return e.TForall(trkind(s), e.Comp(trtype(sctx + (s,), body)))
        case h.Mem(el, st):
            return e.TApp(tretype(sctx, st), tretype(sctx, el))
        case h.MemBase(t):
            return tretype(sctx, t)
    raise IllSorted(f"unexpected proposition {p!r}")


def trspec(sctx: hc.SortContext, p: h.HolProp) -> e.EffSpec:
    """The specification of realizers of ``p``; program variable 0 is the realizer."""
    match p:
        case h.Imp(a, b):
            return e.SForallProg(
                trtype(sctx, a),
                e.SImp(
                    trspec(sctx, a),
                    e.After(
                        e.App(e.PVar(1), e.PVar(0)), trtype(sctx, b), trspec(sctx, b)
                    ),
                ),
            )
        case h.Forall(s, body):
            inner = sctx + (s,)
            return e.SForallType(
                trkind(s),
                e.SForallExpr(
                    trind(e.TVar(0), s),
                    e.After(
                        e.TyApp(e.PVar(0), e.TVar(0)),
                        trtype(inner, body),
                        trspec(inner, body),
                    ),
                ),
            )
        case h.Mem(el, st):
            return e.SMem(
                e.PVar(0),
                e.EApp(trtrm(sctx, st), tretype(sctx, el)),
                trtrm(sctx, el),
            )
        case h.MemBase(t):
            return e.SMemBase(e.PVar(0), trtrm(sctx, t))
    raise IllSorted(f"unexpected proposition {p!r}")


def lift_contexts(sctx: hc.SortContext) -> tuple[tuple[e.Kind, ...], tuple[e.EffIndex, ...]]:
    """The kind and index contexts of the translated judgment, position-aligned."""
    n = len(sctx)
    kinds = tuple(trkind(s) for s in sctx)
    indices = tuple(trind(e.TVar(n - 1 - i), s) for i, s in enumerate(sctx))
    return kinds, indices


@dataclass(frozen=True)
class TranslationOutput:
    type: e.EffType
    spec: e.EffSpec
    kind_ctx: tuple[e.Kind, ...]
    index_ctx: tuple[e.EffIndex, ...]


def translate_prop(sctx: hc.SortContext, p: h.HolProp) -> TranslationOutput:
    hc.prop_wf(sctx, p)
    kinds, indices = lift_contexts(sctx)
    return TranslationOutput(trtype(sctx, p), trspec(sctx, p), kinds, indices)


def subst_lemma_prop_clauses(sctx: hc.SortContext, p: h.HolProp, t: h.HolTerm) -> None:
    """Clauses for propositions: translation to types and to specifications
    commutes with substitution.  ``t`` is sorted in ``sctx``; ``p`` is
    well-formed in ``sctx`` extended by t's sort, with the substituted
    variable at index 0."""
    s = hc.sort_of(sctx, t)
    inner = sctx + (s,)
    hc.prop_wf(inner, p)
    tt = tretype(sctx, t)
    te = trtrm(sctx, t)
    subst_p = h.subst_prop(p, 0, t)

    lhs1 = trtype(sctx, subst_p)
    rhs1 = subst_type_in_type(trtype(inner, p), 0, tt)
    if lhs1 != rhs1:
        raise LemmaViolation(f"type clause fails for {p!r}[0:={t!r}]")

    lhs2 = trspec(sctx, subst_p)
    rhs2 = subst_expr_in_spec(subst_type_in_spec(trspec(inner, p), 0, tt), 0, te)
    if lhs2 != rhs2:
        raise LemmaViolation(f"spec clause fails for {p!r}[0:={t!r}]")


def subst_lemma_term_clauses(sctx: hc.SortContext, tp: h.HolTerm, t: h.HolTerm) -> None:
    """Clauses for terms: translation to expressions and to types commutes
    with substitution.  ``tp`` is sorted in ``sctx`` extended by t's sort.

    Note: the expression clause needs the type substitution as well as the
    expression substitution, since translated comprehensions embed the
    body's realizer type.
    """
    s = hc.sort_of(sctx, t)
    inner = sctx + (s,)
    hc.sort_of(inner, tp)
    tt = tretype(sctx, t)
    te = trtrm(sctx, t)

    lhs3 = trtrm(sctx, h.subst_term(tp, 0, t))
    rhs3 = subst_expr_in_expr(subst_type_in_expr(trtrm(inner, tp), 0, tt), 0, te)
    if lhs3 != rhs3:
        raise LemmaViolation(f"expression clause fails for {tp!r}[0:={t!r}]")

    lhs4 = tretype(sctx, h.subst_term(tp, 0, t))
    rhs4 = subst_type_in_type(tretype(inner, tp), 0, tt)
    if lhs4 != rhs4:
        raise LemmaViolation(f"type-of-term clause fails for {tp!r}[0:={t!r}]")


def check_substitution_lemma(sctx: hc.SortContext, p: h.HolProp, t: h.HolTerm) -> None:
    """Assert all four substitution equalities: the proposition clauses on
    (p, t) and the term clauses on every top-level subterm of p."""
    subst_lemma_prop_clauses(sctx, p, t)
    for tp in _subterms_of_prop(p):
        subst_lemma_term_clauses(sctx, tp, t)


def _subterms_of_prop(p: h.HolProp):
    match p:
        case h.MemBase(t):
            yield t
        case h.Mem(el, st):
            yield el
            yield st
        case h.Imp(a, b):
            yield from _subterms_of_prop(a)
            yield from _subterms_of_prop(b)
        case h.Forall(_, _):
            # subterms under the binder live in a different context
            return


@dataclass(frozen=True)
class Ambient:
    """Extra target-side context and assumptions, placed outermost."""

    kinds: tuple[e.Kind, ...] = ()
    indices: tuple[e.EffIndex, ...] = ()
    types: tuple[e.EffType, ...] = ()
    hyps: tuple[e.EffSpec, ...] = ()


EMPTY_AMBIENT = Ambient()


@dataclass(frozen=True)
class ExtractionResult:
    realizer: e.EffProgram
    goal_triple: EffSequent
    hypothesis_typing: tuple[tuple[int, e.EffType], ...]
    derivation: EffDerivation | None = None


def _hyp_var(n_hyps: int, i: int) -> int:
    """De Bruijn index of the i-th (leftmost = 0) hypothesis variable."""
    return n_hyps - 1 - i


def _realizer(d: hc.HolDerivation) -> e.EffProgram:
    c = d.conclusion
    sctx = c.ctx
    match d.rule:
        case "Id":
            i = list(c.hyps).index(c.goal)
            return e.Ret(e.PVar(_hyp_var(len(c.hyps), i)))
        case "ImpI":
            assert isinstance(c.goal, h.Imp)
            return e.Ret(e.Abs(trtype(sctx, c.goal.lhs), _realizer(d.premises[0])))
        case "ImpE":
            fn, arg = d.premises
            imp = fn.conclusion.goal
            assert isinstance(imp, h.Imp)
            t_imp = trtype(sctx, imp)
            t_arg = trtype(sctx, imp.lhs)
            return e.Bind(
                t_imp,
                _realizer(fn),
                e.Bind(
                    t_arg,
                    shift_prog(_realizer(arg), dp=1),
                    e.App(e.PVar(1), e.PVar(0)),
                ),
            )
        case "UniI":
            assert isinstance(c.goal, h.Forall)
            return e.Ret(e.TyAbs(trkind(c.goal.binder_sort), _realizer(d.premises[0])))
        case "UniE":
            (p,) = d.premises
            t_all = trtype(sctx, p.conclusion.goal)
            return e.Bind(
                t_all, _realizer(p), e.TyApp(e.PVar(0), tretype(sctx, d.witness))
            )
        case "MemI" | "MemE" | "Mem0I" | "Mem0E":
            return _realizer(d.premises[0])
    raise TemplateMissing(f"no realizer for rule {d.rule!r}")


def _contexts(seq: hc.Sequent, amb: Ambient) -> EffSequent:
    """The translated sequent frame: contexts plus pointed hypothesis specs."""
    kinds, indices = lift_contexts(seq.ctx)
    types = tuple(trtype(seq.ctx, psi) for psi in seq.hyps)
    n = len(seq.hyps)
    pointed = tuple(
        subst_prog_in_spec(trspec(seq.ctx, psi), 0, e.PVar(_hyp_var(n, i)))
        for i, psi in enumerate(seq.hyps)
    )
    ctxs = e.EffContexts(amb.kinds + kinds, amb.indices + indices, amb.types + types)
    return EffSequent(ctxs, pointed + amb.hyps, trspec(seq.ctx, seq.goal))


def extract_realizer(
    d: hc.HolDerivation, ambient: Ambient = EMPTY_AMBIENT, derive: bool = False
) -> ExtractionResult:
    """Check ``d``, then extract the soundness realizer (and optionally the
    target-theory derivation of its triple)."""
    hc.check(d)
    realizer = _realizer(d)
    frame = _contexts(d.conclusion, ambient)
    goal_type = trtype(d.conclusion.ctx, d.conclusion.goal)
    triple = make_triple(frame.ctxs, frame.hyps, goal_type, realizer, frame.goal)
    typing = tuple(
        (i, trtype(d.conclusion.ctx, psi)) for i, psi in enumerate(d.conclusion.hyps)
    )
    deriv = _derive(d, ambient) if derive else None
    return ExtractionResult(realizer, triple, typing, deriv)


def emit_soundness_triple(result: ExtractionResult) -> EffSequent:
    seq = result.goal_triple
    assert isinstance(seq.goal, e.After)
    return make_triple(seq.ctxs, seq.hyps, seq.goal.binder_type, seq.goal.prog, seq.goal.body)


# Derivation replay for the soundness triples.


def _triple_seq(d: hc.HolDerivation, amb: Ambient, realizer: e.EffProgram) -> EffSequent:
    frame = _contexts(d.conclusion, amb)
    goal_type = trtype(d.conclusion.ctx, d.conclusion.goal)
    return EffSequent(frame.ctxs, frame.hyps, e.After(realizer, goal_type, frame.goal))


def _shift_ambient(amb: Ambient, dt: int = 0, dp: int = 0, de: int = 0) -> Ambient:
    """Re-express an ambient (given relative to some root sequent) under
    additional innermost binders."""
    return Ambient(
        amb.kinds,
        tuple(shift_index(s, dt) for s in amb.indices),
        tuple(shift_type(t, dt) for t in amb.types),
        tuple(shift_spec(hh, dt=dt, dp=dp, de=de) for hh in amb.hyps),
    )


def _derive(d: hc.HolDerivation, amb: Ambient) -> EffDerivation:
    c = d.conclusion
    sctx = c.ctx
    r = _realizer(d)
    concl = _triple_seq(d, amb, r)
    frame = EffSequent(concl.ctxs, concl.hyps, concl.goal)

    match d.rule:
        case "Id":
            i = list(c.hyps).index(c.goal)
            assert isinstance(concl.goal, e.After)
            body = concl.goal.body
            hyp = subst_prog_in_spec(body, 0, e.PVar(_hyp_var(len(c.hyps), i)))
            prem = EffDerivation("Id", EffSequent(frame.ctxs, frame.hyps, hyp))
            return EffDerivation("ModI", concl, (prem,))

        case "ImpI":
            goal = c.goal
            assert isinstance(goal, h.Imp)
            tau1 = trtype(sctx, goal.lhs)
            tau2 = trtype(sctx, goal.rhs)
            s1 = trspec(sctx, goal.lhs)
            s2 = trspec(sctx, goal.rhs)
            lam = e.Abs(tau1, _realizer(d.premises[0]))
            lam_up = shift_prog(lam, dp=1)
            ctx1 = e.EffContexts(
                frame.ctxs.kinds, frame.ctxs.indices, frame.ctxs.types + (tau1,)
            )
            hyps1 = tuple(shift_spec(hh, dp=1) for hh in frame.hyps)
            ih = _derive(d.premises[0], _shift_ambient(amb, dp=1))
            red = root_step(e.App(lam_up, e.PVar(0)), cbv=True)
            assert red is not None
            anti = EffDerivation(
                "AntiRed",
                EffSequent(
                    ctx1, hyps1 + (s1,), e.After(e.App(lam_up, e.PVar(0)), tau2, s2)
                ),
                (ih,),
                hole_spec=e.After(e.PVar(0), tau2, shift_spec(s2, dp=1, cp=1)),
                hole_type=e.Comp(tau2),
                prog_before=e.App(lam_up, e.PVar(0)),
                prog_after=red,
                steps=1,
                strategy=Strategy.BASE,
            )
            impi = EffDerivation(
                "ImpI",
                EffSequent(
                    ctx1,
                    hyps1,
                    e.SImp(s1, e.After(e.App(lam_up, e.PVar(0)), tau2, s2)),
                ),
                (anti,),
            )
            body = subst_prog_in_spec(trspec(sctx, goal), 0, lam)
            upi = EffDerivation(
                "UniProgI", EffSequent(frame.ctxs, frame.hyps, body), (impi,)
            )
            return EffDerivation("ModI", concl, (upi,))

        case "UniI":
            goal = c.goal
            assert isinstance(goal, h.Forall)
            s = goal.binder_sort
            kappa = trkind(s)
            inner = sctx + (s,)
            tau0 = trtype(inner, goal.body)
            s0 = trspec(inner, goal.body)
            sig = trind(e.TVar(0), s)
            tyabs = e.TyAbs(kappa, _realizer(d.premises[0]))
            tyabs_up = shift_prog(tyabs, dt=1)
            app = e.TyApp(tyabs_up, e.TVar(0))
            red = root_step(app, cbv=True)
            assert red is not None
            ctx_k = e.EffContexts(
                frame.ctxs.kinds + (kappa,),
                tuple(shift_index(x, 1) for x in frame.ctxs.indices),
                tuple(shift_type(x, 1) for x in frame.ctxs.types),
            )
            hyps_k = tuple(shift_spec(hh, dt=1) for hh in frame.hyps)
            ctx_ke = e.EffContexts(ctx_k.kinds, ctx_k.indices + (sig,), ctx_k.types)
            hyps_ke = tuple(shift_spec(hh, de=1) for hh in hyps_k)
            ih = _derive(d.premises[0], _shift_ambient(amb, dt=1, de=1))
            anti = EffDerivation(
                "AntiRed",
                EffSequent(ctx_ke, hyps_ke, e.After(app, tau0, s0)),
                (ih,),
                hole_spec=e.After(e.PVar(0), tau0, shift_spec(s0, dp=1, cp=1)),
                hole_type=e.Comp(tau0),
                prog_before=app,
                prog_after=red,
                steps=1,
                strategy=Strategy.BASE,
            )
            uei = EffDerivation(
                "UniExpI",
                EffSequent(ctx_k, hyps_k, e.SForallExpr(sig, e.After(app, tau0, s0))),
                (anti,),
            )
            body = subst_prog_in_spec(trspec(sctx, goal), 0, tyabs)
            uti = EffDerivation(
                "UniTypeI", EffSequent(frame.ctxs, frame.hyps, body), (uei,)
            )
            return EffDerivation("ModI", concl, (uti,))

        case "ImpE":
            fnp, argp = d.premises
            imp = fnp.conclusion.goal
            assert isinstance(imp, h.Imp)
            tau1 = trtype(sctx, imp.lhs)
            tau2 = trtype(sctx, imp.rhs)
            t_imp = trtype(sctx, imp)
            s_imp = trspec(sctx, imp)
            s1 = trspec(sctx, imp.lhs)
            s2 = trspec(sctx, imp.rhs)
            r0 = _realizer(fnp)
            r1 = _realizer(argp)
            r1_up = shift_prog(r1, dp=1)
            rest = e.Bind(tau1, r1_up, e.App(e.PVar(1), e.PVar(0)))
            app = e.App(e.PVar(1), e.PVar(0))

            ih0 = _derive(fnp, amb)

            ih1 = _derive(argp, amb)
            ih1w = weaken_type(ih1, len(frame.ctxs.types), t_imp)
            ih1w = add_hypotheses(ih1w, (s_imp,))

            ctx1 = e.EffContexts(
                frame.ctxs.kinds, frame.ctxs.indices, frame.ctxs.types + (t_imp,)
            )
            hyps1 = tuple(shift_spec(hh, dp=1) for hh in frame.hyps) + (s_imp,)
            ctx2 = e.EffContexts(ctx1.kinds, ctx1.indices, ctx1.types + (tau1,))
            hyps2 = tuple(shift_spec(hh, dp=1) for hh in hyps1) + (s1,)

            s_imp_up = shift_spec(s_imp, dp=1)
            idf = EffDerivation("Id", EffSequent(ctx2, hyps2, s_imp_up))
            upe = EffDerivation(
                "UniProgE",
                EffSequent(
                    ctx2,
                    hyps2,
                    subst_prog_in_spec(_body_of_forall(s_imp_up), 0, e.PVar(0)),
                ),
                (idf,),
                witness_prog=e.PVar(0),
            )
            ida = EffDerivation("Id", EffSequent(ctx2, hyps2, s1))
            pi = EffDerivation(
                "ImpE", EffSequent(ctx2, hyps2, e.After(app, tau2, s2)), (upe, ida)
            )

            mon2 = EffDerivation(
                "Mon",
                EffSequent(
                    ctx1, hyps1, e.After(r1_up, tau1, e.After(app, tau2, s2))
                ),
                (pi, ih1w),
            )
            mode2 = EffDerivation(
                "ModE",
                EffSequent(ctx1, hyps1, e.After(rest, tau2, s2)),
                (mon2,),
            )
            mon1 = EffDerivation(
                "Mon",
                EffSequent(
                    frame.ctxs,
                    frame.hyps,
                    e.After(r0, t_imp, e.After(rest, tau2, s2)),
                ),
                (mode2, ih0),
            )
            return EffDerivation("ModE", concl, (mon1,))

        case "UniE":
            (p,) = d.premises
            forall = p.conclusion.goal
            assert isinstance(forall, h.Forall)
            s = forall.binder_sort
            inner = sctx + (s,)
            t_all = trtype(sctx, forall)
            s_all = trspec(sctx, forall)
            t_wit = tretype(sctx, d.witness)
            e_wit = trtrm(sctx, d.witness)
            tau_c = trtype(sctx, c.goal)
            s_c = trspec(sctx, c.goal)
            r0 = _realizer(p)
            app = e.TyApp(e.PVar(0), t_wit)

            ih0 = _derive(p, amb)

            ctx1 = e.EffContexts(
                frame.ctxs.kinds, frame.ctxs.indices, frame.ctxs.types + (t_all,)
            )
            hyps1 = tuple(shift_spec(hh, dp=1) for hh in frame.hyps) + (s_all,)
            idf = EffDerivation("Id", EffSequent(ctx1, hyps1, s_all))
            assert isinstance(s_all, e.SForallType)
            after_t = subst_type_in_spec(s_all.body, 0, t_wit)
            ute = EffDerivation(
                "UniTypeE",
                EffSequent(ctx1, hyps1, after_t),
                (idf,),
                witness_type=t_wit,
            )
            assert isinstance(after_t, e.SForallExpr)
            after_te = subst_expr_in_spec(after_t.body, 0, e_wit)
            uee = EffDerivation(
                "UniExpE",
                EffSequent(ctx1, hyps1, after_te),
                (ute,),
                witness_expr=e_wit,
            )
            mon = EffDerivation(
                "Mon",
                EffSequent(
                    frame.ctxs,
                    frame.hyps,
                    e.After(r0, t_all, e.After(app, tau_c, s_c)),
                ),
                (uee, ih0),
            )
            return EffDerivation("ModE", concl, (mon,))

        case "MemI" | "MemE" | "Mem0I" | "Mem0E":
            raise TemplateMissing(
                f"--derive does not replay {d.rule} nodes (substitution reasoning); "
                "the extracted realizer and its typing are still produced"
            )

    raise TemplateMissing(f"--derive does not support rule {d.rule!r}")


def _body_of_forall(s: e.EffSpec) -> e.EffSpec:
    assert isinstance(s, e.SForallProg)
    return s.body

"""Surface syntax: elaboration, canonical printing, JSON, instance files."""

import json
import random

import pytest
from hypothesis import given, settings, strategies as st

from effreal.errors import ScopeError, SurfaceSyntaxError
from effreal.generators import (
    random_closed_program,
    random_hol_prop,
    random_spec,
    random_type,
)
from effreal.hol import FALSUM, Forall, Imp, MemBase, STAR, Var, check as hol_check
from effreal.effhol import KSTAR, check as eff_check
from effreal.surface import (
    parse_document,
    print_eff_derivation,
    print_hol_derivation,
    print_hol_prop,
    print_program,
    print_spec,
    print_type,
    print_untyped,
)
from effreal.surface.elaborate import (
    EffEnv,
    Env,
    elab_eff_derivation,
    elab_hol_derivation,
    elab_hol_prop,
    elab_program,
    elab_spec,
    elab_type,
    elab_untyped,
    SurfaceDoc,
)
from effreal.surface import jsonio
from effreal.surface.sexp import parse_all
from effreal.translation import extract_realizer
from tests.test_translation import k_combinator_derivation


def _doc():
    return SurfaceDoc()


def roundtrip_prop(p):
    text = print_hol_prop(p)
    (form,) = parse_all(text)
    return elab_hol_prop(_doc(), Env(), form)


def test_parse_falsum_encoding():
    (form,) = parse_all("(forall (u *) (member0 u))")
    assert elab_hol_prop(_doc(), Env(), form) == FALSUM
    (short,) = parse_all("bot")
    assert elab_hol_prop(_doc(), Env(), short) == FALSUM


def test_unbound_name_is_scope_error():
    (form,) = parse_all("(member0 nowhere)")
    with pytest.raises(ScopeError):
        elab_hol_prop(_doc(), Env(), form)


def test_syntax_error_carries_position():
    with pytest.raises(SurfaceSyntaxError) as info:
        parse_all("(member0 (oops)")
    assert info.value.line == 1 and info.value.col == 1


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 100_000), st.integers(1, 4))
def test_hol_prop_print_parse_roundtrip(seed, size):
    rng = random.Random(seed)
    p = random_hol_prop(rng, (), size)
    assert roundtrip_prop(p) == p


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 100_000))
def test_type_and_program_roundtrip(seed):
    rng = random.Random(seed)
    t = random_type(rng, (), KSTAR, 3)
    (form,) = parse_all(print_type(t))
    assert elab_type(_doc(), EffEnv(), form) == t
    p, _ = random_closed_program(rng, size=4)
    (pform,) = parse_all(print_program(p))
    assert elab_program(_doc(), EffEnv(), pform) == p


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 100_000))
def test_spec_roundtrip(seed):
    rng = random.Random(seed)
    s = random_spec(rng, (), (), 3)
    (form,) = parse_all(print_spec(s))
    assert elab_spec(_doc(), EffEnv(), form) == s


def test_macros():
    doc = _doc()
    (na,) = parse_all("(not bot)")
    assert elab_hol_prop(doc, Env(), na) == Imp(FALSUM, FALSUM)
    (conj,) = parse_all("(and bot bot)")
    p = elab_hol_prop(doc, Env(), conj)
    # forall u:*. (bot => bot => u in0) => u in0
    assert isinstance(p, Forall)
    (ex,) = parse_all("(exists (u *) (member0 u))")
    q = elab_hol_prop(doc, Env(), ex)
    assert isinstance(q, Forall)
    from effreal.hol import prop_wf

    prop_wf((), p)
    prop_wf((), q)


def test_and_intro_elim_derivable():
    """The conjunction macro supports introduction and elimination."""
    from effreal.hol import HolDerivation, Sequent, shift_prop, subst_prop
    from effreal.hol import ComprBase

    a = Imp(FALSUM, FALSUM)
    b = Forall(STAR, MemBase(Var(0)))
    doc = _doc()
    (conj_form,) = parse_all("(and A B)")
    doc.props["A"] = a
    doc.props["B"] = b
    conj = elab_hol_prop(doc, Env(), conj_form)
    # intro: from a and b, derive the encoded conjunction
    sa, sb = shift_prop(a, 1), shift_prop(b, 1)
    u_in = MemBase(Var(0))
    inner = Imp(sa, Imp(sb, u_in))
    hyps = (a, b)
    shyps = (sa, sb)
    d = HolDerivation(
        "UniI",
        Sequent((), hyps, conj),
        (
            HolDerivation(
                "ImpI",
                Sequent((STAR,), shyps, Imp(inner, u_in)),
                (
                    HolDerivation(
                        "ImpE",
                        Sequent((STAR,), shyps + (inner,), u_in),
                        (
                            HolDerivation(
                                "ImpE",
                                Sequent((STAR,), shyps + (inner,), Imp(sb, u_in)),
                                (
                                    HolDerivation("Id", Sequent((STAR,), shyps + (inner,), inner)),
                                    HolDerivation("Id", Sequent((STAR,), shyps + (inner,), sa)),
                                ),
                            ),
                            HolDerivation("Id", Sequent((STAR,), shyps + (inner,), sb)),
                        ),
                    ),
                ),
            ),
        ),
    )
    hol_check(d)
    # elim (first projection): instantiate at {a}0 and apply to the K proof
    t = ComprBase(a)
    inst = subst_prop(Imp(inner, u_in), 0, t)
    d_elim = HolDerivation(
        "UniE", Sequent((), (conj,), inst), (HolDerivation("Id", Sequent((), (conj,), conj)),), witness=t
    )
    hol_check(d_elim)


def test_document_and_derivation_checking():
    text = """
    (prop truth (imp bot bot))
    (prop k-goal (imp truth (imp bot truth)))
    (hol-derivation refl
      (imp-i (sequent () (hyps) (imp bot bot))
        (id (sequent () (hyps bot) bot))))
    (hol-derivation k
      (imp-i (sequent () (hyps) k-goal)
        (imp-i (sequent () (hyps truth) (imp bot truth))
          (id (sequent () (hyps truth bot) truth)))))
    """
    doc = parse_document(text)
    assert set(doc.hol_derivations) == {"refl", "k"}
    for d in doc.hol_derivations.values():
        hol_check(d)


def test_derivation_print_parse_roundtrip():
    d = k_combinator_derivation()
    text = print_hol_derivation(d)
    doc = _doc()
    (form,) = parse_all(text)
    assert elab_hol_derivation(doc, form) == d


def test_eff_derivation_roundtrip_via_text_and_json():
    res = extract_realizer(k_combinator_derivation(), derive=True)
    d = res.derivation
    text = print_eff_derivation(d)
    (form,) = parse_all(text)
    back = elab_eff_derivation(_doc(), form)
    assert back == d
    eff_check(back)

    data = jsonio.eff_to_json(d)
    blob = jsonio.dumps(data)
    back2 = jsonio.eff_from_json(json.loads(blob))
    assert back2 == d


def test_hol_json_roundtrip_and_validation():
    d = k_combinator_derivation()
    data = jsonio.hol_to_json(d)
    back = jsonio.hol_from_json(json.loads(jsonio.dumps(data)))
    assert back == d
    bad = json.loads(jsonio.dumps(data))
    bad["derivation"]["rule"] = "Bogus"
    with pytest.raises(SurfaceSyntaxError):
        jsonio.hol_from_json(bad)
    bad2 = json.loads(jsonio.dumps(data))
    bad2["schema"] = "effreal/derivation/999"
    with pytest.raises(SurfaceSyntaxError):
        jsonio.hol_from_json(bad2)


def test_json_rejects_missing_witness():
    from effreal.hol import ComprBase as HComprBase

    allp = Forall(STAR, MemBase(Var(0)))
    t = HComprBase(FALSUM)
    from effreal.hol import HolDerivation, Sequent

    d = HolDerivation(
        "UniE",
        Sequent((), (allp,), MemBase(t)),
        (HolDerivation("Id", Sequent((), (allp,), allp)),),
        witness=t,
    )
    data = json.loads(jsonio.dumps(jsonio.hol_to_json(d)))
    del data["derivation"]["witnesses"]["term"]
    with pytest.raises(SurfaceSyntaxError):
        jsonio.hol_from_json(data)


def test_untyped_roundtrip():
    from effreal.frame import UApp, UBind, ULam, UPair, UProj1, URet, UVar

    t = ULam(UBind(URet(UVar(0)), UApp(UProj1(UPair(UVar(0), UVar(1))), UVar(0))))
    text = print_untyped(t)
    (form,) = parse_all(text)
    assert elab_untyped(_doc(), Env(), form) == t


def test_corpus_documents_roundtrip():
    """Canonical printing of every corpus object re-parses to itself."""
    from pathlib import Path

    corpus = Path(__file__).resolve().parent.parent / "corpus"
    from effreal.surface.elaborate import elab_index, elab_expr

    for fname in ("hol_basic.hol", "effhol_basic.eff", "programs.eff"):
        doc = parse_document((corpus / fname).read_text())
        for p in doc.props.values():
            (form,) = parse_all(print_hol_prop(p))
            assert elab_hol_prop(_doc(), Env(), form) == p
        for d in doc.hol_derivations.values():
            (form,) = parse_all(print_hol_derivation(d))
            assert elab_hol_derivation(_doc(), form) == d
        for t in doc.types.values():
            (form,) = parse_all(print_type(t))
            assert elab_type(_doc(), EffEnv(), form) == t
        for p in doc.programs.values():
            (form,) = parse_all(print_program(p))
            assert elab_program(_doc(), EffEnv(), form) == p
        for s in doc.specs.values():
            (form,) = parse_all(print_spec(s))
            assert elab_spec(_doc(), EffEnv(), form) == s
        for d in doc.eff_derivations.values():
            (form,) = parse_all(print_eff_derivation(d))
            assert elab_eff_derivation(_doc(), form) == d


def test_instance_file_matches_continuation():
    """The shipped continuation instance, declared declaratively."""
    text = """
    (instance cont-file
      (strategy cbn)
      (comp (T) (neg (neg T)))
      (ret (T p) (lam (k (neg T)) (app k p)))
      (bind (T1 T2 p1 rest)
        (lam (k (neg T2)) (app p1 (lam (x T1) (app rest k)))))
      (after (T p body)
        (member0 p
          (compr0 (z (neg (neg T)))
            (allp (k (neg T))
              (imp (member0 k
                     (compr0 (kk (neg T))
                       (allp (q T)
                         (imp (member0 q (compr0 (x T) body))
                              (member0 (app kk q)
                                       (compr0 (w bot-type) bot-spec))))))
                   (member0 (app z k) (compr0 (w bot-type) bot-spec))))))))
    """
    doc = parse_document(text)
    inst = doc.instances["cont-file"]
    from effreal.instances import continuation_instance, instantiate_prog, instantiate_spec
    from effreal.effhol import Abs, BOT_TYPE, PVar, Ret, Comp, After, SMemBase, ComprBase, TOP_SPEC

    cont = continuation_instance()
    ident = Abs(BOT_TYPE, PVar(0))
    assert instantiate_prog(Ret(ident), inst) == instantiate_prog(Ret(ident), cont)
    assert inst.comp_type(BOT_TYPE) == cont.comp_type(BOT_TYPE)
    from effreal.effhol import Fun, type_of

    tid = Fun(BOT_TYPE, BOT_TYPE)
    spec = After(Ret(ident), tid, SMemBase(PVar(0), ComprBase(tid, TOP_SPEC)))
    assert instantiate_spec(spec, inst) == instantiate_spec(spec, cont)
    from effreal.effhol import Bind

    b = Bind(tid, Ret(ident), Ret(PVar(0)))
    assert instantiate_prog(b, inst) == instantiate_prog(b, cont)

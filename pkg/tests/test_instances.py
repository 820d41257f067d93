"""Pure instances: structural interpretation, law replay, call/cc."""

import random

import pytest

from effreal.effhol import (
    Abs,
    After,
    App,
    Bind,
    BOT_SPEC,
    BOT_TYPE,
    Comp,
    ComprBase,
    EffContexts,
    EffDerivation,
    EffSequent,
    Fun,
    KSTAR,
    PVar,
    Ret,
    SMemBase,
    TForall,
    TVar,
    TOP_SPEC,
    check,
    type_of,
)
from effreal.effhol.conversion import convertible, normalize_type
from effreal.effhol.reduction import Strategy, multi_step
from effreal.effhol.subst import shift_prog, subst_prog_in_spec
from effreal.generators import random_closed_program
from effreal.hol import Forall, Imp, MemBase, STAR, Var
from effreal.instances import (
    LAW_CASES,
    POLE,
    assert_pure,
    biorth,
    build_callcc,
    build_cc,
    build_throw,
    check_instance_laws,
    continuation_instance,
    identity_instance,
    instantiate,
    instantiate_derivation,
    instantiate_prog,
    instantiate_spec,
    instantiate_type,
    orth,
)
from effreal.translation import trtype

ID_INST = identity_instance()
CONT = continuation_instance()

IDENT = Abs(BOT_TYPE, PVar(0))
T_ID = Fun(BOT_TYPE, BOT_TYPE)


def test_identity_structural():
    assert instantiate_type(Comp(BOT_TYPE), ID_INST) == BOT_TYPE
    assert instantiate_prog(Ret(IDENT), ID_INST) == IDENT
    b = Bind(T_ID, Ret(IDENT), Ret(PVar(0)))
    got = instantiate_prog(b, ID_INST)
    assert got == App(Abs(T_ID, PVar(0)), IDENT)


def test_identity_after_is_substitution():
    cell = ComprBase(T_ID, TOP_SPEC)
    phi = SMemBase(PVar(0), cell)
    spec = After(Ret(IDENT), T_ID, phi)
    assert instantiate_spec(spec, ID_INST) == subst_prog_in_spec(phi, 0, IDENT)


def test_continuation_ret_bind_shapes():
    # ret p = \k: neg tau. k p
    got = instantiate_prog(Ret(IDENT), CONT)
    assert got == Abs(Fun(T_ID, BOT_TYPE), App(PVar(0), shift_prog(IDENT, dp=1)))
    # bind
    b = Bind(T_ID, Ret(IDENT), Ret(PVar(0)))
    got2 = instantiate_prog(b, CONT)
    assert_pure(got2)
    # typing: the interpreted computation has the double-negation type
    t = type_of((), (), got2)
    want = instantiate_type(Comp(T_ID), CONT)
    assert t == normalize_type(want)


def test_instantiated_reduction_preserved():
    """bind-of-ret still reduces to the substituted body, CPS-style."""
    b = Bind(T_ID, Ret(IDENT), Ret(PVar(0)))
    lhs = instantiate_prog(b, CONT)
    rhs = instantiate_prog(Ret(IDENT), CONT)
    # under CBN, applying both to an arbitrary continuation variable yields
    # the same normal form
    k = PVar(0)
    ctx = (Fun(T_ID, BOT_TYPE),)
    n1, _ = multi_step(App(shift_prog(lhs, dp=1), k), Strategy.CBN, 100)
    n2, _ = multi_step(App(shift_prog(rhs, dp=1), k), Strategy.CBN, 100)
    assert n1 == n2


def test_instantiated_base_axioms_replay():
    """Each base reduction axiom's instantiated sides join under the
    instance strategy (identity instance: directly)."""
    rng = random.Random(7)
    for _ in range(20):
        p, _t = random_closed_program(rng, size=5)
        from effreal.effhol.reduction import step

        q = step(p, Strategy.BASE)
        if q is None:
            continue
        pi = instantiate_prog(p, ID_INST)
        qi = instantiate_prog(q, ID_INST)
        ni, _ = multi_step(pi, Strategy.FULL, 10_000)
        nq, _ = multi_step(qi, Strategy.FULL, 10_000)
        assert ni == nq


def test_purity_scan():
    with pytest.raises(Exception):
        assert_pure(Ret(IDENT))
    assert_pure(instantiate_prog(Ret(IDENT), CONT))


def test_orth_index():
    from effreal.effhol import index_of, RefBase, neg

    cell = ComprBase(T_ID, TOP_SPEC)
    o = orth(T_ID, cell)
    assert index_of((), (), (), o) == RefBase(neg(T_ID))
    b = biorth(T_ID, cell)
    assert index_of((), (), (), b) == RefBase(neg(neg(T_ID)))


def test_identity_law_templates_single_cases():
    rng = random.Random(3)
    for law, case in LAW_CASES.items():
        d = case(rng, ID_INST)
        check(d)
        d2 = instantiate_derivation(d, ID_INST)
        check(d2)


def test_continuation_law_templates_single_cases():
    rng = random.Random(3)
    for law, case in LAW_CASES.items():
        d = case(rng, CONT)
        check(d)
        d2 = instantiate_derivation(d, CONT)
        check(d2)


def test_check_instance_laws_small():
    rep = check_instance_laws(ID_INST, samples_per_law=5, seed=11)
    assert rep.ok, rep.failures[:2]
    rep2 = check_instance_laws(CONT, samples_per_law=5, seed=11)
    assert rep2.ok, rep2.failures[:2]


PEIRCE = Forall(
    STAR,
    Forall(
        STAR,
        Imp(
            Imp(Imp(MemBase(Var(1)), MemBase(Var(0))), MemBase(Var(1))),
            MemBase(Var(1)),
        ),
    ),
)


def test_callcc_types_at_translated_peirce():
    callcc = build_callcc()
    t = type_of((), (), callcc)
    want = instantiate_type(trtype((), PEIRCE), CONT)
    assert t == normalize_type(want)


def test_throw_drops_second_continuation():
    """throw k applied to (x, k') reduces to k x."""
    ta, tb = BOT_TYPE, BOT_TYPE
    from effreal.effhol import neg

    # frame: [k, x, k']
    k = PVar(0)
    throw = build_throw(ta, tb, k)
    applied = App(App(shift_prog(throw, dp=0), PVar(1)), PVar(2))
    ctx = (neg(ta), ta, neg(tb))
    # CBN: two beta steps drop k' and deliver k x
    result, steps = multi_step(applied, Strategy.CBN, 10)
    assert result == App(PVar(0), PVar(1))


def test_cc_machine_rule_simulation():
    """cc applied to (z, k) reduces to z (throw k) k, CPS-style."""
    ta, tb = BOT_TYPE, BOT_TYPE
    from effreal.effhol import neg

    cc = build_cc(ta, tb)
    # frame: [z, k]
    applied = App(App(shift_prog(cc, dp=2), PVar(1)), PVar(0))
    result, _ = multi_step(applied, Strategy.CBN, 10)
    throw = build_throw(ta, tb, PVar(0))
    assert result == App(App(PVar(1), throw), PVar(0))

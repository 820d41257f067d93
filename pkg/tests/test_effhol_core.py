"""EffHOL kinding/typing, substitution properties, reduction, conversion."""

import random

import pytest
from hypothesis import given, settings, strategies as st

from effreal.effhol import (
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
    EForall,
    EVar,
    Fun,
    IForall,
    KCon,
    KSTAR,
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
    Strategy,
    TAbs,
    TApp,
    TForall,
    TOP_SPEC,
    TVar,
    TyAbs,
    TyApp,
    conv_normalize,
    convertible,
    index_of,
    index_wf,
    kind_of,
    multi_step,
    spec_wf,
    step,
    type_of,
)
from effreal.effhol.conversion import normalize_type
from effreal.effhol.subst import (
    shift_prog,
    shift_spec,
    shift_type,
    subst_prog_in_prog,
    subst_prog_in_spec,
    subst_type_in_type,
)
from effreal.errors import (
    FuelExhausted,
    KindMismatch,
    SpecIllFormed,
    TypeMismatch,
    UnboundTypeVariable,
)
from effreal.generators import (
    random_closed_program,
    random_kind,
    random_type,
    random_typed_program,
)

POLY_ID_TYPE = TForall(KSTAR, Fun(TVar(0), Comp(TVar(0))))
POLY_ID = TyAbs(KSTAR, Abs(TVar(0), Ret(PVar(0))))


def test_kind_of_polymorphic_kleisli_identity():
    assert kind_of((), POLY_ID_TYPE) == KSTAR


def test_kind_of_application_shape():
    assert kind_of((KSTAR,), TApp(TAbs(KSTAR, TVar(0)), TVar(0))) == KSTAR


def test_kind_of_unbound():
    with pytest.raises(UnboundTypeVariable):
        kind_of((), TApp(TVar(0), TVar(1)))


def test_type_of_polymorphic_kleisli_identity():
    assert type_of((), (), POLY_ID) == POLY_ID_TYPE


def test_type_of_bind_of_ret():
    v = Abs(BOT_TYPE, PVar(0))
    tv = type_of((), (), v)
    p = Bind(tv, Ret(v), Ret(PVar(0)))
    assert type_of((), (), p) == Comp(tv)


def test_type_of_conversion_absorbed():
    # annotation with a type-level redex: (\X.X) bot  ==  bot
    redex = TApp(TAbs(KSTAR, TVar(0)), BOT_TYPE)
    p = Abs(redex, PVar(0))
    assert type_of((), (), p) == Fun(BOT_TYPE, BOT_TYPE)


def test_type_mismatch():
    f = Abs(BOT_TYPE, PVar(0))
    with pytest.raises(TypeMismatch):
        type_of((), (), App(f, f))


def test_index_of_base_comprehension():
    tau = BOT_TYPE
    e = ComprBase(tau, TOP_SPEC)
    assert index_of((), (), (), e) == RefBase(tau)


def test_index_of_forall():
    e = EForall(KSTAR, ComprBase(TVar(0), BOT_SPEC))
    assert index_of((), (), (), e) == IForall(KSTAR, RefBase(TVar(0)))


def test_index_of_eapp_mismatch():
    e = ComprBase(BOT_TYPE, TOP_SPEC)
    from effreal.errors import IndexMismatch

    with pytest.raises(IndexMismatch):
        index_of((), (), (), EApp(e, BOT_TYPE))


def test_spec_wf_after():
    v = Abs(BOT_TYPE, PVar(0))
    tv = type_of((), (), v)
    spec_wf((), (), (), After(Ret(v), tv, TOP_SPEC))


def test_normalization_preservation_example():
    """The higher-order 'the identity preserves normalization' statement."""
    tau = BOT_TYPE
    # x terminates: (after x of y, falsity) implies falsity
    diverges = After(PVar(0), tau, BOT_SPEC)
    norm_body = SImp(diverges, BOT_SPEC)
    norm = ComprBase(Comp(tau), norm_body)
    # pres: functions sending members of e to members of e
    pres_body = SForallProg(
        Comp(tau),
        SImp(
            SMemBase(PVar(0), EVar(0)),
            SMemBase(App(PVar(1), PVar(0)), EVar(0)),
        ),
    )
    pres = Compr(Fun(Comp(tau), Comp(tau)), RefBase(Comp(tau)), pres_body)
    ident = Abs(Comp(tau), PVar(0))
    spec = SMem(ident, pres, norm)
    spec_wf((), (), (), spec)


def test_spec_wf_mismatch():
    v = Abs(BOT_TYPE, PVar(0))
    with pytest.raises(SpecIllFormed):
        spec_wf((), (), (), SMemBase(v, ComprBase(BOT_TYPE, TOP_SPEC)))


def test_step_bind_ret():
    v = Abs(BOT_TYPE, PVar(0))
    tv = type_of((), (), v)
    p = Bind(tv, Ret(v), Ret(PVar(0)))
    assert step(p) == Ret(v)


def test_step_beta_value():
    ident = Abs(BOT_TYPE, PVar(0))
    other = Abs(Fun(BOT_TYPE, BOT_TYPE), PVar(0))
    assert step(App(ident, other)) == other


def test_step_cbv_blocks_non_value():
    ident = Abs(BOT_TYPE, PVar(0))
    arg = App(ident, ident)  # not a value
    assert step(App(ident, arg), Strategy.BASE) is None
    # call-by-name fires
    assert step(App(ident, arg), Strategy.CBN) == arg


def test_multi_step_chain_and_fuel():
    ident = Abs(BOT_TYPE, PVar(0))
    k = Abs(BOT_TYPE, Abs(BOT_TYPE, PVar(1)))
    p = App(App(k, ident), ident)
    # base strategy: inner redex first is at the root spine only under CBN
    result, steps = multi_step(p, Strategy.CBN, fuel=10)
    assert result == ident and steps == 2
    v = Abs(BOT_TYPE, PVar(0))
    done, steps = multi_step(v, Strategy.BASE, fuel=0)
    assert done == v and steps == 0
    with pytest.raises(FuelExhausted):
        multi_step(p, Strategy.CBN, fuel=1)


def test_conv_normalize_axioms():
    tau = Fun(BOT_TYPE, BOT_TYPE)
    assert conv_normalize(TApp(TAbs(KSTAR, TVar(0)), tau)) == tau
    e = EForall(KSTAR, ComprBase(TVar(0), BOT_SPEC))
    assert conv_normalize(EApp(e, tau)) == ComprBase(tau, BOT_SPEC)
    assert conv_normalize(tau) == tau


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10_000))
def test_conv_normalize_idempotent(seed):
    rng = random.Random(seed)
    t = random_type(rng, (), KSTAR, 4)
    n = conv_normalize(t)
    assert conv_normalize(n) == n


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10_000))
def test_convertibility_congruence(seed):
    rng = random.Random(seed)
    t = random_type(rng, (KSTAR,), KSTAR, 3)
    redex = TApp(TAbs(KSTAR, shift_type(t, 1, 1)), TVar(0))
    assert convertible(redex, t)
    assert convertible(Comp(redex), Comp(t))
    assert convertible(t, t)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10_000))
def test_type_substitution_composition(seed):
    """subst commutes with itself: t[0:=a][0:=b] == t[1:=b][0:=a[0:=b]]."""
    rng = random.Random(seed)
    kctx = (KSTAR, KSTAR)
    t = random_type(rng, kctx, KSTAR, 3)
    a = random_type(rng, kctx[:-1], KSTAR, 2)
    b = random_type(rng, (), KSTAR, 2)
    lhs = subst_type_in_type(subst_type_in_type(t, 0, a), 0, b)
    rhs = subst_type_in_type(
        subst_type_in_type(t, 1, shift_type(b, 0)), 0, subst_type_in_type(a, 0, b)
    )
    assert lhs == rhs


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 10_000))
def test_prog_subst_roundtrip(seed):
    rng = random.Random(seed)
    p = random_typed_program(rng, (), (BOT_TYPE,), 3)
    sub = Abs(BOT_TYPE, PVar(0))
    lifted = shift_prog(p, dp=1)
    assert subst_prog_in_prog(lifted, 0, sub) == p


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 100_000))
def test_subject_reduction_base(seed):
    rng = random.Random(seed)
    p, t = random_closed_program(rng, size=5)
    q = step(p, Strategy.BASE)
    if q is not None:
        assert type_of((), (), q) == normalize_type(t)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 100_000))
def test_subject_reduction_full(seed):
    rng = random.Random(seed)
    p, t = random_closed_program(rng, size=5)
    q = step(p, Strategy.FULL)
    if q is not None:
        assert type_of((), (), q) == normalize_type(t)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 100_000))
def test_context_weakening_typing(seed):
    """Typing is stable under inserting a fresh outermost entry."""
    rng = random.Random(seed)
    p, t = random_closed_program(rng, size=4)
    assert type_of((KSTAR,), (TVar(0),), p) == normalize_type(t)

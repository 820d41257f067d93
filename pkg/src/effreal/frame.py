"""Type erasure and the finite-carrier evidenced frame.

Erased programs live in the untyped computational lambda-calculus
extended with pairs.  Propositions at desk scale are explicit finite sets
of closed values; evidence is any closed untyped term; the evidence
relation runs every member of the source proposition through the evidence
and decides membership in the lifted target via normalization under the
identity instance's executable semantics.

Fuel exhaustion is a third truth value: it is reported as ``None`` and
never conflated with refutation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ._astnode import astnode
from .errors import CandidateRejected, FuelExhausted, UnsupportedInstance
from .effhol import syntax as e


class UntypedTerm:
    __slots__ = ()


@astnode
class UVar(UntypedTerm):
    index: int


@astnode
class ULam(UntypedTerm):
    body: UntypedTerm


@astnode
class UApp(UntypedTerm):
    fn: UntypedTerm
    arg: UntypedTerm


@astnode
class URet(UntypedTerm):
    inner: UntypedTerm


@astnode
class UBind(UntypedTerm):
    """bind x <- first; rest — binds one variable in rest."""

    first: UntypedTerm
    rest: UntypedTerm


@astnode
class UPair(UntypedTerm):
    fst: UntypedTerm
    snd: UntypedTerm


@astnode
class UProj1(UntypedTerm):
    pair: UntypedTerm


@astnode
class UProj2(UntypedTerm):
    pair: UntypedTerm


def is_uvalue(t: UntypedTerm) -> bool:
    match t:
        case UVar(_) | ULam(_):
            return True
        case UPair(a, b):
            return is_uvalue(a) and is_uvalue(b)
    return False


def erase(p: e.EffProgram) -> UntypedTerm:
    """Drop all type structure; returns and binds survive."""
    match p:
        case e.PVar(k):
            return UVar(k)
        case e.Abs(_, body):
            return ULam(erase(body))
        case e.App(fn, arg):
            return UApp(erase(fn), erase(arg))
        case e.TyAbs(_, body):
            return erase(body)
        case e.TyApp(fn, _):
            return erase(fn)
        case e.Ret(inner):
            return URet(erase(inner))
        case e.Bind(_, first, rest):
            return UBind(erase(first), erase(rest))
    raise TypeError(f"unexpected program {p!r}")


def ushift(t: UntypedTerm, by: int, cutoff: int = 0) -> UntypedTerm:
    match t:
        case UVar(k):
            return UVar(k + by) if k >= cutoff else t
        case ULam(body):
            return ULam(ushift(body, by, cutoff + 1))
        case UApp(fn, arg):
            return UApp(ushift(fn, by, cutoff), ushift(arg, by, cutoff))
        case URet(inner):
            return URet(ushift(inner, by, cutoff))
        case UBind(first, rest):
            return UBind(ushift(first, by, cutoff), ushift(rest, by, cutoff + 1))
        case UPair(a, b):
            return UPair(ushift(a, by, cutoff), ushift(b, by, cutoff))
        case UProj1(x):
            return UProj1(ushift(x, by, cutoff))
        case UProj2(x):
            return UProj2(ushift(x, by, cutoff))
    raise TypeError(f"unexpected term {t!r}")


def usubst(t: UntypedTerm, j: int, sub: UntypedTerm) -> UntypedTerm:
    match t:
        case UVar(k):
            if k == j:
                return sub
            return UVar(k - 1) if k > j else t
        case ULam(body):
            return ULam(usubst(body, j + 1, ushift(sub, 1)))
        case UApp(fn, arg):
            return UApp(usubst(fn, j, sub), usubst(arg, j, sub))
        case URet(inner):
            return URet(usubst(inner, j, sub))
        case UBind(first, rest):
            return UBind(usubst(first, j, sub), usubst(rest, j + 1, ushift(sub, 1)))
        case UPair(a, b):
            return UPair(usubst(a, j, sub), usubst(b, j, sub))
        case UProj1(x):
            return UProj1(usubst(x, j, sub))
        case UProj2(x):
            return UProj2(usubst(x, j, sub))
    raise TypeError(f"unexpected term {t!r}")


def _uroot(t: UntypedTerm, cbv: bool) -> UntypedTerm | None:
    match t:
        case UBind(URet(inner), rest):
            return usubst(rest, 0, inner)
        case UApp(ULam(body), arg):
            if not cbv or is_uvalue(arg):
                return usubst(body, 0, arg)
            return None
        case UProj1(UPair(a, b)):
            if is_uvalue(a) and is_uvalue(b):
                return a
            return None
        case UProj2(UPair(a, b)):
            if is_uvalue(a) and is_uvalue(b):
                return b
            return None
    return None


def untyped_step(t: UntypedTerm, strategy: str = "cbv") -> UntypedTerm | None:
    """One deterministic step; 'cbv' is the identity instance's executable
    semantics (left-to-right, reducing inside ret/bind/pairs/projections),
    'cbn' mirrors the erased call-by-name contexts."""
    if strategy == "cbn":
        r = _uroot(t, cbv=False)
        if r is not None:
            return r
        match t:
            case UApp(fn, arg):
                r = untyped_step(fn, "cbn")
                return None if r is None else UApp(r, arg)
            case ULam(body):
                r = untyped_step(body, "cbn")
                return None if r is None else ULam(r)
        return None

    r = _uroot(t, cbv=True)
    if r is not None:
        return r
    match t:
        case UApp(fn, arg):
            r = untyped_step(fn, strategy)
            if r is not None:
                return UApp(r, arg)
            r = untyped_step(arg, strategy)
            return None if r is None else UApp(fn, r)
        case URet(inner):
            r = untyped_step(inner, strategy)
            return None if r is None else URet(r)
        case UBind(first, rest):
            r = untyped_step(first, strategy)
            return None if r is None else UBind(r, rest)
        case UPair(a, b):
            r = untyped_step(a, strategy)
            if r is not None:
                return UPair(r, b)
            r = untyped_step(b, strategy)
            return None if r is None else UPair(a, r)
        case UProj1(x):
            r = untyped_step(x, strategy)
            return None if r is None else UProj1(r)
        case UProj2(x):
            r = untyped_step(x, strategy)
            return None if r is None else UProj2(r)
    return None


def untyped_normalize(t: UntypedTerm, fuel: int = 10_000, strategy: str = "cbv") -> UntypedTerm:
    cur = t
    for _ in range(fuel):
        nxt = untyped_step(cur, strategy)
        if nxt is None:
            return cur
        cur = nxt
    if untyped_step(cur, strategy) is None:
        return cur
    raise FuelExhausted(f"no untyped normal form within {fuel} steps", partial=cur)


DEFAULT_FUEL = 10_000

EfProposition = frozenset  # of closed UntypedTerm values
EfEvidence = UntypedTerm


def make_prop(*values: UntypedTerm) -> EfProposition:
    for v in values:
        if not is_uvalue(v):
            raise CandidateRejected(f"proposition member is not a value: {v!r}")
    return frozenset(values)


def lift_member(
    p: UntypedTerm, prop: EfProposition, inst=None, fuel: int = DEFAULT_FUEL
) -> bool | None:
    """Does the computation ``p`` deliver a value in ``prop``?

    Decided by normalization under the identity instance; ``None`` means
    fuel ran out (unknown).  Instances without an executable untyped
    semantics are rejected.
    """
    if inst is not None and getattr(inst, "untyped_lift", "identity") != "identity":
        raise UnsupportedInstance(
            f"instance {getattr(inst, 'name', inst)!r} declares no executable untyped semantics"
        )
    try:
        n = untyped_normalize(p, fuel)
    except FuelExhausted:
        return None
    return isinstance(n, URet) and is_uvalue(n.inner) and n.inner in prop


def evidence_check(
    phi1: EfProposition, ev: EfEvidence, phi2: EfProposition, fuel: int = DEFAULT_FUEL
) -> bool | None:
    """phi1 -->ev phi2: every member, fed to the evidence, lands in lift phi2."""
    unknown = False
    for member in phi1:
        r = lift_member(UApp(ev, member), phi2, fuel=fuel)
        if r is False:
            return False
        if r is None:
            unknown = True
    return None if unknown else True


# The combinators of the evidenced-frame construction, verbatim.

E_ID = ULam(URet(UVar(0)))


def compose(e1: EfEvidence, e2: EfEvidence) -> EfEvidence:
    return ULam(UBind(UApp(ushift(e1, 1), UVar(0)), UApp(ushift(e2, 2), UVar(0))))


TOP_VALUE = ULam(URet(UVar(0)))
TOP_PROP = frozenset({TOP_VALUE})
E_TOP = ULam(URet(ushift(TOP_VALUE, 1)))

E_FST = ULam(URet(UProj1(UVar(0))))
E_SND = ULam(URet(UProj2(UVar(0))))


def pair_evidence(e1: EfEvidence, e2: EfEvidence) -> EfEvidence:
    return ULam(
        UBind(
            UApp(ushift(e1, 1), UVar(0)),
            UBind(UApp(ushift(e2, 2), UVar(1)), URet(UPair(UVar(1), UVar(0)))),
        )
    )


def conj(phi1: EfProposition, phi2: EfProposition) -> EfProposition:
    return frozenset(UPair(a, b) for a in phi1 for b in phi2)


def lam_evidence(ev: EfEvidence) -> EfEvidence:
    return ULam(URet(ULam(UApp(ushift(ev, 2), UPair(UVar(1), UVar(0))))))


E_EVAL = ULam(UApp(UProj1(UVar(0)), UProj2(UVar(0))))


def univ_impl(
    phi1: EfProposition,
    family: tuple[EfProposition, ...],
    candidates: tuple[UntypedTerm, ...],
    fuel: int = DEFAULT_FUEL,
) -> EfProposition:
    """The finite-carrier universal implication: the supplied lambda values
    validated against the defining membership condition."""
    members = []
    for cand in candidates:
        if not isinstance(cand, ULam):
            raise CandidateRejected(f"universal-implication member is not a lambda: {cand!r}")
        for v1 in phi1:
            for phi in family:
                r = lift_member(usubst(cand.body, 0, v1), phi, fuel=fuel)
                if r is not True:
                    raise CandidateRejected(
                        f"candidate fails the defining condition on {v1!r}"
                    )
        members.append(cand)
    return frozenset(members)


def ef_combinators() -> dict:
    return {
        "e_id": E_ID,
        "compose": compose,
        "top_prop": TOP_PROP,
        "e_top": E_TOP,
        "pair": pair_evidence,
        "e_fst": E_FST,
        "e_snd": E_SND,
        "lam_of": lam_evidence,
        "e_eval": E_EVAL,
        "conj": conj,
        "univ_impl": univ_impl,
    }


@dataclass
class EfReport:
    clauses: dict = field(default_factory=dict)
    witnesses: dict = field(default_factory=dict)

    def record(self, clause: str, ok: bool | None, witness: str = "") -> None:
        prev = self.clauses.get(clause, True)
        self.clauses[clause] = (
            None if (ok is None or prev is None) else (prev and ok)
        )
        if witness:
            self.witnesses.setdefault(clause, []).append(witness)

    @property
    def ok(self) -> bool:
        return all(v is True for v in self.clauses.values())


def ef_law_suite(
    samples: tuple[EfProposition, ...], fuel: int = DEFAULT_FUEL
) -> EfReport:
    """Check the five evidenced-frame clauses on the sample propositions."""
    report = EfReport()
    samples = tuple(s for s in samples if s)

    for phi in samples:
        report.record("reflexivity", evidence_check(phi, E_ID, phi, fuel))

    # transitivity: chain the identity through an eta-like step
    wrap = ULam(URet(UVar(0)))
    for phi in samples:
        ok1 = evidence_check(phi, wrap, phi, fuel)
        comp = compose(wrap, E_ID)
        report.record(
            "transitivity",
            None if ok1 is None else evidence_check(phi, comp, phi, fuel),
        )

    for phi in samples:
        report.record("top", evidence_check(phi, E_TOP, TOP_PROP, fuel))

    for phi1 in samples:
        for phi2 in samples:
            both = conj(phi1, phi2)
            report.record("conjunction", evidence_check(both, E_FST, phi1, fuel))
            report.record("conjunction", evidence_check(both, E_SND, phi2, fuel))
            # pairing from the common source
            src = phi1
            pe = pair_evidence(E_ID, E_ID)
            report.record(
                "conjunction", evidence_check(src, pe, conj(phi1, phi1), fuel)
            )

    for phi1 in samples:
        for phi2 in samples:
            family = (phi2,)
            ev = E_SND  # phi1 /\ phi2 --> phi2 for every member of the family
            # the candidates produced by the lambda combinator itself
            cands = tuple(
                ULam(UApp(ushift(ev, 1), UPair(ushift(v1, 1), UVar(0))))
                for v1 in phi1
            )
            try:
                impl = univ_impl(phi2, family, cands, fuel)
            except CandidateRejected as exc:
                report.record("universal-implication", False, str(exc))
                continue
            report.record(
                "universal-implication",
                evidence_check(phi1, lam_evidence(ev), impl, fuel),
            )
            report.record(
                "universal-implication",
                evidence_check(conj(impl, phi2), E_EVAL, phi2, fuel),
            )
    return report

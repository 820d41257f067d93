"""Declarative pure-instance descriptions.

A file instance supplies the four construct templates and a strategy:

    (instance NAME
      (strategy base|cbn|full)
      (comp (T) TYPE)
      (ret (T p) PROGRAM)
      (bind (T1 T2 p1 rest) PROGRAM)
      (after (T p body) SPEC))

Template parameters are bound as variables of the appropriate namespace;
``rest`` and ``body`` stand for terms with one free program variable (the
bound result), and their occurrences must sit with the designated binder
as the innermost program binder — both shipped instances have this shape.
``body`` is spliced wherever the atom ``body`` appears in specification
position.

File instances carry no modality-law derivation templates: instantiating
a derivation that uses ModI/ModE/Mon reports TemplateMissing, while types,
programs, specifications and modality-free derivations instantiate fully.
"""

from __future__ import annotations

from ..errors import SurfaceSyntaxError, TemplateMissing
from ..effhol import syntax as e
from ..effhol.reduction import Strategy
from ..effhol.subst import shift_prog, shift_spec, shift_type
from ..instances import PureInstance
from .sexp import expect_atom, expect_list, head

# A recognizable spec leaf standing for the body parameter; indices far
# beyond anything desk-scale files produce.
BODY_SENTINEL = e.SMemBase(e.PVar(987654321), e.EVar(987654321))


class _Plugger:
    """One-pass walker: replaces template parameters by actual pieces,
    shifting each actual across the binders crossed on the way.

    ``rest_holes`` plug capture-style: the actual's variable 0 is captured
    by the innermost program binder at the occurrence.
    """

    def __init__(self, kind_holes: dict, prog_holes: dict, body=None, rest_holes=None):
        self.kind_holes = kind_holes  # index -> actual type
        self.prog_holes = prog_holes  # index -> actual program
        self.rest_holes = rest_holes or {}
        self.body = body  # actual spec with free program variable 0
        self.n_kind = len(kind_holes)
        self.n_prog = len(self.prog_holes) + len(self.rest_holes)

    def type(self, t, dt):
        match t:
            case e.TVar(k):
                if k >= dt:
                    hole = k - dt
                    if hole in self.kind_holes:
                        return shift_type(self.kind_holes[hole], dt)
                    return e.TVar(k - self.n_kind)
                return t
            case e.TApp(fn, arg):
                return e.TApp(self.type(fn, dt), self.type(arg, dt))
            case e.TAbs(k, body):
                return e.TAbs(k, self.type(body, dt + 1))
            case e.Fun(a, b):
                return e.Fun(self.type(a, dt), self.type(b, dt))
            case e.TForall(k, body):
                return e.TForall(k, self.type(body, dt + 1))
            case e.Comp(inner):
                return e.Comp(self.type(inner, dt))
        raise TypeError(f"unexpected type {t!r}")

    def prog(self, p, dt, dp):
        match p:
            case e.PVar(k):
                if k >= dp:
                    hole = k - dp
                    if hole in self.prog_holes:
                        return shift_prog(self.prog_holes[hole], dt=dt, dp=dp)
                    if hole in self.rest_holes:
                        if dp < 1:
                            raise TemplateMissing(
                                "template uses the result parameter outside its binder"
                            )
                        return shift_prog(
                            self.rest_holes[hole], dt=dt, dp=dp - 1, ct=0, cp=1
                        )
                    return e.PVar(k - self.n_prog)
                return p
            case e.TyAbs(k, body):
                return e.TyAbs(k, self.prog(body, dt + 1, dp))
            case e.Abs(ty, body):
                return e.Abs(self.type(ty, dt), self.prog(body, dt, dp + 1))
            case e.TyApp(fn, arg):
                return e.TyApp(self.prog(fn, dt, dp), self.type(arg, dt))
            case e.App(fn, arg):
                return e.App(self.prog(fn, dt, dp), self.prog(arg, dt, dp))
            case e.Ret(inner):
                return e.Ret(self.prog(inner, dt, dp))
            case e.Bind(ty, first, rest):
                return e.Bind(
                    self.type(ty, dt), self.prog(first, dt, dp), self.prog(rest, dt, dp + 1)
                )
        raise TypeError(f"unexpected program {p!r}")

    def spec(self, f, dt, dp, de):
        if f == BODY_SENTINEL:
            if self.body is None:
                raise TemplateMissing("template has no body parameter")
            if dp < 1:
                raise TemplateMissing(
                    "the body parameter must sit under its program binder"
                )
            return shift_spec(self.body, dt=dt, dp=dp - 1, de=de, cp=1)
        match f:
            case e.SMem(p, fn, arg):
                return e.SMem(
                    self.prog(p, dt, dp), self.expr(fn, dt, dp, de), self.expr(arg, dt, dp, de)
                )
            case e.SMemBase(p, fn):
                return e.SMemBase(self.prog(p, dt, dp), self.expr(fn, dt, dp, de))
            case e.SImp(a, b):
                return e.SImp(self.spec(a, dt, dp, de), self.spec(b, dt, dp, de))
            case e.After(p, ty, body):
                return e.After(
                    self.prog(p, dt, dp), self.type(ty, dt), self.spec(body, dt, dp + 1, de)
                )
            case e.SForallType(k, body):
                return e.SForallType(k, self.spec(body, dt + 1, dp, de))
            case e.SForallProg(ty, body):
                return e.SForallProg(self.type(ty, dt), self.spec(body, dt, dp + 1, de))
            case e.SForallExpr(idx, body):
                return e.SForallExpr(self.index(idx, dt), self.spec(body, dt, dp, de + 1))
        raise TypeError(f"unexpected specification {f!r}")

    def expr(self, x, dt, dp, de):
        match x:
            case e.EVar(_):
                return x
            case e.Compr(ty, idx, body):
                return e.Compr(
                    self.type(ty, dt), self.index(idx, dt), self.spec(body, dt, dp + 1, de + 1)
                )
            case e.ComprBase(ty, body):
                return e.ComprBase(self.type(ty, dt), self.spec(body, dt, dp + 1, de))
            case e.EForall(k, body):
                return e.EForall(k, self.expr(body, dt + 1, dp, de))
            case e.EApp(fn, arg):
                return e.EApp(self.expr(fn, dt, dp, de), self.type(arg, dt))
        raise TypeError(f"unexpected expression {x!r}")

    def index(self, s, dt):
        match s:
            case e.RefBase(c):
                return e.RefBase(self.type(c, dt))
            case e.Ref(c, arg):
                return e.Ref(self.type(c, dt), self.index(arg, dt))
            case e.IForall(k, body):
                return e.IForall(k, self.index(body, dt + 1))
        raise TypeError(f"unexpected index {s!r}")


def _section(node, tag: str):
    for item in node.items[2:]:
        s = expect_list(item, "instance section")
        if head(s) == tag:
            return s
    raise SurfaceSyntaxError(
        f"instance is missing the ({tag} ...) section", node.line, node.col
    )


def _params(section, expected: tuple[str, ...]) -> None:
    names = tuple(
        expect_atom(a, "parameter").text
        for a in expect_list(section[1], "parameters").items
    )
    if names != expected:
        raise SurfaceSyntaxError(
            f"{head(section)} parameters must be {expected}, got {names}",
            section.line,
            section.col,
        )


def elab_instance(doc, node) -> PureInstance:
    from .elaborate import EffEnv, elab_program, elab_spec, elab_type

    name = expect_atom(node[1], "name").text
    strat = Strategy(expect_atom(_section(node, "strategy")[1], "strategy").text)

    comp_s = _section(node, "comp")
    _params(comp_s, ("T",))
    env = EffEnv()
    env.kinds.push("T")
    comp_body = elab_type(doc, env, comp_s[2])

    ret_s = _section(node, "ret")
    _params(ret_s, ("T", "p"))
    env = EffEnv()
    env.kinds.push("T")
    env.progs.push("p")
    ret_body = elab_program(doc, env, ret_s[2])

    bind_s = _section(node, "bind")
    _params(bind_s, ("T1", "T2", "p1", "rest"))
    env = EffEnv()
    env.kinds.push("T1")
    env.kinds.push("T2")
    env.progs.push("p1")
    env.progs.push("rest")
    bind_body = elab_program(doc, env, bind_s[2])

    after_s = _section(node, "after")
    _params(after_s, ("T", "p", "body"))
    env = EffEnv()
    env.kinds.push("T")
    env.progs.push("p")
    saved = dict(doc.specs)
    doc.specs["body"] = BODY_SENTINEL
    try:
        after_body = elab_spec(doc, env, after_s[2])
    finally:
        doc.specs.clear()
        doc.specs.update(saved)

    def comp_type(t):
        return _Plugger({0: t}, {}).type(comp_body, 0)

    def ret_prog(t, p):
        return _Plugger({0: t}, {0: p}).prog(ret_body, 0, 0)

    def bind_prog(t1, t2, first, rest):
        # the template's program frame is [p1, rest]: rest innermost
        return _Plugger({0: t2, 1: t1}, {1: first}, rest_holes={0: rest}).prog(
            bind_body, 0, 0
        )

    def after_spec(t, p, body_spec):
        plug = _Plugger({0: t}, {0: p}, body=body_spec)
        return plug.spec(after_body, 0, 0, 0)

    return PureInstance(
        name=name,
        strategy=strat,
        comp_type=comp_type,
        ret_prog=ret_prog,
        bind_prog=bind_prog,
        after_spec=after_spec,
        modi_template=None,
        mode_template=None,
        mon_template=None,
        untyped_lift=None,
    )

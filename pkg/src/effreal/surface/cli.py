"""Command-line interface.

Exit codes: 0 success, 1 check failure, 2 usage error.  ``--json`` selects
machine output; the ``EFFHOL_FUEL`` environment variable overrides the
default reduction fuel.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from ..errors import KernelError
from ..hol import check as hol_check
from ..effhol import check as eff_check, type_of
from ..effhol.reduction import Strategy, multi_step
from ..frame import ef_law_suite, erase, evidence_check
from ..instances import (
    assert_pure,
    check_instance_laws,
    continuation_instance,
    identity_instance,
    instantiate_derivation,
    instantiate_prog,
    instantiate_spec,
    instantiate_type,
)
from ..translation import extract_realizer, translate_prop
from . import jsonio, printer as pr
from .elaborate import parse_document


def _fuel(args) -> int:
    env = os.environ.get("EFFHOL_FUEL")
    if args.fuel is not None:
        return args.fuel
    if env is not None:
        return int(env)
    return 10_000


def _load(path: str):
    with open(path, encoding="utf-8") as f:
        return parse_document(f.read())


def _emit(args, payload: dict, human: str) -> None:
    if args.json:
        print(jsonio.dumps(payload))
    else:
        print(human)


def cmd_check_hol(args) -> int:
    doc = _load(args.file)
    results = {}
    ok = True
    for name, d in doc.hol_derivations.items():
        try:
            seq = hol_check(d)
            results[name] = {"ok": True, "conclusion": pr.print_hol_sequent(seq)}
        except KernelError as exc:
            ok = False
            results[name] = {"ok": False, "error": str(exc)}
    human = "\n".join(
        f"{'ok  ' if r['ok'] else 'FAIL'} {n}" + ("" if r["ok"] else f": {r['error']}")
        for n, r in results.items()
    )
    _emit(args, {"results": results}, human or "no derivations")
    return 0 if ok else 1


def cmd_check_effhol(args) -> int:
    doc = _load(args.file)
    results = {}
    ok = True
    for name, d in doc.eff_derivations.items():
        try:
            seq = eff_check(d)
            results[name] = {"ok": True, "conclusion": pr.print_eff_sequent(seq)}
        except KernelError as exc:
            ok = False
            results[name] = {"ok": False, "error": str(exc)}
    human = "\n".join(
        f"{'ok  ' if r['ok'] else 'FAIL'} {n}" + ("" if r["ok"] else f": {r['error']}")
        for n, r in results.items()
    )
    _emit(args, {"results": results}, human or "no derivations")
    return 0 if ok else 1


def cmd_translate(args) -> int:
    doc = _load(args.file)
    if args.prop not in doc.props:
        print(f"no proposition named {args.prop!r}", file=sys.stderr)
        return 2
    out = translate_prop((), doc.props[args.prop])
    payload = {
        "type": pr.print_type(out.type),
        "spec": pr.print_spec(out.spec, 0, 1, 0),
    }
    human = (
        f"realizer type:\n  {payload['type']}\n"
        f"realizer specification (x0 the realizer):\n  {payload['spec']}"
    )
    _emit(args, payload, human)
    return 0


def cmd_extract(args) -> int:
    doc = _load(args.file)
    if args.derivation not in doc.hol_derivations:
        print(f"no derivation named {args.derivation!r}", file=sys.stderr)
        return 2
    ambient = None
    if args.ambient:
        # an ambient file contributes extra hypotheses as named specs
        amb_doc = _load(args.ambient)
        from ..translation import Ambient

        ambient = Ambient(hyps=tuple(amb_doc.specs.values()))
    try:
        from ..translation import EMPTY_AMBIENT

        res = extract_realizer(
            doc.hol_derivations[args.derivation],
            ambient or EMPTY_AMBIENT,
            derive=args.derive,
        )
    except KernelError as exc:
        print(f"extraction failed: {exc}", file=sys.stderr)
        return 1
    seq = res.goal_triple
    kd = len(seq.ctxs.kinds)
    pd = len(seq.ctxs.types)
    rtype = type_of(seq.ctxs.kinds, seq.ctxs.types, res.realizer)
    payload = {
        "realizer": pr.print_program(res.realizer, kd, pd),
        "type": pr.print_type(rtype, kd),
        "triple": pr.print_eff_sequent(seq),
    }
    if res.derivation is not None:
        payload["derivation"] = jsonio.eff_to_json(res.derivation)
        eff_check(res.derivation)
    human = (
        f"realizer:\n  {payload['realizer']}\n"
        f"type:\n  {payload['type']}\n"
        f"triple:\n  {payload['triple']}"
        + ("\n(derivation replayed and re-checked)" if res.derivation else "")
    )
    _emit(args, payload, human)
    return 0


def _instance(spec: str):
    if spec == "id":
        return identity_instance()
    if spec == "cont":
        return continuation_instance()
    doc = _load(spec)
    if not doc.instances:
        raise KernelError(f"no instance declaration in {spec!r}")
    return next(iter(doc.instances.values()))


def cmd_instantiate(args) -> int:
    doc = _load(args.file)
    try:
        inst = _instance(args.instance)
    except (KernelError, OSError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    results = {}
    ok = True
    for name, t in doc.types.items():
        results[f"type {name}"] = pr.print_type(instantiate_type(t, inst))
    for name, p in doc.programs.items():
        got = instantiate_prog(p, inst)
        assert_pure(got)
        results[f"program {name}"] = pr.print_program(got)
    for name, s in doc.specs.items():
        got = instantiate_spec(s, inst)
        assert_pure(got)
        results[f"spec {name}"] = pr.print_spec(got)
    for name, d in doc.eff_derivations.items():
        try:
            d2 = instantiate_derivation(d, inst)
            eff_check(d2)
            results[f"derivation {name}"] = "re-checked"
        except KernelError as exc:
            ok = False
            results[f"derivation {name}"] = f"FAILED: {exc}"
    human = "\n".join(f"{k}: {v}" for k, v in results.items())
    _emit(args, {"instance": inst.name, "results": results}, human or "nothing to do")
    return 0 if ok else 1


def cmd_normalize(args) -> int:
    doc = _load(args.file)
    if args.term not in doc.programs:
        print(f"no program named {args.term!r}", file=sys.stderr)
        return 2
    strategy = Strategy(args.strategy)
    try:
        result, steps = multi_step(doc.programs[args.term], strategy, _fuel(args))
    except KernelError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    payload = {"result": pr.print_program(result), "steps": steps}
    _emit(args, payload, f"{payload['result']}\n({steps} step(s))")
    return 0


def cmd_erase(args) -> int:
    doc = _load(args.file)
    if args.term not in doc.programs:
        print(f"no program named {args.term!r}", file=sys.stderr)
        return 2
    t = erase(doc.programs[args.term])
    payload = {"erased": pr.print_untyped(t)}
    _emit(args, payload, payload["erased"])
    return 0


def cmd_ef_check(args) -> int:
    doc = _load(args.file)
    fuel = _fuel(args)
    samples = tuple(doc.ef_props.values())
    report = ef_law_suite(samples, fuel)
    asserts = {}
    ok = report.ok
    for name, p1, ev, p2 in doc.ef_asserts:
        r = evidence_check(p1, ev, p2, fuel)
        asserts[name] = r
        ok = ok and r is True
    payload = {
        "clauses": {k: v for k, v in report.clauses.items()},
        "asserts": asserts,
    }
    lines = [f"{'ok  ' if v is True else 'FAIL'} clause {k}" for k, v in report.clauses.items()]
    lines += [f"{'ok  ' if v is True else 'FAIL'} assert {k}" for k, v in asserts.items()]
    _emit(args, payload, "\n".join(lines) or "no samples")
    return 0 if ok else 1


def cmd_check_laws(args) -> int:
    try:
        inst = _instance(args.instance)
    except (KernelError, OSError) as exc:
        print(str(exc), file=sys.stderr)
        return 2
    report = check_instance_laws(inst, samples_per_law=args.samples, seed=args.seed)
    payload = {
        "instance": report.instance,
        "results": {k: list(v) for k, v in report.results.items()},
        "failures": report.failures[:10],
    }
    human = "\n".join(
        f"{law}: {passed}/{total}" for law, (passed, total) in report.results.items()
    )
    _emit(args, payload, human)
    return 0 if report.ok else 1


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(
        prog="effreal",
        description="check, translate, extract, instantiate and run the toolchain",
    )
    ap.add_argument("--json", action="store_true", help="machine-readable output")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-hol", help="check every logic derivation in FILE")
    p.add_argument("file")
    p.set_defaults(fn=cmd_check_hol)

    p = sub.add_parser("check-effhol", help="check every program-logic derivation in FILE")
    p.add_argument("file")
    p.set_defaults(fn=cmd_check_effhol)

    p = sub.add_parser("translate", help="translate a named proposition")
    p.add_argument("file")
    p.add_argument("--prop", required=True)
    p.set_defaults(fn=cmd_translate)

    p = sub.add_parser("extract", help="extract the realizer of a named derivation")
    p.add_argument("file")
    p.add_argument("--derivation", required=True)
    p.add_argument("--ambient", help="file whose spec declarations become assumptions")
    p.add_argument("--derive", action="store_true", help="also replay the triple derivation")
    p.set_defaults(fn=cmd_extract)

    p = sub.add_parser("instantiate", help="interpret declarations under a pure instance")
    p.add_argument("file")
    p.add_argument("--instance", required=True, help="id, cont, or an instance file")
    p.set_defaults(fn=cmd_instantiate)

    p = sub.add_parser("normalize", help="reduce a named program")
    p.add_argument("file")
    p.add_argument("--term", required=True)
    p.add_argument("--fuel", type=int, default=None)
    p.add_argument("--strategy", default="base", choices=["base", "cbn", "full"])
    p.set_defaults(fn=cmd_normalize)

    p = sub.add_parser("erase", help="erase a named program to the untyped calculus")
    p.add_argument("file")
    p.add_argument("--term", required=True)
    p.set_defaults(fn=cmd_erase)

    p = sub.add_parser("ef-check", help="run the evidenced-frame law suite on FILE")
    p.add_argument("file")
    p.add_argument("--fuel", type=int, default=None)
    p.set_defaults(fn=cmd_ef_check)

    p = sub.add_parser("check-laws", help="replay the modality laws for an instance")
    p.add_argument("--instance", required=True)
    p.add_argument("--samples", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=cmd_check_laws)

    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.fn(args)
    except KernelError as exc:
        print(str(exc), file=sys.stderr)
        return 1
    except OSError as exc:
        print(str(exc), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

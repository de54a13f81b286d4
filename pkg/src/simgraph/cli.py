"""Command-line surface.

Exit codes: 0 YES, 1 NO, 2 input error, 3 budget exceeded,
4 internal inconsistency (an emitted certificate failed verification,
or recognizer and oracle disagreed under --cross-check).

All stdout output is deterministic for fixed inputs and seeds, except
the millis column of ``bench``.
"""

from __future__ import annotations

import argparse
import sys
import time
from dataclasses import dataclass

from .core import BudgetExceeded, ParseError, SimGraphError
from .instance import SharedInstance, parse_instance, serialize_instance
from . import chordal, comparability, permutation, oracle

__all__ = ["main", "run", "RunReport"]

EXIT_YES = 0
EXIT_NO = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3
EXIT_INTERNAL = 4

_CLASSES = (oracle.CHORDAL, oracle.COMPARABILITY, oracle.PERMUTATION)


@dataclass
class RunReport:
    instance_id: str
    cls: str
    answer: str
    payload: str
    elapsed_ms: float
    verified: bool


def _load_instance(path: str, forced_path: str | None = None) -> SharedInstance:
    with open(path, encoding="utf-8") as fh:
        inst = parse_instance(fh.read())
    if forced_path is None:
        return inst
    with open(forced_path, encoding="utf-8") as fh:
        tokens = []
        for raw in fh:
            tokens.extend(raw.split("#", 1)[0].split())
    extra = []
    for tok in tokens:
        parts = tok.split("-")
        if len(parts) != 2:
            raise ParseError(f"bad forced edge token {tok!r}")
        extra.append((inst.id_of(parts[0]), inst.id_of(parts[1])))
    return SharedInstance(inst.g1, inst.g2, set(inst.forced) | set(extra))


def _recognize(inst: SharedInstance, cls: str):
    if cls == oracle.CHORDAL:
        return chordal.recognize(inst)
    if cls == oracle.COMPARABILITY:
        return comparability.recognize(inst)
    return permutation.recognize(inst)


def _run_one(inst: SharedInstance, cls: str, instance_id: str) -> RunReport:
    t0 = time.perf_counter()
    res = _recognize(inst, cls)
    elapsed = (time.perf_counter() - t0) * 1000.0
    if cls == oracle.CHORDAL:
        yes = isinstance(res, chordal.ChordalCertificate)
        text = chordal.format_result(inst, res)
        verified = chordal.verify_certificate(inst, res) if yes else True
    elif cls == oracle.COMPARABILITY:
        yes = isinstance(res, comparability.ComparabilityCertificate)
        text = comparability.format_result(inst, res)
        verified = (
            comparability.verify_certificate(inst, res)
            if yes
            else comparability.verify_witness(inst, res)
        )
    else:
        yes = isinstance(res, permutation.PermutationCertificate)
        text = permutation.format_result(inst, res)
        verified = (
            permutation.verify_certificate(inst, res)
            if yes
            else comparability.verify_witness(inst, res)
        )
    return RunReport(instance_id, cls, "YES" if yes else "NO", text, elapsed, verified)


def _cmd_recognize(args) -> int:
    if args.forced and args.cls != oracle.CHORDAL:
        print("error: --forced is only valid with --class chordal", file=sys.stderr)
        return EXIT_INPUT
    inst = _load_instance(args.instance, args.forced)
    report = _run_one(inst, args.cls, args.instance)
    sys.stdout.write(report.payload)
    if not report.verified:
        print("error: emitted answer failed verification", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_YES if report.answer == "YES" else EXIT_NO


def _cmd_verify(args) -> int:
    inst = _load_instance(args.instance)
    with open(args.certificate, encoding="utf-8") as fh:
        text = fh.read()
    if args.cls == oracle.CHORDAL:
        res = chordal.parse_result(inst, text)
        if isinstance(res, chordal.ChordalCertificate):
            ok = chordal.verify_certificate(inst, res)
        else:
            ok = chordal.verify_diagnostic(inst, res)
    elif args.cls == oracle.COMPARABILITY:
        res = comparability.parse_result(inst, text)
        if isinstance(res, comparability.ComparabilityCertificate):
            ok = comparability.verify_certificate(inst, res)
        else:
            ok = comparability.verify_witness(inst, res)
    else:
        res = permutation.parse_result(inst, text)
        if isinstance(res, permutation.PermutationCertificate):
            ok = permutation.verify_certificate(inst, res)
        else:
            ok = comparability.verify_witness(inst, res)
    print("VERIFIED" if ok else "REJECTED")
    return EXIT_YES if ok else EXIT_NO


def _cmd_classes(args) -> int:
    inst = _load_instance(args.instance)
    classes = comparability.composite_classes(inst)
    index = {cls.edges: k for k, cls in enumerate(classes, 1)}
    from .core import inverse

    for k, cls in enumerate(classes, 1):
        inv_edges = inverse(cls.edges)
        partner = index.get(inv_edges, k)
        conflict = "yes" if cls.edges & inv_edges else "no"
        edges = " ".join(
            f"{inst.names[u]}->{inst.names[v]}" for u, v in sorted(cls.edges)
        )
        print(
            f"CLASS {k} KIND {cls.kind} LABEL {cls.label} "
            f"INVERSE {partner} CONFLICT {conflict} EDGES {edges}"
        )
    return EXIT_YES


def _budget(args) -> oracle.OracleBudget:
    return oracle.OracleBudget(
        max_subsets=args.budget_subsets,
        max_orientations=args.budget_orientations,
        max_factorial_n=args.budget_factorial,
    )


def _cmd_oracle(args) -> int:
    inst = _load_instance(args.instance)
    budget = _budget(args)
    answer = oracle.is_simultaneous(inst, args.cls, budget)
    print(f"ORACLE: {'YES' if answer else 'NO'}")
    if args.cross_check:
        report = _run_one(inst, args.cls, args.instance)
        print(f"RECOGNIZER: {report.answer}")
        if (report.answer == "YES") != answer:
            print("error: recognizer and oracle disagree", file=sys.stderr)
            return EXIT_INTERNAL
        if not report.verified:
            print("error: recognizer answer failed verification", file=sys.stderr)
            return EXIT_INTERNAL
    return EXIT_YES if answer else EXIT_NO


def _parse_sweep(spec: str) -> tuple[int, int, int, float | None]:
    parts = spec.split(",")
    if len(parts) not in (3, 4):
        raise ParseError(f"bad sweep {spec!r}; expected n1,n2,nx[,prob]")
    n1, n2, nx = (int(p) for p in parts[:3])
    prob = float(parts[3]) if len(parts) == 4 else None
    return n1, n2, nx, prob


def _cmd_bench(args) -> int:
    print("n,m,x,millis,answer")
    rng = oracle.SplitMix64(args.seed)
    for spec in args.sweep or []:
        n1, n2, nx, prob = _parse_sweep(spec)
        inst = oracle.planted_yes(args.cls, n1, n2, nx, rng.next_u64(), prob)
        report = _run_one(inst, args.cls, spec)
        if not report.verified:
            print("error: emitted answer failed verification", file=sys.stderr)
            return EXIT_INTERNAL
        n = len(inst.all_vertices)
        m = len(inst.g1.edges | inst.g2.edges)
        print(f"{n},{m},{len(inst.x)},{report.elapsed_ms:.3f},{report.answer}")
    return EXIT_YES


def _cmd_generate(args) -> int:
    n1, n2, nx, prob = _parse_sweep(args.size)
    if args.kind == "planted":
        inst = oracle.planted_yes(args.cls, n1, n2, nx, args.seed, prob)
    else:
        if prob is None:
            prob = args.prob
        inst = oracle.random_instance(n1, n2, nx, prob, args.seed)
    sys.stdout.write(serialize_instance(inst))
    return EXIT_YES


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="simgraph",
        description="Simultaneous chordal / comparability / permutation recognition",
    )
    sub = top.add_subparsers(dest="command", required=True)

    def add_class(p):
        p.add_argument("--class", dest="cls", choices=_CLASSES, required=True)

    p = sub.add_parser("recognize", help="decide an instance and print the evidence")
    add_class(p)
    p.add_argument("--forced", help="extra forced edges file (chordal only)")
    p.add_argument("instance")
    p.set_defaults(func=_cmd_recognize)

    p = sub.add_parser("verify", help="check a certificate/witness against an instance")
    add_class(p)
    p.add_argument("instance")
    p.add_argument("certificate")
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("classes", help="dump the forcing classes of the union")
    p.add_argument("instance")
    p.set_defaults(func=_cmd_classes)

    p = sub.add_parser("oracle", help="exhaustive ground-truth answer")
    add_class(p)
    p.add_argument("--cross-check", action="store_true")
    p.add_argument("--budget-subsets", type=int, default=oracle.DEFAULT_BUDGET.max_subsets)
    p.add_argument(
        "--budget-orientations", type=int, default=oracle.DEFAULT_BUDGET.max_orientations
    )
    p.add_argument(
        "--budget-factorial", type=int, default=oracle.DEFAULT_BUDGET.max_factorial_n
    )
    p.add_argument("instance")
    p.set_defaults(func=_cmd_oracle)

    p = sub.add_parser("bench", help="time recognition over planted instances (CSV)")
    add_class(p)
    p.add_argument("--sweep", action="append", metavar="n1,n2,nx[,prob]")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_bench)

    p = sub.add_parser("generate", help="emit a planted or random instance")
    p.add_argument("--kind", choices=("planted", "random"), default="planted")
    p.add_argument(
        "--class", dest="cls", choices=_CLASSES, default=oracle.CHORDAL,
        help="target class for planted instances",
    )
    p.add_argument("--size", required=True, metavar="n1,n2,nx[,prob]")
    p.add_argument("--prob", type=float, default=0.3, help="edge probability for random instances")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_generate)
    return top


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (SimGraphError, OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run() -> None:
    sys.exit(main())

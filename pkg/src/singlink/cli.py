"""Command-line front end.

Subcommands: link, quiver, mutate, classify, seeds, aug, theta, check.
All outputs are deterministic byte-for-byte for fixed inputs and flags.
Exit codes: 0 success, 1 check failure, 2 usage error, 3 budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from . import augment, bricks, cluster, dividecatalog, divides, links, sheafmoduli
from .checks import run_all_checks
from .exactmath import ExactMathError


class UsageError(ValueError):
    pass


def _emit(payload, out=None) -> None:
    text = json.dumps(payload, sort_keys=True, indent=2)
    print(text, file=out or sys.stdout)


def _braid_from_args(args) -> tuple[str, links.BraidWord | None, dict]:
    """Resolve the single braid input form; returns (descriptor, braid, extras).

    Iterated cables beyond a single torus pair have no catalog braid, so
    the braid slot is None and the extras carry the cable data.
    """
    chosen = [
        name
        for name in ("ade", "torus", "puiseux", "braid")
        if getattr(args, name, None) is not None
    ]
    if len(chosen) != 1:
        raise UsageError("choose exactly one of --ade / --torus / --puiseux / --braid")
    kind = chosen[0]
    if kind == "ade":
        label = links.parse_ade_label(args.ade)
        return f"ade:{label}", links.ade_braid(label), {}
    if kind == "torus":
        a, b = args.torus
        return f"torus:{a},{b}", links.torus_braid(a, b), {}
    if kind == "braid":
        braid = links.braid_from_text(args.braid, args.strands)
        return f"braid:{braid.to_text() or '(empty)'}", braid, {}
    pairs = []
    for token in args.puiseux.replace(";", " ").split():
        n_text, m_text = token.split(",")
        pairs.append((int(n_text), int(m_text)))
    puiseux = links.PuiseuxPairs(tuple(pairs))
    cables = links.cable_pairs_from_puiseux(puiseux)
    extras = {
        "puiseux_pairs": [list(p) for p in puiseux.pairs],
        "cable_pairs": [list(p) for p in cables.pairs],
        "algebraic": links.is_algebraic(cables),
    }
    if not extras["algebraic"]:
        extras["warning"] = "cable pairs fail the algebraicity inequality"
    if len(cables.pairs) == 1:
        l, m = cables.pairs[0]
        if l >= 2 and m >= 2:
            return f"puiseux:{args.puiseux}", links.torus_braid(l, m), extras
    extras["braid"] = None
    return f"puiseux:{args.puiseux}", None, extras


@dataclass
class PipelineReport:
    """Full report for one link input: braid data through seed counts."""

    input: str
    braid: dict
    invariants: dict
    brick_quiver: dict | None = None
    divide: dict | None = None
    classification: dict | None = None
    seed_count: dict | None = None
    equation_files: list | None = None

    def to_json_dict(self) -> dict:
        payload = {"input": self.input, "braid": self.braid, "invariants": self.invariants}
        for key in ("brick_quiver", "divide", "classification", "seed_count", "equation_files"):
            value = getattr(self, key)
            if value is not None:
                payload[key] = value
        return payload


def braid_json(braid: links.BraidWord) -> dict:
    return {"strands": braid.strands, "letters": list(braid.letters)}


def invariants_json(inv: links.LinkInvariants) -> dict:
    return {
        "components": inv.components,
        "euler_characteristic": inv.euler_characteristic,
        "first_betti": inv.first_betti,
        "tb": inv.tb,
        "milnor_number": inv.milnor_number,
    }


def build_pipeline_report(
    descriptor: str,
    braid: links.BraidWord,
    ade_label: links.ADELabel | None = None,
    enumerate_cap: int = 2000,
    classify_cap: int = 20000,
    equations_dir: str | None = None,
) -> PipelineReport:
    report = PipelineReport(
        input=descriptor,
        braid=braid_json(braid),
        invariants=invariants_json(links.braid_invariants(braid)),
    )
    quiver = bricks.brick_quiver(braid) if braid.letters else None
    if quiver is None:
        return report
    report.brick_quiver = quiver.to_json_dict()
    if ade_label is not None and f"{ade_label}" in dividecatalog.CATALOG_LABELS:
        divide = dividecatalog.divide_catalog(ade_label)
        faces = divides.trace_faces(divide)
        report.divide = {
            "crossings": divide.crossings,
            "bounded_regions": len(faces.bounded_faces),
            "milnor_number": divides.milnor_number(divide),
        }
    matrix = bricks.to_exchange_matrix(quiver)
    try:
        dynkin = cluster.is_finite_type(matrix, cap=classify_cap)
    except cluster.ClusterError as exc:
        report.classification = {"type": None, "note": str(exc)}
        return report
    if dynkin is None:
        report.classification = {"type": None, "finite": False}
        return report
    expected = cluster.expected_seed_count(dynkin)
    report.classification = {"type": str(dynkin), "finite": True, "seeds": expected}
    if expected <= enumerate_cap:
        enumerated = len(cluster.enumerate_seeds(matrix, cap=enumerate_cap))
        report.seed_count = {"enumerated": enumerated, "expected": expected}
        if enumerated != expected:
            raise cluster.ClusterError(
                f"enumerated seed count {enumerated} != expected {expected}"
            )
    if equations_dir is not None:
        report.equation_files = _write_equation_files(
            equations_dir, descriptor, braid, ade_label
        )
    return report


def _write_equation_files(
    directory: str,
    descriptor: str,
    braid: links.BraidWord,
    ade_label: links.ADELabel | None,
) -> list:
    """Dump the augmentation system (and the chain system for A_n inputs)."""
    os.makedirs(directory, exist_ok=True)
    stem = descriptor.replace(":", "_").replace(",", "-").replace(" ", "_")
    paths = []
    word = links.append_full_twist(braid)
    system = augment.augmentation_equations(word)
    aug_path = os.path.join(directory, f"{stem}.aug.json")
    with open(aug_path, "w") as handle:
        json.dump(augment.system_to_json_dict(system), handle, sort_keys=True, indent=2)
        handle.write("\n")
    paths.append(aug_path)
    if ade_label is not None and ade_label.family == "A" and ade_label.rank >= 2:
        theta = sheafmoduli.theta_system(ade_label.rank)
        theta_path = os.path.join(directory, f"{stem}.theta.json")
        with open(theta_path, "w") as handle:
            json.dump(
                sheafmoduli.system_to_json_dict(theta), handle, sort_keys=True, indent=2
            )
            handle.write("\n")
        paths.append(theta_path)
    return paths


# -- subcommand handlers --------------------------------------------------------


def cmd_link(args) -> int:
    descriptor, braid, extras = _braid_from_args(args)
    if braid is None:
        payload = {"input": descriptor, **extras}
        payload["note"] = "iterated cables beyond one pair need an explicit braid word"
        _emit(payload)
        return 0
    label = links.parse_ade_label(args.ade) if args.ade else None
    if args.pipeline:
        report = build_pipeline_report(
            descriptor, braid, ade_label=label, equations_dir=args.equations_dir
        )
        payload = report.to_json_dict()
    else:
        payload = {
            "input": descriptor,
            "braid": braid_json(braid),
            "invariants": invariants_json(links.braid_invariants(braid)),
        }
    payload.update(extras)
    _emit(payload)
    return 0


def cmd_quiver(args) -> int:
    if args.divide or args.divide_label:
        if args.divide_label:
            divide = dividecatalog.divide_catalog(args.divide_label)
        else:
            with open(args.divide) as handle:
                divide = divides.divide_from_json(handle.read())
        quiver = divides.acampo_quiver(divide)
        if args.format == "dot":
            print(quiver.to_dot())
        elif args.format == "text":
            print(f"acampo quiver: {quiver.crossings} crossings, {quiver.regions} regions")
            for s, t in quiver.arrows:
                print(f"  {quiver.vertex_label(s)} -> {quiver.vertex_label(t)}")
        else:
            _emit(quiver.to_json_dict())
        return 0
    _, braid, _ = _braid_from_args(args)
    if braid is None:
        raise UsageError("this input has no catalog braid; supply --braid")
    quiver = bricks.brick_quiver(braid)
    if args.format == "dot":
        print(quiver.to_dot())
    elif args.format == "text":
        print(f"brick quiver: {quiver.rank} bricks")
        for s, t in quiver.arrows:
            print(f"  {quiver.bricks[s].label()} -> {quiver.bricks[t].label()}")
    else:
        _emit(quiver.to_json_dict())
    return 0


def _matrix_from_args(args) -> cluster.ExchangeMatrix:
    sources = [bool(args.matrix), bool(getattr(args, "type", None)), bool(getattr(args, "ade", None))]
    if sum(sources) != 1:
        raise UsageError("choose exactly one matrix source (--matrix / --type / --ade)")
    if args.matrix:
        text = sys.stdin.read() if args.matrix == "-" else open(args.matrix).read()
        return cluster.exchange_matrix_from_json(json.loads(text))
    if getattr(args, "type", None):
        return cluster.initial_matrix(cluster.parse_dynkin_type(args.type))
    return bricks.to_exchange_matrix(bricks.brick_quiver(links.ade_braid(args.ade)))


def cmd_mutate(args) -> int:
    matrix = _matrix_from_args(args)
    for k in args.at:
        matrix = cluster.mutate(matrix, k)
    _emit(matrix.to_json_dict())
    return 0


def cmd_classify(args) -> int:
    matrix = _matrix_from_args(args)
    dynkin = cluster.is_finite_type(matrix, cap=args.cap)
    if dynkin is None:
        _emit({"type": None, "seeds": None})
    else:
        _emit({"type": str(dynkin), "seeds": cluster.expected_seed_count(dynkin)})
    return 0


def cmd_seeds(args) -> int:
    matrix = _matrix_from_args(args)
    seeds = cluster.enumerate_seeds(matrix, cap=args.cap)
    payload = {
        "count": len(seeds),
        "initial_matrix": matrix.to_json_dict(),
    }
    if not args.summary:
        payload["seeds"] = [
            {
                "matrix": seed.matrix.to_json_dict(),
                "cluster": [var.to_text() for var in seed.cluster],
            }
            for seed in seeds
        ]
    _emit(payload)
    return 0


def cmd_aug(args) -> int:
    _, braid, _ = _braid_from_args(args)
    word = links.append_full_twist(braid) if args.full_twist else braid
    system = augment.augmentation_equations(word, t_convention=args.t_convention)
    payload = augment.system_to_json_dict(system)
    if args.count_fq:
        q = args.count_fq
        if args.method == "dp":
            count = augment.count_solutions_dp(word, q, t_convention=args.t_convention)
        else:
            count = augment.count_solutions_bruteforce(
                system, q, threads=args.threads, budget=args.budget
            )
        payload["count"] = {"q": q, "method": args.method, "solutions": count}
    _emit(payload)
    return 0


def cmd_theta(args) -> int:
    system = sheafmoduli.theta_system(args.n, args.method)
    payload = sheafmoduli.system_to_json_dict(system)
    payload["method"] = args.method
    if args.count_fq:
        q = args.count_fq
        payload["count"] = {
            "q": q,
            "solutions": sheafmoduli.count_theta_points_chain(args.n, q),
        }
        if args.positroid:
            stratum = sheafmoduli.count_positroid_points(args.n, q, budget=args.budget)
            payload["count"]["positroid"] = stratum
            payload["count"]["positroid_ratio"] = (
                f"{stratum}/{payload['count']['solutions']}"
            )
    _emit(payload)
    return 0


def cmd_check(args) -> int:
    results = run_all_checks(deep=args.deep, fast=args.fast)
    payload = {
        "passed": all(r.passed for r in results),
        "checks": [r.to_json_dict() for r in results],
    }
    _emit(payload)
    return 0 if payload["passed"] else 1


# -- argument parsing -----------------------------------------------------------


def _add_braid_inputs(parser: argparse.ArgumentParser, with_puiseux: bool = True) -> None:
    parser.add_argument("--ade", help="ADE label, e.g. A3, D5, E8")
    parser.add_argument("--torus", nargs=2, type=int, metavar=("A", "B"),
                        help="(a,b)-torus link braid")
    parser.add_argument("--braid", help="whitespace-separated generator indices")
    parser.add_argument("--strands", type=int, help="strand count for --braid")
    if with_puiseux:
        parser.add_argument(
            "--puiseux", help='Puiseux pairs "n1,m1 n2,m2 ..." (innermost first)'
        )
    else:
        parser.set_defaults(puiseux=None)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="singlink",
        description="Exact toolkit for plane-curve singularity links: braids, "
        "divides, quivers, cluster seeds, and moduli equation systems.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_link = sub.add_parser("link", help="braid presentation and invariants")
    _add_braid_inputs(p_link)
    p_link.add_argument("--pipeline", action="store_true",
                        help="full report: quiver, classification, seed counts")
    p_link.add_argument("--equations-dir", metavar="DIR",
                        help="with --pipeline: dump equation systems here")
    p_link.set_defaults(func=cmd_link)

    p_quiver = sub.add_parser("quiver", help="brick quiver of a braid or quiver of a divide")
    _add_braid_inputs(p_quiver)
    p_quiver.add_argument("--divide", help="divide JSON file")
    p_quiver.add_argument("--divide-label", help="catalog divide label, e.g. E7")
    p_quiver.add_argument("--format", choices=("json", "dot", "text"), default="json")
    p_quiver.set_defaults(func=cmd_quiver)

    p_mutate = sub.add_parser("mutate", help="mutate an exchange matrix")
    p_mutate.add_argument("--matrix", help="matrix JSON file, or - for stdin")
    p_mutate.add_argument("--type", help="start from a Dynkin initial matrix")
    p_mutate.add_argument("--ade", help="start from an ADE brick quiver matrix")
    p_mutate.add_argument("--at", type=int, nargs="+", required=True,
                          metavar="K", help="1-based mutation directions, applied in order")
    p_mutate.set_defaults(func=cmd_mutate)

    p_classify = sub.add_parser("classify", help="finite-type detection")
    p_classify.add_argument("--matrix", help="matrix JSON file, or - for stdin")
    p_classify.add_argument("--type", help="Dynkin type, e.g. E6")
    p_classify.add_argument("--ade", help="ADE label; classifies its brick quiver")
    p_classify.add_argument("--cap", type=int, default=20000)
    p_classify.set_defaults(func=cmd_classify)

    p_seeds = sub.add_parser("seeds", help="enumerate cluster seeds")
    p_seeds.add_argument("--matrix", help="matrix JSON file, or - for stdin")
    p_seeds.add_argument("--type", help="Dynkin type, e.g. D4")
    p_seeds.add_argument("--ade", help="ADE label; enumerates its brick quiver")
    p_seeds.add_argument("--cap", type=int, default=2000)
    p_seeds.add_argument("--summary", action="store_true", help="emit the count only")
    p_seeds.set_defaults(func=cmd_seeds)

    p_aug = sub.add_parser("aug", help="augmentation equation system")
    _add_braid_inputs(p_aug, with_puiseux=False)
    p_aug.add_argument("--full-twist", dest="full_twist", action="store_true", default=True,
                       help="append Delta^2 to the input word (default)")
    p_aug.add_argument("--no-full-twist", dest="full_twist", action="store_false")
    p_aug.add_argument("--t-convention", choices=augment.T_CONVENTIONS, default="t")
    p_aug.add_argument("--count-fq", type=int, metavar="Q")
    p_aug.add_argument("--method", choices=("brute", "dp"), default="brute")
    p_aug.add_argument("--threads", type=int, default=1)
    p_aug.add_argument("--budget", type=int, default=augment.BRUTE_FORCE_BUDGET)
    p_aug.set_defaults(func=cmd_aug)

    p_theta = sub.add_parser("theta", help="sheaf-moduli chain system")
    p_theta.add_argument("--n", type=int, required=True)
    p_theta.add_argument("--method", choices=sheafmoduli.THETA_METHODS, default="recursion")
    p_theta.add_argument("--count-fq", type=int, metavar="Q")
    p_theta.add_argument("--positroid", action="store_true",
                         help="also count the cyclic positroid stratum")
    p_theta.add_argument("--budget", type=int, default=4 * 10**6)
    p_theta.set_defaults(func=cmd_theta)

    p_check = sub.add_parser("check", help="run the cross-validation suite")
    p_check.add_argument("--deep", action="store_true", help="include E7/E8 enumerations")
    p_check.add_argument("--fast", action="store_true", help="shrink randomized instance counts")
    p_check.set_defaults(func=cmd_check)

    return parser


BUDGET_ERRORS = (
    augment.BudgetExceededError,
    sheafmoduli.BudgetExceededError,
    cluster.CapExceededError,
)


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BUDGET_ERRORS as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    except (UsageError, ValueError, ExactMathError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

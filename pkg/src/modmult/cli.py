"""Command-line front end.

Exit codes are a contract: 0 success, 1 verification failure, 2 usage or
parse error, 3 precondition violation (bad determinant, matrix outside the
theta group).  MODMULT_SEED overrides the default --seed of 0.
"""

import argparse
import json
import os
import sys

from . import kernels
from .multiplier import multiplier_value
from .sl2z import (
    NotInGammaThetaError,
    NotUnimodularError,
    format_matrix,
    parse_matrix,
)

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2
EXIT_PRECONDITION = 3


def _default_seed() -> int:
    try:
        return int(os.environ.get("MODMULT_SEED", "0"))
    except ValueError:
        return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="modmult",
        description=(
            "Evaluate the characters of even powers of eta and theta, decide "
            "kernel membership, resolve cosets, and verify the kernel "
            "theorems exhaustively."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p, need_matrix=True, need_k=True):
        if need_matrix:
            p.add_argument(
                "-m", "--matrix", required=True,
                help='matrix as four integers "a b c d" (row-major)',
            )
        if need_k:
            p.add_argument("-k", type=int, required=True, help="half of the power: eta^(2k) or theta^(2k)")
        p.add_argument(
            "--family", choices=("eta", "theta"), required=True,
            help="which function's character to use",
        )
        p.add_argument(
            "--format", choices=("text", "json"), default="text",
            help="output format (default text)",
        )

    p_eval = sub.add_parser("eval", help="print the exact character value of a matrix")
    add_common(p_eval)

    p_kernel = sub.add_parser(
        "kernel", help="decide kernel membership by both routes and show the coset"
    )
    add_common(p_kernel)

    p_coset = sub.add_parser("coset", help="resolve a matrix to its coset representative")
    add_common(p_coset)

    p_classes = sub.add_parser("classes", help="dump the kernel residue lists per case")
    p_classes.add_argument(
        "--family", choices=("eta", "theta"), required=True
    )
    p_classes.add_argument(
        "-k", type=int, default=None, help="restrict to the case containing this k"
    )
    p_classes.add_argument("--format", choices=("text", "json"), default="text")

    p_verify = sub.add_parser(
        "verify", help="run verification suites and emit a JSON report"
    )
    p_verify.add_argument(
        "--scope", choices=("all", "eta", "theta", "lemma", "analytic"),
        default="all",
    )
    p_verify.add_argument("--seed", type=int, default=None,
                          help="PRNG seed (default 0, or MODMULT_SEED)")
    p_verify.add_argument("--tol", type=float, default=1e-9,
                          help="relative tolerance for analytic checks")
    p_verify.add_argument("--words", type=int, default=1000,
                          help="random words per coset suite")
    p_verify.add_argument("--checks", type=int, default=100,
                          help="transformation checks per analytic sweep")
    p_verify.add_argument("--out", default=None, help="write the JSON report to a file")
    p_verify.add_argument("--format", choices=("text", "json"), default="json")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        if args.command == "eval":
            return cmd_eval(args)
        if args.command == "kernel":
            return cmd_kernel(args)
        if args.command == "coset":
            return cmd_coset(args)
        if args.command == "classes":
            return cmd_classes(args)
        if args.command == "verify":
            return cmd_verify(args)
        parser.error(f"unknown command {args.command!r}")
    except (NotUnimodularError, NotInGammaThetaError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


def cmd_eval(args) -> int:
    m = parse_matrix(args.matrix)
    wv = multiplier_value(m, args.k, args.family)
    root = wv.root
    value = wv.value
    if args.format == "json":
        print(json.dumps({
            "exponent": root.exponent,
            "value": str(root),
            "re": value.real,
            "im": value.imag,
            "weight": args.k,
        }, sort_keys=True))
    else:
        print(f"exponent {root.exponent}")
        print(f"value {root}")
        print(f"decimal {value.real:+.15g}{value.imag:+.15g}i")
    return EXIT_OK


def _rep_text(res: kernels.CosetResolution, case: kernels.KernelCase) -> str:
    gen = "S" if case.family == "eta" else "T"
    sign = "-" if res.sign < 0 else ""
    return f"{sign}{gen}^{res.power}"


def cmd_kernel(args) -> int:
    m = parse_matrix(args.matrix)
    case = kernels.classify(args.k, args.family)
    by_formula = kernels.in_kernel_formula(m, args.k, args.family)
    by_classes = kernels.in_kernel_classes(m, args.k, args.family)
    res = kernels.resolve_coset(m, args.k, args.family)
    agree = by_formula == by_classes
    if args.format == "json":
        print(json.dumps({
            "case": case.name,
            "in_kernel_formula": by_formula,
            "in_kernel_classes": by_classes,
            "agree": agree,
            "coset_representative": format_matrix(res.representative),
            "coset_power": res.power,
            "coset_sign": res.sign,
        }, sort_keys=True))
    else:
        print(f"case {case.name}")
        print(f"in kernel (formula route): {by_formula}")
        print(f"in kernel (classes route): {by_classes}")
        print(f"routes agree: {agree}")
        print(f"coset representative {_rep_text(res, case)} = {format_matrix(res.representative)}")
    if not agree:
        print("error: membership routes disagree; this is a bug", file=sys.stderr)
        return EXIT_VERIFY_FAILED
    return EXIT_OK


def cmd_coset(args) -> int:
    m = parse_matrix(args.matrix)
    case = kernels.classify(args.k, args.family)
    res = kernels.resolve_coset(m, args.k, args.family)
    if args.format == "json":
        print(json.dumps({
            "case": case.name,
            "power": res.power,
            "sign": res.sign,
            "representative": format_matrix(res.representative),
            "witness": format_matrix(res.witness),
        }, sort_keys=True))
    else:
        print(f"case {case.name}")
        print(f"representative {_rep_text(res, case)} = {format_matrix(res.representative)}")
        print(f"witness {format_matrix(res.witness)}")
    return EXIT_OK


def cmd_classes(args) -> int:
    cases = kernels.CASES[args.family]
    if args.k is not None:
        selected = [kernels.classify(args.k, args.family)]
    else:
        selected = list(cases.values())
    payload = []
    for case in selected:
        entry = {
            "case": case.name,
            "modulus": case.modulus,
            "index": case.index,
            "constituents": [
                {
                    "modulus": n,
                    "classes": sorted(" ".join(map(str, r.entries)) for r in classes),
                }
                for n, classes in case.constituents
            ],
        }
        payload.append(entry)
    if args.format == "json":
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for entry in payload:
            print(f"case {entry['case']} (modulus {entry['modulus']}, index {entry['index']})")
            if not entry["constituents"]:
                print("  kernel is the whole group")
            for part in entry["constituents"]:
                print(f"  mod {part['modulus']}:")
                for cls in part["classes"]:
                    print(f"    {cls}")
    return EXIT_OK


def _verify_suites(scope: str, seed: int, tol: float, words: int, checks: int) -> list[dict]:
    from .analytic import transformation_sweep  # deferred: heavy only when needed

    suites = []
    if scope in ("all", "eta"):
        for idx, case in enumerate(kernels.CASES["eta"].values()):
            suites.append({"kind": "case", **kernels.verify_case(case).to_dict()})
            report = kernels.verify_coset_claim(
                case, word_count=words, seed=seed + idx
            )
            suites.append({"kind": "cosets", **report.to_dict()})
    if scope in ("all", "theta"):
        for idx, case in enumerate(kernels.CASES["theta"].values()):
            suites.append({"kind": "case", **kernels.verify_case(case).to_dict()})
            report = kernels.verify_coset_claim(
                case, word_count=words, seed=seed + 100 + idx
            )
            suites.append({"kind": "cosets", **report.to_dict()})
    if scope in ("all", "lemma"):
        suites.append({"kind": "lemma", **kernels.verify_lemma().to_dict()})
    if scope in ("all", "analytic"):
        for family in ("eta", "theta"):
            for half in (False, True):
                sweep = transformation_sweep(
                    family, count=checks, seed=seed, tol=tol, half=half
                )
                suites.append({"kind": "analytic", **sweep.to_dict()})
    return suites


def cmd_verify(args) -> int:
    seed = args.seed if args.seed is not None else _default_seed()
    suites = _verify_suites(args.scope, seed, args.tol, args.words, args.checks)
    all_pass = all(s["pass"] for s in suites)
    report = {
        "schema": 1,
        "scope": args.scope,
        "seed": seed,
        "tol": args.tol,
        "pass": all_pass,
        "suites": suites,
    }
    text = json.dumps(report, sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.format == "json" and not args.out:
        sys.stdout.write(text)
    else:
        for s in suites:
            name = s.get("case") or f"{s.get('family')}:{s.get('weight')}"
            status = "PASS" if s["pass"] else "FAIL"
            print(f"{status} {s['kind']} {name}")
        print(f"overall: {'PASS' if all_pass else 'FAIL'}")
    return EXIT_OK if all_pass else EXIT_VERIFY_FAILED


if __name__ == "__main__":
    sys.exit(main())

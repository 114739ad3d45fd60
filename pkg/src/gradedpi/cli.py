"""Command-line front end.

Subcommands: check-identity, check-central, congruence, enumerate, basis,
verify.  Exit status is 0 for verified/true verdicts, 1 for false verdicts,
and 2 for usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .grading import GradingError, enumerate_complete_sequences, parse_grading_spec
from .freealg import (
    PolynomialSyntaxError,
    format_monomial,
    parse_monomial,
    parse_polynomial,
)
from .genericmodel import centrality_witness, identity_witness
from .rewrite import find_congruence, proof_to_json
from .bases import BasesError, basis_report, enumerate_monomial_identities
from .suites import SUITES, all_passed, run_suite


class UsageError(Exception):
    pass


def _emit(payload: dict, fmt: str, text_lines: List[str]):
    if fmt == "json":
        print(json.dumps(payload, ensure_ascii=False, indent=2, sort_keys=True))
    else:
        for line in text_lines:
            print(line)


def _cmd_check(args, central: bool) -> int:
    grading = parse_grading_spec(args.grading)
    results = []
    lines = []
    all_true = True
    for text in args.poly:
        poly = parse_polynomial(text, grading)
        witness = (
            centrality_witness(poly, grading)
            if central
            else identity_witness(poly, grading)
        )
        verdict = witness["kind"] == "verified"
        all_true = all_true and verdict
        results.append({"poly": text, "verdict": verdict, "witness": witness})
        label = ("central" if central else "identity") if verdict else (
            "not central" if central else "not an identity"
        )
        lines.append(f"{label}: {text}")
        if not verdict:
            lines.append(f"  witness: {json.dumps(witness, sort_keys=True)}")
    payload = {
        "command": "check-central" if central else "check-identity",
        "grading": args.grading,
        "results": results,
    }
    _emit(payload, args.format, lines)
    return 0 if all_true else 1


def _cmd_congruence(args) -> int:
    grading = parse_grading_spec(args.grading)
    if len(args.poly) != 2:
        raise UsageError("congruence needs exactly two --poly monomials")
    m = parse_monomial(args.poly[0], grading)
    n = parse_monomial(args.poly[1], grading)
    proof = find_congruence(m, n, grading)
    if proof is None:
        payload = {"command": "congruence", "grading": args.grading, "congruent": False}
        _emit(payload, args.format, ["not congruent: no shared nonzero entry"])
        return 1
    data = proof_to_json(proof, grading)
    payload = {
        "command": "congruence",
        "grading": args.grading,
        "congruent": True,
        "proof": data,
    }
    lines = [f"congruent in {len(proof.steps)} steps"]
    for step in data["steps"]:
        lines.append(f"  {step['rule']} at {step['window']}")
    _emit(payload, args.format, lines)
    return 0


def _cmd_enumerate(args) -> int:
    grading = parse_grading_spec(args.grading)
    if args.what == "monomial-identities":
        found = enumerate_monomial_identities(grading, args.max_degree)
        listing = [format_monomial(m, grading) for m in found]
        payload = {
            "command": "enumerate",
            "grading": args.grading,
            "what": args.what,
            "max_degree": args.max_degree,
            "identities": listing,
        }
        lines = [f"{len(listing)} monomial identities up to degree {args.max_degree}"]
        lines += [f"  {text}" for text in listing]
        _emit(payload, args.format, lines)
        return 0
    if args.what == "complete-sequences":
        sequences = [list(seq) for seq in enumerate_complete_sequences(grading.n)]
        payload = {
            "command": "enumerate",
            "grading": args.grading,
            "what": args.what,
            "sequences": sequences,
        }
        lines = [f"{len(sequences)} complete sequences of length {grading.n}"]
        lines += [f"  {seq}" for seq in sequences]
        _emit(payload, args.format, lines)
        return 0
    raise UsageError(f"unknown enumeration target {args.what!r}")


def _cmd_basis(args) -> int:
    grading = parse_grading_spec(args.grading)
    report = basis_report(grading, args.kind, args.cutoff)
    lines = [f"basis report for {report['grading']} ({report['kind']})"]
    ok = True
    for fam in report["families"]:
        status = "ok" if fam["verified"] == fam["instances"] else "FAILED"
        ok = ok and fam["verified"] == fam["instances"]
        lines.append(
            f"  {fam['id']}: {fam['verified']}/{fam['instances']} verified [{status}]"
        )
    if report["truncated"]:
        lines.append("  (enumerated family truncated at the cutoff)")
    _emit(report, args.format, lines)
    return 0 if ok else 1


def _cmd_verify(args) -> int:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    overall = True
    payload = {"command": "verify", "seed": args.seed, "suites": []}
    lines = []
    for name in names:
        try:
            items = run_suite(name, args.seed)
        except KeyError as exc:
            raise UsageError(str(exc))
        passed = all_passed(items)
        overall = overall and passed
        payload["suites"].append(
            {
                "suite": name,
                "passed": passed,
                "items": [
                    {"id": it.item, "passed": it.passed, "detail": it.detail}
                    for it in items
                ],
            }
        )
        for it in items:
            mark = "PASS" if it.passed else "FAIL"
            detail = f"  ({it.detail})" if it.detail else ""
            lines.append(f"{mark}  {name}/{it.item}{detail}")
        lines.append(
            f"suite {name}: {sum(it.passed for it in items)}/{len(items)} passed"
        )
    _emit(payload, args.format, lines)
    return 0 if overall else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="gradedpi",
        description=(
            "Decide, construct, and verify graded polynomial identities and "
            "central polynomials of matrix algebras under elementary gradings."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, polys=False):
        p.add_argument("--grading", required=True, help="grading spec, e.g. zn:3, z:2, mu:2")
        if polys:
            p.add_argument(
                "--poly", action="append", default=[], required=True,
                help="polynomial text (repeatable)",
            )
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("check-identity", help="decide graded identity")
    common(p, polys=True)
    p = sub.add_parser("check-central", help="decide graded centrality")
    common(p, polys=True)
    p = sub.add_parser("congruence", help="rewrite one monomial into another")
    common(p, polys=True)
    p = sub.add_parser("enumerate", help="enumerate monomial identities or complete sequences")
    common(p)
    p.add_argument("--max-degree", type=int, default=4)
    p.add_argument(
        "--what",
        choices=("monomial-identities", "complete-sequences"),
        default="monomial-identities",
    )
    p = sub.add_parser("basis", help="build and verify a generating family")
    common(p)
    p.add_argument("--kind", choices=("identities", "central"), default="identities")
    p.add_argument("--cutoff", type=int, default=None, help="enumeration cap for the monomial family")
    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument("--suite", required=True, help="suite name or 'all'")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        if args.command == "check-identity":
            return _cmd_check(args, central=False)
        if args.command == "check-central":
            return _cmd_check(args, central=True)
        if args.command == "congruence":
            return _cmd_congruence(args)
        if args.command == "enumerate":
            return _cmd_enumerate(args)
        if args.command == "basis":
            return _cmd_basis(args)
        if args.command == "verify":
            return _cmd_verify(args)
        raise UsageError(f"unknown command {args.command!r}")
    except (GradingError, PolynomialSyntaxError, BasesError, UsageError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()

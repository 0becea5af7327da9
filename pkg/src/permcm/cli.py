"""Command-line front end: analyze, homology, oracle, catalog.

Exit codes: 0 success, 1 input error (parsing, ranges, timeouts),
2 internal consistency violation (a mathematically guaranteed invariant
failed, which means a bug).  ``--json`` switches the human-readable
report to deterministic JSON (sorted keys, fixed separators).
"""

from __future__ import annotations

import argparse
import json
import sys

from . import catalog, complexes, oracle, partitions, reflections
from .permgroup import (
    GenerationCapExceeded,
    InternalConsistencyError,
    PermutationGroup,
    format_cycles,
    is_transitive,
    parse_cycles,
)


class _InputError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _InputError(message)


def split_generator_list(text: str) -> list[str]:
    """Split a generator list on commas/newlines outside parentheses."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise _InputError(f"unbalanced parentheses in {text!r}")
        if ch in ",\n" and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return [p.strip() for p in parts if p.strip()]


def _resolve_group(args) -> PermutationGroup:
    if args.name is not None:
        if args.degree is not None or args.generators is not None:
            raise _InputError("--name excludes -n/--degree and -g/--generators")
        return catalog.build(args.name)
    if args.degree is None or args.generators is None:
        raise _InputError("need --name, or both -n/--degree and -g/--generators")
    gens = tuple(parse_cycles(text, args.degree)
                 for text in split_generator_list(args.generators))
    if not gens:
        gens = (parse_cycles("()", args.degree),)
    return PermutationGroup.from_generators(args.degree, gens)


def _emit(payload: dict, human_lines: list[str], as_json: bool) -> None:
    if as_json:
        print(json.dumps(payload, sort_keys=True, indent=2))
    else:
        for line in human_lines:
            print(line)


def _cmd_analyze(args) -> int:
    G = _resolve_group(args)
    report = reflections.analyze(G)
    certificates = partitions.certified_bad_primes(G)
    payload = {
        "report": report.to_json(),
        "certificates": [c.to_json() for c in certificates],
        "huffman": None,
    }
    lines = [
        f"group: degree {G.degree}, order {G.order}",
        f"two-reflection subgroup N: order {report.n_subgroup.order}, index {report.index}",
        f"Cohen-Macaulay over every field: {'yes' if report.cm_all_fields else 'no'}",
        f"candidate bad primes: {list(report.candidate_primes) or 'none'}",
    ]
    for cert in certificates:
        lines.append(
            f"certified bad prime {cert.prime}: witness {format_cycles(cert.witness)}, "
            f"minimal partition {cert.partition}, inertia image of order {cert.inertia_order}")
    if not certificates:
        lines.append("certified bad primes: none")
    if report.cm_all_fields and is_transitive(G):
        klass = reflections.classify_transitive_reflection_group(G)
        payload["huffman"] = klass.to_json()
        lines.append(f"transitive 2-reflection class: {klass.tag} (parameter {klass.parameter})")
    _emit(payload, lines, args.json)
    return 0


def _cmd_homology(args) -> int:
    G = _resolve_group(args)
    primes = args.prime or [2]
    delta = complexes.build_delta(G.degree)
    qc = complexes.quotient_by_group(delta, G)
    payload: dict = {"dims": qc.cell_counts(), "betti": {}, "reisner": {}}
    lines = [
        f"quotient complex of Delta({G.degree}) by a group of order {G.order}",
        f"cells per dimension: {qc.cell_counts()}",
    ]
    sc = complexes.barycentric_subdivision(qc)
    for p in primes:
        betti = complexes.homology(sc, p)
        reisner = complexes.reisner_cm_test(qc, p)
        payload["betti"][str(p)] = betti
        payload["reisner"][str(p)] = reisner.to_json()
        lines.append(f"p={p}: reduced Betti (from degree -1): {betti}")
        if reisner.passed:
            lines.append(f"p={p}: link homology vanishing holds; face ring is Cohen-Macaulay")
        else:
            lines.append(
                f"p={p}: FAILS at face {reisner.failing_face} in degree "
                f"{reisner.failing_degree}; face ring is not Cohen-Macaulay")
    if args.poset_edges:
        payload["face_poset_edges"] = [
            [list(a), list(b)] for a, b in qc.face_poset_edges()]
        lines.append(f"face poset edges: {len(qc.face_poset_edges())}")
    _emit(payload, lines, args.json)
    return 0


def _cmd_oracle(args) -> int:
    G = _resolve_group(args)
    if not args.prime:
        raise _InputError("oracle requires exactly one -p/--prime")
    if len(args.prime) != 1:
        raise _InputError("oracle takes a single prime per run")
    p = args.prime[0]
    n = G.degree
    if n > 7 and not args.force:
        raise _InputError(f"degree {n} exceeds the oracle's range; pass --force to insist")
    if 5 < n <= 7 and not (args.slow or args.force):
        raise _InputError(f"degree {n} runs are slow; pass --slow to confirm")
    verdict = oracle.cm_verdict(G, p, D=args.dmax, deadline_s=args.timeout_secs)
    payload = verdict.to_json()
    lines = [
        f"group: degree {n}, order {G.order}; prime {p}",
        f"expected free-module rank n!/|G| = {verdict.rank}",
    ]
    if verdict.shortcut:
        lines.append(f"verdict: CM ({verdict.shortcut}: prime does not divide the group order)")
    else:
        lines.append(f"coinvariant dimensions by degree: {list(verdict.dims)}")
        lines.append(f"total {verdict.total()} against rank {verdict.rank}"
                     f" at truncation {verdict.truncation}")
        lines.append(f"verdict: {verdict.verdict} ({verdict.runtime_ms} ms)")
    _emit(payload, lines, args.json)
    return 0


def _cmd_catalog(args) -> int:
    entries = []
    lines = []
    for name in sorted(catalog.CATALOG):
        spec = catalog.lookup(name)
        order = spec.build().order
        entries.append(spec.to_json(order=order))
        expect = spec.expected.get("cm_all_fields")
        lines.append(f"{name:>8}: degree {spec.degree}, order {order}, "
                     f"cm_all_fields={expect}  ({spec.note})")
    _emit({"catalog": entries}, lines, args.json)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="permcm",
        description="Cohen-Macaulayness of permutation invariant rings: "
                    "decision, bad-prime certificates, and verification engines.")
    sub = parser.add_subparsers(dest="command", required=True)

    def group_flags(p):
        p.add_argument("-n", "--degree", type=int, help="number of permuted points")
        p.add_argument("-g", "--generators",
                       help="cycle expressions separated by commas or newlines")
        p.add_argument("--name", help="catalogue group name (see 'catalog')")
        p.add_argument("--json", action="store_true", help="emit machine-readable JSON")

    p_analyze = sub.add_parser("analyze", help="two-reflection decision and bad primes")
    group_flags(p_analyze)
    p_analyze.set_defaults(func=_cmd_analyze)

    p_hom = sub.add_parser("homology", help="quotient complex Betti numbers and CM test")
    group_flags(p_hom)
    p_hom.add_argument("-p", "--prime", type=int, action="append",
                       help="field characteristic (repeatable)")
    p_hom.add_argument("--poset-edges", action="store_true",
                       help="include the face poset as an edge list")
    p_hom.set_defaults(func=_cmd_homology)

    p_oracle = sub.add_parser("oracle", help="coinvariant freeness verdict over F_p")
    group_flags(p_oracle)
    p_oracle.add_argument("-p", "--prime", type=int, action="append",
                          help="field characteristic")
    p_oracle.add_argument("--dmax", type=int, default=None,
                          help="truncation degree (default n(n-1)/2 + n)")
    p_oracle.add_argument("--slow", action="store_true",
                          help="allow degree 6 and 7 runs")
    p_oracle.add_argument("--force", action="store_true",
                          help="allow degrees above 7 (may be infeasible)")
    p_oracle.add_argument("--timeout-secs", type=float, default=600.0,
                          help="wall-clock limit for the run (default 600)")
    p_oracle.set_defaults(func=_cmd_oracle)

    p_cat = sub.add_parser("catalog", help="list the built-in fixture groups")
    p_cat.add_argument("--json", action="store_true", help="emit machine-readable JSON")
    p_cat.set_defaults(func=_cmd_catalog)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (ValueError, KeyError, GenerationCapExceeded, oracle.OracleTimeout) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except InternalConsistencyError as exc:
        print(f"internal consistency violation: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""``matchlab`` command-line front end.

Exit codes: 0 success / tightness, 2 violation found, 1 internal error or
failed verification, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import dot
from .adversary import Adversary
from .certificates import EXIT_INTERNAL, EXIT_TIGHT, EXIT_VIOLATION, Certificate, verify_certificate
from .errors import CertificateError, InternalError, MatchlabError
from .generators import find_worst_case_path, gen_random_graph
from .local import ALGORITHMS, ColouredGraph, build_algorithm, run_on_graph, verify_matching, view_tree
from .systems import FiniteColourSystem
from .words import MAX_K

EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(EXIT_USAGE)


def _k(value: str) -> int:
    k = int(value)
    if not 1 <= k <= MAX_K:
        raise argparse.ArgumentTypeError(f"k must be in 1..{MAX_K}")
    return k


def _nonneg(value: str) -> int:
    n = int(value)
    if n < 0:
        raise argparse.ArgumentTypeError("must be non-negative")
    return n


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="matchlab", description=__doc__.splitlines()[0])
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp, *, graph=False, alg=False, fmt=False):
        sp.add_argument("--out", type=Path, help="write the result here instead of stdout")
        if alg:
            sp.add_argument("--alg", default="greedy", choices=sorted(ALGORITHMS))
            sp.add_argument("--r", type=_nonneg, help="runtime in rounds (greedy default: k-1)")
        if graph:
            sp.add_argument("--graph", type=Path, help="graph JSON file")
        if fmt:
            sp.add_argument("--format", choices=("json", "dot"), default="json")

    sp = sub.add_parser("simulate", help="run an algorithm on a graph and check the matching")
    common(sp, graph=True, alg=True, fmt=True)
    sp.add_argument("--k", type=_k, help="colour count (default: the graph's)")
    sp.add_argument("--generate", choices=("random", "worst"), help="generate the graph instead of --graph")
    sp.add_argument("--n", type=int, default=50, help="node count for --generate random")
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("adversary", help="run the lower-bound construction against an algorithm")
    common(sp, alg=True)
    sp.add_argument("--k", type=_k, required=True)
    sp.add_argument("--depth-budget", type=_nonneg, help="initial oracle depth budget")

    sp = sub.add_parser("verify", help="re-check a certificate from its dumps")
    sp.add_argument("--cert", type=Path, required=True)

    sp = sub.add_parser("export-dot", help="render a graph, view ball, system or certificate as DOT")
    common(sp, graph=True)
    sp.add_argument("--cert", type=Path, help="certificate JSON file")
    sp.add_argument("--system", type=Path, help="finite colour system JSON file")
    sp.add_argument("--node", type=int, help="with --graph: export this node's view ball")
    sp.add_argument("--radius", type=_nonneg, default=2)

    sp = sub.add_parser("generate", help="write a generated graph as JSON")
    common(sp)
    sp.add_argument("--kind", choices=("random", "worst"), default="random")
    sp.add_argument("--k", type=_k, required=True)
    sp.add_argument("--n", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("suite", help="run the acceptance suite")
    sp.add_argument("--criteria", type=int, nargs="*", help="run only these criterion numbers")
    return p


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        out.write_text(text)


def _read_json(path: Path) -> dict:
    try:
        return json.loads(path.read_text())
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None


def _generated(kind: str, k: int, n: int, seed: int) -> ColouredGraph:
    if kind == "worst":
        if k < 2:
            raise UsageError("worst-case paths need --k >= 2")
        return find_worst_case_path(k).graph
    if n < 1:
        raise UsageError("--n must be at least 1")
    return gen_random_graph(n, k, seed)


def cmd_simulate(args) -> int:
    if args.generate:
        if args.k is None:
            raise UsageError("--generate needs --k")
        g = _generated(args.generate, args.k, args.n, args.seed)
    elif args.graph:
        g = ColouredGraph.from_json(_read_json(args.graph))
    else:
        raise UsageError("simulate needs --graph or --generate")
    k = args.k or g.k
    a = build_algorithm(args.alg, k, args.r)
    out = run_on_graph(a, g)
    report = verify_matching(g, out)
    if args.format == "dot":
        _emit(dot.graph_to_dot(g, out), args.out)
    else:
        payload = {"alg": a.to_json(), "k": k, "graph": g.to_json(), **out.to_json(), "report": report.to_json()}
        _emit(json.dumps(payload, sort_keys=True) + "\n", args.out)
    print(f"matching {'valid' if report.ok else 'INVALID: ' + str(report.condition) + ' at node ' + str(report.node)}",
          file=sys.stderr)
    return EXIT_TIGHT if report.ok else EXIT_VIOLATION


def cmd_adversary(args) -> int:
    a = build_algorithm(args.alg, args.k, args.r)
    try:
        cert = Adversary(a, depth_budget=args.depth_budget).run()
    except InternalError as exc:
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    _emit(cert.dumps(), args.out)
    print(cert.summary(), file=sys.stderr)
    return cert.exit_code


def cmd_verify(args) -> int:
    try:
        cert = Certificate(_read_json(args.cert))
        report = verify_certificate(cert)
    except (CertificateError, KeyError, TypeError, ValueError) as exc:
        print(f"FAIL: malformed certificate: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    print(f"{'PASS' if report.ok else 'FAIL'} {report.kind}: {report.detail}")
    if not report.ok:
        return EXIT_INTERNAL
    return EXIT_TIGHT if report.kind == "tightness" else EXIT_VIOLATION


def cmd_export_dot(args) -> int:
    sources = [s for s in (args.graph, args.cert, args.system) if s is not None]
    if len(sources) != 1:
        raise UsageError("export-dot needs exactly one of --graph, --cert, --system")
    if args.graph:
        g = ColouredGraph.from_json(_read_json(args.graph))
        if args.node is not None:
            if not 0 <= args.node < g.n:
                raise UsageError(f"--node must be in 0..{g.n - 1}")
            text = dot.system_to_dot(view_tree(g, args.node, args.radius), name=f"view{args.node}")
        else:
            text = dot.graph_to_dot(g)
    elif args.cert:
        text = dot.certificate_to_dot(Certificate(_read_json(args.cert)))
    else:
        text = dot.system_to_dot(FiniteColourSystem.from_json(_read_json(args.system)))
    _emit(text, args.out)
    return 0


def cmd_generate(args) -> int:
    g = _generated(args.kind, args.k, args.n, args.seed)
    _emit(g.dumps() + "\n", args.out)
    return 0


def cmd_suite(args) -> int:
    from .suite import run_suite

    results = run_suite(only=set(args.criteria) if args.criteria else None)
    return 0 if all(r.ok for r in results) else 1


COMMANDS = {
    "simulate": cmd_simulate,
    "adversary": cmd_adversary,
    "verify": cmd_verify,
    "export-dot": cmd_export_dot,
    "generate": cmd_generate,
    "suite": cmd_suite,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"matchlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except KeyError as exc:
        # unknown algorithm ids and similar lookups
        print(f"matchlab: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except MatchlabError as exc:
        print(f"matchlab: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

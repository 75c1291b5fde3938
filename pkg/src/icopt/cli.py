"""icopt command line.

Exit codes: 0 success, 1 bad input or I/O failure, 2 enumeration budget
exceeded, 64 usage error.  Reports go to stdout, diagnostics to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import analysis, netcode, oracle, solver
from .gf2 import BitMatrix
from .problem import IndexCodingProblem, ProblemError, dump_problem, example_problems, load_problem

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BUDGET = 2
EXIT_USAGE = 64


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # type: ignore[override]
        self.print_usage(sys.stderr)
        raise UsageError(f"{self.prog}: error: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="icopt", description="Optimal linear index codes over GF(2).")
    parser.add_argument(
        "--seed-examples",
        metavar="DIR",
        help="write the four worked example problems into DIR and exit",
    )
    sub = parser.add_subparsers(dest="command", metavar="{solve,verify,export,analyze}", parser_class=_Parser)

    p = sub.add_parser("solve", help="optimal length, mu and every optimal code")
    p.add_argument("file")

    p = sub.add_parser("verify", help="classify a length by enumerating right inverses")
    p.add_argument("file")
    p.add_argument("--length", "-c", type=int, required=True)

    p = sub.add_parser("export", help="write the network graph or the A/F/B matrices")
    p.add_argument("file")
    p.add_argument("--length", "-c", type=int, required=True)
    p.add_argument("--format", choices=["dot", "matrices"], required=True)
    p.add_argument("--out", default=".", help="output directory (default: current)")

    p = sub.add_parser("analyze", help="rank optimal codes by min-max transmissions used")
    p.add_argument("file")
    p.add_argument("--minmax", action="store_true", required=True)

    p = sub.add_parser("oracle")
    p.add_argument("file")
    return parser


def _load(path: str) -> IndexCodingProblem:
    return load_problem(Path(path).read_text(encoding="utf-8"))


def _emit(data: dict) -> None:
    sys.stdout.write(json.dumps(data, indent=2) + "\n")


def cmd_solve(args: argparse.Namespace) -> int:
    _emit(solver.full_report(_load(args.file)).to_json())
    return EXIT_OK


def format_verify(result: solver.Theorem1Result) -> str:
    lines = [
        f"length: {result.c}",
        f"verdict: {result.verdict}",
        f"|S'(c)|: {result.s_prime_size}",
        f"|S(c)|: {result.s_size}",
        "lambda histogram: "
        + (", ".join(f"{lam}:{cnt}" for lam, cnt in result.lambda_histogram.items()) or "(empty)"),
        f"min-rank optimal length: {result.min_rank_length} "
        f"({'agrees' if result.agrees else 'DISAGREES'})",
    ]
    if result.witness is not None:
        lines.append(f"lambda>0 member (lambda={solver.lambda_of(result.witness)}), rows of T:")
        lines.extend("  " + row for row in result.witness.t.to_strings())
    return "\n".join(lines) + "\n"


def cmd_verify(args: argparse.Namespace) -> int:
    if args.length < 1:
        raise UsageError("--length must be at least 1")
    result = solver.theorem1_verify(_load(args.file), args.length)
    sys.stdout.write(format_verify(result))
    return EXIT_OK


def matrices_json(p: IndexCodingProblem, c: int) -> dict:
    """A plus the F/B support patterns; F, B, M for a canonical code when c is feasible."""
    n = p.n
    ones = BitMatrix.from_words([(1 << n) - 1] * c, n)
    sigma_all = tuple((1 << len(r.knows)) - 1 for r in p.receivers)
    data = {
        "n": n,
        "length": c,
        "A": netcode.build_A(p, c).to_strings(),
        "F_pattern": netcode.build_F(p, c, ones).to_strings(),
        "B_pattern": netcode.build_B(p, c, ones, sigma_all).to_strings(),
    }
    c_opt = solver.optimal_length(p)
    if c >= c_opt:
        code = next(solver.enumerate_optimal_codes(p))
        words = list(code.codewords) + [0] * (c - c_opt)
        d = netcode.decomposition_for_code(p, words)
        a, f, b = netcode.matrices(p, d)
        data["code"] = [solver.render_codeword(w) for w in words]
        data["F"] = f.to_strings()
        data["B"] = b.to_strings()
        data["M"] = (b @ f @ a).to_strings()
    return data


def cmd_export(args: argparse.Namespace) -> int:
    if args.length < 1:
        raise UsageError("--length must be at least 1")
    p = _load(args.file)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    if args.format == "dot":
        target = out / "graph.dot"
        target.write_text(netcode.export_dot(netcode.build_graph(p, args.length)), encoding="utf-8")
    else:
        target = out / "matrices.json"
        target.write_text(json.dumps(matrices_json(p, args.length), indent=2) + "\n", encoding="utf-8")
    print(f"wrote {target}", file=sys.stderr)
    return EXIT_OK


def cmd_analyze(args: argparse.Namespace) -> int:
    _emit(analysis.analysis_json(_load(args.file)))
    return EXIT_OK


def cmd_oracle(args: argparse.Namespace) -> int:
    p = _load(args.file)
    c = oracle.brute_optimal_length(p)
    codes = sorted(oracle.brute_enumerate_codes(p, c))
    _emit({"optimal_length": c, "code_count": len(codes), "codes": [code.render() for code in codes]})
    return EXIT_OK


def seed_examples(directory: str) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    written = []
    for name, problem in example_problems().items():
        path = out / f"{name}.json"
        path.write_text(dump_problem(problem), encoding="utf-8")
        written.append(path)
    return written


COMMANDS = {
    "solve": cmd_solve,
    "verify": cmd_verify,
    "export": cmd_export,
    "analyze": cmd_analyze,
    "oracle": cmd_oracle,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.seed_examples:
            for path in seed_examples(args.seed_examples):
                print(f"wrote {path}", file=sys.stderr)
            return EXIT_OK
        if args.command is None:
            raise UsageError("icopt: error: a subcommand is required")
        return COMMANDS[args.command](args)
    except UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except solver.BudgetExceeded as exc:
        print(f"icopt: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (ProblemError, oracle.OracleLimitError, OSError) as exc:
        print(f"icopt: {exc}", file=sys.stderr)
        return EXIT_INPUT


def run() -> None:
    sys.exit(main())

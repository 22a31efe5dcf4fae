"""Command-line entry point: ``longcycles {gen,check,cycles,extend,bypass,verify}``.

Exit status: 0 on success, 1 on bad input or any domain error, 2 when
``verify`` finds a counterexample.  JSON goes to stdout, diagnostics to
stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Any, Callable, Sequence

from . import families, oracle
from .conditions import check_all, min_semidegree
from .digraph import (
    Digraph,
    GraphError,
    VertexSequence,
    complete_digraph,
    directed_cycle,
    is_locally_semicomplete,
    is_semicomplete,
    is_strong,
)
from .formats import format_edgelist, parse_edgelist, to_dot
from .insertion import DEFAULT_MAX_SEEDS, DEFAULT_ORACLE_BUDGET, find_long_cycle, find_min_gap_bypass
from .verifier import DEFAULT_SWEEP, Mode, Theorem, verify, write_fixtures

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_COUNTEREXAMPLE = 2


FAMILIES: dict[str, tuple[int, Callable[..., Digraph], str]] = {
    "d5": (0, families.d5, "D(5), no arguments"),
    "d6": (0, families.d6, "D(6), no arguments"),
    "kpq": (2, families.complete_bipartite, "K*_{p,q}: P Q"),
    "kpq-minus": (
        4,
        lambda p, q, u, v: families.complete_bipartite_minus_arc(p, q, (u, v)),
        "K*_{p,q} minus the arc (u,v): P Q U V",
    ),
    "thomassen": (2, families.thomassen_family, "D_{n,m}: N M"),
    "semideg1": (1, families.semidegree_one_example, "semi-degree-one example on k+2 vertices: K"),
    "cycle": (1, directed_cycle, "directed cycle: N"),
    "complete": (1, complete_digraph, "complete digraph: N"),
}


def make_family(name: str, params: Sequence[str]) -> Digraph:
    if name not in FAMILIES:
        raise GraphError(f"unknown family {name!r}; choose from {', '.join(FAMILIES)}")
    arity, ctor, help_text = FAMILIES[name]
    if len(params) != arity:
        raise GraphError(f"family {name} takes {arity} integer argument(s): {help_text}")
    try:
        args = [int(p) for p in params]
    except ValueError:
        raise GraphError(f"family {name} takes integers, got {list(params)}") from None
    return ctor(*args)


def load(source: str) -> Digraph:
    """Read an edge-list file, ``-`` for stdin, or an inline ``family:arg:arg`` spec."""
    if source == "-":
        return parse_edgelist(sys.stdin.read())
    path = Path(source)
    if path.exists():
        return parse_edgelist(path.read_text(encoding="utf-8"))
    if ":" in source or source in FAMILIES:
        name, *params = source.split(":")
        return make_family(name, params)
    raise GraphError(f"no such file: {source}")


def _emit(data: Any, out: str | None = None) -> None:
    text = json.dumps(data, indent=2, sort_keys=False) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def check_payload(D: Digraph) -> dict[str, Any]:
    return {
        "n": D.n,
        "arc_count": D.arc_count,
        "strong": is_strong(D),
        "semicomplete": is_semicomplete(D),
        "locally_semicomplete": is_locally_semicomplete(D),
        "min_semidegree": min_semidegree(D).to_dict(),
        "conditions": [r.to_dict() for r in check_all(D)],
    }


def cmd_gen(args: argparse.Namespace) -> int:
    D = make_family(args.family, args.params)
    text = to_dot(D) if args.format == "dot" else format_edgelist(D)
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_check(args: argparse.Namespace) -> int:
    _emit(check_payload(load(args.input)))
    return EXIT_OK


def cmd_cycles(args: argparse.Namespace) -> int:
    D = load(args.input)
    if args.k is not None:
        c = oracle.has_cycle_of_length(D, args.k, args.timeout)
        sys.stdout.write(("none" if c is None else " ".join(map(str, c))) + "\n")
        return EXIT_OK
    spec = oracle.spectrum(D, args.timeout)
    data = spec.to_dict()
    if not args.witnesses:
        data.pop("witnesses")
    data["pancyclic"] = spec.is_pancyclic
    data["hamiltonian"] = spec.is_hamiltonian
    _emit(data)
    return EXIT_OK


def cmd_extend(args: argparse.Namespace) -> int:
    D = load(args.input)
    result = find_long_cycle(D, oracle_budget=args.budget, max_seeds=args.seeds, timeout=args.timeout)
    _emit(result.to_dict())
    return EXIT_OK


def cmd_bypass(args: argparse.Namespace) -> int:
    D = load(args.input)
    try:
        cycle = VertexSequence.cycle(int(t) for t in args.cycle.replace(",", " ").split())
    except ValueError:
        raise GraphError(f"--cycle expects comma-separated labels, got {args.cycle!r}") from None
    b = find_min_gap_bypass(D, cycle, three_vertex_only=args.three_vertex)
    _emit(None if b is None else b.to_dict())
    return EXIT_OK


THEOREMS = {"1": Theorem.T1, "2": Theorem.T2, "c": Theorem.CONJECTURE}


def cmd_verify(args: argparse.Namespace) -> int:
    sweep = DEFAULT_SWEEP
    if args.p:
        try:
            sweep = tuple(float(t) for t in args.p.split(","))
        except ValueError:
            raise GraphError(f"--p expects comma-separated probabilities, got {args.p!r}") from None
    report = verify(
        THEOREMS[args.theorem],
        args.n,
        Mode(args.mode),
        samples=args.samples,
        seed=args.seed,
        sweep=sweep,
        jobs=args.jobs,
        timeout=args.timeout,
    )
    _emit(report.to_dict(include_elapsed=args.timing), args.out)
    if args.out:
        print(f"wrote {args.out}", file=sys.stderr)
    if args.fixtures:
        paths = write_fixtures(report, args.fixtures)
        print(f"wrote {len(paths)} edge-list fixture(s) to {args.fixtures}", file=sys.stderr)
    return EXIT_COUNTEREXAMPLE if report.found_counterexample else EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # usage errors share the domain-error status
        self.print_usage(sys.stderr)
        self.exit(EXIT_ERROR, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="longcycles", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("gen", help="emit a named digraph family")
    p.add_argument("family", help=", ".join(FAMILIES))
    p.add_argument("params", nargs="*")
    p.add_argument("--format", choices=("edgelist", "dot"), default="edgelist")
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    def source(p: argparse.ArgumentParser) -> None:
        p.add_argument("input", help="edge-list file, '-' for stdin, or family:arg:... spec")
        p.add_argument("--timeout", type=float, default=oracle.DEFAULT_TIMEOUT)

    p = sub.add_parser("check", help="report every degree condition")
    p.add_argument("input", help="edge-list file, '-' for stdin, or family:arg:... spec")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("cycles", help="cycle spectrum, or one k-cycle with --k")
    source(p)
    p.add_argument("--k", type=int)
    p.add_argument("--witnesses", action="store_true")
    p.set_defaults(func=cmd_cycles)

    p = sub.add_parser("extend", help="search a Hamiltonian or (n-1)-cycle by extension")
    source(p)
    p.add_argument("--budget", type=int, default=DEFAULT_ORACLE_BUDGET, help="largest n for the exact fallback")
    p.add_argument("--seeds", type=int, default=DEFAULT_MAX_SEEDS)
    p.set_defaults(func=cmd_extend)

    p = sub.add_parser("bypass", help="minimum-gap bypass of a cycle")
    p.add_argument("input", help="edge-list file, '-' for stdin, or family:arg:... spec")
    p.add_argument("--cycle", required=True, help='cycle vertices, e.g. "1,2,3"')
    p.add_argument("--three-vertex", action="store_true", help="only bypasses with one internal vertex")
    p.set_defaults(func=cmd_bypass)

    p = sub.add_parser("verify", help="exhaustive or sampled theorem verification")
    p.add_argument("--theorem", choices=tuple(THEOREMS), required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--mode", choices=[m.value for m in Mode], default=Mode.EXHAUSTIVE.value)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--p", help="comma-separated arc probabilities for sampled mode")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--timeout", type=float, default=oracle.DEFAULT_TIMEOUT)
    p.add_argument("--timing", action="store_true", help="include elapsed seconds in the report")
    p.add_argument("--out")
    p.add_argument("--fixtures", metavar="DIR", help="write each listed digraph as an edge-list file")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphError, oracle.OracleTimeout, OSError) as exc:
        print(f"longcycles: error: {exc}", file=sys.stderr)
        return EXIT_ERROR


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

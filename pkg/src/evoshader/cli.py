"""Headless driver: serve the API, run scripted evolution, emit and evaluate.

``evolve`` replaces the human in the loop with a scripted selector that
always picks the displayed candidate nearest a target expression, which
makes convergence measurable and reproducible.  Machine-facing output is
line-delimited JSON on stdout; diagnostics go to stderr.  Exit codes: 0
on success, 2 for usage or parse errors, 1 for runtime failures.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

from .api import DEFAULT_DATA_DIR, DEFAULT_PORT, create_app
from .evolution import (
    EvolutionParams,
    SampleLattice,
    Session,
    default_lattice,
    distance,
    init_population,
    step,
)
from .expr import EvalPoint, ExprError, Expression, deserialize, evaluate, serialize
from .codegen import emit_shader


@dataclass
class OracleSelector:
    """Deterministic stand-in for the user: always picks the candidate
    nearest the target (ties to the lower slot)."""

    target: Expression
    lattice: SampleLattice

    def distances(self, session: Session) -> list[float]:
        return [
            distance(session.population[idx].expr, self.target, self.lattice)
            for idx in session.display
        ]

    def best_slot(self, session: Session) -> int:
        dists = self.distances(session)
        return min(range(len(dists)), key=lambda slot: (dists[slot], slot))


def _port(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid port {text!r}") from None
    if not 1 <= value <= 65535:
        raise argparse.ArgumentTypeError(f"port {value} out of range [1, 65535]")
    return value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid integer {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError("value must be >= 0")
    return value


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evoshader",
        description="Breed vertex-shader displacement expressions.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument(
        "--port", type=_port, default=None, help="listen port (or PORT env, default 8080)"
    )
    serve.add_argument(
        "--data-dir", default=None, help="store directory (or DATA_DIR env, default ./data)"
    )
    serve.add_argument(
        "--static-dir", default=None, help="web UI bundle to serve at / (or STATIC_DIR env)"
    )

    evolve = sub.add_parser("evolve", help="run target-seeking evolution headlessly")
    evolve.add_argument("--target", required=True, help="target expression (s-expression)")
    evolve.add_argument("--generations", type=_non_negative_int, default=10)
    evolve.add_argument("--seed", type=int, default=0)
    evolve.add_argument("--pop", type=int, default=200, help="population size")
    evolve.add_argument("--subset", type=int, default=9, help="display subset size")

    emit = sub.add_parser("emit", help="print the GLSL vertex shader for an expression")
    emit.add_argument("--expr", required=True, help="expression (s-expression)")

    ev = sub.add_parser("eval", help="evaluate an expression at one point")
    ev.add_argument("--expr", required=True, help="expression (s-expression)")
    ev.add_argument("--at", required=True, metavar="X,Y,Z,T", help="evaluation point")

    return parser


class _UsageError(Exception):
    pass


def _parse_expr_arg(text: str) -> Expression:
    try:
        return deserialize(text)
    except ExprError as exc:
        raise _UsageError(str(exc)) from None


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    port = args.port
    if port is None:
        try:
            port = _port(os.environ.get("PORT", str(DEFAULT_PORT)))
        except argparse.ArgumentTypeError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return 2
    data_dir = args.data_dir or os.environ.get("DATA_DIR", DEFAULT_DATA_DIR)
    static_dir = args.static_dir or os.environ.get("STATIC_DIR")
    app = create_app(data_dir=data_dir, static_dir=static_dir)
    uvicorn.run(app, host="0.0.0.0", port=port, log_level="info")
    return 0


def _cmd_evolve(args: argparse.Namespace) -> int:
    target = _parse_expr_arg(args.target)
    params = EvolutionParams(
        population_size=args.pop, subset_size=args.subset, seed=args.seed
    )
    oracle = OracleSelector(target, params.lattice)
    session = init_population(params)
    _report_generation(session, oracle)
    for _ in range(args.generations):
        slot = oracle.best_slot(session)
        step(session, [slot], 1)
        _report_generation(session, oracle)
    return 0


def _report_generation(session: Session, oracle: OracleSelector) -> None:
    dists = oracle.distances(session)
    best = min(range(len(dists)), key=lambda slot: (dists[slot], slot))
    line = {
        "generation": session.generation,
        "best_distance": dists[best],
        "best_sexpr": serialize(session.population[session.display[best]].expr),
    }
    print(json.dumps(line))


def _cmd_emit(args: argparse.Namespace) -> int:
    expr = _parse_expr_arg(args.expr)
    sys.stdout.write(emit_shader(expr).glsl_source)
    return 0


def _cmd_eval(args: argparse.Namespace) -> int:
    expr = _parse_expr_arg(args.expr)
    parts = args.at.split(",")
    if len(parts) != 4:
        raise _UsageError("--at expects four comma-separated numbers")
    try:
        point = EvalPoint(*(float(p) for p in parts))
    except (ValueError, ExprError) as exc:
        raise _UsageError(f"invalid point: {exc}") from None
    print(json.dumps(evaluate(expr, point)))
    return 0


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        if args.command == "serve":
            return _cmd_serve(args)
        if args.command == "evolve":
            return _cmd_evolve(args)
        if args.command == "emit":
            return _cmd_emit(args)
        return _cmd_eval(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BrokenPipeError:
        return 1


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()

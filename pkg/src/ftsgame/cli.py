"""Command-line entry point: ``ftsgame <subcommand> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from . import fts
from .errors import AmbiguousRank, MalformedFile, NotNormalized, NotUnitary, OrderingViolation
from .game import LocalStrategy, quantum_win_probability
from .io import read_state_file, state_to_dict, write_state_file
from .rank_classifier import TolerancePolicy, classify, random_state_of_rank
from .strategy_opt import N_PARAMS, optimize, ordering_demo, strategy_from_params

log = logging.getLogger("ftsgame")

EXIT_OK, EXIT_MALFORMED, EXIT_AMBIGUOUS, EXIT_ORDERING = 0, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    seed: int = 0
    restarts: int = 100
    eps: float = 1e-9
    output_format: str = "table"

    def __post_init__(self):
        if self.restarts < 1:
            raise ValueError("--restarts must be at least 1")
        if not self.eps > 0:
            raise ValueError("--eps must be positive")
        if self.output_format not in ("table", "json"):
            raise ValueError("--format must be 'table' or 'json'")


def _cplx(z) -> list:
    return [float(np.real(z)), float(np.imag(z))]


def _flatten(d, prefix=""):
    for key, value in d.items():
        name = f"{prefix}{key}"
        if isinstance(value, dict):
            yield from _flatten(value, name + ".")
        else:
            yield name, value


def _fmt(value) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, list):
        return " ".join(_fmt(v) for v in value)
    return str(value)


def render(d: dict, output_format: str) -> str:
    if output_format == "json":
        return json.dumps(d, indent=2)
    rows = list(_flatten(d))
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k:<{width}}  {_fmt(v)}" for k, v in rows)


def _emit(d: dict, config: RunConfig, out: str | None) -> None:
    text = render(d, config.output_format)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _normalized(psi: np.ndarray) -> np.ndarray:
    norm = float(np.linalg.norm(psi))
    if norm == 0.0:
        raise NotNormalized("the zero state cannot be used in the game")
    if abs(norm ** 2 - 1.0) > 1e-12:
        log.warning("state has squared norm %r; normalising for the game", norm ** 2)
        psi = psi / norm
    return psi


def cmd_classify(path, config: RunConfig) -> dict:
    psi, label = read_state_file(path)
    cert = classify(psi, TolerancePolicy(eps=config.eps))
    return {"file": str(path), "label": label, **cert.to_dict(), "eps": config.eps}


def cmd_covariants(path, config: RunConfig) -> dict:
    psi, label = read_state_file(path)
    return {
        "file": str(path),
        "label": label,
        "q": _cplx(fts.quartic_norm(psi)),
        "hyperdeterminant": _cplx(fts.hyperdeterminant(psi)),
        "gamma": {s: [[_cplx(z) for z in row] for row in g]
                  for s, g in zip(fts.SUBSYSTEMS, fts.gammas(psi))},
        "T": [_cplx(z) for z in fts.triple_product_diagonal(psi)],
    }


def cmd_game_eval(path, strategy_spec, config: RunConfig) -> dict:
    psi, label = read_state_file(path)
    psi = _normalized(psi)
    if strategy_spec == "ghz-canonical":
        strat = LocalStrategy.canonical()
    elif isinstance(strategy_spec, str):
        raise ValueError(f"unknown strategy preset {strategy_spec!r}")
    else:
        strat = strategy_from_params(strategy_spec)
    report = quantum_win_probability(psi, strat)
    strategy = strategy_spec if isinstance(strategy_spec, str) else list(map(float, strategy_spec))
    return {"file": str(path), "label": label, "strategy": strategy, **report.to_dict()}


def cmd_optimize(path, config: RunConfig, workers: int | None = None) -> dict:
    psi, label = read_state_file(path)
    result = optimize(_normalized(psi), config.restarts, config.seed, workers)
    return {"file": str(path), "label": label, **result.to_dict()}


def cmd_ordering_demo(config: RunConfig, workers: int | None = None) -> dict:
    return ordering_demo(config.seed, config.restarts, workers).to_dict()


def cmd_gen_state(rank: int, seed: int, mode: str, out_path=None) -> dict:
    psi = random_state_of_rank(rank, seed, mode)
    label = f"rank {rank}, {mode} orbit, seed {seed}"
    if out_path:
        write_state_file(out_path, psi, label)
    return state_to_dict(psi, label)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--restarts", type=int, default=100)
    common.add_argument("--eps", type=float, default=1e-9)
    common.add_argument("--format", dest="output_format", choices=("table", "json"), default="table")
    common.add_argument("--out", default=None, help="write the output here instead of stdout")
    common.add_argument("--workers", type=int, default=None, help="processes for optimiser restarts")

    parser = argparse.ArgumentParser(prog="ftsgame", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", parents=[common], help="FTS rank and SLOCC class of a state file")
    p.add_argument("state")
    p = sub.add_parser("covariants", parents=[common], help="dump gamma, T, q and Det")
    p.add_argument("state")
    p = sub.add_parser("game-eval", parents=[common], help="win probability of a fixed strategy")
    p.add_argument("state")
    p.add_argument("--strategy", default="ghz-canonical", help="preset name (ghz-canonical)")
    p.add_argument("--angles", type=float, nargs=N_PARAMS, default=None,
                   metavar="ANGLE", help="theta, phi for R0 R1 S0 S1 T0 T1")
    p = sub.add_parser("optimize", parents=[common], help="best local strategy for a state file")
    p.add_argument("state")
    p = sub.add_parser("gen-state", parents=[common], help="random state of a given rank")
    p.add_argument("--rank", type=int, required=True, choices=(1, 2, 3, 4))
    p.add_argument("--mode", choices=("sl", "unitary"), default="unitary")
    sub.add_parser("ordering-demo", parents=[common], help="optimal values for ranks 1-4")
    return parser


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(name)s: %(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(args.seed, args.restarts, args.eps, args.output_format)
        if args.command == "classify":
            result = cmd_classify(args.state, config)
        elif args.command == "covariants":
            result = cmd_covariants(args.state, config)
        elif args.command == "game-eval":
            spec = args.angles if args.angles is not None else args.strategy
            result = cmd_game_eval(args.state, spec, config)
        elif args.command == "optimize":
            result = cmd_optimize(args.state, config, args.workers)
        elif args.command == "gen-state":
            result = cmd_gen_state(args.rank, args.seed, args.mode, args.out)
            if args.out:
                return EXIT_OK
            print(json.dumps(result, indent=2))
            return EXIT_OK
        else:
            result = cmd_ordering_demo(config, args.workers)
    except AmbiguousRank as exc:
        print(f"ftsgame: ambiguous rank: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    except OrderingViolation as exc:
        print(f"ftsgame: ordering violation: {exc}", file=sys.stderr)
        return EXIT_ORDERING
    except (MalformedFile, NotNormalized, NotUnitary, ValueError) as exc:
        print(f"ftsgame: {exc}", file=sys.stderr)
        return EXIT_MALFORMED
    _emit(result, config, args.out)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())

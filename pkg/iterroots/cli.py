"""Command-line interface for iterroots."""

import argparse
import logging
import sys
from typing import Callable, Dict, Optional, Sequence

from . import __version__, service
from .config import IterRootsConfig
from .errors import (
    DegreeMismatch,
    DegreeZero,
    InvalidDegreeSpec,
    IterRootsError,
    NormalizationError,
    NotBijective,
    NotMonic,
    ObstructionError,
    ParseError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILED_CHECK = 1
EXIT_USAGE = 2
EXIT_OBSTRUCTION = 3

_OBSTRUCTIONS = (
    ObstructionError,
    NotMonic,
    NormalizationError,
    NotBijective,
    DegreeZero,
    DegreeMismatch,
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iterroots",
        description="Polynomial iterative roots over Q(w): quartic square roots, "
        "the curve C, and a generic coefficient-matching solver.",
        epilog="Arguments starting with '-' (e.g. -7/16) go after '--'.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    parser.add_argument(
        "--mode", choices=["exact", "approx"], help="coefficient backend"
    )
    parser.add_argument("--tol", type=float, help="relative tolerance (approx mode)")
    parser.add_argument("--json", action="store_true", help="structured JSON output")
    parser.add_argument("--seed", type=int, help="seed for sampled checks")
    parser.add_argument("--debug", action="store_true", help="debug logging to stderr")
    parser.add_argument("--env-file", default=".env", help="dotenv file to load")

    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("iterate", help="n-fold self-composition f^n")
    p.add_argument("poly")
    p.add_argument("n", type=int)

    p = sub.add_parser("compose", help="composition f(g(z))")
    p.add_argument("f")
    p.add_argument("g")

    p = sub.add_parser("sqrt", help="all polynomial square roots of a quartic")
    p.add_argument("quartic")

    p = sub.add_parser("classify", help="number of square roots of a quartic")
    p.add_argument("quartic")

    p = sub.add_parser("curve", help="point of C with b3 = beta and its three roots")
    p.add_argument("beta")

    p = sub.add_parser("solve", help="iterative roots f with f^r = g")
    p.add_argument("poly")
    p.add_argument(
        "--deg", type=int, help="degree e of f (default: every e with e^r = deg g)"
    )
    p.add_argument("--order", type=int, required=True, help="iteration order r")

    p = sub.add_parser("linroot", help="linear roots of z -> a*z + b")
    p.add_argument("a")
    p.add_argument("b")
    p.add_argument("--order", type=int, required=True, help="iteration order r")

    p = sub.add_parser("normalize", help="monic linear conjugate")
    p.add_argument("poly")

    p = sub.add_parser("verify", help="symbolic identity checks")
    p.add_argument(
        "--samples", type=int, default=0, help="seeded sampled checks to add"
    )

    return parser


_COMMANDS: Dict[str, Callable] = {
    "iterate": lambda args, config: service.iterate_polynomial(
        args.poly, args.n, config
    ),
    "compose": lambda args, config: service.compose_polynomials(
        args.f, args.g, config
    ),
    "sqrt": lambda args, config: service.sqrt_quartic(args.quartic, config),
    "classify": lambda args, config: service.classify(args.quartic, config),
    "curve": lambda args, config: service.curve(args.beta, config),
    "solve": lambda args, config: service.solve_polynomial(
        args.poly, args.order, args.deg, config
    ),
    "linroot": lambda args, config: service.linear_roots(
        args.a, args.b, args.order, config
    ),
    "normalize": lambda args, config: service.normalize_polynomial(args.poly, config),
    "verify": lambda args, config: service.verify(args.samples, config.seed, config),
}


def _apply_overrides(
    config: IterRootsConfig, args: argparse.Namespace
) -> IterRootsConfig:
    update = {}
    if args.mode is not None:
        update["mode"] = args.mode
    if args.tol is not None:
        update["tolerance"] = args.tol
    if args.json:
        update["output"] = "json"
    if args.seed is not None:
        update["seed"] = args.seed
    if args.debug:
        update["debug"] = True
    # model_copy skips validation
    return IterRootsConfig.model_validate({**config.model_dump(), **update})


def _emit(record, config: IterRootsConfig) -> None:
    if config.output == "json":
        print(record.model_dump_json(indent=2))
    else:
        print(record.render_text())


def run(
    argv: Optional[Sequence[str]] = None, config: Optional[IterRootsConfig] = None
) -> int:
    """Run one command and return its exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        if config is None:
            config = IterRootsConfig.load_config(args.env_file)
        config = _apply_overrides(config, args)
    except ValueError as e:
        # pydantic's ValidationError is a ValueError
        print(f"error: invalid configuration: {e}", file=sys.stderr)
        return EXIT_USAGE
    if config.debug:
        logging.getLogger("iterroots").setLevel(logging.DEBUG)

    try:
        record = _COMMANDS[args.command](args, config)
    except (ParseError, InvalidDegreeSpec) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except _OBSTRUCTIONS as e:
        print(f"error: {e}", file=sys.stderr)
        if getattr(e, "record", None) is not None:
            _emit(e.record, config)
        return EXIT_OBSTRUCTION
    except IterRootsError as e:
        logger.error(f"{args.command} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    _emit(record, config)
    if args.command == "verify" and not record.passed:
        return EXIT_FAILED_CHECK
    return EXIT_OK


def main() -> int:
    """Main CLI entry point."""
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr)
    return run()


if __name__ == "__main__":
    sys.exit(main())

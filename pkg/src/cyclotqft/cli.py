"""Command-line entry point: verify, matrices, closure."""

from __future__ import annotations

import argparse
import json
import os
import sys

from .closure import DEFAULT_CAP, image
from .integrality import integral_generators, split_generators, sprime_tprime
from .matrix import CycloMatrix, dump_matrices
from .modular_data import rho_sigma, rho_tau
from .numtheory import is_prime
from .report import CHECK_NAMES, verify

MAX_PRIME_ENV = "CYCLOTQFT_MAX_PRIME"
DEFAULT_MAX_PRIME = 13

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def max_prime() -> int:
    raw = os.environ.get(MAX_PRIME_ENV)
    if raw is None:
        return DEFAULT_MAX_PRIME
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{MAX_PRIME_ENV} must be an integer, got {raw!r}") from None


def validate_prime(p: int) -> int:
    if p < 5 or not is_prime(p):
        raise UsageError(f"--prime must be a prime >= 5, got {p}")
    ceiling = max_prime()
    if p > ceiling:
        raise UsageError(f"--prime {p} exceeds the configured maximum {ceiling} (set {MAX_PRIME_ENV})")
    return p


def parse_checks(text: str) -> list[str] | None:
    if text == "all":
        return None
    names = [n.strip() for n in text.split(",") if n.strip()]
    unknown = [n for n in names if n not in CHECK_NAMES]
    if unknown or not names:
        raise UsageError(f"unknown checks {unknown}; choose from {', '.join(CHECK_NAMES)} or 'all'")
    return names


def generator_matrices(p: int, basis: str, space: str) -> tuple[CycloMatrix, CycloMatrix]:
    """Images of sigma and tau in the requested basis, restricted to the requested space."""
    if basis == "original":
        if space == "h1":
            raise UsageError("H1 has no coordinates in the original label basis; use --basis split or integral")
        return (rho_sigma(p), rho_tau(p)) if space == "full" else sprime_tprime(p)
    pair = split_generators(p) if basis == "split" else integral_generators(p)
    if space == "full":
        return pair
    n = pair[0].rows
    idx = range(3) if space == "h1" else range(3, n)
    return tuple(M.submatrix(idx, idx) for M in pair)


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)


def _json(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def cmd_verify(args) -> int:
    p = validate_prime(args.prime)
    report = verify(p, parse_checks(args.checks))
    if args.format == "json":
        text = _json(report.to_dict(args.timings))
    else:
        text = report.to_text(args.timings)
    _write(text, args.out)
    return report.exit_code()


def cmd_matrices(args) -> int:
    p = validate_prime(args.prime)
    S, T = generator_matrices(p, args.basis, args.space)
    header = f"# p={p} basis={args.basis} space={args.space}\n"
    _write(header + "# sigma\n" + S.dump() + "# tau\n" + T.dump(), args.out)
    return EXIT_OK


def cmd_closure(args) -> int:
    p = validate_prime(args.prime)
    if args.cap < 1:
        raise UsageError("--cap must be at least 1")
    res = image(p, args.space, args.cap)
    body = {"schema": 1, "prime": p, "space": args.space, **res.to_dict()}
    _write(_json(body), args.out)
    return EXIT_CAP if res.cap_exceeded else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="cyclotqft", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify", help="run verification checks for one prime")
    v.add_argument("--prime", type=int, required=True)
    v.add_argument("--checks", default="all", help="comma-separated check names, or 'all'")
    v.add_argument("--format", choices=("json", "text"), default="json")
    v.add_argument("--out", help="write the report here instead of stdout")
    v.add_argument("--timings", action="store_true", help="include wall times (output is then not byte-stable)")
    v.set_defaults(func=cmd_verify)

    m = sub.add_parser("matrices", help="dump the sigma and tau matrices")
    m.add_argument("--prime", type=int, required=True)
    m.add_argument("--basis", choices=("original", "split", "integral"), default="integral")
    m.add_argument("--space", choices=("full", "h1", "h2"), default="full")
    m.add_argument("--out")
    m.set_defaults(func=cmd_matrices)

    c = sub.add_parser("closure", help="order of the projective image by BFS")
    c.add_argument("--prime", type=int, required=True)
    c.add_argument("--space", choices=("h1", "h2", "full"), default="h2")
    c.add_argument("--cap", type=int, default=DEFAULT_CAP)
    c.add_argument("--out")
    c.set_defaults(func=cmd_closure)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        sys.stderr.write(f"{parser.prog}: usage error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())

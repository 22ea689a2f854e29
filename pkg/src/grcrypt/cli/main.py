"""grcrypt entry point.

    grcrypt demo <scheme> [--group kind:params] [--p P] [--seed S]
                 [--errors K] [--noisy-passes TAGS] [--error-prob Q]
                 [--n N] [--out PATH]
    grcrypt bench [--sizes CSV] [--p P] [--reps R] [--naive-limit L] [--seed S]

Exit codes: 0 ok, 1 scheme failure, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from ..errors import GrcError
from ..groupring import GroupSpec, group_from_descriptor
from .bench import run_bench
from .demo import SCHEMES, DemoOptions, UsageError, run_demo


def _parse_group(flag: str) -> GroupSpec:
    descriptor = flag.replace(":", " ").strip()
    try:
        return group_from_descriptor(descriptor)
    except GrcError as exc:
        raise UsageError(f"bad --group value {flag!r}: {exc}") from None


def _parse_sizes(flag: str) -> list[int]:
    flag = flag.strip()
    if not flag:
        return []
    try:
        sizes = [int(tok) for tok in flag.split(",") if tok.strip()]
    except ValueError:
        raise UsageError(f"bad --sizes value {flag!r}: expected comma-separated ints") from None
    if any(n < 1 for n in sizes):
        raise UsageError("--sizes entries must be positive")
    return sizes


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grcrypt",
        description="group ring cryptography demos and benchmarks",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    demo = sub.add_parser("demo", help="run one scheme end to end")
    demo.add_argument("scheme", choices=SCHEMES)
    demo.add_argument("--group", help="kind:params, e.g. elemabelian:2:6, cyclic:8, dihedral:4")
    demo.add_argument("--p", type=int, help="field modulus (defaults to the group's own prime)")
    demo.add_argument("--n", type=int, help="component count for the pk scheme")
    demo.add_argument("--seed", type=int, default=0)
    demo.add_argument("--errors", type=int, help="symbol errors injected per noisy pass")
    demo.add_argument("--noisy-passes", help="comma-separated message tags carrying noise")
    demo.add_argument("--error-prob", type=float, default=0.0, help="per-symbol error probability")
    demo.add_argument("--out", help="write the run transcript to this GRC1 file")

    bench = sub.add_parser("bench", help="time naive vs transform multiplication")
    bench.add_argument(
        "--sizes",
        default="1024,2048,4096,8192,16384,32768,65536",
        help="comma-separated ring orders",
    )
    bench.add_argument("--p", type=int, default=2)
    bench.add_argument("--reps", type=int, default=5)
    bench.add_argument("--naive-limit", type=int, default=4096)
    bench.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0

    try:
        if args.command == "demo":
            opts = DemoOptions(
                scheme=args.scheme,
                group=_parse_group(args.group) if args.group else None,
                p=args.p,
                n=args.n,
                seed=args.seed,
                errors=args.errors,
                noisy_passes=(
                    tuple(t for t in args.noisy_passes.split(",") if t)
                    if args.noisy_passes
                    else None
                ),
                error_prob=args.error_prob,
                out=args.out,
            )
            return run_demo(opts)
        return run_bench(
            _parse_sizes(args.sizes),
            p=args.p,
            reps=args.reps,
            naive_limit=args.naive_limit,
            seed=args.seed,
        )
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except GrcError as exc:
        print(f"scheme failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

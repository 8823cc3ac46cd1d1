"""
Command-line front end: ``bvgroup <subcommand> ...`` or ``python -m bvgroup``.

Exit status is 0 on success, 1 when a check fails (unequal elements, a failed
verification or spot check, a length beyond the search radius) and 2 on usage
or parse errors.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .diagrams import TreeBraidTree, branches, ell0, ell1, is_in_F, multiply, n_carets
from .divergence import PAPER, TEST_SCALE, DivergenceConfig, PathCertificate, build_path, verify_certificate
from .generators import GenLetter, GenWord, eval_word, letter_diagram
from .oracle import ball, divergence_spotcheck, word_length

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _element(text: str) -> TreeBraidTree:
    """A generator word, or a diagram literal if the text contains ``tplus=``."""
    try:
        if "tplus" in text:
            return TreeBraidTree.parse(text)
        return eval_word(GenWord.parse(text))
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _show(d: TreeBraidTree) -> str:
    return str(d.canonical)


# ---------------------------------------------------------------------------
# subcommands


def cmd_eval(args) -> int:
    print(_show(_element(args.word)))
    return OK


def cmd_reduce(args) -> int:
    try:
        d = TreeBraidTree.parse(args.diagram)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(_show(d))
    return OK


def cmd_mul(args) -> int:
    print(_show(multiply(_element(args.w1), _element(args.w2))))
    return OK


def cmd_eq(args) -> int:
    same = _element(args.w1) == _element(args.w2)
    print("equal" if same else "not equal")
    return OK if same else FAILED


def cmd_info(args) -> int:
    d = _element(args.word).canonical
    print(f"N={n_carets(d)}")
    print(f"l0={ell0(d)}")
    print(f"l1={ell1(d)}")
    print(f"in_F={'yes' if is_in_F(d) else 'no'}")
    print("branches=" + " ".join(str(b) for b in branches(d)))
    print(f"diagram={d}")
    return OK


def cmd_gen(args) -> int:
    try:
        a = GenLetter(args.family, args.index)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    print(_show(letter_diagram(a)))
    return OK


def _config(args) -> DivergenceConfig:
    base = PAPER if args.paper else TEST_SCALE
    try:
        return DivergenceConfig(
            Fraction(args.C1) if args.C1 is not None else base.C1,
            args.M if args.M is not None else base.M,
            args.Q if args.Q is not None else base.Q,
            base.mode,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_path_build(args) -> int:
    cfg = _config(args)
    try:
        g = GenWord.parse(args.word)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    try:
        cert = build_path(g, cfg, k=args.k, case=args.case, with_log=not args.no_log)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return FAILED
    text = cert.to_text()
    if args.out:
        Path(args.out).write_text(text)
        lengths = " ".join(f"{k}={v}" for k, v in cert.segment_lengths().items())
        print(f"wrote {args.out}: k={cert.k} |w|={len(cert.word)} {lengths}")
    else:
        sys.stdout.write(text)
    return OK


def cmd_path_verify(args) -> int:
    try:
        cert = PathCertificate.from_text(Path(args.file).read_text())
    except (OSError, ValueError) as exc:
        raise UsageError(f"{args.file}: {exc}") from None
    report = verify_certificate(cert, oracle_radius=args.oracle_radius, prefix_checks=not args.quick)
    print(report)
    print("verified" if report.ok else "FAILED")
    return OK if report.ok else FAILED


def cmd_ball(args) -> int:
    if args.radius < 0:
        raise UsageError("radius must be non-negative")
    b = ball(args.radius, args.budget)
    if args.csv:
        sys.stdout.write(b.to_csv())
        return OK if b.complete else FAILED
    print(f"radius={b.radius} elements={len(b)} complete={'yes' if b.complete else 'no'}")
    for r in range(b.radius + 1):
        print(f"sphere {r}: {len(b.sphere(r))}")
    return OK if b.complete else FAILED


def cmd_len(args) -> int:
    n = word_length(_element(args.word), args.max_r, args.budget)
    if n is None:
        print(f"unknown (> {args.max_r})")
        return FAILED
    print(n)
    return OK


def cmd_spotcheck(args) -> int:
    try:
        delta = Fraction(args.delta)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad delta {args.delta!r}") from None
    rep = divergence_spotcheck(args.x, delta, args.budget, args.max_pairs, seed=args.seed)
    print(rep.summary())
    return OK if rep.ok else FAILED


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="bvgroup", description="Tree-braid-tree computations in BV.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("eval", help="reduced diagram of a word")
    s.add_argument("word")
    s.set_defaults(func=cmd_eval)

    s = sub.add_parser("reduce", help="reduce a diagram literal")
    s.add_argument("diagram")
    s.set_defaults(func=cmd_reduce)

    s = sub.add_parser("mul", help="product of two words or diagrams")
    s.add_argument("w1")
    s.add_argument("w2")
    s.set_defaults(func=cmd_mul)

    s = sub.add_parser("eq", help="decide equality (exit 1 when different)")
    s.add_argument("w1")
    s.add_argument("w2")
    s.set_defaults(func=cmd_eq)

    s = sub.add_parser("info", help="caret count, branch lengths and branches")
    s.add_argument("word")
    s.set_defaults(func=cmd_info)

    s = sub.add_parser("gen", help="diagram of a generator")
    s.add_argument("family", choices=["x", "s", "t"])
    s.add_argument("index", type=int)
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("path", help="build or verify a divergence path certificate")
    psub = s.add_subparsers(dest="action", required=True)
    b = psub.add_parser("build", help="build a certificate for g")
    b.add_argument("word")
    b.add_argument("--C1", default=None, help="constant C1 (fraction)")
    b.add_argument("--M", type=int, default=None)
    b.add_argument("--Q", type=int, default=None)
    b.add_argument("--k", type=int, default=None, help="length parameter (default: oracle length of g)")
    b.add_argument("--case", type=int, choices=[-1, 0, 1], default=None,
                   help="|g x1| - |g| for N(g) <= 2 when the oracle cannot decide")
    b.add_argument("--paper", action="store_true", help="paper-faithful constants")
    b.add_argument("--no-log", action="store_true", help="omit the prefix log")
    b.add_argument("--out", "-o", default=None, help="write the certificate here instead of stdout")
    b.set_defaults(func=cmd_path_build)
    v = psub.add_parser("verify", help="recheck a certificate file")
    v.add_argument("file")
    v.add_argument("--oracle-radius", type=int, default=2)
    v.add_argument("--quick", action="store_true", help="skip the prefix-by-prefix checks")
    v.set_defaults(func=cmd_path_verify)

    s = sub.add_parser("ball", help="BFS ball around the identity")
    s.add_argument("radius", type=int)
    s.add_argument("--csv", action="store_true", help="dump key,length,witness rows")
    s.add_argument("--budget", type=int, default=200_000)
    s.set_defaults(func=cmd_ball)

    s = sub.add_parser("len", help="exact word length by BFS")
    s.add_argument("word")
    s.add_argument("--max-r", type=int, required=True)
    s.add_argument("--budget", type=int, default=200_000)
    s.set_defaults(func=cmd_len)

    s = sub.add_parser("spotcheck", help="avoiding paths between sphere points")
    s.add_argument("x", type=int)
    s.add_argument("--delta", required=True)
    s.add_argument("--max-pairs", type=int, default=None)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--budget", type=int, default=200_000)
    s.set_defaults(func=cmd_spotcheck)
    return p


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse reports usage errors with status 2
        return int(exc.code or 0)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()

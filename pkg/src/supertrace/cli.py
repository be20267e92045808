"""Command-line entry point: ``supertrace <command> ...``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench
from .curves import group_order_supersingular, is_supersingular
from .endgen import default_length, random_cycle, random_prime, random_supersingular_curve
from .errors import (
    BrokenChain,
    InconsistentResidues,
    NoMatch,
    NotEndomorphism,
    SupertraceError,
)
from .serialize import FormatError, chain_to_json, curve_to_json, dumps, load_chain, load_curve
from .trace import (
    check_characteristic_equation,
    compute_trace,
    trace_mod_ell,
    trace_mod_p,
    trace_oracle_bruteforce,
)

EXIT_USAGE = 2
EXIT_BAD_INPUT = 3
EXIT_NOT_ENDO = 4
EXIT_INTERNAL = 5
EXIT_UNWRITABLE = 6

MIN_BITS, MAX_BITS = 8, 40
METHOD_CHOICES = ("schoof", "sea", "sea+p", "sea+p+points")


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _bits(text: str) -> int:
    try:
        b = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not MIN_BITS <= b <= MAX_BITS:
        raise argparse.ArgumentTypeError(f"bit length must be in {MIN_BITS}..{MAX_BITS}")
    return b


def _bits_range(text: str) -> tuple[int, int]:
    lo, sep, hi = text.partition("..")
    if not sep:
        raise argparse.ArgumentTypeError("expected a range like 16..20")
    a, b = _bits(lo), _bits(hi)
    if a > b:
        raise argparse.ArgumentTypeError("empty range")
    return a, b


def _positive(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return n


def _write(path, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliError(EXIT_UNWRITABLE, f"cannot write {path}: {exc}") from exc


def _load_chain(path):
    try:
        chain = load_chain(path)
    except FormatError as exc:
        raise CliError(EXIT_BAD_INPUT, str(exc)) from exc
    try:
        chain.validate()
    except (BrokenChain, NotEndomorphism) as exc:
        raise CliError(EXIT_NOT_ENDO, f"not an endomorphism: {exc}") from exc
    return chain


def cmd_gen_curve(args) -> int:
    p = random_prime(args.p_bits, seed=args.seed)
    E = random_supersingular_curve(p, args.seed)
    _write(args.out, dumps(curve_to_json(E)))
    info = sys.stderr if args.out in (None, "-") else sys.stdout
    print(f"p = {p}", file=info)
    print(f"j = {E.field.coordinates(E.j_invariant())}", file=info)
    print(f"#E(F_p^2) = {group_order_supersingular(E, args.seed)}", file=info)
    return 0


def cmd_gen_endo(args) -> int:
    try:
        E = load_curve(args.curve)
    except FormatError as exc:
        raise CliError(EXIT_BAD_INPUT, str(exc)) from exc
    if not is_supersingular(E, args.seed):
        raise CliError(EXIT_BAD_INPUT, f"{args.curve}: curve is not supersingular")
    print("warning: supersingularity rests on a probabilistic group-order test", file=sys.stderr)
    L = args.length or default_length(E.p)
    chain = random_cycle(E, L, args.seed)
    _write(args.out, dumps(chain_to_json(chain)))
    info = sys.stderr if args.out in (None, "-") else sys.stdout
    print(f"steps = {len(chain.steps)} (requested {L})", file=info)
    print(f"degree = 2^{chain.degree.bit_length() - 1}", file=info)
    return 0


def cmd_trace(args) -> int:
    chain = _load_chain(args.chain)
    try:
        result = compute_trace(chain, args.method, args.seed)
    except (InconsistentResidues, NoMatch) as exc:
        raise CliError(EXIT_INTERNAL, f"internal inconsistency: {exc}") from exc
    if args.json:
        out = {
            "trace": str(result.trace),
            "degree": str(result.degree),
            "method": args.method,
            "modulus": str(result.modulus),
            "residues": [
                {"modulus": str(r.modulus), "residue": str(r.residue), "source": r.source, "seconds": r.seconds}
                for r in result.residues
            ],
        }
        print(json.dumps(out, indent=2))
    else:
        print(result.trace)
    return 0


def cmd_bench(args) -> int:
    lo, hi = args.p_bits_range
    if args.out not in (None, "-"):
        # fail before spending minutes on timings
        try:
            Path(args.out).open("a").close()
        except OSError as exc:
            raise CliError(EXIT_UNWRITABLE, f"cannot write {args.out}: {exc}") from exc

    def progress(rec):
        if not args.quiet:
            print(f"{rec.method:>13} {rec.p_bits:>3} bits seed {rec.seed}: {rec.time_ms:9.1f} ms", file=sys.stderr)

    records = bench.run(range(lo, hi + 1), args.reps, args.seed, progress=progress)
    _write(args.out, bench.to_csv(records))
    return 0


def _verify_checks(chain, seed: int):
    E = chain.curve
    state: dict = {}

    def steps():
        bad = [(i, st.check()) for i, st in enumerate(chain.steps)]
        bad = [f"step {i}: {', '.join(f)}" for i, f in bad if f]
        return not bad, "; ".join(bad)

    def supersingular():
        return is_supersingular(E, seed), "probabilistic group-order test"

    def agreement():
        a = compute_trace(chain, "sea", seed)
        b = compute_trace(chain, "sea+p+points", seed)
        state["trace"] = a.trace
        state["residues"] = a.residues + b.residues
        return a.trace == b.trace, f"sea {a.trace}, sea+p+points {b.trace}"

    def charpoly():
        t = state["trace"]
        return check_characteristic_equation(chain, t, 10, seed), f"t = {t}"

    def mod_p():
        r = trace_mod_p(chain)
        return (state["trace"] - r) % E.p == 0, f"residue {r}"

    def residues():
        bad = [r for r in state["residues"] if (state["trace"] - r.residue) % r.modulus]
        return not bad, ", ".join(f"{r.residue} mod {r.modulus}" for r in bad)

    def oracle():
        bad = []
        for ell in (3, 5, 7):
            if ell == E.p:
                continue
            a = trace_mod_ell(chain, ell, seed)
            b = trace_oracle_bruteforce(chain, ell, seed)
            if a != b or (state["trace"] - a) % ell:
                bad.append(f"l={ell}: sea {a}, oracle {b}")
        return not bad, "; ".join(bad)

    return [
        ("step-identities", steps),
        ("supersingular", supersingular),
        ("method-agreement", agreement),
        ("characteristic-equation", charpoly),
        ("mod-p", mod_p),
        ("residue-table", residues),
        ("oracle", oracle),
    ]


def cmd_verify(args) -> int:
    chain = _load_chain(args.chain)
    failed = []
    for name, check in _verify_checks(chain, args.seed):
        try:
            ok, detail = check()
        except (SupertraceError, KeyError) as exc:
            ok, detail = False, f"{type(exc).__name__}: {exc}"
        print(f"{'PASS' if ok else 'FAIL'} {name}" + ("" if ok or not detail else f": {detail}"))
        if not ok:
            failed.append(name)
    if failed:
        print(f"failed: {', '.join(failed)}", file=sys.stderr)
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="supertrace", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("gen-curve", help="random supersingular curve over F_p^2")
    g.add_argument("--p-bits", type=_bits, required=True)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", "-o")
    g.set_defaults(func=cmd_gen_curve)

    g = sub.add_parser("gen-endo", help="random endomorphism as a cycle of 2-isogenies")
    g.add_argument("curve")
    g.add_argument("--length", "-L", type=_positive)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--out", "-o")
    g.set_defaults(func=cmd_gen_endo)

    g = sub.add_parser("trace", help="trace of an endomorphism chain")
    g.add_argument("chain")
    g.add_argument("--method", choices=METHOD_CHOICES, default="sea+p+points")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_trace)

    g = sub.add_parser("bench", help="time all methods and write CSV")
    g.add_argument("--p-bits-range", type=_bits_range, required=True)
    g.add_argument("--reps", type=_positive, default=5)
    g.add_argument("--out", "-o")
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--quiet", "-q", action="store_true")
    g.set_defaults(func=cmd_bench)

    g = sub.add_parser("verify", help="run consistency checks on a chain")
    g.add_argument("chain")
    g.add_argument("--seed", type=int, default=0)
    g.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except (InconsistentResidues, NoMatch) as exc:
        print(f"internal inconsistency: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())

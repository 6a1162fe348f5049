"""Command line driver: ``dpicard verify``, ``dpicard apply`` and ``dpicard group``."""
from __future__ import annotations

import argparse
import os
import sys
from math import gcd

from .complexes import ProjComplex
from .equivalences import FunctorLibrary, parse_word
from .groups import (
    Presentation, format_group_word, free_reduce, group_action, is_trivial_word, parse_group_word,
    phi_N, psi_embed, shift_indices,
)
from .linalg import parse_field
from .verify import COPRIME_SUITES, SUITES, RunConfig, applicable_suites, run_suite

DEFAULT_MATRIX = [(2, 3, 1), (3, 2, 1), (2, 3, 2), (3, 2, 2), (2, 1, 3)]
# suites that make sense without gcd(n, t) = 1
NONCOPRIME_SAFE = ["braid", "tilting", "natural"]


class UsageError(Exception):
    pass


def _add_config_args(p: argparse.ArgumentParser, require: bool = False):
    p.add_argument("--m", type=int, required=require)
    p.add_argument("--n", type=int, required=require)
    p.add_argument("--t", type=int, default=None if not require else 1)
    p.add_argument("--field", default="fp:32003", help="q or fp:<p> (default fp:32003)")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=64, help="random samples per isomorphism search")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dpicard", description="Exact checks for derived Picard groups "
                                     "of selfinjective Nakayama algebras.")
    sub = parser.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run a verification suite")
    v.add_argument("target", choices=sorted(SUITES) + ["all"])
    _add_config_args(v)
    v.add_argument("--samples", type=int, default=50, help="random samples for sampled checks")
    v.add_argument("--format", choices=["text", "records"], default="text")
    v.add_argument("--show-witness", action="store_true", help="print full witness chain maps")

    a = sub.add_parser("apply", help="apply a functor word to a projective or a complex file")
    a.add_argument("word")
    a.add_argument("object", help="projective label such as P4, or a file holding a serialized complex")
    _add_config_args(a, require=True)
    a.add_argument("--right-to-left", action="store_true",
                   help="read the word as a composite of functors (rightmost atom acts first)")

    g = sub.add_parser("group", help="braid and free group utilities")
    gsub = g.add_subparsers(dest="group_command", required=True)
    r = gsub.add_parser("reduce", help="free reduction of a word")
    r.add_argument("word")
    for name in ("act", "trivial"):
        x = gsub.add_parser(name)
        kind = x.add_mutually_exclusive_group(required=True)
        kind.add_argument("--affine", type=int, metavar="M", help="B(A~_{M-1}) acting on F_{M+1}")
        kind.add_argument("--artin", type=int, metavar="N", help="B(A_N) acting on F_{N+1}")
        x.add_argument("word")
        if name == "act":
            x.add_argument("free_word")
    mp = gsub.add_parser("map", help="images under phi_N, psi or phi_{m,n}(r^l)")
    kind = mp.add_mutually_exclusive_group(required=True)
    kind.add_argument("--phi", type=int, metavar="N")
    kind.add_argument("--psi", type=int, nargs=2, metavar=("M", "T"))
    kind.add_argument("--shift", type=int, nargs=2, metavar=("L", "M"))
    mp.add_argument("word")
    return parser


# ---------------------------------------------------------------------------

def _configs(args) -> list:
    given = [args.m, args.n, args.t]
    if all(x is None for x in given):
        return [(m, n, t, True) for m, n, t in DEFAULT_MATRIX]
    if args.m is None or args.n is None:
        raise UsageError("--m and --n must be given together")
    t = 1 if args.t is None else args.t
    if min(args.m, args.n, t) < 1:
        raise UsageError("m, n, t must be positive")
    return [(args.m, args.n, t, False)]


def _plan(args, field) -> list:
    """(config, suite names) pairs; raises UsageError before any work on invalid input."""
    plan = []
    for m, n, t, from_matrix in _configs(args):
        cfg = RunConfig(m, n, t, field, args.seed, args.budget, args.samples)
        coprime = gcd(n, t) == 1
        if args.target == "all":
            if not coprime and not from_matrix:
                raise UsageError(f"verify all needs gcd(n, t) = 1 (got n={n}, t={t})")
            names = applicable_suites(cfg) if coprime else [x for x in NONCOPRIME_SAFE if m >= 3 or x != "braid"]
        else:
            if args.target in COPRIME_SUITES and not coprime:
                raise UsageError(f"verify {args.target} needs gcd(n, t) = 1 (got n={n}, t={t})")
            names = [args.target]
            if not from_matrix:
                _check_target(args.target, cfg)
            elif not _applies(args.target, cfg):
                continue
        plan.append((cfg, names))
    if not plan:
        raise UsageError(f"no default configuration applies to {args.target}")
    return plan


def _check_target(target: str, cfg: RunConfig):
    if target in ("rot", "omega") and cfg.t != 1:
        raise UsageError(f"verify {target} needs t = 1")
    if target not in ("picard", "groups", "oracles") and cfg.m < 2:
        raise UsageError(f"verify {target} needs m >= 2")


def _applies(target: str, cfg: RunConfig) -> bool:
    try:
        _check_target(target, cfg)
    except UsageError:
        return False
    if target in COPRIME_SUITES and not cfg.coprime:
        return False
    if target in ("center", "amn") and cfg.t != 1:
        return False
    return True


def cmd_verify(args, out) -> int:
    field = parse_field(args.field)
    plan = _plan(args, field)
    if any(not cfg.coprime for cfg, _ in plan):
        print("note: configurations with gcd(n, t) != 1 lie outside the standing hypothesis; "
              "only suites not relying on it are run", file=sys.stderr)
    counts = {"pass": 0, "fail": 0, "unknown": 0}
    for cfg, names in plan:
        for name in names:
            for chk in run_suite(name, cfg):
                counts[chk.verdict] += 1
                if args.format == "records":
                    print(chk.record(), file=out)
                else:
                    print(chk.text(), file=out)
                if args.show_witness and chk.witness:
                    print(chk.witness, end="", file=out)
    total = sum(counts.values())
    if args.format == "records":
        print("\t".join(["summary", str(total), str(counts["pass"]), str(counts["fail"]),
                         str(counts["unknown"])]), file=out)
    else:
        print(f"{total} checks: {counts['pass']} passed, {counts['fail']} failed, "
              f"{counts['unknown']} unknown", file=out)
    return 0 if counts["pass"] == total else 1


def cmd_apply(args, out) -> int:
    m, n, t = args.m, args.n, args.t if args.t is not None else 1
    from .nakayama import NakayamaSpec
    spec = NakayamaSpec(m, n, t, require_coprime=False)
    alg = spec.algebra(parse_field(args.field))
    try:
        atoms = parse_word(args.word)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.right_to_left:
        atoms = list(reversed(atoms))
    if os.path.exists(args.object):
        with open(args.object) as fh:
            X = ProjComplex.parse(alg, fh.read())
    else:
        try:
            X = ProjComplex.stalk(alg, alg.parse_label(args.object))
        except ValueError as exc:
            raise UsageError(f"cannot read object {args.object!r}: {exc}") from exc
    lib = FunctorLibrary(alg, m)
    try:
        Y = lib.apply(atoms, X)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    print(Y.text(), end="", file=out)
    return 0


def _presentation(args) -> Presentation:
    return Presentation("affine", args.affine) if args.affine is not None else Presentation("artin", args.artin)


def cmd_group(args, out) -> int:
    try:
        w = parse_group_word(args.word)
        sub = args.group_command
        if sub == "reduce":
            print(format_group_word(free_reduce(w)), file=out)
        elif sub == "act":
            print(format_group_word(group_action(_presentation(args), w, parse_group_word(args.free_word))),
                  file=out)
        elif sub == "trivial":
            print("trivial" if is_trivial_word(_presentation(args), w) else "nontrivial", file=out)
        elif sub == "map":
            if args.phi is not None:
                img = phi_N(w, args.phi)
            elif args.psi is not None:
                img = psi_embed(w, *args.psi)
            else:
                l, m = args.shift
                Presentation("affine", m).check(w)
                img = shift_indices(w, l, m)
            print(format_group_word(free_reduce(img)), file=out)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return 0


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "verify":
            return cmd_verify(args, out)
        if args.command == "apply":
            return cmd_apply(args, out)
        return cmd_group(args, out)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Digraphs travel in the canonical text format, through a file argument or
standard input.  Exit codes: 0 positive verdict, 1 negative verdict,
2 usage or input error, 3 search budget exhausted (no verdict).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from .digraph import (
    NoQualifyingPairError,
    common_neighbour_witness,
    condition_witness,
    degree_profile,
    is_strong,
)
from .families import (
    ClassificationKind,
    FamilyError,
    H1Spec,
    classify_m_minus_one,
    generate_h1,
    generate_h2,
    generate_h3,
)
from .hamilton import BudgetExhausted, construct_hamiltonian, find_hamiltonian_cycle, find_hamiltonian_path
from .textio import ParseError, parse, serialize, to_dot
from .verify import THEOREMS, sharpness_report, verify_theorem

OK, NEGATIVE, USAGE, NO_VERDICT = 0, 1, 2, 3


def _read_digraph(path: Optional[str]):
    if path is None or path == "-":
        return parse(sys.stdin.read())
    with open(path) as fh:
        return parse(fh.read())


def _write_out(path: Optional[str], doc: dict) -> None:
    if path:
        with open(path, "w") as fh:
            json.dump(doc, fh, indent=2, sort_keys=True)
            fh.write("\n")


def cmd_check(args) -> int:
    D = _read_digraph(args.input)
    print(f"half-order a={D.a}, arcs={D.arc_count}")
    print("vertex  out  in  total")
    for v, o, i, t in degree_profile(D).rows(D):
        print(f"{str(v):<6}  {o:>3}  {i:>2}  {t:>5}")
    strong = is_strong(D)
    print(f"strong: {'yes' if strong else 'no'}")
    try:
        w = condition_witness(D)
        u, v = w.pair
        holds = w.satisfies(args.k)
        print(f"min non-adjacent degree sum: {w.min_sum} at ({u},{v}); level M_{w.level}")
    except NoQualifyingPairError:
        holds = True
        print("min non-adjacent degree sum: none (every pair adjacent)")
    print(f"condition M_{args.k} (sum >= {3 * D.a + args.k}): {'holds' if holds else 'fails'}")
    try:
        c = common_neighbour_witness(D)
        u, v = c.pair
        print(f"min common-neighbour degree sum: {c.min_sum} at ({u},{v}); >= 3a: {'yes' if c.min_sum >= 3 * D.a else 'no'}")
    except NoQualifyingPairError:
        print("min common-neighbour degree sum: none (no pair shares a neighbour)")
    return OK if holds else NEGATIVE


def cmd_hamilton(args) -> int:
    D = _read_digraph(args.input)
    if args.mode == "cycle":
        c = find_hamiltonian_cycle(D, args.budget)
        print(c if c is not None else "none")
        return OK if c is not None else NEGATIVE
    if args.mode == "path":
        p = find_hamiltonian_path(D, args.budget)
        print("".join(map(str, p)) if p is not None else "none")
        return OK if p is not None else NEGATIVE
    trace = construct_hamiltonian(D, args.budget)
    print(trace.outcome.cycle if trace.hamiltonian else "none")
    for line in trace.lines():
        print(line)
    return OK if trace.hamiltonian else NEGATIVE


def cmd_classify(args) -> int:
    D = _read_digraph(args.input)
    c = classify_m_minus_one(D, args.budget)
    print(c.describe())
    return NEGATIVE if c.kind is ClassificationKind.COUNTEREXAMPLE else OK


def cmd_gen(args) -> int:
    if args.family == "h2":
        D = generate_h2()
    elif args.a is None:
        raise FamilyError(f"--a is required for {args.family}")
    elif args.family == "h1":
        D = generate_h1(H1Spec.preset(args.a, args.pattern))
    else:
        D = generate_h3(args.a)
    sys.stdout.write(serialize(D))
    return OK


def cmd_verify(args) -> int:
    rep = verify_theorem(args.theorem, args.a, sample=args.sample, seed=args.seed,
                         workers=args.workers, budget=args.budget)
    print(rep.summary())
    _write_out(args.out, rep.to_dict())
    if rep.counterexamples:
        return NEGATIVE
    return NO_VERDICT if rep.unresolved else OK


def cmd_sharpness(args) -> int:
    rep = sharpness_report(args.budget)
    print(rep.summary())
    _write_out(args.out, rep.to_dict())
    return OK if rep.ok else NEGATIVE


def cmd_export(args) -> int:
    D = _read_digraph(args.input)
    sys.stdout.write(to_dot(D) if args.format == "dot" else serialize(D))
    return OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="worker processes for verify")
    common.add_argument("--budget", type=int, default=argparse.SUPPRESS, help="search-node budget for exact searches")
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS, help="seed for sampled verification")
    common.add_argument("--out", default=argparse.SUPPRESS, help="write the structured report here")

    p = argparse.ArgumentParser(prog="bimeyniel", parents=[common], description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("check", parents=[common], help="degrees, strongness and degree-sum conditions")
    s.add_argument("input", nargs="?")
    s.add_argument("--k", type=int, default=0, help="condition level M_k to test (default 0)")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("hamilton", parents=[common], help="hamiltonian cycle / path search")
    s.add_argument("input", nargs="?")
    s.add_argument("--mode", choices=["cycle", "path", "construct"], default="cycle")
    s.set_defaults(func=cmd_hamilton)

    s = sub.add_parser("classify", parents=[common], help="classification under M_-1")
    s.add_argument("input", nargs="?")
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("gen", parents=[common], help="generate an extremal digraph")
    s.add_argument("--family", choices=["h1", "h2", "h3"], required=True)
    s.add_argument("--a", type=int)
    s.add_argument("--pattern", choices=["minimal", "full"], default="minimal")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("verify", parents=[common], help="exhaustive or sampled theorem check")
    s.add_argument("--theorem", choices=list(THEOREMS), required=True)
    s.add_argument("--a", type=int, required=True)
    s.add_argument("--sample", type=int, help="number of random digraphs (default: exhaustive)")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("sharpness", parents=[common], help="check the extremal examples")
    s.set_defaults(func=cmd_sharpness)

    s = sub.add_parser("export", parents=[common], help="re-emit a digraph")
    s.add_argument("input", nargs="?")
    s.add_argument("--format", choices=["dot", "canonical"], default="canonical")
    s.set_defaults(func=cmd_export)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code else OK
    for name, default in (("workers", 1), ("budget", None), ("seed", None), ("out", None)):
        if not hasattr(args, name):
            setattr(args, name, default)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    except BudgetExhausted as exc:
        print(f"no verdict: {exc}", file=sys.stderr)
        return NO_VERDICT


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front end.

Subcommands: refine, verify, classify, decompose, min, kset, reduce, theta,
fixtures.  All output is deterministic (timing only appears behind -v);
JSON encodes matrix and ray entries as decimal strings.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from pathlib import Path

from .geometry import cone_to_json_dict, format_cone
from .ksets import kset
from .minima import min_complement, min_n
from .quadform import parse_int_form, reduce_gl2, theta_coeffs
from .refinement import (
    RunResult,
    check_y_projection_argument,
    format_table,
    run_algorithm,
    stop_set,
)
from .relations import classify, key_lemma_decompose, verify_relation
from . import fixtures

STOP_CHOICES = {"diagonal": "diagonal", "q1q3": "q1_eq_q3"}


def _parse_pair(text: str) -> tuple[int, int]:
    t = text.strip()
    if t.startswith("(") and t.endswith(")"):
        t = t[1:-1]
    x, y = (int(p.strip()) for p in t.split(","))
    return (x, y)


def _parse_pair_list(text: str) -> tuple[tuple[int, int], ...]:
    text = text.strip()
    if not text:
        return ()
    return tuple(_parse_pair(part) for part in text.split(";") if part.strip())


def _parse_set_list(text: str) -> tuple[tuple[tuple[int, int], ...], ...]:
    """Parse ``{(1,0),(0,1)};{};{(-1,1)}`` into a tuple of vector tuples."""
    sets = []
    for part in text.split(";"):
        part = part.strip()
        if part.startswith("{") and part.endswith("}"):
            part = part[1:-1]
        part = part.strip()
        if not part:
            sets.append(())
            continue
        chunks = part.replace("(", " (").split(")")
        vecs = tuple(_parse_pair(c + ")") for c in (x.strip(" ,") for x in chunks) if c)
        sets.append(vecs)
    return tuple(sets)


def _format_pair(v: tuple[int, int]) -> str:
    return f"({v[0]}, {v[1]})"


def _format_set(s) -> str:
    return "{" + ", ".join(_format_pair(v) for v in s) + "}"


def _param_json(param) -> dict:
    return {
        "X": [[list(v) for v in s] for s in param.x_sets],
        "Y": [[list(v) for v in s] for s in param.y_sets],
        "Z": [[list(v) for v in s] for s in param.z_sets],
    }


def _dump_run(result: RunResult, out_dir: Path) -> None:
    for i, gen in enumerate(result.generations):
        gen_dir = out_dir / f"gen_{i}"
        gen_dir.mkdir(parents=True, exist_ok=True)
        for j, pair in enumerate(gen):
            payload = {
                "cone": cone_to_json_dict(pair.cone),
                "param": _param_json(pair.param),
            }
            (gen_dir / f"pair_{j}.json").write_text(json.dumps(payload, indent=1))


def _cmd_refine(args) -> int:
    threads = args.threads
    if threads is None:
        threads = int(os.environ.get("THETA_REFINE_THREADS", "1"))
    try:
        result = run_algorithm(
            args.a, args.b, STOP_CHOICES[args.stop_set], args.max_iter, threads
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.emit == "json":
        print(
            json.dumps(
                {
                    "a": result.a,
                    "b": result.b,
                    "stop_set": result.stop_kind,
                    "totals": result.totals(),
                    "non_empty": result.non_empty_counts(),
                }
            )
        )
    else:
        print(format_table(result, verbose=args.verbose))
    if args.out:
        _dump_run(result, Path(args.out))
    return 0


def _cmd_verify(args) -> int:
    q1, q2, q3 = (parse_int_form(t) for t in (args.q1, args.q2, args.q3))
    ok, failing = verify_relation(q1, q2, q3, args.a, args.b, args.max_coeff)
    if ok:
        print(f"verified for all m <= {args.max_coeff}")
        return 0
    print(f"fails at m={failing}")
    return 1


def _cmd_classify(args) -> int:
    alphas = tuple(Fraction(t.strip()) for t in args.alphas.split(","))
    if len(alphas) != 3:
        print("error: expected three comma-separated rationals", file=sys.stderr)
        return 2
    forms = tuple(parse_int_form(t) for t in (args.q1, args.q2, args.q3))
    result = classify(alphas, forms, args.max_coeff)
    print(f"{result.label} (bound {result.bound}): {result.detail}")
    return 0 if result.label != "no-relation-detected" else 1


def _cmd_decompose(args) -> int:
    triple = tuple(int(t.strip()) for t in args.triple.split(","))
    if len(triple) != 3:
        print("error: expected x,y,z", file=sys.stderr)
        return 2
    result = key_lemma_decompose(args.a, args.b, triple)
    if result is None:
        print("none")
        return 1
    print(f"{result[0]},{result[1]},{result[2]}")
    return 0


def _cmd_min(args) -> int:
    excluded = _parse_pair_list(args.exclude)
    if args.n is None:
        for v in min_complement(excluded):
            print(_format_pair(v))
    else:
        for s in min_n(excluded, args.n):
            print(_format_set(tuple(sorted(s))))
    return 0


def _cmd_kset(args) -> int:
    sets = _parse_set_list(args.sets)
    cone = kset(sets)
    if args.emit == "json":
        print(json.dumps(cone_to_json_dict(cone)))
    else:
        print(format_cone(cone))
        print("rays =")
        for r in cone.edges():
            print(f"  {list(r)}")
    return 0


def _cmd_reduce(args) -> int:
    form = parse_int_form(args.form)
    reduced, transform = reduce_gl2(form)
    print(f"reduced: {reduced}")
    print(f"transform rows: {transform[0]} {transform[1]}")
    return 0


def _cmd_theta(args) -> int:
    form = parse_int_form(args.form)
    variant = "strongly_primitive" if args.variant == "sp" else "ordinary"
    coeffs = theta_coeffs(form, args.max_coeff, variant)
    if args.emit == "json":
        print(json.dumps([str(c) for c in coeffs]))
    else:
        for c in coeffs:
            print(c)
    return 0


def _cmd_fixtures(args) -> int:
    results = fixtures.run_fixtures()
    failed = [r for r in results if not r.ok]
    if args.emit == "json":
        print(json.dumps([{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results]))
    else:
        for r in results:
            line = f"{'PASS' if r.ok else 'FAIL'} {r.name}"
            if not r.ok and r.detail:
                line += f": {r.detail}"
            print(line)
        print(f"{len(results) - len(failed)}/{len(results)} fixtures passed")
    return 1 if failed else 0


def _cmd_ycheck(args) -> int:
    result = run_algorithm(1, 0, "q1_eq_q3", args.max_iter, args.threads or 1)
    ok = check_y_projection_argument(result.final_pairs, stop_set("q1_eq_q3"))
    print(f"y-projection check: {'holds' if ok else 'fails'}")
    return 0 if ok else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="theta-refine",
        description="Exact cone refinement for 3-term theta series relations",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("refine", help="run the refinement loop and print the table")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--stop-set", choices=sorted(STOP_CHOICES), default="diagonal")
    p.add_argument("--max-iter", type=int, default=13)
    p.add_argument("--threads", type=int, default=None)
    p.add_argument("--out", help="directory for per-pair JSON dumps")
    p.add_argument("--emit", choices=("text", "json"), default="text")
    p.add_argument("-v", "--verbose", action="store_true")
    p.set_defaults(func=_cmd_refine)

    p = sub.add_parser("verify", help="check a relation coefficient by coefficient")
    p.add_argument("--q1", required=True)
    p.add_argument("--q2", required=True)
    p.add_argument("--q3", required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--max-coeff", type=int, default=10000)
    p.set_defaults(func=_cmd_verify)

    p = sub.add_parser("classify", help="label a candidate relation")
    p.add_argument("--alphas", required=True, help="three rationals, e.g. 1/3,2/3,-1")
    p.add_argument("--q1", required=True)
    p.add_argument("--q2", required=True)
    p.add_argument("--q3", required=True)
    p.add_argument("--max-coeff", type=int, default=10000)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("decompose", help="decompose a triple over the linset")
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--triple", required=True, help="x,y,z")
    p.set_defaults(func=_cmd_decompose)

    p = sub.add_parser("min", help="minimal vectors outside an exclusion set")
    p.add_argument("--exclude", default="", help='e.g. "(1,0);(0,1)"')
    p.add_argument("--n", type=int, default=None)
    p.set_defaults(func=_cmd_min)

    p = sub.add_parser("kset", help="cone of forms with prescribed minima sets")
    p.add_argument("--sets", required=True, help='e.g. "{(1,0),(0,1)};{};{(-1,1)}"')
    p.add_argument("--emit", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_kset)

    p = sub.add_parser("reduce", help="GL2(Z)-reduce an integer form")
    p.add_argument("--form", required=True, help="a,b,c")
    p.set_defaults(func=_cmd_reduce)

    p = sub.add_parser("theta", help="theta series coefficients")
    p.add_argument("--form", required=True, help="a,b,c")
    p.add_argument("--max-coeff", type=int, default=100)
    p.add_argument("--variant", choices=("ordinary", "sp"), default="ordinary")
    p.add_argument("--emit", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_theta)

    p = sub.add_parser("fixtures", help="replay the embedded golden examples")
    p.add_argument("--emit", choices=("text", "json"), default="text")
    p.set_defaults(func=_cmd_fixtures)

    p = sub.add_parser("ycheck", help="projection argument for the 2-term case")
    p.add_argument("--max-iter", type=int, default=13)
    p.add_argument("--threads", type=int, default=None)
    p.set_defaults(func=_cmd_ycheck)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())

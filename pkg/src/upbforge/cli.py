"""Command-line entry point.

Exit codes: 0 when the requested result is delivered (and positive), 1 for a
negative mathematical verdict, 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import json
import logging
from pathlib import Path
import sys

from . import bounds as bnd
from .fixtures import example, example_path
from .graphs import Graph, enumerate_k13_decompositions
from .linalg import FLOAT, ModeError, format_vector
from .orthrep import SolverConfig, solve
from .pipeline import SearchConfig, UpbRecipe, construct_upb, search_gupb_333
from .product import ProductStateSet, is_gupb, is_upb

EXIT_OK, EXIT_NEGATIVE, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _dump(obj, out=None):
    text = json.dumps(obj, indent=1)
    if out:
        Path(out).write_text(text + "\n")
    else:
        print(text)


def _read_json(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: invalid JSON ({exc})") from None


def _load_set(path) -> ProductStateSet:
    try:
        return ProductStateSet.from_json(_read_json(path))
    except (ValueError, ModeError) as exc:
        raise InputError(f"{path}: {exc}") from None


def _load_graph(path) -> Graph:
    try:
        return Graph.from_json(_read_json(path))
    except ValueError as exc:
        raise InputError(f"{path}: {exc}") from None


def _witness_text(witness) -> str:
    return " ⊗ ".join(format_vector(v) for v in witness)


def _report_upb(pset: ProductStateSet, args, name: str = "") -> int:
    verdict = is_upb(pset)
    label = "numerical" if verdict.numerical else "exact"
    if args.json:
        _dump(verdict.to_json())
    else:
        prefix = f"{name}: " if name else ""
        if verdict.is_upb and verdict.numerical and not args.allow_numerical:
            print(f"{prefix}UPB: unconfirmed (numerical verdict; pass --allow-numerical to accept it)")
        else:
            print(f"{prefix}UPB: {str(verdict.is_upb).lower()} ({label})")
        print(f"  size {pset.k}, dims {tuple(pset.dims)}, reason: {verdict.reason}")
        for m, g in enumerate(verdict.graphs, 1):
            degs = sorted(set(g.degrees()))
            line = f"  G{m}: {len(g.edges)} edges, degrees {degs}"
            if verdict.maximal_sets and verdict.maximal_sets[m - 1] is not None:
                sizes = sorted({len(u) for u in verdict.maximal_sets[m - 1]})
                line += f", maximal unsaturated set sizes {sizes}"
            print(line)
        if verdict.non_orthogonal_pairs:
            print(f"  non-orthogonal pairs: {verdict.non_orthogonal_pairs}")
        if verdict.witness is not None:
            print(f"  witness: {_witness_text(verdict.witness)}")
            print(f"  cover: {[None if c is None else sorted(c) for c in verdict.cover]}")
    if verdict.numerical and verdict.is_upb and not args.allow_numerical:
        return EXIT_NEGATIVE
    return EXIT_OK if verdict.is_upb else EXIT_NEGATIVE


def cmd_verify_upb(args) -> int:
    return _report_upb(_load_set(args.file), args)


def cmd_verify_gupb(args) -> int:
    pset = _load_set(args.file)
    verdict = is_gupb(pset)
    numerical = pset.mode == FLOAT
    if args.json:
        _dump(verdict.to_json())
    else:
        label = "numerical" if numerical else "exact"
        if verdict.is_gupb and numerical and not args.allow_numerical:
            print("GUPB: unconfirmed (numerical verdict; pass --allow-numerical to accept it)")
        else:
            print(f"GUPB: {str(verdict.is_gupb).lower()} ({label})")
        for bp, v in verdict.results:
            print(f"  {bp}: {'UPB' if v.is_upb else 'extendible'} ({v.reason})")
        fail = verdict.failing
        if fail is not None:
            bp, v = fail
            print(f"failing bipartition: {bp}")
            if v.witness is not None:
                print(f"witness: {_witness_text(v.witness)}")
    if numerical and verdict.is_gupb and not args.allow_numerical:
        return EXIT_NEGATIVE
    return EXIT_OK if verdict.is_gupb else EXIT_NEGATIVE


def _parse_dims(text: str) -> tuple[int, ...]:
    try:
        dims = tuple(int(x) for x in text.split(","))
        bnd.DimensionVector(dims)
    except ValueError as exc:
        raise InputError(f"bad --dims {text!r}: {exc}") from None
    return dims


def cmd_bounds(args) -> int:
    if args.table1:
        rows = bnd.table1()
        if args.json:
            _dump([{"dims": list(d), "demianowicz": a, "trivial": b, "new": c} for d, a, b, c in rows])
        else:
            print(f"{'dims':<18}{'demianowicz':>12}{'trivial':>9}{'new':>6}")
            for d, a, b, c in rows:
                print(f"{'(' + ','.join(map(str, d)) + ')':<18}{a:>12}{b:>9}{c:>6}")
        return EXIT_OK
    if not args.dims:
        raise InputError("bounds needs --dims or --table1")
    report = bnd.compare(_parse_dims(args.dims))
    if args.json:
        _dump(report.to_json())
        return EXIT_OK
    print(f"dims {report.dims}")
    strict = " (strict: effective {})".format(report.bennett + 1) if report.bennett_strict_applies else ""
    print(f"  UPB bound (Bennett)       {report.bennett}{strict}")
    print(f"  GUPB trivial bound        {report.trivial_gupb}")
    print(f"  GUPB Demianowicz bound    {report.demianowicz}")
    print(f"  GUPB degree-count bound   {report.new_bound}")
    print(f"  GUPB parity-improved      {report.improved if report.improved_applies else 'n/a'}")
    if not report.gupb_admissible:
        print("  note: some local dimension is 2, so no GUPB exists; GUPB bounds are formal only")
    return EXIT_OK


def cmd_orthrep(args) -> int:
    g = _load_graph(args.graph)
    cfg = SolverConfig(dimension=args.dim, restarts=args.restarts, max_iterations=args.iters,
                       objective_tolerance=args.tol, rng_seed=args.seed,
                       genericity_penalty_weight=args.genericity)
    res = solve(g, cfg)
    _dump(res.to_json(), args.out)
    if args.out:
        print(f"converged: {str(res.converged).lower()}, objective {res.objective:.3e}, "
              f"restart {res.restart_index}, {len(res.faithfulness)} unfaithful pairs")
    return EXIT_OK if res.converged else EXIT_NEGATIVE


def cmd_decompose(args) -> int:
    decomps = enumerate_k13_decompositions()
    if args.json:
        _dump([{"partition": [list(b) for b in p.blocks], "graphs": [g.to_json() for g in gs]}
               for p, gs in decomps])
    else:
        for i, (p, gs) in enumerate(decomps, 1):
            print(f"{i:2d}  {p}  edges {[len(g.edges) for g in gs]}")
    return EXIT_OK


def cmd_search(args) -> int:
    cfg = SearchConfig(restarts=args.restarts, max_iterations=args.iters, seed=args.seed,
                       tolerance=args.tol, genericity=args.genericity, source=args.source)
    try:
        report = search_gupb_333(cfg)
    except (ValueError, OSError) as exc:
        raise InputError(str(exc)) from None
    if args.out:
        _dump(report.to_json(), args.out)
    for rec in report.records:
        print(f"{rec.label:<24} solved {rec.solved_count}/3  {rec.note}")
    s = report.summary()
    print(f"solved-count histogram: {s['solved_count_histogram']}")
    print(f"GUPB found: {str(report.any_gupb).lower()}")
    return EXIT_OK


def cmd_construct(args) -> int:
    try:
        recipe = UpbRecipe.from_json(_read_json(args.recipe))
    except ValueError as exc:
        raise InputError(f"{args.recipe}: {exc}") from None
    res = construct_upb(recipe)
    if args.out and res.upb is not None:
        _dump(res.upb.to_json(), args.out)
    if args.json:
        _dump(res.to_json())
    else:
        print(res.message)
    return EXIT_OK if res.ok else EXIT_NEGATIVE


def cmd_examples(args) -> int:
    which = [1, 2] if args.which == "all" else [int(args.which)]
    if args.write:
        out = Path(args.write)
        out.mkdir(parents=True, exist_ok=True)
        for n in which:
            (out / f"example{n}.json").write_text(example_path(n).read_text())
            print(out / f"example{n}.json")
        return EXIT_OK
    if not args.verify:
        for n in which:
            if args.json:
                _dump(example(n).to_json())
            else:
                pset = example(n)
                print(f"Example {n}: {pset.k} states in dims {tuple(pset.dims)}")
                for i, s in enumerate(pset.states, 1):
                    print(f"  {i}: {_witness_text(s)}")
        return EXIT_OK
    codes = [_report_upb(example(n), args, f"Example {n}") for n in which]
    return max(codes)


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="upbforge", description="Verify, bound and search for "
                                "unextendible product bases via orthogonality graphs.")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    for name, fn, what in (("verify-upb", cmd_verify_upb, "UPB"), ("verify-gupb", cmd_verify_gupb, "GUPB")):
        s = sub.add_parser(name, help=f"decide whether a product-state set is a {what}")
        s.add_argument("file", help="product-state set JSON")
        s.add_argument("--allow-numerical", action="store_true",
                       help="accept positive verdicts computed in float mode")
        s.add_argument("--json", action="store_true", help="print the verdict as JSON")
        s.set_defaults(func=fn)

    s = sub.add_parser("bounds", help="size bounds for a dimension vector")
    s.add_argument("--dims", help="comma-separated local dimensions, e.g. 3,3,4")
    s.add_argument("--table1", action="store_true", help="print the six reference comparison rows")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("orthrep", help="search an orthogonal representation of a graph")
    s.add_argument("--graph", required=True, help="graph JSON file")
    s.add_argument("--dim", type=int, required=True, help="target dimension")
    s.add_argument("--restarts", type=int, default=100)
    s.add_argument("--iters", type=int, default=2000, help="iterations per restart")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--tol", type=float, default=1e-10, help="objective tolerance")
    s.add_argument("--genericity", type=float, default=0.0,
                   help="weight of the experimental subset-conditioning penalty (0 disables)")
    s.add_argument("--out", help="write the result JSON here instead of stdout")
    s.set_defaults(func=cmd_orthrep)

    s = sub.add_parser("decompose-k13", help="list the 15 Cayley decompositions of K_13")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_decompose)

    s = sub.add_parser("search-gupb", help="search a 13-state GUPB in C^3 x C^3 x C^3")
    s.add_argument("--source", default="cayley", help="'cayley' or 'dir:<path>' of decomposition files")
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--restarts", type=int, default=100)
    s.add_argument("--iters", type=int, default=2000)
    s.add_argument("--tol", type=float, default=1e-10)
    s.add_argument("--genericity", type=float, default=0.0)
    s.add_argument("--out", help="write the full report JSON here")
    s.set_defaults(func=cmd_search)

    s = sub.add_parser("construct-upb", help="build a UPB from a graph-decomposition recipe")
    s.add_argument("--recipe", required=True, help="recipe JSON")
    s.add_argument("--out", help="write the verified set here")
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_construct)

    s = sub.add_parser("examples", help="print, verify or export the bundled example sets")
    s.add_argument("--which", choices=["1", "2", "all"], default="all")
    s.add_argument("--verify", action="store_true")
    s.add_argument("--write", metavar="DIR", help="copy the fixture files into DIR")
    s.add_argument("--allow-numerical", action="store_true", help=argparse.SUPPRESS)
    s.add_argument("--json", action="store_true")
    s.set_defaults(func=cmd_examples)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())

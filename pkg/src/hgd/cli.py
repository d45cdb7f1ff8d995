"""Command-line interface.

Exit codes: 0 ok, 1 engines disagree, 2 bad arguments, 3 budget exceeded,
4 unsupported domain.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from pathlib import Path

from hgd import embedding, engines, genfun, recurrence
from hgd.errors import BudgetExceeded, InvalidArgument, Unsupported
from hgd.params import ParamTuple
from hgd.polynomial import GenusPolynomial

EXIT_OK, EXIT_MISMATCH, EXIT_ARGS, EXIT_BUDGET, EXIT_UNSUPPORTED = 0, 1, 2, 3, 4

log = logging.getLogger("hgd")


class ResultCache:
    """One JSON file per canonical tuple, holding a polynomial per engine."""

    def __init__(self, root: str | os.PathLike):
        self.root = Path(root)

    def _path(self, params: ParamTuple) -> Path:
        key = str(recurrence.canonicalize(params)).replace(",", "_")
        return self.root / f"H_{key}.json"

    def get(self, params: ParamTuple, engine: str) -> GenusPolynomial | None:
        path = self._path(params)
        if not path.exists():
            return None
        data = json.loads(path.read_text())
        coeffs = data.get("results", {}).get(engine)
        return None if coeffs is None else GenusPolynomial(int(c) for c in coeffs)

    def put(self, params: ParamTuple, engine: str, poly: GenusPolynomial) -> None:
        self.root.mkdir(parents=True, exist_ok=True)
        path = self._path(params)
        data = json.loads(path.read_text()) if path.exists() else {}
        data["params"] = str(recurrence.canonicalize(params))
        data.setdefault("results", {})[engine] = poly.to_strings()
        tmp = path.with_suffix(".tmp")
        tmp.write_text(json.dumps(data, sort_keys=True, indent=1))
        tmp.replace(path)


def _cache(args) -> ResultCache | None:
    root = args.cache_dir or os.environ.get("HGD_CACHE_DIR")
    return ResultCache(root) if root else None


def _trunc(args) -> tuple[int, ...] | None:
    if getattr(args, "trunc", None) is None:
        return None
    try:
        return tuple(int(s) for s in args.trunc.split(","))
    except ValueError as exc:
        raise InvalidArgument(f"cannot parse --trunc {args.trunc!r}") from exc


def _compute(params: ParamTuple, engine: str, args) -> GenusPolynomial:
    cache = _cache(args)
    if cache is not None:
        hit = cache.get(params, engine)
        if hit is not None:
            log.info("cache hit for %s (%s)", params, engine)
            return hit
    poly = engines.compute(params, engine, budget=args.budget_bits, workers=args.threads, trunc=_trunc(args))
    if cache is not None:
        cache.put(params, engine, poly)
    return poly


def format_poly(poly: GenusPolynomial, fmt: str) -> str:
    if fmt == "json":
        return poly.to_json()
    if fmt == "csv":
        lines = ["genus,count"] + [f"{i},{c}" for i, c in enumerate(poly.coeffs)]
        return "\n".join(lines)
    return str(poly)


def cmd_dist(args) -> int:
    params = ParamTuple.parse(args.m)
    poly = _compute(params, args.engine, args)
    print(format_poly(poly, args.format))
    return EXIT_OK


def cmd_crosscheck(args) -> int:
    params = ParamTuple.parse(args.m)
    names = [s.strip() for s in args.engines.split(",") if s.strip()]
    unknown = [n for n in names if n not in engines.ENGINES]
    if unknown or not names:
        raise InvalidArgument(f"unknown engines {unknown}; choose from {', '.join(engines.ENGINE_NAMES)}")
    results = {n: _compute(params, n, args) for n in names}
    ref = results[names[0]]
    if all(results[n] == ref for n in names[1:]):
        print(f"MATCH H_{params} engines={','.join(names)}")
        print(format_poly(ref, args.format))
        return EXIT_OK
    width = max(len(p) for p in results.values())
    first = next(i for i in range(width) if len({results[n][i] for n in names}) > 1)
    print(f"MISMATCH H_{params} first differing genus index: {first}")
    print("genus," + ",".join(names))
    for i in range(width):
        mark = " *" if len({results[n][i] for n in names}) > 1 else ""
        print(f"{i}," + ",".join(str(results[n][i]) for n in names) + mark)
    return EXIT_MISMATCH


def cmd_closed(args) -> int:
    params = ParamTuple.parse(args.m)
    print(recurrence.closed_form_eps(params, args.genus))
    return EXIT_OK


def cmd_canon(args) -> int:
    print(recurrence.canonicalize(ParamTuple.parse(args.m)))
    return EXIT_OK


def cmd_series(args) -> int:
    bounds = _trunc(args)
    if not bounds:
        raise InvalidArgument("series needs --trunc, e.g. --trunc 3,3")
    if args.which in ("phi", "Lstar"):
        if len(bounds) != 1:
            raise InvalidArgument(f"{args.which} is univariate; give one --trunc bound")
        zmax = args.zmax if args.zmax is not None else 2 * bounds[0] + 2
        fn = genfun.phi_series if args.which == "phi" else genfun.Lstar_series
        series = fn(bounds[0], zmax)
    else:
        if len(bounds) < 2:
            raise InvalidArgument("bundle series need at least two --trunc bounds")
        zmax = args.zmax if args.zmax is not None else len(bounds) + sum(bounds)
        bundle = genfun.genfun_bundle(genfun.Truncation(bounds, zmax))
        series = getattr(bundle, args.which)
    print(json.dumps(genfun.series_table(series)))
    return EXIT_OK


def cmd_graph(args) -> int:
    g = embedding.build_halin(ParamTuple.parse(args.m), args.tree)
    print(g.to_json())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hgd", description="Euler-genus distributions of caterpillar-Halin graphs")
    parser.add_argument("-v", "--verbose", action="count", default=0)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, fmt=True):
        p.add_argument("--m", required=True, help="comma-separated parameters, e.g. 1,2,3")
        p.add_argument("--budget-bits", type=int, default=None, help="max free bits for exhaustive engines")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--cache-dir", default=None, help="result cache (default: $HGD_CACHE_DIR)")
        p.add_argument("--trunc", default=None, help="genfun truncation per variable, e.g. 3,3")
        if fmt:
            p.add_argument("--format", choices=("json", "csv", "text"), default="text")

    p = sub.add_parser("dist", help="print the Euler-genus polynomial")
    common(p)
    p.add_argument("--engine", choices=engines.ENGINE_NAMES, default="recurrence")
    p.set_defaults(func=cmd_dist)

    p = sub.add_parser("crosscheck", help="compare engines coefficient by coefficient")
    common(p)
    p.add_argument("--engines", default="recurrence,matrix,embedding,genfun")
    p.set_defaults(func=cmd_crosscheck)

    p = sub.add_parser("closed", help="closed-form count for genus 0, 1 or 2")
    p.add_argument("--m", required=True)
    p.add_argument("--genus", type=int, required=True)
    p.set_defaults(func=cmd_closed)

    p = sub.add_parser("canon", help="canonical isomorphic parameter tuple")
    p.add_argument("--m", required=True)
    p.set_defaults(func=cmd_canon)

    p = sub.add_parser("series", help="dump generating-function coefficients as JSON")
    p.add_argument("--which", choices=("E1", "E2", "lam1", "lam2", "phi", "Lstar"), default="E1")
    p.add_argument("--trunc", required=True)
    p.add_argument("--zmax", type=int, default=None)
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("graph", help="dump the graph with vertex and edge roles as JSON")
    p.add_argument("--m", required=True)
    p.add_argument("--tree", choices=embedding.TREE_STRATEGIES, default="bfs")
    p.set_defaults(func=cmd_graph)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_ARGS if exc.code else EXIT_OK
    logging.basicConfig(level=logging.WARNING - 10 * min(args.verbose, 2), format="%(levelname)s %(message)s")
    if getattr(args, "threads", 1) < 1:
        print("error: --threads must be >= 1", file=sys.stderr)
        return EXIT_ARGS
    try:
        return args.func(args)
    except InvalidArgument as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except BudgetExceeded as exc:
        print(f"error: {exc} (raise --budget-bits to override)", file=sys.stderr)
        return EXIT_BUDGET
    except Unsupported as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNSUPPORTED


if __name__ == "__main__":
    sys.exit(main())

"""Command-line front door: validate/generate data, run queries offline,
emit SQL, benchmark the algorithms, and serve the HTTP API."""

from __future__ import annotations

import argparse
import csv
import sys
import time
from pathlib import Path

from .engine import (
    ALGORITHMS,
    DEFAULT_WINDOW_CAPACITY,
    DominanceStats,
    emit_skyline_sql,
    random_query_dataset,
    run_query,
    skyline_bnl,
    skyline_dnc,
    skyline_oracle,
    skyline_sfs,
)
from .geo import build_distance_matrix
from .ingest import generate_synthetic_dataset, parse_mall_csv, serialize_mall_csv, validate_mall_csv
from .model import Dimension, Direction, GeoPoint, QuerySpec
from .service import DEFAULT_PORT, serve


def _parse_origin(raw: str) -> GeoPoint:
    try:
        lat_text, lng_text = raw.split(",")
        return GeoPoint(float(lat_text), float(lng_text))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"origin must be 'lat,lng': {exc}") from None


def _parse_facilities(raw: str) -> tuple[int, ...]:
    if not raw.strip():
        return ()
    try:
        return tuple(int(part) for part in raw.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"facilities must be comma-separated indices: {raw!r}")


def _parse_dims(raw: str) -> tuple[Dimension, ...]:
    dims = []
    for part in raw.split(","):
        name, sep, direction = part.partition(":")
        if not sep or direction.lower() not in ("min", "max"):
            raise argparse.ArgumentTypeError(f"dimension must be 'name:min' or 'name:max': {part!r}")
        dims.append(Dimension(name.strip(), Direction(direction.lower())))
    return tuple(dims)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pareto-mall", description="Skyline queries over mall datasets"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_validate = sub.add_parser("validate", help="parse a CSV and report per-row errors")
    p_validate.add_argument("--data", required=True, help="path to the mall CSV")

    p_query = sub.add_parser("query", help="run a skyline query offline")
    p_query.add_argument("--data", required=True)
    p_query.add_argument("--origin", required=True, type=_parse_origin, help="lat,lng")
    p_query.add_argument("--facilities", type=_parse_facilities, default=(), help="category indices, e.g. 0,4")
    p_query.add_argument("--food-court", action="store_true", help="add the food-court dimension")
    p_query.add_argument("--algorithm", choices=sorted(ALGORITHMS), default="sfs")
    p_query.add_argument("--limit", type=int, default=10)

    p_sql = sub.add_parser("emit-sql", help="print the NOT EXISTS skyline query")
    p_sql.add_argument("--dims", required=True, type=_parse_dims, help="e.g. distance:min,store_number:max")
    p_sql.add_argument("--table", default="malls")

    p_bench = sub.add_parser("bench", help="time all four algorithms on synthetic data")
    p_bench.add_argument("--n", type=int, required=True)
    p_bench.add_argument("--d", type=int, required=True)
    p_bench.add_argument("--seed", type=int, default=0)
    p_bench.add_argument("--trials", type=int, default=3)
    p_bench.add_argument("--window", type=int, default=DEFAULT_WINDOW_CAPACITY)
    p_bench.add_argument("--csv", action="store_true", help="emit results as CSV")

    p_gen = sub.add_parser("gen", help="write a synthetic mall CSV")
    p_gen.add_argument("--n", type=int, required=True)
    p_gen.add_argument("--seed", type=int, default=0)
    p_gen.add_argument("--out", required=True)

    p_serve = sub.add_parser("serve", help="start the HTTP service")
    p_serve.add_argument("--data", default=None, help="CSV path (default: $PARETO_MALL_DATA)")
    p_serve.add_argument("--host", default="127.0.0.1")
    p_serve.add_argument("--port", type=int, default=None, help=f"default {DEFAULT_PORT} or $PARETO_MALL_PORT")

    return parser


def _read_text(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _cmd_validate(args: argparse.Namespace) -> int:
    errors = validate_mall_csv(_read_text(args.data))
    if errors:
        for message in errors:
            print(message)
        print(f"FAIL: {len(errors)} problem(s) in {args.data}")
        return 1
    records = len(parse_mall_csv(_read_text(args.data), source_path=args.data))
    print(f"OK: {records} records in {args.data}")
    return 0


def _format_table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, cell in enumerate(row):
            widths[i] = max(widths[i], len(cell))
    lines = ["  ".join(h.ljust(widths[i]) for i, h in enumerate(headers))]
    for row in rows:
        lines.append("  ".join(cell.ljust(widths[i]) for i, cell in enumerate(row)))
    return "\n".join(lines)


def _cmd_query(args: argparse.Namespace) -> int:
    dataset = parse_mall_csv(_read_text(args.data), source_path=args.data)
    # Same construction as the HTTP service: distance ranks, preferences dominate.
    spec = QuerySpec.with_defaults(
        origin=args.origin,
        selected_facilities=args.facilities,
        include_food_court=args.food_court,
        limit=args.limit,
        include_distance=False,
    )
    matrix = build_distance_matrix(args.origin, dataset)
    result, divergence = run_query(dataset, spec, matrix, algorithm=args.algorithm)
    headers = [
        "Rank", "Mall", "Distance_km", "StoreNumber", "ParkingSpace", "FoodCourt",
        "AvgHouseholdIncome", "Population", "Facilities", "Probability",
    ]
    rows = [
        [
            str(e.rank),
            e.code,
            f"{e.distance_km:.3f}",
            str(e.record.store_number),
            str(e.record.parking_space),
            "1" if e.record.food_court else "0",
            str(e.record.avg_household_income),
            str(e.record.population),
            "[" + ",".join(str(c) for c in e.record.facilities) + "]",
            str(e.probability),
        ]
        for e in result.entries
    ]
    print(_format_table(headers, rows))
    if divergence:
        print("warning: algorithm paths diverged", file=sys.stderr)
        return 1
    return 0


def _cmd_emit_sql(args: argparse.Namespace) -> int:
    print(emit_skyline_sql(args.dims, table_name=args.table))
    return 0


def _cmd_bench(args: argparse.Namespace) -> int:
    runners = {
        "oracle": lambda pts, spec, stats: skyline_oracle(pts, spec, stats=stats),
        "bnl": lambda pts, spec, stats: skyline_bnl(pts, spec, window_capacity=args.window, stats=stats),
        "sfs": lambda pts, spec, stats: skyline_sfs(pts, spec, stats=stats),
        "dnc": lambda pts, spec, stats: skyline_dnc(pts, spec, stats=stats),
    }
    rows = []
    all_agree = True
    for trial in range(args.trials):
        spec, points = random_query_dataset(args.n, args.d, args.seed + trial)
        expected = None
        for name, runner in runners.items():
            stats = DominanceStats()
            started = time.perf_counter()
            skyline = runner(points, spec, stats)
            elapsed_ms = (time.perf_counter() - started) * 1000.0
            if name == "oracle":
                expected = skyline
            agrees = skyline == expected
            all_agree = all_agree and agrees
            rows.append(
                [str(trial), name, str(args.n), str(args.d), f"{elapsed_ms:.2f}",
                 str(stats.tests), str(len(skyline)), str(agrees).lower()]
            )
    headers = ["trial", "algorithm", "n", "d", "ms", "dominance_tests", "skyline_size", "agrees"]
    if args.csv:
        writer = csv.writer(sys.stdout, lineterminator="\n")
        writer.writerow(headers)
        writer.writerows(rows)
    else:
        print(_format_table(headers, rows))
    print(f"all algorithms agree: {str(all_agree).lower()}")
    return 0 if all_agree else 1


def _cmd_gen(args: argparse.Namespace) -> int:
    dataset = generate_synthetic_dataset(args.n, args.seed)
    Path(args.out).write_text(serialize_mall_csv(dataset), encoding="utf-8")
    print(f"wrote {len(dataset)} records to {args.out}")
    return 0


def _cmd_serve(args: argparse.Namespace) -> int:
    dataset = None
    if args.data:
        dataset = parse_mall_csv(_read_text(args.data), source_path=args.data)
    serve(dataset=dataset, host=args.host, port=args.port)
    return 0


_COMMANDS = {
    "validate": _cmd_validate,
    "query": _cmd_query,
    "emit-sql": _cmd_emit_sql,
    "bench": _cmd_bench,
    "gen": _cmd_gen,
    "serve": _cmd_serve,
}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())

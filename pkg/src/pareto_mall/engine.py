"""Skyline computation: exhaustive oracle, block-nested-loops, sort-filter,
divide-and-conquer, the SQL anti-join emitter, two-path matching, and ranking."""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .geo import DistanceMatrix
from .ingest import Dataset
from .model import (
    Dimension,
    Direction,
    GeoPoint,
    MallRecord,
    QueryPoint,
    QuerySpec,
    monotone_score,
    oriented_bounds,
    oriented_values,
    to_query_point,
)

DEFAULT_WINDOW_CAPACITY = 64
DEFAULT_GROUP_SIZE = 32

_IDENTIFIER_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class IdentifierError(ValueError):
    """A table or column name is not a valid unquoted SQL identifier."""


class EmptySpecError(ValueError):
    """SQL emission was asked for zero dimensions."""


@dataclass
class DominanceStats:
    """Counts pairwise dominance comparisons; fed to the bench subcommand."""

    tests: int = 0


@dataclass(frozen=True)
class ResultEntry:
    rank: int
    code: str
    distance_km: float
    probability: float
    record: MallRecord


@dataclass(frozen=True)
class SkylineResult:
    """Ranked, limit-capped skyline with per-mall probabilities attached."""

    entries: tuple[ResultEntry, ...]
    algorithm: str
    spec: QuerySpec


@dataclass(frozen=True)
class MatchedSkyline:
    """Intersection of the two query paths; divergence flags unequal inputs."""

    points: frozenset[QueryPoint]
    divergence: bool


def _oriented_rows(points: Sequence[QueryPoint], spec: QuerySpec) -> list[tuple[float, ...]]:
    return [oriented_values(p, spec) for p in points]


def _dominated_by(u: tuple[float, ...], v: tuple[float, ...], stats: DominanceStats | None) -> bool:
    # One-way test on oriented rows: does u dominate v?
    if stats is not None:
        stats.tests += 1
    strict = False
    for x, y in zip(u, v):
        if x > y:
            return False
        if x < y:
            strict = True
    return strict


def _compare(u: tuple[float, ...], v: tuple[float, ...], stats: DominanceStats | None) -> int:
    # Three-way comparison: -1 if u dominates v, 1 if v dominates u, else 0.
    if stats is not None:
        stats.tests += 1
    u_better = False
    v_better = False
    for x, y in zip(u, v):
        if x < y:
            u_better = True
        elif y < x:
            v_better = True
        if u_better and v_better:
            return 0
    if u_better:
        return -1
    if v_better:
        return 1
    return 0


def skyline_oracle(
    points: Sequence[QueryPoint], spec: QuerySpec, stats: DominanceStats | None = None
) -> set[QueryPoint]:
    """Ground-truth skyline by exhaustive pairwise dominance.

    Vectorized with numpy (exact float64 comparisons, so semantics match the
    scalar dominance relation bit for bit); every other algorithm is pure
    Python, which keeps the two routes independent.
    """
    if not points:
        return set()
    rows = np.asarray(_oriented_rows(points, spec), dtype=np.float64)
    n = len(points)
    if stats is not None:
        stats.tests += n * (n - 1)
    keep = []
    for i in range(n):
        le_all = np.all(rows <= rows[i], axis=1)
        lt_any = np.any(rows < rows[i], axis=1)
        if not np.any(le_all & lt_any):
            keep.append(points[i])
    return set(keep)


def skyline_bnl(
    points: Sequence[QueryPoint],
    spec: QuerySpec,
    window_capacity: int = DEFAULT_WINDOW_CAPACITY,
    stats: DominanceStats | None = None,
) -> set[QueryPoint]:
    """Block-nested-loops skyline with a bounded candidate window.

    Points that overflow the window are re-streamed in later passes; a window
    member is only emitted once it has survived comparisons against every
    point of its pass, i.e. it entered the window before the pass's first
    overflow.
    """
    if window_capacity < 1:
        raise ValueError(f"window capacity must be >= 1, got {window_capacity}")
    rows = _oriented_rows(points, spec)
    result: list[int] = []
    current = list(range(len(points)))
    while current:
        window: list[tuple[int, int]] = []  # (arrival position, point index)
        overflow: list[int] = []
        first_overflow: int | None = None
        for arrival, idx in enumerate(current):
            p = rows[idx]
            dominated = False
            survivors: list[tuple[int, int]] = []
            for entry in window:
                c = _compare(rows[entry[1]], p, stats)
                if c == -1:
                    dominated = True
                    break
                if c == 0:
                    survivors.append(entry)
                # c == 1: incoming dominates the window member -> evicted
            if dominated:
                continue  # window unchanged: a dominator coexisting with evictees is impossible
            window = survivors
            if len(window) < window_capacity:
                window.append((arrival, idx))
            else:
                if first_overflow is None:
                    first_overflow = arrival
                overflow.append(idx)
        if first_overflow is None:
            result.extend(idx for _, idx in window)
            current = []
        else:
            result.extend(idx for arrival, idx in window if arrival < first_overflow)
            current = [idx for arrival, idx in window if arrival >= first_overflow] + overflow
    return {points[i] for i in result}


def skyline_sfs(
    points: Sequence[QueryPoint], spec: QuerySpec, stats: DominanceStats | None = None
) -> set[QueryPoint]:
    """Sort-filter-skyline: presort by the dominance-monotone score, then a
    single pass where each point is checked only against already-accepted
    members (an earlier point can never be dominated by a later one)."""
    if not points:
        return set()
    bounds = oriented_bounds(points, spec)
    order = sorted(
        range(len(points)),
        key=lambda i: (monotone_score(points[i], spec, bounds), points[i].code),
    )
    rows = _oriented_rows(points, spec)
    accepted: list[int] = []
    for i in order:
        if not any(_dominated_by(rows[j], rows[i], stats) for j in accepted):
            accepted.append(i)
    return {points[i] for i in accepted}


def skyline_dnc(
    points: Sequence[QueryPoint],
    spec: QuerySpec,
    group_size: int = DEFAULT_GROUP_SIZE,
    stats: DominanceStats | None = None,
) -> set[QueryPoint]:
    """Divide-and-conquer skyline: median-split on the first dimension down to
    group_size, solve groups exhaustively, merge via cross-elimination."""
    if group_size < 1:
        raise ValueError(f"group size must be >= 1, got {group_size}")
    rows = _oriented_rows(points, spec)

    def brute(indices: list[int]) -> list[int]:
        kept = []
        for i in indices:
            if not any(j != i and _dominated_by(rows[j], rows[i], stats) for j in indices):
                kept.append(i)
        return kept

    def solve(indices: list[int]) -> list[int]:
        if len(indices) <= group_size:
            return brute(indices)
        ordered = sorted(indices, key=lambda i: rows[i][0])
        half = len(ordered) // 2
        merged = solve(ordered[:half]) + solve(ordered[half:])
        return brute(merged)

    return {points[i] for i in solve(list(range(len(points))))}


ALGORITHMS: dict[str, Callable[..., set[QueryPoint]]] = {
    "oracle": skyline_oracle,
    "bnl": skyline_bnl,
    "sfs": skyline_sfs,
    "dnc": skyline_dnc,
}


def emit_skyline_sql(
    spec: QuerySpec | Iterable[Dimension], table_name: str = "malls"
) -> str:
    """Desugar a skyline spec into a standard-SQL NOT EXISTS anti-join.

    Output is deterministic and byte-exact for a given dimension list:
    dimension order preserved, single-space tokens, uppercase keywords.
    """
    dimensions = tuple(spec.dimensions if isinstance(spec, QuerySpec) else spec)
    if not dimensions:
        raise EmptySpecError("cannot emit SQL for zero dimensions")
    if not _IDENTIFIER_RE.match(table_name):
        raise IdentifierError(f"invalid table name {table_name!r}")
    for d in dimensions:
        if not _IDENTIFIER_RE.match(d.name):
            raise IdentifierError(f"invalid column name {d.name!r}")
    weak = " AND ".join(
        f"S1.{d.name} {'<=' if d.direction is Direction.MIN else '>='} S.{d.name}"
        for d in dimensions
    )
    strict = " OR ".join(
        f"S1.{d.name} {'<' if d.direction is Direction.MIN else '>'} S.{d.name}"
        for d in dimensions
    )
    return (
        f"SELECT * FROM {table_name} S WHERE NOT EXISTS "
        f"(SELECT * FROM {table_name} S1 WHERE {weak} AND ({strict}))"
    )


def match_results(a: Iterable[QueryPoint], b: Iterable[QueryPoint]) -> MatchedSkyline:
    """Intersect two result sets by mall code, keeping payloads from ``a``.

    With both paths correct the intersection equals either input; a set
    difference raises the divergence flag, which doubles as a self-check.
    """
    a_points = list(a)
    b_codes = {p.code for p in b}
    intersection = frozenset(p for p in a_points if p.code in b_codes)
    divergence = {p.code for p in a_points} != b_codes
    return MatchedSkyline(points=intersection, divergence=divergence)


def rank_results(
    skyline: Iterable[QueryPoint],
    matrix: DistanceMatrix,
    limit: int,
    spec: QuerySpec,
    algorithm: str = "oracle",
) -> SkylineResult:
    """Order the skyline by ascending distance (ties: descending probability,
    then code), truncate to the limit, and attach 1-based ranks."""
    if limit < 1:
        raise ValueError(f"limit must be >= 1, got {limit}")
    decorated = []
    for point in skyline:
        if point.source is None:
            raise ValueError(f"point {point.code} has no mall record to rank")
        distance = matrix.distance_for(point.code)
        decorated.append((distance, -point.source.probability, point.code, point))
    decorated.sort()
    entries = tuple(
        ResultEntry(
            rank=i + 1,
            code=point.code,
            distance_km=distance,
            probability=point.source.probability,
            record=point.source,
        )
        for i, (distance, _, _, point) in enumerate(decorated[:limit])
    )
    return SkylineResult(entries=entries, algorithm=algorithm, spec=spec)


def query_points(
    dataset: Dataset, spec: QuerySpec, matrix: DistanceMatrix | None = None
) -> list[QueryPoint]:
    """Project every mall record onto the spec's dimensions."""
    needs_distance = any(d.name == "distance" for d in spec.dimensions)
    if needs_distance and matrix is None:
        raise ValueError("spec has a distance dimension but no distance matrix was given")
    points = []
    for record in dataset.records:
        distance = matrix.distance_for(record.code) if needs_distance else None
        points.append(to_query_point(record, spec, distance_km=distance))
    return points


def run_query(
    dataset: Dataset,
    spec: QuerySpec,
    matrix: DistanceMatrix,
    algorithm: str = "sfs",
    window_capacity: int = DEFAULT_WINDOW_CAPACITY,
) -> tuple[SkylineResult, bool]:
    """The full two-path pipeline: requested algorithm plus the oracle,
    matched, then ranked. Returns (result, divergence flag)."""
    if algorithm not in ALGORITHMS:
        raise ValueError(f"unknown algorithm {algorithm!r}; expected one of {sorted(ALGORITHMS)}")
    points = query_points(dataset, spec, matrix)
    if algorithm == "bnl":
        primary = skyline_bnl(points, spec, window_capacity=window_capacity)
    else:
        primary = ALGORITHMS[algorithm](points, spec)
    oracle = skyline_oracle(points, spec)
    matched = match_results(primary, oracle)
    result = rank_results(matched.points, matrix, spec.limit, spec=spec, algorithm=algorithm)
    return result, matched.divergence


def random_query_dataset(
    n: int,
    d: int,
    seed: int,
    duplicate_rate: float = 0.05,
    value_range: tuple[int, int] = (0, 10_000),
) -> tuple[QuerySpec, list[QueryPoint]]:
    """Seeded abstract dataset for equivalence suites and benchmarking:
    integer-valued coordinates (exact float arithmetic), mixed MIN/MAX
    directions, and duplicate vectors injected at the given rate."""
    if n < 1 or d < 1:
        raise ValueError(f"need n >= 1 and d >= 1, got n={n}, d={d}")
    rng = random.Random(seed)
    dims = tuple(
        Dimension(f"dim_{i}", rng.choice((Direction.MIN, Direction.MAX))) for i in range(d)
    )
    spec = QuerySpec(origin=GeoPoint(0.0, 0.0), dimensions=dims)
    points: list[QueryPoint] = []
    for i in range(n):
        if points and rng.random() < duplicate_rate:
            values = rng.choice(points).values
        else:
            values = tuple(float(rng.randint(*value_range)) for _ in range(d))
        points.append(QueryPoint(code=f"P{i:05d}", values=values))
    return spec, points

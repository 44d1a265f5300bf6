"""Domain model: mall records, query specifications, and Pareto dominance.

Everything here is immutable after construction and all operations are pure,
so values can be shared freely between threads.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from enum import Enum
from typing import Sequence

# Canonical facility categories, in the one fixed order used everywhere
# (facility vectors, CSV cells, dimension ids, UI checkboxes).
FACILITY_CATEGORIES: tuple[str, ...] = (
    "Anchor",
    "Services",
    "Miscellaneous",
    "Hi-Tech",
    "Restaurants",
    "Specialty",
    "Barbers and Beauty",
    "Women's wear",
    "Men's wear",
    "Unisex and Family Clothing",
    "Shoes",
    "Children Apparel",
    "Gifts Cards and Books",
    "Jewelry",
    "Entertainment",
)
FACILITY_COUNT = len(FACILITY_CATEGORIES)


def _slugify(name: str) -> str:
    return re.sub(r"[^a-z0-9]+", "_", name.lower()).strip("_")


FACILITY_SLUGS: tuple[str, ...] = tuple(_slugify(name) for name in FACILITY_CATEGORIES)

# Dimension ids; these double as SQL column names, so they must stay valid
# unquoted identifiers.
DISTANCE_DIM = "distance"
STORE_NUMBER_DIM = "store_number"
PARKING_SPACE_DIM = "parking_space"
FOOD_COURT_DIM = "food_court"
INCOME_DIM = "avg_household_income"
POPULATION_DIM = "population"

FACILITY_DIMS: tuple[str, ...] = tuple(f"facility_{slug}" for slug in FACILITY_SLUGS)
_FACILITY_DIM_INDEX: dict[str, int] = {name: i for i, name in enumerate(FACILITY_DIMS)}


class InvalidValueError(ValueError):
    """A numeric input was NaN or infinite where a finite value is required."""


class SpecMismatchError(ValueError):
    """A QueryPoint does not conform to the QuerySpec it is used with."""


class Direction(Enum):
    MIN = "min"
    MAX = "max"


@dataclass(frozen=True)
class GeoPoint:
    """A WGS84-style coordinate pair in decimal degrees."""

    lat: float
    lng: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.lat) and math.isfinite(self.lng)):
            raise InvalidValueError(f"coordinates must be finite, got ({self.lat}, {self.lng})")
        if not -90.0 <= self.lat <= 90.0:
            raise ValueError(f"latitude {self.lat} outside [-90, 90]")
        if not -180.0 <= self.lng <= 180.0:
            raise ValueError(f"longitude {self.lng} outside [-180, 180]")


@dataclass(frozen=True)
class MallRecord:
    """One shopping mall row: identity, position, scalar attributes, facility counts."""

    code: str
    name: str
    location: GeoPoint
    store_number: int
    parking_space: int
    food_court: bool
    avg_household_income: int
    population: int
    facilities: tuple[int, ...]
    probability: float

    def __post_init__(self) -> None:
        object.__setattr__(self, "facilities", tuple(self.facilities))
        if not self.code:
            raise ValueError("mall code must be non-empty")
        for attr in ("store_number", "parking_space", "avg_household_income", "population"):
            value = getattr(self, attr)
            if value < 0:
                raise ValueError(f"{attr} must be >= 0, got {value}")
        if len(self.facilities) != FACILITY_COUNT:
            raise ValueError(
                f"facilities must have exactly {FACILITY_COUNT} entries, got {len(self.facilities)}"
            )
        if any(count < 0 for count in self.facilities):
            raise ValueError("facility counts must be >= 0")
        if not (math.isfinite(self.probability) and 0.0 <= self.probability <= 1.0):
            raise ValueError(f"probability {self.probability} outside [0, 1]")


@dataclass(frozen=True)
class Dimension:
    """One query dimension: a named attribute plus its preferred direction."""

    name: str
    direction: Direction


DEFAULT_DIMENSIONS: tuple[Dimension, ...] = (
    Dimension(DISTANCE_DIM, Direction.MIN),
    Dimension(STORE_NUMBER_DIM, Direction.MAX),
    Dimension(PARKING_SPACE_DIM, Direction.MAX),
    Dimension(INCOME_DIM, Direction.MIN),
    Dimension(POPULATION_DIM, Direction.MIN),
)


@dataclass(frozen=True)
class QuerySpec:
    """An ordered list of dimensions to optimize, plus origin and result limit.

    ``selected_facilities`` holds the category indices the user asked for; each
    one must be mirrored by a MAX dimension on the matching facility column.
    """

    origin: GeoPoint
    dimensions: tuple[Dimension, ...]
    selected_facilities: tuple[int, ...] = ()
    limit: int = 10

    def __post_init__(self) -> None:
        object.__setattr__(self, "dimensions", tuple(self.dimensions))
        object.__setattr__(self, "selected_facilities", tuple(self.selected_facilities))
        if not self.dimensions:
            raise ValueError("query spec needs at least one dimension")
        names = [d.name for d in self.dimensions]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate dimension names in {names}")
        if self.limit < 1:
            raise ValueError(f"limit must be >= 1, got {self.limit}")
        dim_by_name = {d.name: d for d in self.dimensions}
        for index in self.selected_facilities:
            if not 0 <= index < FACILITY_COUNT:
                raise ValueError(f"facility index {index} outside [0, {FACILITY_COUNT - 1}]")
            dim = dim_by_name.get(FACILITY_DIMS[index])
            if dim is None or dim.direction is not Direction.MAX:
                raise ValueError(
                    f"selected facility {index} needs a MAX dimension {FACILITY_DIMS[index]!r}"
                )

    @classmethod
    def with_defaults(
        cls,
        origin: GeoPoint,
        selected_facilities: Sequence[int] = (),
        include_food_court: bool = False,
        limit: int = 10,
        include_distance: bool = True,
    ) -> "QuerySpec":
        """Build the canonical spec: the five default dimensions, then the
        food-court dimension when requested, then one MAX dimension per
        selected facility category (ascending index order).

        ``include_distance=False`` drops the distance dimension from
        dominance; the serving paths use this so that distance acts as the
        ranking key while preferences drive the skyline.
        """
        selected = tuple(sorted(set(selected_facilities)))
        dims = list(DEFAULT_DIMENSIONS)
        if not include_distance:
            dims = [d for d in dims if d.name != DISTANCE_DIM]
        if include_food_court:
            dims.append(Dimension(FOOD_COURT_DIM, Direction.MAX))
        for index in selected:
            if not 0 <= index < FACILITY_COUNT:
                raise ValueError(f"facility index {index} outside [0, {FACILITY_COUNT - 1}]")
            dims.append(Dimension(FACILITY_DIMS[index], Direction.MAX))
        return cls(origin=origin, dimensions=tuple(dims), selected_facilities=selected, limit=limit)


@dataclass(frozen=True)
class QueryPoint:
    """A mall projected onto a spec's dimensions; the unit of dominance testing."""

    code: str
    values: tuple[float, ...]
    source: MallRecord | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(float(v) for v in self.values))
        if any(not math.isfinite(v) for v in self.values):
            raise InvalidValueError(f"non-finite value in point {self.code}: {self.values}")


def orient(value: float, direction: Direction) -> float:
    """Normalize a value into minimize-everything form: MIN keeps the value,
    MAX negates it, so "smaller is better" holds on every dimension."""
    if not math.isfinite(value):
        raise InvalidValueError(f"cannot orient non-finite value {value}")
    return -value if direction is Direction.MAX else value


def oriented_values(point: QueryPoint, spec: QuerySpec) -> tuple[float, ...]:
    if len(point.values) != len(spec.dimensions):
        raise SpecMismatchError(
            f"point {point.code} has {len(point.values)} values, spec has "
            f"{len(spec.dimensions)} dimensions"
        )
    return tuple(orient(v, d.direction) for v, d in zip(point.values, spec.dimensions))


def dominates(a: QueryPoint, b: QueryPoint, spec: QuerySpec) -> bool:
    """Strict Pareto dominance: after orientation, a <= b on every dimension
    and a < b on at least one. Irreflexive by construction."""
    u = oriented_values(a, spec)
    v = oriented_values(b, spec)
    strictly_better = False
    for x, y in zip(u, v):
        if x > y:
            return False
        if x < y:
            strictly_better = True
    return strictly_better


def oriented_bounds(
    points: Sequence[QueryPoint], spec: QuerySpec
) -> tuple[tuple[float, float], ...]:
    """Per-dimension (min, max) of the oriented values across a dataset."""
    if not points:
        raise ValueError("cannot compute bounds of an empty dataset")
    rows = [oriented_values(p, spec) for p in points]
    return tuple(
        (min(row[i] for row in rows), max(row[i] for row in rows))
        for i in range(len(spec.dimensions))
    )


def monotone_score(
    point: QueryPoint, spec: QuerySpec, bounds: Sequence[tuple[float, float]]
) -> float:
    """Sum of min-max scaled oriented values; degenerate dimensions contribute 0.

    Strictly dominance-monotone: if a dominates b (both inside the dataset the
    bounds were computed over) then score(a) < score(b).
    """
    values = oriented_values(point, spec)
    if len(bounds) != len(values):
        raise SpecMismatchError(f"{len(bounds)} bounds for {len(values)} dimensions")
    total = 0.0
    for v, (lo, hi) in zip(values, bounds):
        if hi > lo:
            total += (v - lo) / (hi - lo)
    return total


def dimension_value(record: MallRecord, dimension: str, distance_km: float | None = None) -> float:
    """Extract the raw value a named dimension reads off a mall record."""
    if dimension == DISTANCE_DIM:
        if distance_km is None:
            raise ValueError(f"distance dimension needs a distance for mall {record.code}")
        return float(distance_km)
    if dimension == STORE_NUMBER_DIM:
        return float(record.store_number)
    if dimension == PARKING_SPACE_DIM:
        return float(record.parking_space)
    if dimension == FOOD_COURT_DIM:
        return 1.0 if record.food_court else 0.0
    if dimension == INCOME_DIM:
        return float(record.avg_household_income)
    if dimension == POPULATION_DIM:
        return float(record.population)
    index = _FACILITY_DIM_INDEX.get(dimension)
    if index is not None:
        return float(record.facilities[index])
    raise ValueError(f"unknown dimension {dimension!r}")


def to_query_point(
    record: MallRecord, spec: QuerySpec, distance_km: float | None = None
) -> QueryPoint:
    values = tuple(dimension_value(record, d.name, distance_km) for d in spec.dimensions)
    return QueryPoint(code=record.code, values=values, source=record)

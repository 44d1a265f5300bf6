"""Dataset ingestion: CSV parsing/serialization, facility-report summation,
and a seeded synthetic generator standing in for the scraped corpus."""

from __future__ import annotations

import csv
import io
import random
from dataclasses import dataclass, field
from datetime import datetime, timezone
from typing import Iterable, Mapping, Sequence

from .model import FACILITY_CATEGORIES, FACILITY_COUNT, GeoPoint, MallRecord

CSV_COLUMNS: tuple[str, ...] = (
    "Mall",
    "Code",
    "Lat",
    "Lng",
    "StoreNumber",
    "ParkingSpace",
    "FoodCourt",
    "AvgHouseholdIncome",
    "Population",
    "Facilities",
    "Probability",
)

_CATEGORY_INDEX = {name: i for i, name in enumerate(FACILITY_CATEGORIES)}

# Synthetic-data envelope: a Northeast-Ohio bounding box and attribute ranges
# bracketing the reference rows.
_SYNTH_LAT = (40.8, 41.8)
_SYNTH_LNG = (-82.2, -81.0)
_SYNTH_STORES = (5, 60)
_SYNTH_PARKING = (0, 3000)
_SYNTH_INCOME = (40_000, 120_000)
_SYNTH_POPULATION = (20_000, 500_000)
_SYNTH_FACILITY_MAX = 12


class UnknownCategoryError(ValueError):
    """A facility report names a category outside the canonical 15."""


class CsvSchemaError(ValueError):
    """Header or column-count mismatch against the expected CSV layout."""

    def __init__(self, row: int, message: str):
        super().__init__(f"row {row}: {message}")
        self.row = row


class RowValidationError(ValueError):
    """A field in one CSV row failed validation."""

    def __init__(self, row: int, fieldname: str, message: str):
        super().__init__(f"row {row}, field {fieldname}: {message}")
        self.row = row
        self.fieldname = fieldname


class FacilityLengthError(RowValidationError):
    """A facilities cell does not hold exactly 15 counts."""

    def __init__(self, row: int, actual: int):
        super().__init__(row, "Facilities", f"expected {FACILITY_COUNT} counts, got {actual}")


class EmptyDatasetError(ValueError):
    """The CSV had a header but no data rows."""


@dataclass(frozen=True)
class Dataset:
    """An immutable collection of validated mall records."""

    records: tuple[MallRecord, ...]
    source_path: str = "<memory>"
    loaded_at: datetime = field(default_factory=lambda: datetime.now(timezone.utc), compare=False)

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(self.records))
        if not self.records:
            raise EmptyDatasetError("dataset has no records")
        codes = [r.code for r in self.records]
        if len(set(codes)) != len(codes):
            dupes = sorted({c for c in codes if codes.count(c) > 1})
            raise ValueError(f"duplicate mall codes: {dupes}")

    def __len__(self) -> int:
        return len(self.records)

    def by_code(self, code: str) -> MallRecord:
        for record in self.records:
            if record.code == code:
                return record
        raise KeyError(code)


def facility_totals(report: Mapping[str, Iterable[int]]) -> tuple[int, ...]:
    """Sum per-category store counts into the canonical 15-slot vector.

    Categories absent from the report contribute 0.
    """
    totals = [0] * FACILITY_COUNT
    for category, counts in report.items():
        index = _CATEGORY_INDEX.get(category)
        if index is None:
            raise UnknownCategoryError(f"unknown facility category {category!r}")
        for count in counts:
            if count < 0:
                raise ValueError(f"negative count {count} for category {category!r}")
            totals[index] += count
    return tuple(totals)


def _parse_int(row: int, fieldname: str, raw: str) -> int:
    # int() rejects thousands separators like "71,943" on purpose.
    try:
        return int(raw)
    except ValueError:
        raise RowValidationError(row, fieldname, f"not an integer: {raw!r}") from None


def _parse_float(row: int, fieldname: str, raw: str) -> float:
    try:
        return float(raw)
    except ValueError:
        raise RowValidationError(row, fieldname, f"not a number: {raw!r}") from None


def _parse_facilities(row: int, raw: str) -> tuple[int, ...]:
    cell = raw.strip()
    if not (cell.startswith("[") and cell.endswith("]")):
        raise RowValidationError(row, "Facilities", f"expected bracketed list, got {raw!r}")
    inner = cell[1:-1].strip()
    parts = [p.strip() for p in inner.split(",")] if inner else []
    counts = [_parse_int(row, "Facilities", p) for p in parts]
    if len(counts) != FACILITY_COUNT:
        raise FacilityLengthError(row, len(counts))
    return tuple(counts)


def _parse_row(row: int, fields: Sequence[str]) -> MallRecord:
    if len(fields) != len(CSV_COLUMNS):
        raise CsvSchemaError(row, f"expected {len(CSV_COLUMNS)} columns, got {len(fields)}")
    name, code = fields[0], fields[1]
    lat = _parse_float(row, "Lat", fields[2])
    lng = _parse_float(row, "Lng", fields[3])
    try:
        location = GeoPoint(lat, lng)
    except ValueError as exc:
        raise RowValidationError(row, "Lat/Lng", str(exc)) from None
    food_court_raw = fields[6].strip()
    if food_court_raw not in ("0", "1"):
        raise RowValidationError(row, "FoodCourt", f"expected 0 or 1, got {fields[6]!r}")
    facilities = _parse_facilities(row, fields[9])
    probability = _parse_float(row, "Probability", fields[10])
    try:
        return MallRecord(
            code=code,
            name=name,
            location=location,
            store_number=_parse_int(row, "StoreNumber", fields[4]),
            parking_space=_parse_int(row, "ParkingSpace", fields[5]),
            food_court=food_court_raw == "1",
            avg_household_income=_parse_int(row, "AvgHouseholdIncome", fields[7]),
            population=_parse_int(row, "Population", fields[8]),
            facilities=facilities,
            probability=probability,
        )
    except ValueError as exc:
        if isinstance(exc, RowValidationError):
            raise
        raise RowValidationError(row, "record", str(exc)) from None


def _iter_rows(text: str):
    reader = csv.reader(io.StringIO(text, newline=""))
    try:
        header = next(reader)
    except StopIteration:
        raise EmptyDatasetError("empty file") from None
    if tuple(header) != CSV_COLUMNS:
        raise CsvSchemaError(1, f"header {header} does not match {list(CSV_COLUMNS)}")
    for row, fields in enumerate(reader, start=2):
        if not fields:
            continue
        yield row, fields


def parse_mall_csv(text: str, source_path: str = "<memory>") -> Dataset:
    """Parse and validate a mall CSV; raises on the first bad row."""
    records: list[MallRecord] = []
    seen: dict[str, int] = {}
    for row, fields in _iter_rows(text):
        record = _parse_row(row, fields)
        if record.code in seen:
            raise RowValidationError(
                row, "Code", f"duplicate code {record.code!r} (first seen at row {seen[record.code]})"
            )
        seen[record.code] = row
        records.append(record)
    if not records:
        raise EmptyDatasetError(f"no data rows in {source_path}")
    return Dataset(records=tuple(records), source_path=source_path)


def validate_mall_csv(text: str) -> list[str]:
    """Collect every row-level problem instead of stopping at the first.

    Returns a list of human-readable messages; empty means the file is clean.
    """
    errors: list[str] = []
    seen: dict[str, int] = {}
    any_rows = False
    try:
        for row, fields in _iter_rows(text):
            any_rows = True
            try:
                record = _parse_row(row, fields)
            except ValueError as exc:
                errors.append(str(exc))
                continue
            if record.code in seen:
                errors.append(
                    f"row {row}, field Code: duplicate code {record.code!r} "
                    f"(first seen at row {seen[record.code]})"
                )
            else:
                seen[record.code] = row
    except (CsvSchemaError, EmptyDatasetError) as exc:
        return [str(exc)]
    if not any_rows:
        return ["no data rows"]
    return errors


def serialize_mall_csv(dataset: Dataset) -> str:
    """Inverse of parse_mall_csv; round-trips every field exactly."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for r in dataset.records:
        writer.writerow(
            [
                r.name,
                r.code,
                repr(r.location.lat),
                repr(r.location.lng),
                r.store_number,
                r.parking_space,
                1 if r.food_court else 0,
                r.avg_household_income,
                r.population,
                "[" + ",".join(str(c) for c in r.facilities) + "]",
                repr(r.probability),
            ]
        )
    return buf.getvalue()


def generate_synthetic_dataset(n: int, seed: int) -> Dataset:
    """Deterministic stand-in corpus: n malls drawn inside the Northeast-Ohio
    envelope, reproducible for a given (n, seed)."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    rng = random.Random(seed)
    records = []
    for i in range(1, n + 1):
        records.append(
            MallRecord(
                code=f"OH{i}",
                name=f"S{i}",
                location=GeoPoint(rng.uniform(*_SYNTH_LAT), rng.uniform(*_SYNTH_LNG)),
                store_number=rng.randint(*_SYNTH_STORES),
                parking_space=rng.randint(*_SYNTH_PARKING),
                food_court=rng.random() < 0.5,
                avg_household_income=rng.randint(*_SYNTH_INCOME),
                population=rng.randint(*_SYNTH_POPULATION),
                facilities=tuple(rng.randint(0, _SYNTH_FACILITY_MAX) for _ in range(FACILITY_COUNT)),
                probability=rng.random(),
            )
        )
    return Dataset(records=tuple(records), source_path=f"synthetic(n={n},seed={seed})")

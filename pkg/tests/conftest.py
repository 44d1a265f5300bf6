from pathlib import Path

import pytest

from pareto_mall.engine import query_points
from pareto_mall.ingest import parse_mall_csv
from pareto_mall.model import Dimension, Direction, GeoPoint, QuerySpec

DATA_DIR = Path(__file__).parent / "data"

# The five-attribute preference used throughout the reference-table tests:
# no distance dimension, so algorithms run straight off the record columns.
TABLE2_DIMENSIONS = (
    Dimension("store_number", Direction.MAX),
    Dimension("parking_space", Direction.MAX),
    Dimension("food_court", Direction.MAX),
    Dimension("avg_household_income", Direction.MIN),
    Dimension("population", Direction.MIN),
)

TABLE2_SKYLINE = {"OH1", "OH2", "OH4", "OH5"}


@pytest.fixture(scope="session")
def table2_text() -> str:
    return (DATA_DIR / "table2.csv").read_text(encoding="utf-8")


@pytest.fixture(scope="session")
def table2_dataset(table2_text):
    return parse_mall_csv(table2_text, source_path=str(DATA_DIR / "table2.csv"))


@pytest.fixture(scope="session")
def table2_spec(table2_dataset):
    origin = table2_dataset.by_code("OH1").location
    return QuerySpec(origin=origin, dimensions=TABLE2_DIMENSIONS)


@pytest.fixture(scope="session")
def table2_points(table2_dataset, table2_spec):
    return query_points(table2_dataset, table2_spec)

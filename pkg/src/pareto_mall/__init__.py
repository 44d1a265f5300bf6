"""Multi-dimensional skyline query engine for ranking points of interest."""

from .engine import (
    ALGORITHMS,
    MatchedSkyline,
    SkylineResult,
    emit_skyline_sql,
    match_results,
    rank_results,
    run_query,
    skyline_bnl,
    skyline_dnc,
    skyline_oracle,
    skyline_sfs,
)
from .geo import (
    DistanceMatrix,
    DistanceProvider,
    GreatCircleProvider,
    RoutingApiProvider,
    build_distance_matrix,
    haversine_km,
)
from .ingest import (
    Dataset,
    facility_totals,
    generate_synthetic_dataset,
    parse_mall_csv,
    serialize_mall_csv,
)
from .model import (
    FACILITY_CATEGORIES,
    Dimension,
    Direction,
    GeoPoint,
    MallRecord,
    QueryPoint,
    QuerySpec,
    dominates,
    monotone_score,
    orient,
)
from .service import create_app

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "FACILITY_CATEGORIES",
    "Dataset",
    "Dimension",
    "Direction",
    "DistanceMatrix",
    "DistanceProvider",
    "GeoPoint",
    "GreatCircleProvider",
    "MallRecord",
    "MatchedSkyline",
    "QueryPoint",
    "QuerySpec",
    "RoutingApiProvider",
    "SkylineResult",
    "build_distance_matrix",
    "create_app",
    "dominates",
    "emit_skyline_sql",
    "facility_totals",
    "generate_synthetic_dataset",
    "haversine_km",
    "match_results",
    "monotone_score",
    "orient",
    "parse_mall_csv",
    "rank_results",
    "run_query",
    "serialize_mall_csv",
    "skyline_bnl",
    "skyline_dnc",
    "skyline_oracle",
    "skyline_sfs",
]

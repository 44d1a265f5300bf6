"""Origin-to-mall distances: great-circle default plus a pluggable routing
provider for driving distances."""

from __future__ import annotations

import math
import os
from dataclasses import dataclass
from typing import Mapping, Protocol, runtime_checkable

import httpx

from .ingest import Dataset
from .model import GeoPoint

EARTH_RADIUS_KM = 6371.0088

# A road distance cannot meaningfully undercut the geodesic; provider results
# below great-circle minus this slack are treated as provider failures.
PROVIDER_FLOOR_SLACK_KM = 0.5

ROUTING_URL_ENV = "PARETO_MALL_ROUTING_URL"
ROUTING_KEY_ENV = "PARETO_MALL_ROUTING_KEY"


class ProviderError(RuntimeError):
    """A single origin->destination lookup failed."""


class ProviderUnavailableError(RuntimeError):
    """The provider failed and no fallback was allowed."""


class MissingDistanceError(KeyError):
    """A mall code is absent from the distance matrix."""


def haversine_km(p: GeoPoint, q: GeoPoint) -> float:
    """Great-circle distance in km on a sphere of radius 6371.0088 km."""
    phi1 = math.radians(p.lat)
    phi2 = math.radians(q.lat)
    dphi = math.radians(q.lat - p.lat)
    dlng = math.radians(q.lng - p.lng)
    a = math.sin(dphi / 2.0) ** 2 + math.cos(phi1) * math.cos(phi2) * math.sin(dlng / 2.0) ** 2
    return 2.0 * EARTH_RADIUS_KM * math.asin(min(1.0, math.sqrt(a)))


@runtime_checkable
class DistanceProvider(Protocol):
    """Origin->destination distance source; km out, ProviderError on failure."""

    name: str

    def distance_km(self, origin: GeoPoint, destination: GeoPoint) -> float:
        ...


class GreatCircleProvider:
    """Default provider: spherical geodesic, always available."""

    name = "great-circle"

    def distance_km(self, origin: GeoPoint, destination: GeoPoint) -> float:
        return haversine_km(origin, destination)


@dataclass
class RoutingApiProvider:
    """HTTP driving-distance client.

    Contract: GET <url>?olat=..&olng=..&dlat=..&dlng=.. with an X-Api-Key
    header, JSON response {"meters": <number>}. Meters are converted to km.
    """

    url: str
    api_key: str = ""
    timeout: float = 5.0
    name: str = "routing-api"

    @classmethod
    def from_env(cls) -> "RoutingApiProvider | None":
        url = os.environ.get(ROUTING_URL_ENV)
        if not url:
            return None
        return cls(url=url, api_key=os.environ.get(ROUTING_KEY_ENV, ""))

    def distance_km(self, origin: GeoPoint, destination: GeoPoint) -> float:
        params = {
            "olat": origin.lat,
            "olng": origin.lng,
            "dlat": destination.lat,
            "dlng": destination.lng,
        }
        headers = {"X-Api-Key": self.api_key} if self.api_key else {}
        try:
            response = httpx.get(self.url, params=params, headers=headers, timeout=self.timeout)
            response.raise_for_status()
            meters = float(response.json()["meters"])
        except (httpx.HTTPError, KeyError, TypeError, ValueError) as exc:
            raise ProviderError(f"routing lookup failed: {exc}") from exc
        return meters / 1000.0


@dataclass(frozen=True)
class DistanceMatrix:
    """Distances from one origin to every mall in a dataset.

    ``provider`` records provenance: the provider's name, or "mixed" when any
    destination fell back to great-circle.
    """

    origin: GeoPoint
    entries: Mapping[str, float]
    provider: str

    def distance_for(self, code: str) -> float:
        try:
            return self.entries[code]
        except KeyError:
            raise MissingDistanceError(code) from None

    def __len__(self) -> int:
        return len(self.entries)


def build_distance_matrix(
    origin: GeoPoint,
    dataset: Dataset,
    provider: DistanceProvider | None = None,
    fallback: bool = True,
) -> DistanceMatrix:
    """Compute one distance per mall, falling back to great-circle per
    destination when the provider fails (recorded via the "mixed" tag)."""
    if provider is None:
        provider = GreatCircleProvider()
    entries: dict[str, float] = {}
    failures = 0
    for record in dataset.records:
        geodesic = haversine_km(origin, record.location)
        try:
            distance = provider.distance_km(origin, record.location)
            if not math.isfinite(distance) or distance < 0.0:
                raise ProviderError(f"non-physical distance {distance} for {record.code}")
            if distance < geodesic - PROVIDER_FLOOR_SLACK_KM:
                raise ProviderError(
                    f"distance {distance:.3f} km for {record.code} undercuts geodesic "
                    f"{geodesic:.3f} km"
                )
        except ProviderError:
            failures += 1
            if not fallback:
                continue
            distance = geodesic
        entries[record.code] = distance
    if failures and not fallback:
        if failures == len(dataset.records):
            raise ProviderUnavailableError(
                f"provider {provider.name} failed for all {failures} destinations"
            )
        raise ProviderUnavailableError(
            f"provider {provider.name} failed for {failures} destinations and fallback is disabled"
        )
    tag = provider.name
    if failures:
        tag = "mixed"
    return DistanceMatrix(origin=origin, entries=entries, provider=tag)

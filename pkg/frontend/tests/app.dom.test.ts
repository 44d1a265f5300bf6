// @vitest-environment jsdom
import { beforeEach, describe, expect, it, vi } from "vitest";

import { ApiClient } from "../src/api.js";
import { mountApp, type AppHandles } from "../src/app.js";
import type { MallSummary, QueryRequest, QueryResponse } from "../src/types.js";

const MALLS: MallSummary[] = [
  { code: "OH1", name: "S1", lat: 41.502744, lng: -81.502225 },
  { code: "OH2", name: "S2", lat: 41.463094, lng: -81.476332 },
  { code: "OH3", name: "S3", lat: 41.499291, lng: -81.492427 },
  { code: "OH4", name: "S4", lat: 41.381915, lng: -81.742649 },
  { code: "OH5", name: "S5", lat: 41.458837, lng: -81.951638 },
];

function cannedResponse(request: QueryRequest, codes: string[]): QueryResponse {
  return {
    entries: codes.map((code, i) => {
      const mall = MALLS.find((m) => m.code === code) ?? {
        code,
        name: code,
        lat: 41.0 + i * 0.01,
        lng: -81.0 - i * 0.01,
      };
      return {
        rank: i + 1,
        code,
        name: mall.name,
        lat: mall.lat,
        lng: mall.lng,
        distance_km: i * 3.7,
        store_number: 20 + i,
        parking_space: 1000 + i,
        food_court: false,
        income: 60000,
        population: 150000,
        facility_counts: Object.fromEntries(request.selected_facilities.map((f) => [f, i + 1])),
        probability: [0.5537706, 0.43, 0.7, 0.2, 0.61][i % 5],
      };
    }),
    algorithm: request.algorithm,
    divergence: false,
    elapsed_ms: 2.5,
  };
}

interface Harness {
  handles: AppHandles;
  lastRequest: () => QueryRequest | null;
  setFailing: (failing: boolean) => void;
  setResultCodes: (codes: string[]) => void;
}

function mount(): Harness {
  let failing = false;
  let lastBody: QueryRequest | null = null;
  let resultCodes = ["OH1", "OH2", "OH4", "OH5"];
  const fakeFetch: typeof fetch = async (url, init) => {
    if (failing) throw new TypeError("fetch failed");
    const target = String(url);
    if (target.endsWith("/api/malls")) {
      return new Response(JSON.stringify(MALLS), { status: 200 });
    }
    if (target.endsWith("/api/skyline")) {
      lastBody = JSON.parse(String(init?.body)) as QueryRequest;
      return new Response(JSON.stringify(cannedResponse(lastBody, resultCodes)), { status: 200 });
    }
    throw new Error(`unexpected url ${target}`);
  };
  const handles = mountApp(document.body, {
    api: new ApiClient("http://svc:8080", fakeFetch),
    map: { width: 640, height: 480, center: { lat: 41.45, lng: -81.6 }, zoom: 9, tileUrl: null },
  });
  return {
    handles,
    lastRequest: () => lastBody,
    setFailing: (value) => (failing = value),
    setResultCodes: (codes) => (resultCodes = codes),
  };
}

function dragOriginTo(handles: AppHandles, lat: number, lng: number): void {
  const marker = handles.map.originMarkerElement;
  const point = handles.map.latLngToContainerPoint(lat, lng);
  marker.dispatchEvent(new MouseEvent("mousedown", { bubbles: true }));
  document.dispatchEvent(
    new MouseEvent("mousemove", { bubbles: true, clientX: point.x, clientY: point.y }),
  );
  document.dispatchEvent(new MouseEvent("mouseup", { bubbles: true }));
}

async function submitAndWait(harness: Harness): Promise<void> {
  harness.handles.elements.submitButton.click();
  await vi.waitFor(() => {
    if (harness.handles.controller.state.status.kind === "loading") {
      throw new Error("still loading");
    }
  });
}

beforeEach(() => {
  document.body.innerHTML = "";
});

describe("map client", () => {
  it("loads one marker per mall on startup", async () => {
    const harness = mount();
    await harness.handles.ready;
    expect(harness.handles.map.markerElements.size).toBe(MALLS.length);
  });

  it("updates the location panel when the marker is dragged, before the request", async () => {
    const harness = mount();
    await harness.handles.ready;
    dragOriginTo(harness.handles, 41.47, -81.52);
    const { latInput, lngInput } = harness.handles.elements;
    const origin = harness.handles.map.getOrigin();
    expect(origin.lat).toBeCloseTo(41.47, 3);
    expect(origin.lng).toBeCloseTo(-81.52, 3);
    expect(latInput.value).toBe(String(origin.lat));
    expect(lngInput.value).toBe(String(origin.lng));

    await submitAndWait(harness);
    expect(harness.lastRequest()?.origin).toEqual(origin);
  });

  it("sends the checked facility categories and food-court toggle", async () => {
    const harness = mount();
    await harness.handles.ready;
    harness.handles.elements.facilityCheckboxes[4]!.click();
    harness.handles.elements.facilityCheckboxes[0]!.click();
    harness.handles.elements.foodCourtToggle.click();
    await submitAndWait(harness);
    expect(harness.lastRequest()?.selected_facilities).toEqual([0, 4]);
    expect(harness.lastRequest()?.include_food_court).toBe(true);
    expect(harness.lastRequest()?.limit).toBe(10);
  });

  it("renders one row per entry with codes, order and probabilities intact", async () => {
    const harness = mount();
    await harness.handles.ready;
    await submitAndWait(harness);
    const rows = [...harness.handles.elements.resultsBody.querySelectorAll("tr")];
    const response = harness.handles.controller.state.results!;
    expect(rows.length).toBe(response.entries.length);
    expect(rows.length).toBeLessThanOrEqual(10);
    rows.forEach((row, i) => {
      const entry = response.entries[i]!;
      expect(row.dataset.code).toBe(entry.code);
      expect(row.cells[1]!.textContent).toBe(entry.code);
      expect(row.cells[4]!.textContent).toBe(String(entry.probability));
    });
  });

  it("positions highlighted markers at the exact response coordinates", async () => {
    const harness = mount();
    await harness.handles.ready;
    await submitAndWait(harness);
    const response = harness.handles.controller.state.results!;
    const highlighted = harness.handles.map.highlightedCodes();
    expect(highlighted.sort()).toEqual(response.entries.map((e) => e.code).sort());
    for (const entry of response.entries) {
      const marker = harness.handles.map.markerElements.get(entry.code)!;
      expect(marker.dataset.lat).toBe(String(entry.lat));
      expect(marker.dataset.lng).toBe(String(entry.lng));
    }
  });

  it("never renders more than ten rows", async () => {
    const harness = mount();
    await harness.handles.ready;
    harness.setResultCodes(Array.from({ length: 12 }, (_, i) => `ZZ${i}`));
    await submitAndWait(harness);
    expect(harness.handles.elements.resultsBody.querySelectorAll("tr").length).toBe(10);
  });

  it("shows an error banner on failure and keeps the previous results", async () => {
    const harness = mount();
    await harness.handles.ready;
    await submitAndWait(harness);
    const rowsBefore = harness.handles.elements.resultsBody.innerHTML;
    const markersBefore = harness.handles.map.markerElements.size;

    harness.setFailing(true);
    await submitAndWait(harness);
    expect(harness.handles.elements.errorBanner.hidden).toBe(false);
    expect(harness.handles.elements.errorBanner.textContent).toContain("unreachable");
    expect(harness.handles.elements.resultsBody.innerHTML).toBe(rowsBefore);
    expect(harness.handles.map.markerElements.size).toBe(markersBefore);

    harness.setFailing(false);
    await submitAndWait(harness);
    expect(harness.handles.elements.errorBanner.hidden).toBe(true);
  });

  it("accepts typed coordinates in the location panel", async () => {
    const harness = mount();
    await harness.handles.ready;
    const { latInput, lngInput } = harness.handles.elements;
    latInput.value = "41.25";
    latInput.dispatchEvent(new Event("change", { bubbles: true }));
    lngInput.value = "-81.75";
    lngInput.dispatchEvent(new Event("change", { bubbles: true }));
    expect(harness.handles.map.getOrigin()).toEqual({ lat: 41.25, lng: -81.75 });
    await submitAndWait(harness);
    expect(harness.lastRequest()?.origin).toEqual({ lat: 41.25, lng: -81.75 });
  });
});

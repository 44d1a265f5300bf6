import { clampLat, clampLng, project, unproject } from "./mercator.js";
import type { MallSummary, Origin, ResultEntry } from "./types.js";

export interface MapOptions {
  width: number;
  height: number;
  center: Origin;
  zoom: number;
  /** Slippy-map template like "https://tile.openstreetmap.org/{z}/{x}/{y}.png"; null disables tiles. */
  tileUrl: string | null;
}

const DEFAULT_OPTIONS: MapOptions = {
  width: 640,
  height: 480,
  center: { lat: 41.3, lng: -81.6 },
  zoom: 9,
  tileUrl: "https://tile.openstreetmap.org/{z}/{x}/{y}.png",
};

/**
 * Minimal slippy-map view: a fixed-size viewport over Web Mercator tiles with
 * absolutely-positioned markers. The explicit pixel size keeps every
 * coordinate computation independent of live layout, so the math (and marker
 * dragging) behaves identically in a headless DOM.
 */
export class MapView {
  readonly element: HTMLElement;
  readonly options: MapOptions;

  private readonly tileLayer: HTMLElement;
  private readonly markerLayer: HTMLElement;
  private readonly originMarker: HTMLElement;
  private origin: Origin;
  private mallMarkers = new Map<string, HTMLElement>();
  private originMovedHandlers: Array<(origin: Origin) => void> = [];
  private dragging = false;

  constructor(container: HTMLElement, options: Partial<MapOptions> = {}) {
    this.options = { ...DEFAULT_OPTIONS, ...options };
    this.origin = { ...this.options.center };

    this.element = document.createElement("div");
    this.element.className = "map-view";
    this.element.style.position = "relative";
    this.element.style.overflow = "hidden";
    this.element.style.width = `${this.options.width}px`;
    this.element.style.height = `${this.options.height}px`;

    this.tileLayer = document.createElement("div");
    this.tileLayer.className = "map-tiles";
    this.markerLayer = document.createElement("div");
    this.markerLayer.className = "map-markers";
    this.element.appendChild(this.tileLayer);
    this.element.appendChild(this.markerLayer);

    this.originMarker = document.createElement("div");
    this.originMarker.className = "marker marker-origin";
    this.originMarker.title = "Your location (drag me)";
    this.markerLayer.appendChild(this.originMarker);
    this.installDragHandlers();

    this.renderTiles();
    this.positionMarker(this.originMarker, this.origin.lat, this.origin.lng);
    container.appendChild(this.element);
  }

  /** Top-left of the viewport in world pixels. */
  private viewOrigin(): { x: number; y: number } {
    const center = project(this.options.center.lat, this.options.center.lng, this.options.zoom);
    return { x: center.x - this.options.width / 2, y: center.y - this.options.height / 2 };
  }

  latLngToContainerPoint(lat: number, lng: number): { x: number; y: number } {
    const world = project(lat, lng, this.options.zoom);
    const view = this.viewOrigin();
    return { x: world.x - view.x, y: world.y - view.y };
  }

  containerPointToLatLng(x: number, y: number): Origin {
    const view = this.viewOrigin();
    const geo = unproject(view.x + x, view.y + y, this.options.zoom);
    return { lat: clampLat(geo.lat), lng: clampLng(geo.lng) };
  }

  private renderTiles(): void {
    if (!this.options.tileUrl) return;
    const view = this.viewOrigin();
    const zoom = this.options.zoom;
    const maxTile = Math.pow(2, zoom);
    const firstX = Math.floor(view.x / 256);
    const firstY = Math.floor(view.y / 256);
    const lastX = Math.floor((view.x + this.options.width) / 256);
    const lastY = Math.floor((view.y + this.options.height) / 256);
    for (let tx = firstX; tx <= lastX; tx++) {
      for (let ty = Math.max(0, firstY); ty <= Math.min(maxTile - 1, lastY); ty++) {
        const img = document.createElement("img");
        const wrappedX = ((tx % maxTile) + maxTile) % maxTile;
        img.src = this.options.tileUrl
          .replace("{z}", String(zoom))
          .replace("{x}", String(wrappedX))
          .replace("{y}", String(ty));
        img.alt = "";
        img.style.position = "absolute";
        img.style.left = `${tx * 256 - view.x}px`;
        img.style.top = `${ty * 256 - view.y}px`;
        img.width = 256;
        img.height = 256;
        this.tileLayer.appendChild(img);
      }
    }
  }

  private positionMarker(marker: HTMLElement, lat: number, lng: number): void {
    const point = this.latLngToContainerPoint(lat, lng);
    marker.style.position = "absolute";
    marker.style.left = `${point.x}px`;
    marker.style.top = `${point.y}px`;
    marker.dataset.lat = String(lat);
    marker.dataset.lng = String(lng);
  }

  private installDragHandlers(): void {
    this.originMarker.addEventListener("mousedown", (event: MouseEvent) => {
      event.preventDefault();
      this.dragging = true;
      this.originMarker.classList.add("dragging");
    });
    const doc = this.element.ownerDocument;
    doc.addEventListener("mousemove", (event: MouseEvent) => {
      if (!this.dragging) return;
      const rect = this.element.getBoundingClientRect();
      this.origin = this.containerPointToLatLng(event.clientX - rect.left, event.clientY - rect.top);
      this.positionMarker(this.originMarker, this.origin.lat, this.origin.lng);
    });
    doc.addEventListener("mouseup", () => {
      if (!this.dragging) return;
      this.dragging = false;
      this.originMarker.classList.remove("dragging");
      for (const handler of this.originMovedHandlers) handler({ ...this.origin });
    });
  }

  onOriginMoved(handler: (origin: Origin) => void): void {
    this.originMovedHandlers.push(handler);
  }

  getOrigin(): Origin {
    return { ...this.origin };
  }

  setOrigin(origin: Origin): void {
    this.origin = { lat: clampLat(origin.lat), lng: clampLng(origin.lng) };
    this.positionMarker(this.originMarker, this.origin.lat, this.origin.lng);
  }

  get originMarkerElement(): HTMLElement {
    return this.originMarker;
  }

  setMalls(malls: MallSummary[]): void {
    for (const marker of this.mallMarkers.values()) marker.remove();
    this.mallMarkers.clear();
    for (const mall of malls) {
      const marker = document.createElement("div");
      marker.className = "marker marker-mall";
      marker.title = `${mall.code} ${mall.name}`;
      marker.dataset.code = mall.code;
      this.positionMarker(marker, mall.lat, mall.lng);
      this.markerLayer.appendChild(marker);
      this.mallMarkers.set(mall.code, marker);
    }
  }

  /** Highlight the result malls (yellow) and clear previous highlights. */
  highlightResults(entries: ResultEntry[]): void {
    for (const marker of this.mallMarkers.values()) {
      marker.classList.remove("marker-result");
    }
    for (const entry of entries) {
      let marker = this.mallMarkers.get(entry.code);
      if (!marker) {
        marker = document.createElement("div");
        marker.className = "marker marker-mall";
        marker.dataset.code = entry.code;
        this.markerLayer.appendChild(marker);
        this.mallMarkers.set(entry.code, marker);
      }
      this.positionMarker(marker, entry.lat, entry.lng);
      marker.classList.add("marker-result");
      marker.title = `#${entry.rank} ${entry.code}`;
    }
  }

  get markerElements(): ReadonlyMap<string, HTMLElement> {
    return this.mallMarkers;
  }

  highlightedCodes(): string[] {
    return [...this.mallMarkers.entries()]
      .filter(([, el]) => el.classList.contains("marker-result"))
      .map(([code]) => code);
  }
}

/** Web Mercator math shared by the tile layer and marker positioning. */

export const TILE_SIZE = 256;

export interface WorldPoint {
  x: number;
  y: number;
}

export function worldSize(zoom: number): number {
  return TILE_SIZE * Math.pow(2, zoom);
}

/** Geographic coordinates to absolute pixel coordinates at a zoom level. */
export function project(lat: number, lng: number, zoom: number): WorldPoint {
  const size = worldSize(zoom);
  const x = ((lng + 180) / 360) * size;
  const sinLat = Math.sin((lat * Math.PI) / 180);
  const y = (0.5 - Math.log((1 + sinLat) / (1 - sinLat)) / (4 * Math.PI)) * size;
  return { x, y };
}

/** Inverse of project; latitude clamped to the Mercator band. */
export function unproject(x: number, y: number, zoom: number): { lat: number; lng: number } {
  const size = worldSize(zoom);
  const lng = (x / size) * 360 - 180;
  const n = Math.PI - (2 * Math.PI * y) / size;
  const lat = (180 / Math.PI) * Math.atan(0.5 * (Math.exp(n) - Math.exp(-n)));
  return { lat, lng };
}

export function clampLat(lat: number): number {
  return Math.min(85.05112878, Math.max(-85.05112878, lat));
}

export function clampLng(lng: number): number {
  return Math.min(180, Math.max(-180, lng));
}

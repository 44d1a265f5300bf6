/** Wire types for the skyline service (field names match the JSON exactly). */

export interface Origin {
  lat: number;
  lng: number;
}

export type Algorithm = "oracle" | "bnl" | "sfs" | "dnc";

export interface QueryRequest {
  origin: Origin;
  selected_facilities: number[];
  include_food_court: boolean;
  algorithm: Algorithm;
  limit: number;
}

export interface ResultEntry {
  rank: number;
  code: string;
  name: string;
  lat: number;
  lng: number;
  distance_km: number;
  store_number: number;
  parking_space: number;
  food_court: boolean;
  income: number;
  population: number;
  facility_counts: Record<string, number>;
  probability: number;
}

export interface QueryResponse {
  entries: ResultEntry[];
  algorithm: string;
  divergence: boolean;
  elapsed_ms: number;
}

export interface MallSummary {
  code: string;
  name: string;
  lat: number;
  lng: number;
}

/** The 15 facility categories, index-aligned with the server. */
export const FACILITY_CATEGORIES = [
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
] as const;

export const MAX_RENDERED_RESULTS = 10;

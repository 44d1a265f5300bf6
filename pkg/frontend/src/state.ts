import { ApiClient, ApiError } from "./api.js";
import type { Algorithm, Origin, QueryRequest, QueryResponse } from "./types.js";
import { MAX_RENDERED_RESULTS } from "./types.js";

export type Status =
  | { kind: "idle" }
  | { kind: "loading" }
  | { kind: "error"; message: string };

export interface UiState {
  origin: Origin;
  preferences: Set<number>;
  foodCourt: boolean;
  algorithm: Algorithm;
  results: QueryResponse | null;
  status: Status;
}

/**
 * Holds the UI state and runs queries. At most one query is in flight: a new
 * submit aborts the previous one, and a failed submit keeps the last results.
 */
export class QueryController {
  readonly state: UiState;
  private inflight: AbortController | null = null;
  private listeners: Array<(state: UiState) => void> = [];

  constructor(
    private readonly api: ApiClient,
    initialOrigin: Origin,
  ) {
    this.state = {
      origin: { ...initialOrigin },
      preferences: new Set<number>(),
      foodCourt: false,
      algorithm: "sfs",
      results: null,
      status: { kind: "idle" },
    };
  }

  onChange(listener: (state: UiState) => void): void {
    this.listeners.push(listener);
  }

  private notify(): void {
    for (const listener of this.listeners) listener(this.state);
  }

  setOrigin(origin: Origin): void {
    this.state.origin = { ...origin };
    this.notify();
  }

  setPreference(index: number, checked: boolean): void {
    if (checked) this.state.preferences.add(index);
    else this.state.preferences.delete(index);
    this.notify();
  }

  setFoodCourt(enabled: boolean): void {
    this.state.foodCourt = enabled;
    this.notify();
  }

  setAlgorithm(algorithm: Algorithm): void {
    this.state.algorithm = algorithm;
    this.notify();
  }

  buildRequest(): QueryRequest {
    return {
      origin: { ...this.state.origin },
      selected_facilities: [...this.state.preferences].sort((a, b) => a - b),
      include_food_court: this.state.foodCourt,
      algorithm: this.state.algorithm,
      limit: MAX_RENDERED_RESULTS,
    };
  }

  /** POST the current state; resolves to the response or null when superseded. */
  async submit(): Promise<QueryResponse | null> {
    this.inflight?.abort();
    const controller = new AbortController();
    this.inflight = controller;
    this.state.status = { kind: "loading" };
    this.notify();
    try {
      const response = await this.api.querySkyline(this.buildRequest(), controller.signal);
      if (controller.signal.aborted) return null;
      this.state.results = response;
      this.state.status = { kind: "idle" };
      this.notify();
      return response;
    } catch (error) {
      if (controller.signal.aborted) return null; // superseded by a newer submit
      const message = error instanceof ApiError ? error.message : String(error);
      this.state.status = { kind: "error", message };
      this.notify();
      return null;
    } finally {
      if (this.inflight === controller) this.inflight = null;
    }
  }
}

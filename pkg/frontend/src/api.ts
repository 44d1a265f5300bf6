import type { MallSummary, QueryRequest, QueryResponse } from "./types.js";

export class ApiError extends Error {
  constructor(message: string, readonly status?: number) {
    super(message);
    this.name = "ApiError";
  }
}

async function describeFailure(response: Response): Promise<string> {
  try {
    const body = await response.json();
    if (Array.isArray(body.detail)) {
      return body.detail
        .map((d: { field?: string; message?: string }) =>
          d.field ? `${d.field}: ${d.message ?? ""}` : String(d.message ?? d),
        )
        .join("; ");
    }
    if (body.detail) return String(body.detail);
  } catch {
    // non-JSON body; fall through to the status line
  }
  return `HTTP ${response.status}`;
}

export class ApiClient {
  constructor(
    readonly baseUrl: string,
    private readonly fetchFn: typeof fetch = (...args) => fetch(...args),
  ) {}

  private async request(path: string, init?: RequestInit): Promise<Response> {
    let response: Response;
    try {
      response = await this.fetchFn(`${this.baseUrl}${path}`, init);
    } catch (error) {
      if (error instanceof DOMException && error.name === "AbortError") throw error;
      throw new ApiError(`service unreachable: ${(error as Error).message}`);
    }
    if (!response.ok) {
      throw new ApiError(await describeFailure(response), response.status);
    }
    return response;
  }

  async listMalls(signal?: AbortSignal): Promise<MallSummary[]> {
    const response = await this.request("/api/malls", { signal });
    return (await response.json()) as MallSummary[];
  }

  async querySkyline(body: QueryRequest, signal?: AbortSignal): Promise<QueryResponse> {
    const response = await this.request("/api/skyline", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
      signal,
    });
    return (await response.json()) as QueryResponse;
  }
}

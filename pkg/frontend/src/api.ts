import type {
  RecordBody,
  SearchRequestBody,
  SearchResponseBody,
  Suggestion,
  VocabularyBody,
} from "./types.js";

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiRequestError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

/** Thin typed client over the documented JSON endpoints. */
export class ApiClient {
  private fetchImpl: FetchLike;

  constructor(public baseUrl: string, fetchImpl?: FetchLike) {
    this.fetchImpl = fetchImpl ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, init);
    if (!response.ok) {
      let message = `${response.status}`;
      try {
        const body = (await response.json()) as { message?: string };
        if (body && body.message) message = body.message;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiRequestError(response.status, message);
    }
    return (await response.json()) as T;
  }

  health(): Promise<{ status: string }> {
    return this.request("/api/health");
  }

  vocabularies(): Promise<VocabularyBody[]> {
    return this.request("/api/vocabularies");
  }

  recommend(query: string, vocab: string, k = 10): Promise<Suggestion[]> {
    const params = new URLSearchParams({ q: query, vocab, k: String(k) });
    return this.request(`/api/recommend?${params}`);
  }

  mapTerm(term: string, from: string, to: string, kinds?: string): Promise<[string, string][]> {
    const params = new URLSearchParams({ term, from, to });
    if (kinds) params.set("kinds", kinds);
    return this.request(`/api/map?${params}`);
  }

  record(id: string): Promise<RecordBody> {
    return this.request(`/api/record/${encodeURIComponent(id)}`);
  }

  search(body: SearchRequestBody): Promise<SearchResponseBody> {
    return this.request("/api/search", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(body),
    });
  }
}

// Typed client for the read-only JSON API. Two concerns live here so the
// views never deal with them: identical in-flight requests are shared,
// and each UI channel (shelf, map, autocomplete) carries a sequence
// number so a slow response can never overwrite a newer one.

export interface RankedDoc {
  doc_id: string;
  similarity: number;
  topic_mix: number[];
}

export interface WordProb {
  word: string;
  prob: number;
}

export interface MapPoint {
  k: number;
  topic: number;
  x: number;
  y: number;
  size: number;
  cluster: number;
  words: string[];
}

export interface ModelsResponse {
  v: number;
  ks: number[];
}
export interface DocsResponse {
  v: number;
  docs: string[];
}
export interface SimilarResponse {
  v: number;
  k: number;
  focal: string;
  docs: RankedDoc[];
}
export interface TopicsResponse {
  v: number;
  k: number;
  doc_id: string;
  topic_mix: number[];
}
export interface TopicWordsResponse {
  v: number;
  k: number;
  topic: number;
  words: WordProb[];
}
export interface TopicDocsResponse {
  v: number;
  k: number;
  topic: number;
  docs: RankedDoc[];
}
export interface SearchResponse {
  v: number;
  k: number;
  query: string;
  topic_mix: number[];
  docs: RankedDoc[];
}
export interface MapResponse {
  v: number;
  params: Record<string, unknown>;
  points: MapPoint[];
}
export interface SaturationResponse {
  v: number;
  term: string;
  saturation: Record<string, number>;
}
export interface TextResponse {
  v: number;
  doc_id: string;
  text: string;
}

export class ApiError extends Error {
  constructor(
    public status: number,
    message: string,
  ) {
    super(message);
  }
}

/** Marker returned by latest() when a newer request superseded this one. */
export const STALE: unique symbol = Symbol("stale");
export type Stale = typeof STALE;

/** Document ids contain slashes that must stay path separators. */
export function encodeDocPath(docId: string): string {
  return docId.split("/").map(encodeURIComponent).join("/");
}

type FetchLike = (url: string) => Promise<Response>;

export class ApiClient {
  private inflight = new Map<string, Promise<unknown>>();
  private sequence = new Map<string, number>();

  constructor(
    private base: string = "",
    private fetchFn: FetchLike = (url) => fetch(url),
  ) {}

  async json<T>(path: string): Promise<T> {
    const url = this.base + path;
    const pending = this.inflight.get(url);
    if (pending !== undefined) return pending as Promise<T>;
    const request = (async () => {
      try {
        const response = await this.fetchFn(url);
        const body = (await response.json()) as { error?: string } & T;
        if (!response.ok) {
          throw new ApiError(response.status, body.error ?? "request failed");
        }
        return body;
      } finally {
        this.inflight.delete(url);
      }
    })();
    this.inflight.set(url, request);
    return request;
  }

  /**
   * Fetch on a named channel; if another latest() call on the same
   * channel starts before this one resolves, the result is STALE and
   * must be dropped by the caller.
   */
  async latest<T>(channel: string, path: string): Promise<T | Stale> {
    const ticket = (this.sequence.get(channel) ?? 0) + 1;
    this.sequence.set(channel, ticket);
    const result = await this.json<T>(path);
    return this.sequence.get(channel) === ticket ? result : STALE;
  }

  models(): Promise<ModelsResponse> {
    return this.json("/api/models");
  }

  autocomplete(q: string, limit = 20): Promise<DocsResponse | Stale> {
    const p = new URLSearchParams({ q, limit: String(limit) });
    return this.latest("autocomplete", `/api/docs?${p}`);
  }

  similar(
    k: number,
    docId: string,
    opts: { limit?: number; sortTopic?: number } = {},
  ): Promise<SimilarResponse | Stale> {
    const p = new URLSearchParams();
    if (opts.limit !== undefined) p.set("limit", String(opts.limit));
    if (opts.sortTopic !== undefined) p.set("sort_topic", String(opts.sortTopic));
    const qs = p.toString() ? `?${p}` : "";
    return this.latest(
      "shelf",
      `/api/${k}/doc/${encodeDocPath(docId)}/similar${qs}`,
    );
  }

  docTopics(k: number, docId: string): Promise<TopicsResponse> {
    return this.json(`/api/${k}/doc/${encodeDocPath(docId)}/topics`);
  }

  topicWords(k: number, topic: number, n = 15): Promise<TopicWordsResponse> {
    return this.json(`/api/${k}/topic/${topic}/words?n=${n}`);
  }

  topicDocs(
    k: number,
    topic: number,
    limit?: number,
  ): Promise<TopicDocsResponse | Stale> {
    const qs = limit === undefined ? "" : `?limit=${limit}`;
    return this.latest("shelf", `/api/${k}/topic/${topic}/docs${qs}`);
  }

  search(
    k: number,
    q: string,
    opts: { limit?: number; sortTopic?: number } = {},
  ): Promise<SearchResponse | Stale> {
    const p = new URLSearchParams({ q });
    if (opts.limit !== undefined) p.set("limit", String(opts.limit));
    if (opts.sortTopic !== undefined) p.set("sort_topic", String(opts.sortTopic));
    return this.latest("shelf", `/api/${k}/search?${p}`);
  }

  map(): Promise<MapResponse> {
    return this.json("/api/map");
  }

  saturation(term: string): Promise<SaturationResponse | Stale> {
    const p = new URLSearchParams({ term });
    return this.latest("saturation", `/api/map/saturation?${p}`);
  }

  text(docId: string): Promise<TextResponse> {
    return this.json(`/api/doc/${encodeDocPath(docId)}/text`);
  }
}

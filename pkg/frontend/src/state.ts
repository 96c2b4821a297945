// Every view is a shareable link: the full UI state round-trips through
// the URL query string, and unknown or malformed parameters fall back to
// defaults instead of breaking the page.

export type View = "shelf" | "map";

export interface AppState {
  view: View;
  k: number;
  /** focal document for the similar-documents shelf */
  doc: string | null;
  /** term query for the search shelf */
  q: string | null;
  /** topic whose corpus-wide top documents are loaded */
  topic: number | null;
  /** topic the shelf rows are re-sorted by */
  sortTopic: number | null;
  /** saturation term for the map */
  term: string | null;
  /** bar widths normalized to the widest row instead of linear */
  normalized: boolean;
}

export const DEFAULT_K = 60;

export function defaultState(): AppState {
  return {
    view: "shelf",
    k: DEFAULT_K,
    doc: null,
    q: null,
    topic: null,
    sortTopic: null,
    term: null,
    normalized: false,
  };
}

/** Pick the default K: 60 when trained, otherwise the first available. */
export function pickK(available: number[], wanted: number): number {
  if (available.includes(wanted)) return wanted;
  if (available.includes(DEFAULT_K)) return DEFAULT_K;
  return available[0] ?? DEFAULT_K;
}

function intOrNull(raw: string | null): number | null {
  if (raw === null || raw === "" || !/^-?\d+$/.test(raw)) return null;
  return parseInt(raw, 10);
}

export function encodeState(state: AppState): string {
  const params = new URLSearchParams();
  const base = defaultState();
  if (state.view !== base.view) params.set("view", state.view);
  if (state.k !== base.k) params.set("k", String(state.k));
  if (state.doc !== null) params.set("doc", state.doc);
  if (state.q !== null) params.set("q", state.q);
  if (state.topic !== null) params.set("topic", String(state.topic));
  if (state.sortTopic !== null) params.set("sort", String(state.sortTopic));
  if (state.term !== null) params.set("term", state.term);
  if (state.normalized) params.set("norm", "1");
  const qs = params.toString();
  return qs ? `?${qs}` : "";
}

export function decodeState(queryString: string): AppState {
  const params = new URLSearchParams(
    queryString.startsWith("?") ? queryString.slice(1) : queryString,
  );
  const state = defaultState();
  if (params.get("view") === "map") state.view = "map";
  const k = intOrNull(params.get("k"));
  if (k !== null && k > 0) state.k = k;
  state.doc = params.get("doc");
  state.q = params.get("q");
  state.topic = intOrNull(params.get("topic"));
  state.sortTopic = intOrNull(params.get("sort"));
  state.term = params.get("term");
  state.normalized = params.get("norm") === "1";
  return state;
}

// Application shell: owns the URL-backed state, fetches from the API,
// and delegates rendering to the shelf and map views. All ordering and
// scoring decisions stay on the server; this layer only routes.

import { ApiClient, ApiError, STALE } from "./api.js";
import type { MapResponse, RankedDoc } from "./api.js";
import { renderMap } from "./map.js";
import { renderShelf } from "./shelf.js";
import type { AppState } from "./state.js";
import { decodeState, encodeState, pickK } from "./state.js";

export const SHELF_LIMIT = 40;

export class App {
  state: AppState;
  ks: number[] = [];
  private wordCache = new Map<number, string[][]>();
  private mapCache: MapResponse | null = null;
  private showClusters = true;
  private collision = false;
  private renderTicket = 0;

  constructor(
    private root: HTMLElement,
    private api: ApiClient,
    private win: Window,
  ) {
    this.state = decodeState(win.location.search);
  }

  async start(): Promise<void> {
    this.ks = (await this.api.models()).ks;
    this.state.k = pickK(this.ks, this.state.k);
    this.win.addEventListener("popstate", () => {
      this.state = decodeState(this.win.location.search);
      this.state.k = pickK(this.ks, this.state.k);
      void this.render();
    });
    await this.render();
  }

  setState(patch: Partial<AppState>, push = true): Promise<void> {
    this.state = { ...this.state, ...patch };
    if (push) {
      const url = encodeState(this.state) || this.win.location.pathname;
      this.win.history.pushState(null, "", url);
    }
    return this.render();
  }

  private async topicWords(k: number): Promise<string[][]> {
    const cached = this.wordCache.get(k);
    if (cached) return cached;
    try {
      // the map layout already carries top words for every trained K
      this.mapCache = this.mapCache ?? (await this.api.map());
      for (const kk of new Set(this.mapCache.points.map((p) => p.k))) {
        const words: string[][] = [];
        for (const p of this.mapCache.points) {
          if (p.k === kk) words[p.topic] = p.words;
        }
        this.wordCache.set(kk, words);
      }
    } catch {
      // no layout (single model, too few points): ask topic by topic
      const fetched = await Promise.all(
        Array.from({ length: k }, (_, t) =>
          this.api.topicWords(k, t).then((r) => r.words.map((w) => w.word)),
        ),
      );
      this.wordCache.set(k, fetched);
    }
    return this.wordCache.get(k) ?? [];
  }

  private async shelfRows(): Promise<RankedDoc[] | null> {
    const { k, doc, q, topic, sortTopic } = this.state;
    const opts = {
      limit: SHELF_LIMIT,
      ...(sortTopic === null ? {} : { sortTopic }),
    };
    if (topic !== null) {
      const r = await this.api.topicDocs(k, topic, SHELF_LIMIT);
      return r === STALE ? null : r.docs;
    }
    if (q !== null && q !== "") {
      const r = await this.api.search(k, q, opts);
      return r === STALE ? null : r.docs;
    }
    if (doc !== null) {
      const r = await this.api.similar(k, doc, opts);
      return r === STALE ? null : r.docs;
    }
    return [];
  }

  async render(): Promise<void> {
    const ticket = ++this.renderTicket;
    this.root.textContent = "";
    this.root.append(this.chrome());
    const view = document.createElement("div");
    view.className = "view";
    this.root.append(view);
    try {
      if (this.state.view === "map") {
        await this.renderMapView(view, ticket);
      } else {
        await this.renderShelfView(view, ticket);
      }
    } catch (error) {
      if (error instanceof ApiError) {
        this.status(view, error.message);
      } else {
        throw error;
      }
    }
  }

  private status(view: HTMLElement, message: string): void {
    const line = document.createElement("div");
    line.className = "status";
    line.textContent = message;
    view.append(line);
  }

  private async renderShelfView(
    view: HTMLElement,
    ticket: number,
  ): Promise<void> {
    const [rows, words] = await Promise.all([
      this.shelfRows(),
      this.topicWords(this.state.k),
    ]);
    if (rows === null || ticket !== this.renderTicket) return;
    if (rows.length === 0) {
      this.status(
        view,
        "pick a document or enter search terms to fill the shelf",
      );
      return;
    }
    renderShelf(view, {
      rows,
      focal: this.state.sortTopic === null ? this.state.doc : null,
      normalized: this.state.normalized,
      topicWords: words,
      activeSortTopic: this.state.sortTopic,
      fulltext: true,
      onTopicClick: (t) =>
        void this.setState({
          sortTopic: this.state.sortTopic === t ? null : t,
        }),
      onTopicTopDocs: (t) =>
        void this.setState({ topic: t, doc: null, q: null, sortTopic: null }),
      onRefocus: (docId) =>
        void this.setState({
          doc: docId,
          q: null,
          topic: null,
          sortTopic: null,
        }),
      onShowText: (docId) => void this.showText(view, docId),
    });
  }

  private async renderMapView(
    view: HTMLElement,
    ticket: number,
  ): Promise<void> {
    this.mapCache = this.mapCache ?? (await this.api.map());
    let saturation: Record<string, number> | null = null;
    if (this.state.term) {
      const r = await this.api.saturation(this.state.term);
      if (r === STALE) return;
      saturation = r.saturation;
    }
    if (ticket !== this.renderTicket) return;
    renderMap(view, {
      points: this.mapCache.points,
      saturation,
      showClusters: this.showClusters,
      collision: this.collision,
      onTopicClick: (k, topic) =>
        void this.setState({
          view: "shelf",
          k,
          topic,
          doc: null,
          q: null,
          sortTopic: null,
        }),
    });
  }

  private async showText(view: HTMLElement, docId: string): Promise<void> {
    const panel = document.createElement("div");
    panel.className = "text-panel";
    const close = document.createElement("button");
    close.className = "close";
    close.textContent = "close";
    close.addEventListener("click", () => panel.remove());
    const heading = document.createElement("h3");
    heading.textContent = docId;
    const body = document.createElement("pre");
    try {
      body.textContent = (await this.api.text(docId)).text;
    } catch (error) {
      body.textContent =
        error instanceof ApiError
          ? `${error.message} (serve with --fulltext to enable)`
          : String(error);
    }
    panel.append(close, heading, body);
    view.append(panel);
  }

  private chrome(): HTMLElement {
    const bar = document.createElement("header");
    bar.className = "chrome";

    const tabs = document.createElement("nav");
    for (const v of ["shelf", "map"] as const) {
      const tab = document.createElement("button");
      tab.className = "tab" + (this.state.view === v ? " active" : "");
      tab.dataset.view = v;
      tab.textContent = v === "shelf" ? "Hypershelf" : "Topic Map";
      tab.addEventListener("click", () => void this.setState({ view: v }));
      tabs.append(tab);
    }
    bar.append(tabs);

    const kSelect = document.createElement("select");
    kSelect.className = "k-select";
    for (const k of this.ks) {
      const option = document.createElement("option");
      option.value = String(k);
      option.textContent = `K=${k}`;
      option.selected = k === this.state.k;
      kSelect.append(option);
    }
    kSelect.addEventListener("change", () =>
      void this.setState({ k: parseInt(kSelect.value, 10), sortTopic: null }),
    );
    bar.append(kSelect);

    const search = document.createElement("form");
    search.className = "doc-search";
    const input = document.createElement("input");
    input.name = "q";
    input.placeholder = "document or search terms";
    input.value = this.state.q ?? this.state.doc ?? "";
    input.setAttribute("list", "doc-options");
    const datalist = document.createElement("datalist");
    datalist.id = "doc-options";
    input.addEventListener("input", () => {
      void this.api.autocomplete(input.value).then((r) => {
        if (r === STALE) return;
        datalist.textContent = "";
        for (const id of r.docs) {
          const option = document.createElement("option");
          option.value = id;
          datalist.append(option);
        }
      });
    });
    search.addEventListener("submit", (event) => {
      event.preventDefault();
      const value = input.value.trim();
      if (!value) return;
      const isDocId = Array.from(datalist.options).some(
        (o) => o.value === value,
      );
      void this.setState(
        isDocId
          ? { doc: value, q: null, topic: null, sortTopic: null }
          : { q: value, doc: null, topic: null, sortTopic: null },
      );
    });
    search.append(input, datalist);
    bar.append(search);

    if (this.state.view === "shelf") {
      const norm = document.createElement("label");
      norm.className = "norm-toggle";
      const box = document.createElement("input");
      box.type = "checkbox";
      box.checked = this.state.normalized;
      box.addEventListener("change", () =>
        void this.setState({ normalized: box.checked }),
      );
      norm.append(box, document.createTextNode(" normalize bar widths"));
      bar.append(norm);
    } else {
      const term = document.createElement("form");
      term.className = "term-search";
      const input2 = document.createElement("input");
      input2.name = "term";
      input2.placeholder = "saturate by term";
      input2.value = this.state.term ?? "";
      term.addEventListener("submit", (event) => {
        event.preventDefault();
        void this.setState({ term: input2.value.trim() || null });
      });
      term.append(input2);
      bar.append(term);

      for (const [label, get, set] of [
        [
          "View Topic Clusters",
          () => this.showClusters,
          (v: boolean) => (this.showClusters = v),
        ],
        [
          "Collision detection",
          () => this.collision,
          (v: boolean) => (this.collision = v),
        ],
      ] as const) {
        const toggle = document.createElement("label");
        toggle.className = "map-toggle";
        const box = document.createElement("input");
        box.type = "checkbox";
        box.checked = get();
        box.addEventListener("change", () => {
          set(box.checked);
          void this.render();
        });
        toggle.append(box, document.createTextNode(` ${label}`));
        bar.append(toggle);
      }
    }
    return bar;
  }
}

export function boot(): void {
  const root = document.getElementById("app");
  if (!root) throw new Error("missing #app container");
  void new App(root, new ApiClient(), window).start();
}

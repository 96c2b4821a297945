// The document shelf: one stacked bar per document, in exactly the order
// the server returned. This module never sorts or rescales rankings; a
// click on a topic hands control back so the caller can re-request the
// server-side ordering.

import type { RankedDoc } from "./api.js";
import { colorFor } from "./palette.js";

export interface ShelfProps {
  rows: RankedDoc[];
  /** highlighted first row when showing similar documents */
  focal: string | null;
  /** widths normalized to the widest row instead of linear in similarity */
  normalized: boolean;
  /** top words per topic index; empty arrays are fine while loading */
  topicWords: string[][];
  activeSortTopic: number | null;
  fulltext: boolean;
  onTopicClick: (topic: number) => void;
  onTopicTopDocs: (topic: number) => void;
  onRefocus: (docId: string) => void;
  onShowText: (docId: string) => void;
}

function wordsTitle(topic: number, words: string[][]): string {
  const top = words[topic] ?? [];
  return top.length ? `topic ${topic}: ${top.join(" ")}` : `topic ${topic}`;
}

export function renderShelf(container: HTMLElement, props: ShelfProps): void {
  container.textContent = "";
  const shelf = document.createElement("div");
  shelf.className = "shelf";

  const topicCount = props.rows[0]?.topic_mix.length ?? 0;
  const key = document.createElement("div");
  key.className = "topic-key";
  for (let t = 0; t < topicCount; t++) {
    const entry = document.createElement("span");
    entry.className =
      "key-entry" + (props.activeSortTopic === t ? " active" : "");
    entry.dataset.topic = String(t);
    entry.title = wordsTitle(t, props.topicWords);

    const swatch = document.createElement("span");
    swatch.className = "swatch";
    swatch.style.background = colorFor(t);
    const label = document.createElement("span");
    label.textContent = ` ${t} ${(props.topicWords[t] ?? []).slice(0, 3).join(" ")}`;
    entry.append(swatch, label);
    entry.addEventListener("click", () => props.onTopicClick(t));

    const topDocs = document.createElement("button");
    topDocs.className = "key-topdocs";
    topDocs.textContent = "Top documents for Topic...";
    topDocs.addEventListener("click", (event) => {
      event.stopPropagation();
      props.onTopicTopDocs(t);
    });
    entry.append(topDocs);
    key.append(entry);
  }
  shelf.append(key);

  const maxSim = props.rows.reduce((m, r) => Math.max(m, r.similarity), 0);
  const rows = document.createElement("div");
  rows.className = "rows";
  for (const doc of props.rows) {
    const row = document.createElement("div");
    row.className =
      "shelf-row" + (doc.doc_id === props.focal ? " focal" : "");
    row.dataset.doc = doc.doc_id;

    const head = document.createElement("div");
    head.className = "row-head";
    const refocus = document.createElement("button");
    refocus.className = "refocus";
    refocus.textContent = "➔";
    refocus.title = "show documents similar to this one";
    refocus.addEventListener("click", () => props.onRefocus(doc.doc_id));
    head.append(refocus);
    if (props.fulltext) {
      const page = document.createElement("button");
      page.className = "show-text";
      page.textContent = "☰";
      page.title = "open the full text";
      page.addEventListener("click", () => props.onShowText(doc.doc_id));
      head.append(page);
    }
    const label = document.createElement("span");
    label.className = "doc-label";
    label.textContent = doc.doc_id;
    const score = document.createElement("span");
    score.className = "sim";
    score.textContent = doc.similarity.toFixed(3);
    head.append(label, score);

    const bar = document.createElement("div");
    bar.className = "bar";
    const scale = props.normalized && maxSim > 0 ? maxSim : 1;
    bar.style.width = `${(doc.similarity / scale) * 100}%`;
    doc.topic_mix.forEach((share, t) => {
      const seg = document.createElement("div");
      seg.className = "bar-seg";
      seg.dataset.topic = String(t);
      seg.style.flexGrow = String(share);
      seg.style.background = colorFor(t);
      seg.title = wordsTitle(t, props.topicWords);
      seg.addEventListener("click", () => props.onTopicClick(t));
      bar.append(seg);
    });

    row.append(head, bar);
    rows.append(row);
  }
  shelf.append(rows);
  container.append(shelf);
}

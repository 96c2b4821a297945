import { beforeEach, describe, expect, it } from "vitest";

import type { ApiClient, MapPoint, RankedDoc } from "../src/api.js";
import { App } from "../src/main.js";

const flush = async (rounds = 4): Promise<void> => {
  for (let i = 0; i < rounds; i++) {
    await new Promise((resolve) => setTimeout(resolve, 0));
  }
};

const DOCS: RankedDoc[] = [
  { doc_id: "lunyu/xue_er.txt", similarity: 1.0, topic_mix: [0.5, 0.3, 0.2] },
  { doc_id: "laozi/ch01.txt", similarity: 0.8, topic_mix: [0.1, 0.6, 0.3] },
  { doc_id: "mengzi/li_lou.txt", similarity: 0.4, topic_mix: [0.2, 0.2, 0.6] },
];
// what the server would send back for sort_topic=1: mix[1] descending
const DOCS_BY_TOPIC1 = [DOCS[1], DOCS[0], DOCS[2]] as RankedDoc[];

const POINTS: MapPoint[] = [0, 1, 2].map((t) => ({
  k: 3,
  topic: t,
  x: t,
  y: t * 0.5,
  size: 33,
  cluster: t % 2,
  words: [`w${t}a`, `w${t}b`],
}));

interface Call {
  method: string;
  args: unknown[];
}

function stubApi(calls: Call[]): ApiClient {
  const record = (method: string, args: unknown[]) =>
    calls.push({ method, args });
  const stub = {
    models: async () => ({ v: 1, ks: [3] }),
    map: async () => ({ v: 1, params: {}, points: POINTS }),
    similar: async (k: number, doc: string, opts: { sortTopic?: number }) => {
      record("similar", [k, doc, opts]);
      return {
        v: 1,
        k,
        focal: doc,
        docs: opts.sortTopic === 1 ? DOCS_BY_TOPIC1 : DOCS,
      };
    },
    search: async (k: number, q: string, opts: unknown) => {
      record("search", [k, q, opts]);
      return { v: 1, k, query: q, topic_mix: [0.4, 0.3, 0.3], docs: DOCS };
    },
    topicDocs: async (k: number, topic: number, limit?: number) => {
      record("topicDocs", [k, topic, limit]);
      return { v: 1, k, topic, docs: [DOCS[2], DOCS[1]] };
    },
    topicWords: async (k: number, topic: number) => ({
      v: 1,
      k,
      topic,
      words: [{ word: `t${topic}`, prob: 0.5 }],
    }),
    autocomplete: async (q: string) => {
      record("autocomplete", [q]);
      return { v: 1, docs: ["lunyu/xue_er.txt"] };
    },
    saturation: async (term: string) => {
      record("saturation", [term]);
      return { v: 1, term, saturation: { "3:0": 1.0, "3:1": 0.2 } };
    },
    text: async (docId: string) => ({
      v: 1,
      doc_id: docId,
      text: "学而时习之",
    }),
  };
  return stub as unknown as ApiClient;
}

let root: HTMLElement;
let calls: Call[];

function makeApp(search: string): App {
  window.history.replaceState(null, "", `/${search}`);
  document.body.textContent = "";
  root = document.createElement("div");
  document.body.append(root);
  calls = [];
  return new App(root, stubApi(calls), window);
}

function rowIds(): (string | undefined)[] {
  return Array.from(root.querySelectorAll<HTMLElement>(".shelf-row")).map(
    (el) => el.dataset.doc,
  );
}

describe("app shell", () => {
  beforeEach(() => {
    window.history.replaceState(null, "", "/");
  });

  it("falls back to a trained K and prompts for input", async () => {
    const app = makeApp("");
    await app.start();
    expect(app.state.k).toBe(3);
    const select = root.querySelector<HTMLSelectElement>(".k-select");
    expect(select?.value).toBe("3");
    expect(root.querySelector(".status")?.textContent).toContain("shelf");
  });

  it("renders the shelf in exactly the order the server sent", async () => {
    const app = makeApp("?doc=lunyu/xue_er.txt&k=3");
    await app.start();
    expect(rowIds()).toEqual(DOCS.map((d) => d.doc_id));
  });

  it("re-sorting asks the server and shows the server's new order", async () => {
    const app = makeApp("?doc=lunyu/xue_er.txt&k=3");
    await app.start();

    root
      .querySelectorAll<HTMLElement>(".shelf-row .bar-seg")[1]
      ?.click(); // topic 1 block on the focal row
    await flush();

    const sorted = calls.filter(
      (c) => c.method === "similar" && (c.args[2] as { sortTopic?: number }).sortTopic === 1,
    );
    expect(sorted).toHaveLength(1);
    expect(rowIds()).toEqual(DOCS_BY_TOPIC1.map((d) => d.doc_id));
    expect(window.location.search).toContain("sort=1");

    // clicking the active topic again clears the re-sort
    root.querySelectorAll<HTMLElement>(".key-entry")[1]?.click();
    await flush();
    expect(rowIds()).toEqual(DOCS.map((d) => d.doc_id));
  });

  it("keeps the whole view state in the URL", async () => {
    const app = makeApp("?doc=lunyu/xue_er.txt&k=3");
    await app.start();
    await app.setState({ normalized: true });
    expect(window.location.search).toContain("doc=lunyu");
    expect(window.location.search).toContain("norm=1");

    window.history.replaceState(null, "", "/?view=map&k=3");
    window.dispatchEvent(new PopStateEvent("popstate"));
    await flush();
    expect(root.querySelector("svg.topic-map")).not.toBeNull();
  });

  it("saturates the map by term and navigates to a topic's shelf", async () => {
    const app = makeApp("?view=map&k=3&term=佛");
    await app.start();
    expect(calls.some((c) => c.method === "saturation")).toBe(true);
    const circle = root.querySelectorAll("circle")[2];
    circle?.dispatchEvent(new MouseEvent("click"));
    await flush();

    expect(app.state.view).toBe("shelf");
    expect(app.state.topic).toBe(2);
    expect(calls.some((c) => c.method === "topicDocs")).toBe(true);
    expect(rowIds()).toEqual(["mengzi/li_lou.txt", "laozi/ch01.txt"]);
  });

  it("loads the corpus-wide top documents from the key button", async () => {
    const app = makeApp("?doc=lunyu/xue_er.txt&k=3");
    await app.start();
    root.querySelectorAll<HTMLElement>(".key-topdocs")[0]?.click();
    await flush();
    expect(app.state.topic).toBe(0);
    expect(app.state.doc).toBeNull();
    expect(rowIds()).toEqual(["mengzi/li_lou.txt", "laozi/ch01.txt"]);
  });

  it("opens the full text in a panel", async () => {
    const app = makeApp("?doc=lunyu/xue_er.txt&k=3");
    await app.start();
    root.querySelector<HTMLElement>(".show-text")?.click();
    await flush();
    expect(root.querySelector(".text-panel pre")?.textContent).toContain(
      "学而时习之",
    );
  });
});

import { describe, expect, it } from "vitest";

import {
  AppState,
  DEFAULT_K,
  decodeState,
  defaultState,
  encodeState,
  pickK,
} from "../src/state.js";

// small deterministic generator so the round-trip check covers many shapes
function lcg(seed: number): () => number {
  let s = seed >>> 0;
  return () => {
    s = (s * 1664525 + 1013904223) >>> 0;
    return s / 2 ** 32;
  };
}

function randomState(rnd: () => number): AppState {
  const docs = ["lunyu/xue_er.txt", "laozi/ch01.txt", "a b/c&d=e.txt", "真"];
  const pick = <T>(xs: T[]): T => xs[Math.floor(rnd() * xs.length)] as T;
  return {
    view: rnd() < 0.5 ? "shelf" : "map",
    k: [3, 5, 60, 120][Math.floor(rnd() * 4)] as number,
    doc: rnd() < 0.5 ? pick(docs) : null,
    q: rnd() < 0.5 ? pick(["天下", "阴阳 五行", ""]) : null,
    topic: rnd() < 0.5 ? Math.floor(rnd() * 120) : null,
    sortTopic: rnd() < 0.5 ? Math.floor(rnd() * 120) : null,
    term: rnd() < 0.5 ? pick(["佛", "道 德"]) : null,
    normalized: rnd() < 0.5,
  };
}

describe("url state", () => {
  it("defaults to the shelf at K=60", () => {
    const s = defaultState();
    expect(s.view).toBe("shelf");
    expect(s.k).toBe(60);
    expect(encodeState(s)).toBe("");
  });

  it("round-trips every field through the query string", () => {
    const rnd = lcg(20240814);
    for (let i = 0; i < 500; i++) {
      const state = randomState(rnd);
      expect(decodeState(encodeState(state))).toEqual(state);
    }
  });

  it("keeps CJK and reserved characters intact", () => {
    const state = { ...defaultState(), doc: "集/论 语&parts=1.txt", q: "天下" };
    expect(decodeState(encodeState(state))).toEqual(state);
  });

  it("ignores junk parameters and malformed numbers", () => {
    const s = decodeState("?k=abc&topic=1.5&sort=&bogus=1&view=nonsense");
    expect(s).toEqual(defaultState());
  });

  it("accepts state with or without the leading question mark", () => {
    expect(decodeState("view=map&k=5").k).toBe(5);
    expect(decodeState("?view=map&k=5").view).toBe("map");
  });
});

describe("pickK", () => {
  it("keeps the requested K when trained", () => {
    expect(pickK([20, 40, 60], 40)).toBe(40);
  });
  it("falls back to 60 when the requested K is missing", () => {
    expect(pickK([20, 60, 80], 99)).toBe(60);
  });
  it("falls back to the first available otherwise", () => {
    expect(pickK([3, 5], 99)).toBe(3);
  });
  it("degrades to the default on an empty list", () => {
    expect(pickK([], 99)).toBe(DEFAULT_K);
  });
});

import { describe, expect, it } from "vitest";

import { PALETTE, colorFor, saturationColor } from "../src/palette.js";

describe("palette", () => {
  it("cycles, so distinct topics may share a color", () => {
    expect(colorFor(0)).toBe(PALETTE[0]);
    expect(colorFor(PALETTE.length)).toBe(PALETTE[0]);
    expect(colorFor(PALETTE.length + 3)).toBe(colorFor(3));
  });

  it("is total over any integer", () => {
    expect(colorFor(-1)).toBe(PALETTE[PALETTE.length - 1]);
    expect(colorFor(10_000)).toMatch(/^#/);
  });

  it("maps saturation weight monotonically and clamps", () => {
    expect(saturationColor(0)).toBe(saturationColor(-5));
    expect(saturationColor(1)).toBe(saturationColor(42));
    expect(saturationColor(0)).not.toBe(saturationColor(1));
  });
});

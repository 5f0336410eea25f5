import { describe, expect, it } from "vitest";

import { seriesDash, variantColor } from "../src/colors.js";

describe("variantColor", () => {
  it("is stable and distinct for a tabful of variants", () => {
    const colors = Array.from({ length: 12 }, (_, i) => variantColor(i));
    expect(new Set(colors).size).toBe(12);
    expect(variantColor(3)).toBe(variantColor(3));
  });
});

describe("seriesDash", () => {
  it("distinguishes the first few series and cycles after", () => {
    expect(seriesDash(0)).toEqual([]);
    expect(seriesDash(1)).not.toEqual(seriesDash(2));
    expect(seriesDash(4)).toEqual(seriesDash(0));
  });
});

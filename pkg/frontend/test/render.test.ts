import { describe, expect, it } from "vitest";

import { categoricalColor, sequentialColors } from "../src/color.js";
import {
  colorCentrality,
  colorCommunities,
  rankedBars,
} from "../src/render.js";

const AUTO = { mode: "linear" as const, range: "auto" as const };

describe("rankedBars", () => {
  it("reports percent of mean", () => {
    expect(rankedBars([1, 1, 4])).toEqual([50, 50, 200]);
  });

  it("handles an all-zero panel", () => {
    expect(rankedBars([0, 0])).toEqual([0, 0]);
  });
});

describe("community coloring", () => {
  it("is a stable per-label palette", () => {
    const once = colorCommunities([0, 1, 2, 1]).colors;
    expect(once[1]).toBe(once[3]);
    expect(new Set(once.slice(0, 3)).size).toBe(3);
    // label 2 keeps its color no matter which other labels are present
    expect(colorCommunities([2, 5]).colors[0]).toBe(categoricalColor(2));
  });
});

describe("centrality coloring", () => {
  it("flags all-equal values and renders a single color", () => {
    const c = colorCentrality([0, 0, 0, 0], AUTO);
    expect(new Set(c.colors).size).toBe(1);
    expect(c.warning).toMatch(/equal/);
  });

  it("does not warn on distinct values", () => {
    const c = colorCentrality([0, 0.5, 1], AUTO);
    expect(c.warning).toBeUndefined();
    expect(new Set(c.colors).size).toBe(3);
  });
});

describe("sequential scale", () => {
  it("uses the fixed range when given", () => {
    const fixed = sequentialColors([0.5], {
      mode: "linear",
      range: [0, 1],
    })[0];
    const auto = sequentialColors([0.5, 0, 1], AUTO)[0];
    expect(fixed).toBe(auto);
  });

  it("orders colors monotonically in log mode", () => {
    const [lo, mid, hi] = sequentialColors([1e-6, 1e-3, 1], {
      mode: "log",
      range: "auto",
    });
    expect(lo).not.toBe(mid);
    expect(mid).not.toBe(hi);
  });
});

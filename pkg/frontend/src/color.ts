/**
 * Color mapping: the only transformation the UI applies to API values.
 *
 * Sequential scale (viridis) for probability fields and centralities,
 * categorical palette (stable per label) for communities.
 */
import { interpolateViridis, schemeTableau10 } from "d3-scale-chromatic";

import type { ColorScale } from "./state.js";

/** Color for community label `c`; the same label always maps to the same
 * color regardless of how many communities are present. */
export function categoricalColor(label: number): string {
  return schemeTableau10[label % schemeTableau10.length];
}

export function scaleDomain(
  values: number[],
  scale: ColorScale,
): [number, number] {
  if (scale.range !== "auto") return scale.range;
  let lo = Infinity;
  let hi = -Infinity;
  for (const v of values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  return lo <= hi ? [lo, hi] : [0, 1];
}

/** Map one value through the scale; log mode treats non-positive values as
 * the bottom of the scale. */
export function sequentialColor(
  value: number,
  [lo, hi]: [number, number],
  mode: "linear" | "log" = "linear",
): string {
  let u: number;
  if (mode === "log") {
    const floor = Math.max(lo, 1e-300);
    u =
      value <= floor || hi <= floor
        ? 0
        : Math.log(value / floor) / Math.log(hi / floor);
  } else {
    u = hi > lo ? (value - lo) / (hi - lo) : 0;
  }
  return interpolateViridis(Math.min(1, Math.max(0, u)));
}

export function sequentialColors(
  values: number[],
  scale: ColorScale,
): string[] {
  const domain = scaleDomain(values, scale);
  return values.map((v) => sequentialColor(v, domain, scale.mode));
}

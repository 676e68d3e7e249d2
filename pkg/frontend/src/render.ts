/**
 * Pure view helpers (testable without a DOM) plus the canvas scatter drawer.
 */
import { categoricalColor, sequentialColors } from "./color.js";
import type { Camera, ColorScale } from "./state.js";

export interface NodeColoring {
  colors: string[];
  /** set when every value is identical, e.g. an all-equal centrality */
  warning?: string;
  /** fraction of probability mass shown, for sparsified fields */
  massCovered?: number;
}

export function colorField(
  values: number[],
  scale: ColorScale,
  massCovered?: number,
): NodeColoring {
  return { colors: sequentialColors(values, scale), massCovered };
}

export function colorCommunities(labels: number[]): NodeColoring {
  return { colors: labels.map(categoricalColor) };
}

export function colorCentrality(
  normalized: number[],
  scale: ColorScale,
): NodeColoring {
  const allEqual = normalized.every((v) => v === normalized[0]);
  const out = colorField(normalized, scale);
  if (allEqual && normalized.length > 1) {
    out.warning = "all nodes have equal centrality";
  }
  return out;
}

/** Bar heights as percent of the mean (ranked-features panel). */
export function rankedBars(values: number[]): number[] {
  const mean = values.reduce((a, b) => a + b, 0) / values.length;
  if (mean === 0) return values.map(() => 0);
  return values.map((v) => (100 * v) / mean);
}

export function drawScatter(
  ctx: CanvasRenderingContext2D,
  positions: Array<[number, number]>,
  coloring: NodeColoring,
  camera: Camera,
  radius = 3,
): void {
  const { width, height } = ctx.canvas;
  ctx.clearRect(0, 0, width, height);
  const cx = width / 2;
  const cy = height / 2;
  for (let i = 0; i < positions.length; i++) {
    const [x, y] = positions[i];
    ctx.beginPath();
    ctx.fillStyle = coloring.colors[i];
    ctx.arc(
      cx + (x - camera.x) * camera.zoom,
      cy + (y - camera.y) * camera.zoom,
      radius,
      0,
      2 * Math.PI,
    );
    ctx.fill();
  }
}

/** Project bundle coordinates (2D or 3D) onto the drawing plane. */
export function projectCoords(coords: number[][]): Array<[number, number]> {
  return coords.map((c) => [c[0], c[1] ?? 0]);
}

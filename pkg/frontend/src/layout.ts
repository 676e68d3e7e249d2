/**
 * Client-side fallback layout for bundles without coordinates: a standard
 * force-directed embedding, computed once per graph and cached.
 */
import {
  forceCenter,
  forceLink,
  forceManyBody,
  forceSimulation,
} from "d3-force";

interface LayoutNode {
  index?: number;
  x?: number;
  y?: number;
}

const cache = new Map<string, Array<[number, number]>>();

export function forceLayout(
  n: number,
  edges: Array<[number, number]>,
  cacheKey?: string,
): Array<[number, number]> {
  if (cacheKey !== undefined) {
    const hit = cache.get(cacheKey);
    if (hit) return hit;
  }
  const nodes: LayoutNode[] = Array.from({ length: n }, () => ({}));
  const links = edges.map(([source, target]) => ({ source, target }));
  const sim = forceSimulation(nodes)
    .force("charge", forceManyBody().strength(-30))
    .force("link", forceLink(links).distance(30))
    .force("center", forceCenter(0, 0))
    .stop();
  sim.tick(300);
  const out: Array<[number, number]> = nodes.map((d) => [d.x ?? 0, d.y ?? 0]);
  if (cacheKey !== undefined) cache.set(cacheKey, out);
  return out;
}

/**
 * Browser entry point: wires the Explorer controller to the DOM.
 *
 * The whole view is reproducible from the URL query string; every state
 * change rewrites it.
 */
import { Api, API_BASE_URL } from "./api.js";
import { Explorer } from "./controller.js";
import { forceLayout } from "./layout.js";
import { PlaybackClock } from "./playback.js";
import { drawScatter, projectCoords, rankedBars } from "./render.js";
import { decodeViewState, type Overlay } from "./state.js";

const $ = <T extends HTMLElement>(id: string) =>
  document.getElementById(id) as T;

async function start(): Promise<void> {
  const api = new Api(API_BASE_URL);
  const explorer = new Explorer(api, decodeViewState(location.search.slice(1)));
  await explorer.load();

  const coordsResp = await api.coords();
  let positions: Array<[number, number]>;
  if (coordsResp) {
    positions = projectCoords(coordsResp.coords);
  } else {
    // no embedded coordinates: force layout, computed once and cached
    positions = forceLayout(explorer.summary!.n, [],
                            explorer.summary!.fingerprint);
  }

  const canvas = $<HTMLCanvasElement>("scatter");
  const ctx = canvas.getContext("2d")!;
  const banner = $<HTMLDivElement>("banner");
  const panel = $<HTMLDivElement>("panel");
  const mass = $<HTMLSpanElement>("mass");

  function render(): void {
    drawScatter(ctx, positions, explorer.coloring, explorer.state.camera);
    history.replaceState(null, "", "?" + explorer.urlQuery());
    banner.hidden = explorer.retryBanner === null;
    banner.textContent = explorer.retryBanner
      ? `${explorer.retryBanner} — paused`
      : "";
    mass.textContent =
      explorer.coloring.massCovered !== undefined
        ? `mass covered: ${explorer.coloring.massCovered.toFixed(3)}`
        : "";
    ($<HTMLInputElement>("t")).value = String(explorer.state.t);
    renderPanel();
  }

  function renderPanel(): void {
    const f = explorer.features;
    if (!f) {
      panel.textContent =
        explorer.state.overlay.kind === "communities"
          ? "features not loaded — retry the fetch"
          : "";
      return;
    }
    const bars = rankedBars(f.communities.map((c) => c.cheeger));
    panel.innerHTML = f.communities
      .map(
        (c, i) =>
          `<div>community ${c.community}: size ${c.size}, ` +
          `Cheeger ${c.cheeger.toFixed(3)} (${bars[i].toFixed(0)}% of mean), ` +
          `p_in → ${c.p_in_limit.toFixed(4)}</div>`,
      )
      .join("");
  }

  const clock = new PlaybackClock(explorer, render);

  $<HTMLInputElement>("source").onchange = async (e) => {
    const v = (e.target as HTMLInputElement).value;
    await explorer.setSource(v === "aggregate" ? "aggregate" : Number(v));
    render();
  };
  $<HTMLInputElement>("t").onchange = async (e) => {
    await explorer.setT(Number((e.target as HTMLInputElement).value));
    render();
  };
  $<HTMLSelectElement>("overlay").onchange = async (e) => {
    const kind = (e.target as HTMLSelectElement).value;
    const overlay: Overlay =
      kind === "communities"
        ? { kind, k: Number($<HTMLInputElement>("k").value) }
        : kind === "centrality"
          ? { kind, measure: $<HTMLSelectElement>("measure").value }
          : { kind: kind as "field" | "aggregate" };
    await explorer.setOverlay(overlay);
    render();
  };
  $<HTMLButtonElement>("play").onclick = () => {
    explorer.state.playbackRate = Number($<HTMLInputElement>("rate").value);
    clock.start();
  };
  $<HTMLButtonElement>("pause").onclick = () => {
    explorer.state.playbackRate = 0;
    clock.stop();
    render();
  };
  $<HTMLButtonElement>("retry").onclick = async () => {
    await explorer.retry();
    render();
    clock.start();
  };

  render();
}

void start();

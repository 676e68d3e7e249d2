/**
 * Playback clock: drives Explorer.tick() at the ViewState's playback rate.
 * Ticks are skipped while a previous tick is still awaiting the API, so at
 * most one field request is in flight.
 */
import type { Explorer } from "./controller.js";

export class PlaybackClock {
  private timer: ReturnType<typeof setInterval> | null = null;
  private busy = false;

  constructor(
    private explorer: Explorer,
    private onFrame: () => void,
  ) {}

  start(): void {
    this.stop();
    const rate = this.explorer.state.playbackRate;
    if (rate <= 0) return;
    this.timer = setInterval(() => void this.frame(), 1000 / rate);
  }

  stop(): void {
    if (this.timer !== null) clearInterval(this.timer);
    this.timer = null;
  }

  private async frame(): Promise<void> {
    if (this.busy) return;
    this.busy = true;
    try {
      await this.explorer.tick();
      this.onFrame();
      if (this.explorer.retryBanner !== null) this.stop();
    } finally {
      this.busy = false;
    }
  }
}

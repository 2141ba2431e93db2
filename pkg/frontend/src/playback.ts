/**
 * Timed sign-plan playback.
 *
 * A plan is an ordered list of GIF cards (matched phrases) and letter
 * cards (spelled tokens). Letter cards hold for exactly the duration the
 * plan gives them (the service uses 1 s per letter); GIF cards hold for a
 * configurable display time since the wire format does not carry GIF
 * length. Rendering is delegated to a callback so this module stays free
 * of DOM and trivially testable under fake timers.
 */

import { PlanItem, SignPlan } from "./protocol.js";

export type Card =
  | { kind: "gif"; assetId: string; phrase: string; src: string | null }
  | { kind: "letter"; character: string };

export interface PlayerOptions {
  /** How long a GIF card stays up, ms. */
  gifMs?: number;
  /** Maps an asset id to a URL; return null for a missing asset (the
   * player shows a placeholder and keeps going). */
  resolveAsset?: (assetId: string) => string | null;
  onCard?: (card: Card, index: number) => void;
  onDone?: (terminal: boolean) => void;
}

export const DEFAULT_GIF_MS = 2000;

export class PlanPlayer {
  private timer: ReturnType<typeof setTimeout> | null = null;
  private finish: (() => void) | null = null;
  private stopped = false;
  playing = false;

  constructor(private opts: PlayerOptions = {}) {}

  /** Play a plan to the end; resolves when the last card has expired or
   * stop() was called. Rejects nothing: a malformed item just ends play. */
  play(plan: SignPlan): Promise<void> {
    this.stop(); // restarting with a new plan cancels the old one
    this.stopped = false;
    this.playing = true;
    return new Promise((resolve) => {
      this.finish = resolve;
      const step = (index: number) => {
        if (this.stopped || index >= plan.items.length) {
          this.playing = false;
          this.timer = null;
          this.finish = null;
          if (!this.stopped) this.opts.onDone?.(plan.terminal);
          resolve();
          return;
        }
        const item = plan.items[index];
        const card = this.toCard(item);
        this.opts.onCard?.(card, index);
        this.timer = setTimeout(() => step(index + 1), this.holdMs(item));
      };
      step(0);
    });
  }

  /** Cancel playback; queued cards are never rendered. */
  stop(): void {
    this.stopped = true;
    this.playing = false;
    if (this.timer !== null) {
      clearTimeout(this.timer);
      this.timer = null;
    }
    if (this.finish !== null) {
      const resolve = this.finish;
      this.finish = null;
      resolve(); // the interrupted play() promise must not hang forever
    }
  }

  private toCard(item: PlanItem): Card {
    if (item.kind === "gif") {
      const src = this.opts.resolveAsset ? this.opts.resolveAsset(item.asset_id) : item.asset_id;
      return { kind: "gif", assetId: item.asset_id, phrase: item.source_phrase, src };
    }
    return { kind: "letter", character: item.character };
  }

  private holdMs(item: PlanItem): number {
    if (item.kind === "letter") return item.duration * 1000;
    return this.opts.gifMs ?? DEFAULT_GIF_MS;
  }
}

/** Total wall time a plan will occupy, ms. */
export function planDurationMs(plan: SignPlan, gifMs: number = DEFAULT_GIF_MS): number {
  let total = 0;
  for (const item of plan.items) total += item.kind === "letter" ? item.duration * 1000 : gifMs;
  return total;
}

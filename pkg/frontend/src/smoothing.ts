/**
 * Majority-vote label smoothing over a rolling window.
 *
 * The service classifies every frame independently, so the raw label can
 * flicker between visually close signs. The display smooths over the last
 * N frames; the raw stream is kept verbatim elsewhere (debug pane), this
 * class only decides what the big label shows.
 */

export const DEFAULT_WINDOW = 5;

export class MajorityVote {
  private window: string[] = [];

  constructor(readonly size: number = DEFAULT_WINDOW) {
    if (!Number.isInteger(size) || size < 1) throw new Error(`window size must be a positive integer, got ${size}`);
  }

  /** Record one raw label and return the smoothed one. */
  push(label: string): string {
    this.window.push(label);
    if (this.window.length > this.size) this.window.shift();
    return this.current();
  }

  /** Majority label of the window; ties go to the most recently seen. */
  current(): string {
    const counts = new Map<string, number>();
    for (const label of this.window) counts.set(label, (counts.get(label) ?? 0) + 1);
    let best = "";
    let bestCount = 0;
    for (let i = this.window.length - 1; i >= 0; i--) {
      const label = this.window[i];
      const n = counts.get(label)!;
      if (n > bestCount) {
        best = label;
        bestCount = n;
      }
    }
    return best;
  }

  reset(): void {
    this.window = [];
  }

  get filled(): boolean {
    return this.window.length === this.size;
  }
}

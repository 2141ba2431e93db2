/**
 * Session state behind the UI: raw prediction transcript, smoothed display
 * label, spelled-text buffer.
 *
 * Invariant: the displayed label always equals the label of some received
 * PredictionMessage (smoothing picks among received labels, it never
 * fabricates one), and the raw transcript is untouched by smoothing.
 */

import { PredictionMessage } from "./protocol.js";
import { DEFAULT_WINDOW, MajorityVote } from "./smoothing.js";

const TRANSCRIPT_CAP = 512; // enough for the debug pane, bounded for memory

export interface DisplayState {
  rawLabel: string;
  rawConfidence: number;
  smoothedLabel: string;
  seq: number;
}

export class UiSession {
  readonly transcript: PredictionMessage[] = [];
  private vote: MajorityVote;
  private last: PredictionMessage | null = null;
  spelled = "";

  constructor(windowSize: number = DEFAULT_WINDOW) {
    this.vote = new MajorityVote(windowSize);
  }

  accept(msg: PredictionMessage): DisplayState {
    this.transcript.push(msg);
    if (this.transcript.length > TRANSCRIPT_CAP) this.transcript.shift();
    this.last = msg;
    const smoothed = this.vote.push(msg.label);
    return {
      rawLabel: msg.label,
      rawConfidence: msg.confidence,
      smoothedLabel: smoothed,
      seq: msg.seq,
    };
  }

  /** Append the current smoothed label to the spelled-text buffer. */
  commit(): string {
    if (this.last !== null) this.spelled += this.vote.current();
    return this.spelled;
  }

  clearSpelled(): void {
    this.spelled = "";
  }

  /** Hand left the view: smoothing restarts, transcript stays. */
  idle(): void {
    this.vote.reset();
    this.last = null;
  }
}

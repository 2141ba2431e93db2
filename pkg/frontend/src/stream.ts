/**
 * Frame streaming against the service websocket.
 *
 * The server answers strictly one reply per frame, so the streamer keeps
 * at most one frame in flight: a new frame is sent only after the previous
 * reply arrived (or timed out), and never faster than the configured pace.
 * The tracker offers hands at whatever rate the camera runs; the streamer
 * decides what actually goes on the wire. No hands in view means nothing
 * is sent.
 */

import {
  EncodeOptions,
  PredictionMessage,
  TrackedHand,
  encodeFrame,
  isPrediction,
  parseReply,
} from "./protocol.js";

/** The bit of WebSocket the streamer uses; tests plug in a stub. */
export interface FrameTransport {
  send(data: string): void;
}

export interface StreamerOptions {
  /** Upper bound on send rate, frames per second. */
  fps?: number;
  /** Give up on a reply after this long and free the slot, ms. */
  replyTimeoutMs?: number;
  encode?: EncodeOptions;
  onPrediction?: (msg: PredictionMessage) => void;
  onServiceError?: (error: string, seq?: number) => void;
  /** Injectable for tests; defaults to Date.now. */
  now?: () => number;
}

export const DEFAULT_FPS = 15;
export const DEFAULT_REPLY_TIMEOUT_MS = 2000;

export class FrameStreamer {
  private seq = 0;
  private inFlightSeq: number | null = null;
  private sentAt = 0;
  private lastSendAt = -Infinity;
  private sendTimes: number[] = [];
  sentCount = 0;

  constructor(private transport: FrameTransport, private opts: StreamerOptions = {}) {}

  private get minIntervalMs(): number {
    return 1000 / (this.opts.fps ?? DEFAULT_FPS);
  }

  private get now(): number {
    return (this.opts.now ?? Date.now)();
  }

  /**
   * Offer the current tracker output; returns the seq sent, or null if
   * this offer was skipped (no hands, slot busy, or pacing).
   */
  offerHands(hands: TrackedHand[] | null): number | null {
    const t = this.now;
    if (this.inFlightSeq !== null && t - this.sentAt >= (this.opts.replyTimeoutMs ?? DEFAULT_REPLY_TIMEOUT_MS)) {
      this.inFlightSeq = null; // reply lost; do not stall the stream forever
    }
    if (!hands || hands.length === 0) return null;
    if (this.inFlightSeq !== null) return null;
    if (t - this.lastSendAt < this.minIntervalMs) return null;
    const msg = encodeFrame(this.seq, hands, this.opts.encode);
    this.transport.send(JSON.stringify(msg));
    this.inFlightSeq = this.seq;
    this.sentAt = t;
    this.lastSendAt = t;
    this.seq += 1;
    this.sentCount += 1;
    this.sendTimes.push(t);
    if (this.sendTimes.length > 64) this.sendTimes.shift();
    return msg.seq;
  }

  /** Wire this to the socket's message event. */
  handleReply(raw: string): void {
    const reply = parseReply(raw);
    if (isPrediction(reply)) {
      if (reply.seq === this.inFlightSeq) this.inFlightSeq = null;
      this.opts.onPrediction?.(reply);
      return;
    }
    // the server echoes seq on validation errors when it can parse one
    if (reply.seq === undefined || reply.seq === this.inFlightSeq) this.inFlightSeq = null;
    this.opts.onServiceError?.(reply.error, reply.seq);
  }

  /** Achieved send rate over the recent window, frames per second. */
  measuredFps(): number {
    if (this.sendTimes.length < 2) return 0;
    const span = this.sendTimes[this.sendTimes.length - 1] - this.sendTimes[0];
    return span > 0 ? ((this.sendTimes.length - 1) * 1000) / span : 0;
  }

  reset(): void {
    this.seq = 0;
    this.inFlightSeq = null;
    this.lastSendAt = -Infinity;
    this.sendTimes = [];
    this.sentCount = 0;
  }
}

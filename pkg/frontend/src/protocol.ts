/**
 * JSON schemas the service speaks, plus frame encoding.
 *
 * The UI never invents fields: everything here mirrors the server's
 * pydantic models one to one, so a payload that typechecks also validates.
 */

export type Point3 = [number, number, number];

/** One tracked hand as it comes out of the in-browser tracker. */
export interface TrackedHand {
  points: Point3[]; // 21 keypoints, normalized image coords
  handedness?: "left" | "right";
}

export interface FrameMessage {
  seq: number;
  left?: Point3[] | null;
  right?: Point3[] | null;
}

export interface PredictionMessage {
  seq: number;
  label: string;
  confidence: number;
  top_k: [string, number][];
}

export interface ErrorMessage {
  error: string;
  seq?: number;
}

export type StreamReply = PredictionMessage | ErrorMessage;

export type PlanItem =
  | { kind: "gif"; asset_id: string; source_phrase: string }
  | { kind: "letter"; character: string; duration: number };

export interface SignPlan {
  items: PlanItem[];
  terminal: boolean;
}

export interface SpeechSegment {
  text: string;
  word_count: number;
  estimated_duration: number;
  pause_after: number;
}

export interface ContentBundle {
  request: { language: string; topic: string };
  status: string;
  items: {
    article: { title: string; content: string; date: string };
    summary: string;
    speech_plan: { language: string; segments: SpeechSegment[]; total_duration: number };
  }[];
}

export const LANDMARKS_PER_HAND = 21;

/**
 * Same slot rule as the server's feature extractor: reported handedness
 * wins; otherwise the hand with the smaller mean x goes in the left slot.
 */
export function assignSlots(hands: TrackedHand[]): { left: TrackedHand | null; right: TrackedHand | null } {
  const out: { left: TrackedHand | null; right: TrackedHand | null } = { left: null, right: null };
  const unplaced: TrackedHand[] = [];
  for (const hand of hands.slice(0, 2)) {
    if (hand.handedness === "left" && out.left === null) out.left = hand;
    else if (hand.handedness === "right" && out.right === null) out.right = hand;
    else unplaced.push(hand);
  }
  if (unplaced.length === 2) {
    const [a, b] = unplaced;
    const [first, second] = meanX(a) <= meanX(b) ? [a, b] : [b, a];
    out.left = first;
    out.right = second;
  } else if (unplaced.length === 1) {
    const hand = unplaced[0];
    if (out.left === null && out.right === null) {
      // lone unlabeled hand: slotted by which side of x=0.5 it falls on,
      // exactly as the server does, so training and live input agree
      if (meanX(hand) < 0.5) out.left = hand;
      else out.right = hand;
    } else if (out.left === null) out.left = hand;
    else out.right = hand;
  }
  return out;
}

function meanX(hand: TrackedHand): number {
  let s = 0;
  for (const p of hand.points) s += p[0];
  return s / hand.points.length;
}

export interface EncodeOptions {
  /** Drop the z coordinate; trackers disagree about its scale. */
  zeroZ?: boolean;
}

export function encodeFrame(seq: number, hands: TrackedHand[], opts: EncodeOptions = {}): FrameMessage {
  if (!Number.isInteger(seq) || seq < 0) throw new Error(`seq must be a non-negative integer, got ${seq}`);
  const slots = assignSlots(hands);
  const msg: FrameMessage = { seq };
  if (slots.left) msg.left = handPoints(slots.left, opts);
  if (slots.right) msg.right = handPoints(slots.right, opts);
  return msg;
}

function handPoints(hand: TrackedHand, opts: EncodeOptions): Point3[] {
  if (hand.points.length !== LANDMARKS_PER_HAND) {
    throw new Error(`expected ${LANDMARKS_PER_HAND} keypoints, got ${hand.points.length}`);
  }
  return hand.points.map((p) => [p[0], p[1], opts.zeroZ ? 0 : p[2]]);
}

export function parseReply(raw: string): StreamReply {
  let data: unknown;
  try {
    data = JSON.parse(raw);
  } catch {
    return { error: "unparseable reply from service" };
  }
  if (typeof data !== "object" || data === null) return { error: "non-object reply from service" };
  const obj = data as Record<string, unknown>;
  if (typeof obj.error === "string") {
    const err: ErrorMessage = { error: obj.error };
    if (typeof obj.seq === "number") err.seq = obj.seq;
    return err;
  }
  if (typeof obj.seq === "number" && typeof obj.label === "string" && typeof obj.confidence === "number") {
    return obj as unknown as PredictionMessage;
  }
  return { error: "reply missing prediction fields" };
}

export function isPrediction(reply: StreamReply): reply is PredictionMessage {
  return (reply as PredictionMessage).label !== undefined;
}

/**
 * Webcam hand tracking via MediaPipe Hands, loaded from the CDN at runtime
 * so the build needs no binary assets. Everything downstream only sees
 * TrackedHand[], so swapping the tracker means touching this file alone.
 */

import { Point3, TrackedHand } from "./protocol.js";

// Minimal surface of the CDN bundle; it attaches `Hands` to the window.
interface MpResults {
  multiHandLandmarks?: { x: number; y: number; z: number }[][];
  multiHandedness?: { label: string }[];
  image: CanvasImageSource;
}
interface MpHands {
  setOptions(o: Record<string, unknown>): void;
  onResults(cb: (r: MpResults) => void): void;
  send(i: { image: HTMLVideoElement }): Promise<void>;
}
declare global {
  interface Window {
    Hands?: new (cfg: { locateFile: (f: string) => string }) => MpHands;
  }
}

const CDN = "https://cdn.jsdelivr.net/npm/@mediapipe/hands";

export interface TrackerOptions {
  video: HTMLVideoElement;
  /** Called once per processed frame; empty array when no hand is visible. */
  onHands: (hands: TrackedHand[], results: MpResults) => void;
  onStatus?: (status: string) => void;
}

async function loadScript(url: string): Promise<void> {
  await new Promise<void>((resolve, reject) => {
    const tag = document.createElement("script");
    tag.src = url;
    tag.onload = () => resolve();
    tag.onerror = () => reject(new Error(`failed to load ${url}`));
    document.head.appendChild(tag);
  });
}

export function resultsToHands(results: MpResults): TrackedHand[] {
  const hands: TrackedHand[] = [];
  const landmarks = results.multiHandLandmarks ?? [];
  for (let i = 0; i < landmarks.length; i++) {
    const points: Point3[] = landmarks[i].map((p) => [p.x, p.y, p.z]);
    const label = results.multiHandedness?.[i]?.label?.toLowerCase();
    const hand: TrackedHand = { points };
    if (label === "left" || label === "right") hand.handedness = label;
    hands.push(hand);
  }
  return hands;
}

export async function startTracker(opts: TrackerOptions): Promise<void> {
  opts.onStatus?.("loading hand tracker...");
  if (!window.Hands) await loadScript(`${CDN}/hands.js`);
  if (!window.Hands) throw new Error("hand tracker failed to initialize");

  const hands = new window.Hands({ locateFile: (f) => `${CDN}/${f}` });
  hands.setOptions({
    maxNumHands: 2,
    modelComplexity: 1,
    minDetectionConfidence: 0.7,
    minTrackingConfidence: 0.5,
    selfieMode: true, // mirrored view; handedness labels already account for it
  });
  hands.onResults((results) => opts.onHands(resultsToHands(results), results));

  opts.onStatus?.("requesting camera...");
  let stream: MediaStream;
  try {
    stream = await navigator.mediaDevices.getUserMedia({
      video: { facingMode: "user", width: 640, height: 480 },
    });
  } catch (err) {
    opts.onStatus?.("camera unavailable: " + (err instanceof Error ? err.message : String(err)));
    throw err;
  }
  opts.video.srcObject = stream;
  await opts.video.play();
  opts.onStatus?.("tracking");

  const pump = async () => {
    if (opts.video.readyState >= 2) await hands.send({ image: opts.video });
    requestAnimationFrame(pump);
  };
  requestAnimationFrame(pump);
}

import { describe, expect, it } from "vitest";

import { PredictionMessage } from "../src/protocol.js";
import { UiSession } from "../src/session.js";

function msg(seq: number, label: string, confidence = 0.9): PredictionMessage {
  return { seq, label, confidence, top_k: [[label, confidence]] };
}

describe("UiSession", () => {
  it("raw display always equals the service label", () => {
    const session = new UiSession();
    for (let i = 0; i < 20; i++) {
      const label = "ABCDE"[i % 5];
      const view = session.accept(msg(i, label));
      expect(view.rawLabel).toBe(label);
      expect(view.seq).toBe(i);
    }
  });

  it("smoothing changes the display, never the transcript", () => {
    const session = new UiSession(5);
    const labels = ["A", "A", "B", "A", "A"];
    const views = labels.map((l, i) => session.accept(msg(i, l)));
    // the lone B is smoothed away on screen...
    expect(views[2].smoothedLabel).toBe("A");
    // ...but the debug transcript keeps the raw sequence verbatim
    expect(session.transcript.map((m) => m.label)).toEqual(labels);
  });

  it("smoothed label is always one of the received labels", () => {
    const session = new UiSession(5);
    const seen = new Set<string>();
    for (let i = 0; i < 50; i++) {
      const label = "XYZ"[i % 3];
      seen.add(label);
      const view = session.accept(msg(i, label));
      expect(seen.has(view.smoothedLabel)).toBe(true);
    }
  });

  it("commit appends the smoothed label to the spelled buffer", () => {
    const session = new UiSession(3);
    for (let i = 0; i < 3; i++) session.accept(msg(i, "H"));
    session.commit();
    for (let i = 3; i < 6; i++) session.accept(msg(i, "I"));
    session.commit();
    expect(session.spelled).toBe("HI");
    session.clearSpelled();
    expect(session.spelled).toBe("");
  });

  it("commit with nothing received does nothing", () => {
    const session = new UiSession();
    expect(session.commit()).toBe("");
  });

  it("idle restarts smoothing but keeps the transcript", () => {
    const session = new UiSession(5);
    for (let i = 0; i < 5; i++) session.accept(msg(i, "A"));
    session.idle();
    const view = session.accept(msg(5, "B"));
    expect(view.smoothedLabel).toBe("B"); // not outvoted by the stale A's
    expect(session.transcript).toHaveLength(6);
  });

  it("caps the transcript so long sessions stay bounded", () => {
    const session = new UiSession();
    for (let i = 0; i < 1000; i++) session.accept(msg(i, "A"));
    expect(session.transcript.length).toBeLessThanOrEqual(512);
    expect(session.transcript[session.transcript.length - 1].seq).toBe(999);
  });
});

import { describe, expect, it } from "vitest";

import { MajorityVote } from "../src/smoothing.js";

describe("MajorityVote", () => {
  it("returns the majority of the last 5 labels", () => {
    const vote = new MajorityVote(5);
    for (const label of ["A", "A", "B", "A", "B"]) vote.push(label);
    expect(vote.current()).toBe("A");
  });

  it("suppresses a single-frame flicker", () => {
    const vote = new MajorityVote(5);
    const shown = ["A", "A", "A", "X", "A"].map((l) => vote.push(l));
    expect(shown[3]).toBe("A"); // the X never reaches the display
    expect(shown[4]).toBe("A");
  });

  it("slides: old labels age out of the window", () => {
    const vote = new MajorityVote(3);
    for (const label of ["A", "A", "A", "B", "B"]) vote.push(label);
    expect(vote.current()).toBe("B"); // window is [A,B,B]
  });

  it("breaks ties toward the most recent label", () => {
    const vote = new MajorityVote(4);
    for (const label of ["A", "A", "B", "B"]) vote.push(label);
    expect(vote.current()).toBe("B");
  });

  it("works before the window is full", () => {
    const vote = new MajorityVote(5);
    expect(vote.push("C")).toBe("C");
    expect(vote.filled).toBe(false);
  });

  it("reset forgets history", () => {
    const vote = new MajorityVote(5);
    for (const label of ["A", "A", "A"]) vote.push(label);
    vote.reset();
    expect(vote.push("B")).toBe("B");
  });

  it("rejects a non-positive window", () => {
    expect(() => new MajorityVote(0)).toThrow(/window/);
    expect(() => new MajorityVote(2.5)).toThrow(/window/);
  });
});

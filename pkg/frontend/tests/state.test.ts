import { describe, expect, it } from "vitest";

import type { CandidateView, SessionResponse } from "../src/api";
import { AppState } from "../src/state";

function candidates(n: number, prefix = "g"): CandidateView[] {
  return Array.from({ length: n }, (_, slot) => ({
    slot,
    expr: `${prefix}${slot}`,
    sexpr: `(${prefix}${slot})`,
    glsl: `// shader ${prefix}${slot}`,
    dynamic: slot % 2 === 0,
  }));
}

function response(n: number, generation = 0, id = "abc"): SessionResponse {
  return { session_id: id, generation, candidates: candidates(n, `g${generation}-`) };
}

describe("AppState", () => {
  it("shows one cell per candidate after start", () => {
    const state = new AppState();
    state.startSession(response(9));
    expect(state.candidates).toHaveLength(9);
    expect(state.hasSession).toBe(true);
    expect(state.selectedSlots()).toEqual([]);
  });

  it("toggles selection on and off, multi-select allowed", () => {
    const state = new AppState();
    state.startSession(response(9));
    expect(state.toggleSelect(2)).toBe(true);
    expect(state.toggleSelect(5)).toBe(true);
    expect(state.selectedSlots()).toEqual([2, 5]);
    state.toggleSelect(2);
    expect(state.selectedSlots()).toEqual([5]);
    expect(state.isSelected(5)).toBe(true);
    expect(state.isSelected(2)).toBe(false);
  });

  it("ignores selection outside the grid or while a request is pending", () => {
    const state = new AppState();
    state.startSession(response(9));
    expect(state.toggleSelect(9)).toBe(false);
    expect(state.toggleSelect(-1)).toBe(false);
    state.busy = true;
    expect(state.toggleSelect(0)).toBe(false);
    expect(state.selectedSlots()).toEqual([]);
  });

  it("applying a step response replaces candidates and clears selection", () => {
    const state = new AppState();
    state.startSession(response(9));
    state.toggleSelect(1);
    state.toggleSelect(4);
    const before = state.candidates.map((c) => c.sexpr);
    state.applyCandidates(response(9, 1));
    expect(state.generation).toBe(1);
    expect(state.selectedSlots()).toEqual([]);
    expect(state.candidates.map((c) => c.sexpr)).not.toEqual(before);
    expect(state.candidates).toHaveLength(9);
  });

  it("restarting discards the previous session", () => {
    const state = new AppState();
    state.startSession(response(9, 0, "first"));
    state.toggleSelect(3);
    state.applyCandidates(response(9, 5));
    state.startSession(response(9, 0, "second"));
    expect(state.sessionId).toBe("second");
    expect(state.generation).toBe(0);
    expect(state.selectedSlots()).toEqual([]);
  });

  it("returns selected slots in ascending order", () => {
    const state = new AppState();
    state.startSession(response(9));
    state.toggleSelect(7);
    state.toggleSelect(0);
    state.toggleSelect(3);
    expect(state.selectedSlots()).toEqual([0, 3, 7]);
  });
});

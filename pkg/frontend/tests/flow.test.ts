// The interaction round the UI performs, minus the DOM: select two cells,
// step, and check that every shader is replaced and the marks are gone.

import { describe, expect, it } from "vitest";

import { ApiClient } from "../src/api";
import type { CandidateView } from "../src/api";
import { GridRenderer } from "../src/grid";
import { defaultMesh } from "../src/mesh";
import { AppState } from "../src/state";
import { FakeGL } from "./fake-gl";

function candidates(n: number, prefix: string): CandidateView[] {
  return Array.from({ length: n }, (_, slot) => ({
    slot,
    expr: `${prefix}${slot}`,
    sexpr: `(${prefix}${slot})`,
    glsl: `// vertex shader ${prefix}${slot}`,
    dynamic: slot === 0,
  }));
}

describe("select-and-step round", () => {
  it("sends the picks, replaces all nine shaders, clears the selection", async () => {
    const requests: { url: string; body: unknown }[] = [];
    const api = new ApiClient("", async (url, init) => {
      requests.push({ url, body: init?.body ? JSON.parse(init.body as string) : undefined });
      const payload = url.endsWith("/step")
        ? { generation: 1, candidates: candidates(9, "next") }
        : { session_id: "s1", generation: 0, candidates: candidates(9, "init") };
      return new Response(JSON.stringify(payload), { status: 200 });
    });

    const gl = new FakeGL();
    const grid = new GridRenderer(gl, () => {});
    grid.setMesh(defaultMesh());
    const state = new AppState();

    state.startSession(await api.createSession({ seed: 1 }));
    grid.setCandidates(state.candidates);
    expect(grid.cellCount).toBe(9);

    state.toggleSelect(2);
    state.toggleSelect(6);
    expect(state.selectedSlots()).toEqual([2, 6]);

    const programsBefore = gl.callsNamed("createProgram").length;
    state.applyCandidates(await api.step("s1", state.selectedSlots(), 1));
    grid.setCandidates(state.candidates);

    expect(requests[1].url).toBe("/api/sessions/s1/step");
    expect(requests[1].body).toEqual({ selected_slots: [2, 6], generations: 1 });
    expect(state.generation).toBe(1);
    expect(state.selectedSlots()).toEqual([]);
    expect(state.candidates.map((c) => c.expr)).toEqual(
      Array.from({ length: 9 }, (_, i) => `next${i}`),
    );
    expect(gl.callsNamed("createProgram")).toHaveLength(programsBefore + 9);
    expect(gl.deletedPrograms).toHaveLength(9);
  });
});

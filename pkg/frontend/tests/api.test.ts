import { describe, expect, it } from "vitest";

import { ApiClient, ApiError } from "../src/api";

interface Recorded {
  url: string;
  method?: string;
  body?: unknown;
}

function clientReturning(
  status: number,
  payload: unknown,
  log: Recorded[] = [],
): ApiClient {
  return new ApiClient("", async (url, init) => {
    log.push({
      url,
      method: init?.method,
      body: init?.body ? JSON.parse(init.body as string) : undefined,
    });
    return new Response(JSON.stringify(payload), {
      status,
      headers: { "content-type": "application/json" },
    });
  });
}

const SESSION_BODY = { session_id: "s1", generation: 0, candidates: [] };

describe("ApiClient", () => {
  it("creates sessions with parameter overrides", async () => {
    const log: Recorded[] = [];
    const api = clientReturning(200, SESSION_BODY, log);
    const body = await api.createSession({ seed: 42 });
    expect(body.session_id).toBe("s1");
    expect(log[0]).toEqual({
      url: "/api/sessions",
      method: "POST",
      body: { params: { seed: 42 } },
    });
  });

  it("steps with the selected slots and generation count", async () => {
    const log: Recorded[] = [];
    const api = clientReturning(200, { generation: 2, candidates: [] }, log);
    await api.step("s1", [0, 4], 2);
    expect(log[0]).toEqual({
      url: "/api/sessions/s1/step",
      method: "POST",
      body: { selected_slots: [0, 4], generations: 2 },
    });
  });

  it("saves and seeds through the session routes", async () => {
    const log: Recorded[] = [];
    const api = clientReturning(200, { generation: 1, candidates: [] }, log);
    await api.saveTransformation("s1", 3, "wave");
    await api.seed("s1", "t9");
    expect(log[0].url).toBe("/api/sessions/s1/save");
    expect(log[0].body).toEqual({ slot: 3, name: "wave" });
    expect(log[1].url).toBe("/api/sessions/s1/seed");
    expect(log[1].body).toEqual({ transformation_id: "t9" });
  });

  it("unwraps the service error body", async () => {
    const api = clientReturning(422, {
      error: "validation_error",
      detail: "subset_size must be an integer >= 1",
    });
    const failure = await api.createSession({ subset_size: 0 }).catch((e) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.status).toBe(422);
    expect(failure.code).toBe("validation_error");
    expect(failure.message).toMatch(/subset_size/);
  });

  it("survives a non-JSON error body", async () => {
    const api = new ApiClient("", async () => new Response("boom", { status: 500 }));
    const failure = await api.listModels().catch((e) => e);
    expect(failure).toBeInstanceOf(ApiError);
    expect(failure.status).toBe(500);
  });

  it("uploads and fetches models", async () => {
    const log: Recorded[] = [];
    const triangle = { name: "tri", vertices: [0, 0, 0, 1, 0, 0, 0, 1, 0], indices: [0, 1, 2] };
    const api = clientReturning(200, { id: "m1", ...triangle }, log);
    await api.uploadModel(triangle);
    await api.getModel("m1");
    expect(log[0]).toEqual({ url: "/api/models", method: "POST", body: triangle });
    expect(log[1].url).toBe("/api/models/m1");
    expect(log[1].method).toBe("GET");
  });
});

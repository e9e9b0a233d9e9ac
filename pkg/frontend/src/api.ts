// Typed client for the evolution service. The fetch implementation is
// injectable so tests can run without a network or a browser.

export interface CandidateView {
  slot: number;
  expr: string;
  sexpr: string;
  glsl: string;
  dynamic: boolean;
}

export interface SessionResponse {
  session_id?: string;
  generation: number;
  candidates: CandidateView[];
}

export interface TransformationRecord {
  id: string;
  name: string;
  expr: string;
  created_at: string;
  model_id: string | null;
}

export interface MeshPayload {
  id?: string;
  name: string;
  vertices: number[];
  indices: number[];
  normals?: number[] | null;
}

export interface SessionParams {
  population_size?: number;
  subset_size?: number;
  crossover_prob?: number;
  mutation_prob?: number;
  tournament_size?: number;
  seed?: number;
}

export class ApiError extends Error {
  constructor(
    readonly status: number,
    readonly code: string,
    detail: string,
  ) {
    super(detail);
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  private readonly fetchFn: FetchLike;

  constructor(
    private readonly base = "",
    fetchFn?: FetchLike,
  ) {
    this.fetchFn = fetchFn ?? ((input, init) => fetch(input, init));
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchFn(this.base + path, {
      method,
      headers: body !== undefined ? { "content-type": "application/json" } : undefined,
      body: body !== undefined ? JSON.stringify(body) : undefined,
    });
    if (!response.ok) {
      let code = "error";
      let detail = `${response.status}`;
      try {
        const doc = await response.json();
        if (typeof doc.error === "string") code = doc.error;
        if (typeof doc.detail === "string") detail = doc.detail;
      } catch {
        // non-JSON error body; keep the status text
      }
      throw new ApiError(response.status, code, detail);
    }
    return response.json() as Promise<T>;
  }

  createSession(params?: SessionParams): Promise<SessionResponse> {
    return this.request("POST", "/api/sessions", params ? { params } : {});
  }

  step(sessionId: string, selectedSlots: number[], generations = 1): Promise<SessionResponse> {
    return this.request("POST", `/api/sessions/${sessionId}/step`, {
      selected_slots: selectedSlots,
      generations,
    });
  }

  saveTransformation(sessionId: string, slot: number, name: string): Promise<TransformationRecord> {
    return this.request("POST", `/api/sessions/${sessionId}/save`, { slot, name });
  }

  seed(sessionId: string, transformationId: string): Promise<SessionResponse> {
    return this.request("POST", `/api/sessions/${sessionId}/seed`, {
      transformation_id: transformationId,
    });
  }

  listTransformations(): Promise<TransformationRecord[]> {
    return this.request("GET", "/api/transformations");
  }

  uploadModel(model: MeshPayload): Promise<MeshPayload> {
    return this.request("POST", "/api/models", model);
  }

  listModels(): Promise<MeshPayload[]> {
    return this.request("GET", "/api/models");
  }

  getModel(modelId: string): Promise<MeshPayload> {
    return this.request("GET", `/api/models/${modelId}`);
  }
}

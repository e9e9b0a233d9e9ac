// Mesh handling: client-side validation of uploaded model JSON (the same
// rules the server enforces, so bad files fail fast with the scene
// untouched) and the procedural fallback model shown at startup.

export interface MeshData {
  name: string;
  vertices: number[];
  indices: number[];
  normals?: number[] | null;
}

export class MeshValidationError extends Error {}

export function validateMesh(doc: unknown): MeshData {
  if (typeof doc !== "object" || doc === null || Array.isArray(doc)) {
    throw new MeshValidationError("model must be a JSON object");
  }
  const record = doc as Record<string, unknown>;
  const name = record.name;
  if (typeof name !== "string" || name.length === 0 || name.length > 128) {
    throw new MeshValidationError("name must be a non-empty string of at most 128 characters");
  }
  const vertices = record.vertices;
  if (!Array.isArray(vertices) || vertices.length === 0 || vertices.length % 3 !== 0) {
    throw new MeshValidationError("vertices length must be a positive multiple of 3");
  }
  if (!vertices.every((v) => typeof v === "number" && Number.isFinite(v))) {
    throw new MeshValidationError("vertex coordinates must be finite numbers");
  }
  const indices = record.indices;
  if (!Array.isArray(indices) || indices.length === 0 || indices.length % 3 !== 0) {
    throw new MeshValidationError("indices length must be a positive multiple of 3 (triangles)");
  }
  const vertexCount = vertices.length / 3;
  for (const i of indices) {
    if (typeof i !== "number" || !Number.isInteger(i) || i < 0) {
      throw new MeshValidationError("indices must be non-negative integers");
    }
    if (i >= vertexCount) {
      throw new MeshValidationError(`index ${i} out of range for ${vertexCount} vertices`);
    }
  }
  const normals = record.normals ?? null;
  if (normals !== null) {
    if (!Array.isArray(normals) || normals.length !== vertices.length) {
      throw new MeshValidationError("normals length must equal vertices length");
    }
    if (!normals.every((v) => typeof v === "number" && Number.isFinite(v))) {
      throw new MeshValidationError("normal components must be finite numbers");
    }
  }
  return {
    name,
    vertices: vertices as number[],
    indices: indices as number[],
    normals: normals as number[] | null,
  };
}

function appendSphere(
  vertices: number[],
  indices: number[],
  centerY: number,
  radius: number,
  rings: number,
  segments: number,
): void {
  const base = vertices.length / 3;
  for (let r = 0; r <= rings; r++) {
    const phi = (r / rings) * Math.PI;
    for (let s = 0; s <= segments; s++) {
      const theta = (s / segments) * 2 * Math.PI;
      vertices.push(
        radius * Math.sin(phi) * Math.cos(theta),
        centerY + radius * Math.cos(phi),
        radius * Math.sin(phi) * Math.sin(theta),
      );
    }
  }
  for (let r = 0; r < rings; r++) {
    for (let s = 0; s < segments; s++) {
      const a = base + r * (segments + 1) + s;
      const b = a + segments + 1;
      indices.push(a, b, a + 1, a + 1, b, b + 1);
    }
  }
}

/** Stacked-spheres figure used until a model is uploaded or browsed. */
export function defaultMesh(): MeshData {
  const vertices: number[] = [];
  const indices: number[] = [];
  appendSphere(vertices, indices, -0.45, 0.55, 16, 24); // body
  appendSphere(vertices, indices, 0.25, 0.4, 14, 20); // torso
  appendSphere(vertices, indices, 0.75, 0.25, 12, 16); // head
  return { name: "figure", vertices, indices };
}

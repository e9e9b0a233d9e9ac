import { describe, expect, it } from "vitest";

import { MeshValidationError, defaultMesh, validateMesh } from "../src/mesh";

const TRIANGLE = {
  name: "tri",
  vertices: [0, 0, 0, 1, 0, 0, 0, 1, 0],
  indices: [0, 1, 2],
};

describe("validateMesh", () => {
  it("accepts the minimal triangle", () => {
    const mesh = validateMesh(TRIANGLE);
    expect(mesh.vertices).toHaveLength(9);
    expect(mesh.indices).toEqual([0, 1, 2]);
  });

  it.each([
    ["not an object", null, "JSON object"],
    ["an array", [1, 2, 3], "JSON object"],
    ["missing name", { ...TRIANGLE, name: "" }, "name"],
    ["bad vertex count", { ...TRIANGLE, vertices: [0, 0, 0, 1, 0, 0, 0, 1] }, "multiple of 3"],
    ["non-finite coordinate", { ...TRIANGLE, vertices: [0, 0, NaN, 1, 0, 0, 0, 1, 0] }, "finite"],
    ["no triangles", { ...TRIANGLE, indices: [] }, "triangles"],
    ["index out of range", { ...TRIANGLE, indices: [0, 1, 3] }, "out of range"],
    ["fractional index", { ...TRIANGLE, indices: [0, 1, 1.5] }, "integers"],
    ["negative index", { ...TRIANGLE, indices: [0, 1, -1] }, "integers"],
    ["normals length mismatch", { ...TRIANGLE, normals: [0, 0, 1] }, "normals"],
  ])("rejects %s", (_label, doc, fragment) => {
    expect(() => validateMesh(doc)).toThrowError(MeshValidationError);
    expect(() => validateMesh(doc)).toThrowError(new RegExp(fragment));
  });

  it("accepts matching normals", () => {
    const mesh = validateMesh({ ...TRIANGLE, normals: [0, 0, 1, 0, 0, 1, 0, 0, 1] });
    expect(mesh.normals).toHaveLength(9);
  });
});

describe("defaultMesh", () => {
  it("satisfies its own validation rules", () => {
    const mesh = validateMesh(defaultMesh());
    expect(mesh.vertices.length % 3).toBe(0);
    expect(mesh.indices.length % 3).toBe(0);
  });

  it("is a nontrivial figure", () => {
    const mesh = defaultMesh();
    expect(mesh.vertices.length / 3).toBeGreaterThan(300);
    expect(mesh.indices.length / 3).toBeGreaterThan(500);
  });
});

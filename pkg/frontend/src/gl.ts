// Thin WebGL helpers. Typed against a structural subset of the WebGL 1
// interface so the renderer can run against a recording fake in tests.

export interface GL {
  VERTEX_SHADER: number;
  FRAGMENT_SHADER: number;
  COMPILE_STATUS: number;
  LINK_STATUS: number;
  ARRAY_BUFFER: number;
  ELEMENT_ARRAY_BUFFER: number;
  STATIC_DRAW: number;
  TRIANGLES: number;
  UNSIGNED_SHORT: number;
  UNSIGNED_INT: number;
  FLOAT: number;
  DEPTH_TEST: number;
  SCISSOR_TEST: number;
  COLOR_BUFFER_BIT: number;
  DEPTH_BUFFER_BIT: number;

  createShader(type: number): object | null;
  shaderSource(shader: object, source: string): void;
  compileShader(shader: object): void;
  getShaderParameter(shader: object, pname: number): unknown;
  getShaderInfoLog(shader: object): string | null;
  deleteShader(shader: object): void;
  createProgram(): object | null;
  attachShader(program: object, shader: object): void;
  linkProgram(program: object): void;
  getProgramParameter(program: object, pname: number): unknown;
  getProgramInfoLog(program: object): string | null;
  deleteProgram(program: object): void;
  useProgram(program: object | null): void;
  getUniformLocation(program: object, name: string): object | null;
  getAttribLocation(program: object, name: string): number;
  uniform1f(location: object | null, x: number): void;
  uniformMatrix4fv(location: object | null, transpose: boolean, value: Float32Array): void;
  createBuffer(): object | null;
  bindBuffer(target: number, buffer: object | null): void;
  bufferData(target: number, data: ArrayBufferView, usage: number): void;
  deleteBuffer(buffer: object): void;
  enableVertexAttribArray(index: number): void;
  vertexAttribPointer(
    index: number,
    size: number,
    type: number,
    normalized: boolean,
    stride: number,
    offset: number,
  ): void;
  drawElements(mode: number, count: number, type: number, offset: number): void;
  viewport(x: number, y: number, width: number, height: number): void;
  scissor(x: number, y: number, width: number, height: number): void;
  enable(cap: number): void;
  clearColor(r: number, g: number, b: number, a: number): void;
  clear(mask: number): void;
}

export class ShaderCompileError extends Error {}

export function compileProgram(gl: GL, vertexSource: string, fragmentSource: string): object {
  const vertex = compileShader(gl, gl.VERTEX_SHADER, vertexSource);
  const fragment = compileShader(gl, gl.FRAGMENT_SHADER, fragmentSource);
  const program = gl.createProgram();
  if (!program) {
    throw new ShaderCompileError("could not allocate program");
  }
  gl.attachShader(program, vertex);
  gl.attachShader(program, fragment);
  gl.linkProgram(program);
  gl.deleteShader(vertex);
  gl.deleteShader(fragment);
  if (!gl.getProgramParameter(program, gl.LINK_STATUS)) {
    const log = gl.getProgramInfoLog(program) ?? "unknown link error";
    gl.deleteProgram(program);
    throw new ShaderCompileError(log);
  }
  return program;
}

function compileShader(gl: GL, type: number, source: string): object {
  const shader = gl.createShader(type);
  if (!shader) {
    throw new ShaderCompileError("could not allocate shader");
  }
  gl.shaderSource(shader, source);
  gl.compileShader(shader);
  if (!gl.getShaderParameter(shader, gl.COMPILE_STATUS)) {
    const log = gl.getShaderInfoLog(shader) ?? "unknown compile error";
    gl.deleteShader(shader);
    throw new ShaderCompileError(log);
  }
  return shader;
}

export interface MeshBuffers {
  position: object;
  index: object;
  indexCount: number;
}

export function uploadMesh(gl: GL, vertices: number[], indices: number[]): MeshBuffers {
  const position = gl.createBuffer();
  const index = gl.createBuffer();
  if (!position || !index) {
    throw new Error("could not allocate mesh buffers");
  }
  gl.bindBuffer(gl.ARRAY_BUFFER, position);
  gl.bufferData(gl.ARRAY_BUFFER, new Float32Array(vertices), gl.STATIC_DRAW);
  gl.bindBuffer(gl.ELEMENT_ARRAY_BUFFER, index);
  gl.bufferData(gl.ELEMENT_ARRAY_BUFFER, new Uint16Array(indices), gl.STATIC_DRAW);
  return { position, index, indexCount: indices.length };
}

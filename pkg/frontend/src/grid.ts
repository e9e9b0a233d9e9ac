// Nine scissored viewports on one canvas, one candidate shader per cell,
// all drawn with the same shared camera pose in the same frame.

import type { CandidateView } from "./api";
import { viewMatrix, type CameraPose } from "./camera";
import { compileProgram, uploadMesh, type GL, type MeshBuffers } from "./gl";
import { perspective } from "./mat4";
import type { MeshData } from "./mesh";

export const GRID_COLS = 3;
export const GRID_ROWS = 3;

// Depth-shaded flat color; candidate shaders only move vertices, so the
// fragment side is ours and fixed.
export const FRAGMENT_SOURCE = `precision mediump float;
void main() {
    float shade = clamp(1.2 - gl_FragCoord.z, 0.0, 1.0);
    gl_FragColor = vec4(vec3(0.35, 0.65, 0.9) * (0.25 + shade), 1.0);
}
`;

export interface CellRect {
  x: number;
  y: number;
  w: number;
  h: number;
}

/**
 * Scissor rectangle for a display slot. Slot 0 is the top-left cell of
 * the 3x3 grid; GL scissor coordinates have their origin at the bottom
 * left, hence the row flip.
 */
export function cellRect(slot: number, width: number, height: number): CellRect {
  const col = slot % GRID_COLS;
  const row = Math.floor(slot / GRID_COLS);
  const w = Math.floor(width / GRID_COLS);
  const h = Math.floor(height / GRID_ROWS);
  return { x: col * w, y: (GRID_ROWS - 1 - row) * h, w, h };
}

interface Cell {
  slot: number;
  program: object | null;
  dynamic: boolean;
  timeLocation: object | null;
  projectionLocation: object | null;
  modelViewLocation: object | null;
  positionLocation: number;
  error: string | null;
}

export class GridRenderer {
  private cells: Cell[] = [];
  private mesh: MeshBuffers | null = null;
  private onCellError: (slot: number, message: string) => void;

  constructor(
    private readonly gl: GL,
    onCellError?: (slot: number, message: string) => void,
  ) {
    this.onCellError = onCellError ?? ((slot, message) => {
      console.error(`shader for cell ${slot} failed to compile:`, message);
    });
    gl.enable(gl.DEPTH_TEST);
  }

  /**
   * Replace every cell's shader with the new candidates. The candidate
   * source compiles verbatim; a failing cell becomes an error placeholder
   * and never blocks the others. The time uniform is looked up (and later
   * bound) only for dynamic candidates.
   */
  setCandidates(candidates: CandidateView[]): void {
    const gl = this.gl;
    for (const cell of this.cells) {
      if (cell.program) {
        gl.deleteProgram(cell.program);
      }
    }
    this.cells = candidates.map((candidate) => {
      try {
        const program = compileProgram(gl, candidate.glsl, FRAGMENT_SOURCE);
        return {
          slot: candidate.slot,
          program,
          dynamic: candidate.dynamic,
          timeLocation: candidate.dynamic ? gl.getUniformLocation(program, "time") : null,
          projectionLocation: gl.getUniformLocation(program, "projectionMatrix"),
          modelViewLocation: gl.getUniformLocation(program, "modelViewMatrix"),
          positionLocation: gl.getAttribLocation(program, "position"),
          error: null,
        };
      } catch (error) {
        const message = error instanceof Error ? error.message : String(error);
        this.onCellError(candidate.slot, message);
        return {
          slot: candidate.slot,
          program: null,
          dynamic: candidate.dynamic,
          timeLocation: null,
          projectionLocation: null,
          modelViewLocation: null,
          positionLocation: -1,
          error: message,
        };
      }
    });
  }

  setMesh(mesh: MeshData): void {
    if (this.mesh) {
      this.gl.deleteBuffer(this.mesh.position);
      this.gl.deleteBuffer(this.mesh.index);
    }
    this.mesh = uploadMesh(this.gl, mesh.vertices, mesh.indices);
  }

  cellError(slot: number): string | null {
    return this.cells[slot]?.error ?? null;
  }

  get cellCount(): number {
    return this.cells.length;
  }

  /**
   * Draw every cell once with the same camera pose and time. One call
   * per animation frame keeps all nine viewports in lockstep.
   */
  draw(pose: CameraPose, timeSeconds: number, width: number, height: number): void {
    const gl = this.gl;
    if (!this.mesh || this.cells.length === 0) {
      gl.viewport(0, 0, width, height);
      gl.clearColor(0.08, 0.08, 0.1, 1.0);
      gl.clear(gl.COLOR_BUFFER_BIT | gl.DEPTH_BUFFER_BIT);
      return;
    }
    const view = viewMatrix(pose);
    gl.enable(gl.SCISSOR_TEST);
    for (const cell of this.cells) {
      const rect = cellRect(cell.slot, width, height);
      gl.viewport(rect.x, rect.y, rect.w, rect.h);
      gl.scissor(rect.x, rect.y, rect.w, rect.h);
      if (!cell.program) {
        gl.clearColor(0.25, 0.05, 0.05, 1.0);
        gl.clear(gl.COLOR_BUFFER_BIT | gl.DEPTH_BUFFER_BIT);
        continue;
      }
      gl.clearColor(0.08, 0.08, 0.1, 1.0);
      gl.clear(gl.COLOR_BUFFER_BIT | gl.DEPTH_BUFFER_BIT);
      gl.useProgram(cell.program);
      const projection = perspective(Math.PI / 4, rect.w / rect.h || 1, 0.1, 100);
      gl.uniformMatrix4fv(cell.projectionLocation, false, projection);
      gl.uniformMatrix4fv(cell.modelViewLocation, false, view);
      if (cell.timeLocation) {
        gl.uniform1f(cell.timeLocation, timeSeconds);
      }
      gl.bindBuffer(gl.ARRAY_BUFFER, this.mesh.position);
      gl.enableVertexAttribArray(cell.positionLocation);
      gl.vertexAttribPointer(cell.positionLocation, 3, gl.FLOAT, false, 0, 0);
      gl.bindBuffer(gl.ELEMENT_ARRAY_BUFFER, this.mesh.index);
      gl.drawElements(gl.TRIANGLES, this.mesh.indexCount, gl.UNSIGNED_SHORT, 0);
    }
  }
}

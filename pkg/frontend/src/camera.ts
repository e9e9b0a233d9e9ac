// One orbit pose shared by every viewport. The grid renderer reads this
// single object each frame, so per-cell camera divergence is impossible
// by construction: moving the camera moves all nine views at once.

import { lookAt, type Mat4 } from "./mat4";

export interface CameraPose {
  yaw: number;
  pitch: number;
  distance: number;
  targetX: number;
  targetY: number;
  targetZ: number;
}

const MIN_DISTANCE = 0.5;
const MAX_DISTANCE = 20;
const MAX_PITCH = Math.PI / 2 - 0.01;

export function defaultPose(): CameraPose {
  return { yaw: 0.6, pitch: 0.35, distance: 3.5, targetX: 0, targetY: 0, targetZ: 0 };
}

/** Mouse-drag orbit: dx/dy in pixels. */
export function orbit(pose: CameraPose, dx: number, dy: number): void {
  pose.yaw -= dx * 0.008;
  pose.pitch += dy * 0.008;
  pose.pitch = Math.min(MAX_PITCH, Math.max(-MAX_PITCH, pose.pitch));
}

/** Wheel zoom: positive delta moves away from the target. */
export function zoom(pose: CameraPose, delta: number): void {
  pose.distance *= Math.exp(delta * 0.001);
  pose.distance = Math.min(MAX_DISTANCE, Math.max(MIN_DISTANCE, pose.distance));
}

/** Keyboard pan: shifts the orbit target in the camera's screen plane. */
export function pan(pose: CameraPose, dx: number, dy: number): void {
  const scale = pose.distance * 0.1;
  const rightX = Math.cos(pose.yaw);
  const rightZ = -Math.sin(pose.yaw);
  pose.targetX += dx * scale * rightX;
  pose.targetZ += dx * scale * rightZ;
  pose.targetY += dy * scale;
}

export function eyePosition(pose: CameraPose): [number, number, number] {
  const cp = Math.cos(pose.pitch);
  return [
    pose.targetX + pose.distance * cp * Math.sin(pose.yaw),
    pose.targetY + pose.distance * Math.sin(pose.pitch),
    pose.targetZ + pose.distance * cp * Math.cos(pose.yaw),
  ];
}

export function viewMatrix(pose: CameraPose): Mat4 {
  return lookAt(
    eyePosition(pose),
    [pose.targetX, pose.targetY, pose.targetZ],
    [0, 1, 0],
  );
}

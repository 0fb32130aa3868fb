/** Orbitable voxel thumbnails on a plain 2D canvas.
 *
 * Orthographic projection with a yaw/pitch camera and painter's-algorithm
 * face sorting: every voxel contributes its three viewer-facing cube faces,
 * drawn back to front. Pure geometry lives in exported functions so it can
 * be unit-tested without a DOM.
 */

import { ColorMap, colorFor, shade } from "./colors.js";
import { Voxel } from "./types.js";

export interface Camera {
  yaw: number; // radians about the world up axis
  pitch: number; // radians tilting the view down onto the structure
}

export const DEFAULT_CAMERA: Camera = { yaw: Math.PI / 5, pitch: Math.PI / 7 };

export interface Face {
  /** projected quad corners, in world-scaled screen units */
  points: [number, number][];
  depth: number;
  brightness: number;
  typeId: number;
}

/** Screen-x, screen-y (down-positive), and depth (larger = nearer).
 *
 * The viewer stands south of the structure looking north, elevated by a
 * positive pitch, so the top face is visible and anything flying north
 * recedes from the camera. */
export function projectPoint(
  x: number,
  y: number,
  z: number,
  cam: Camera,
): [number, number, number] {
  const cy = Math.cos(cam.yaw);
  const sy = Math.sin(cam.yaw);
  const cp = Math.cos(cam.pitch);
  const sp = Math.sin(cam.pitch);
  const rx = x * cy + z * sy;
  const rz = -x * sy + z * cy;
  const ry = y * cp - rz * sp;
  const depth = y * sp + rz * cp;
  return [rx, -ry, depth];
}

const FACE_CORNERS: Record<string, [number, number, number][]> = {
  "+x": [[1, 0, 0], [1, 1, 0], [1, 1, 1], [1, 0, 1]],
  "-x": [[0, 0, 0], [0, 1, 0], [0, 1, 1], [0, 0, 1]],
  "+y": [[0, 1, 0], [1, 1, 0], [1, 1, 1], [0, 1, 1]],
  "-y": [[0, 0, 0], [1, 0, 0], [1, 0, 1], [0, 0, 1]],
  "+z": [[0, 0, 1], [1, 0, 1], [1, 1, 1], [0, 1, 1]],
  "-z": [[0, 0, 0], [1, 0, 0], [1, 1, 0], [0, 1, 0]],
};

const FACE_BRIGHTNESS: Record<string, number> = {
  "+y": 1.0, "-y": 0.45, "+x": 0.78, "-x": 0.78, "+z": 0.6, "-z": 0.6,
};

/** The three cube faces whose outward normals point toward the viewer. */
export function visibleFaces(cam: Camera): string[] {
  // Depth gradient per axis (see projectPoint): positive means the positive
  // face of that axis sits nearer the viewer.
  const gx = -Math.sin(cam.yaw) * Math.cos(cam.pitch);
  const gy = Math.sin(cam.pitch);
  const gz = Math.cos(cam.yaw) * Math.cos(cam.pitch);
  const out: string[] = [];
  out.push(gx >= 0 ? "+x" : "-x");
  out.push(gy >= 0 ? "+y" : "-y");
  out.push(gz >= 0 ? "+z" : "-z");
  return out;
}

/** Faces for a whole structure, sorted far-to-near, ready to draw. */
export function buildFaces(voxels: Voxel[], cam: Camera): Face[] {
  const names = visibleFaces(cam);
  const order = voxels
    .map((v, i) => ({ i, depth: projectPoint(v[0] + 0.5, v[1] + 0.5, v[2] + 0.5, cam)[2] }))
    .sort((a, b) => a.depth - b.depth || a.i - b.i);
  const faces: Face[] = [];
  for (const { i, depth } of order) {
    const [x, y, z, typeId] = voxels[i];
    for (const name of names) {
      const pts = FACE_CORNERS[name].map(([dx, dy, dz]) => {
        const [sx, sy] = projectPoint(x + dx, y + dy, z + dz, cam);
        return [sx, sy] as [number, number];
      });
      faces.push({ points: pts, depth, brightness: FACE_BRIGHTNESS[name], typeId });
    }
  }
  return faces;
}

export interface Fit {
  scale: number;
  offsetX: number;
  offsetY: number;
}

/** Scale-and-center transform fitting the projected faces into size^2 px. */
export function fitToCanvas(faces: Face[], size: number, margin = 8): Fit {
  if (faces.length === 0) {
    return { scale: 1, offsetX: size / 2, offsetY: size / 2 };
  }
  let minX = Infinity, maxX = -Infinity, minY = Infinity, maxY = -Infinity;
  for (const f of faces) {
    for (const [px, py] of f.points) {
      if (px < minX) minX = px;
      if (px > maxX) maxX = px;
      if (py < minY) minY = py;
      if (py > maxY) maxY = py;
    }
  }
  const span = Math.max(maxX - minX, maxY - minY, 1e-9);
  const scale = (size - 2 * margin) / span;
  return {
    scale,
    offsetX: size / 2 - scale * (minX + maxX) / 2,
    offsetY: size / 2 - scale * (minY + maxY) / 2,
  };
}

export function renderToCanvas(
  canvas: HTMLCanvasElement,
  voxels: Voxel[],
  cam: Camera,
  colors: ColorMap,
): void {
  const ctx = canvas.getContext("2d");
  if (!ctx) return;
  ctx.clearRect(0, 0, canvas.width, canvas.height);
  const faces = buildFaces(voxels, cam);
  const fit = fitToCanvas(faces, Math.min(canvas.width, canvas.height));
  for (const face of faces) {
    ctx.beginPath();
    face.points.forEach(([px, py], i) => {
      const sx = fit.offsetX + fit.scale * px;
      const sy = fit.offsetY + fit.scale * py;
      if (i === 0) ctx.moveTo(sx, sy);
      else ctx.lineTo(sx, sy);
    });
    ctx.closePath();
    ctx.fillStyle = shade(colorFor(colors, face.typeId), face.brightness);
    ctx.fill();
    ctx.strokeStyle = "rgba(0,0,0,0.25)";
    ctx.lineWidth = 0.5;
    ctx.stroke();
  }
}

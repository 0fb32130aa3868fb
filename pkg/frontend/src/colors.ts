/** Block colors come from the server's schema file (single source of truth);
 * unknown ids fall back to a neutral grey so rendering never crashes. */

import { BlockSchema } from "./types.js";

export const FALLBACK_COLOR = "#909090";

export type ColorMap = Map<number, string>;

export function buildColorMap(schema: BlockSchema): ColorMap {
  const map: ColorMap = new Map();
  for (const entry of schema.blocks) {
    map.set(entry.id, entry.color);
  }
  return map;
}

export function colorFor(map: ColorMap, typeId: number): string {
  return map.get(typeId) ?? FALLBACK_COLOR;
}

/** Scale an #rrggbb color by a brightness factor (face shading). */
export function shade(color: string, factor: number): string {
  const r = Math.round(parseInt(color.slice(1, 3), 16) * factor);
  const g = Math.round(parseInt(color.slice(3, 5), 16) * factor);
  const b = Math.round(parseInt(color.slice(5, 7), 16) * factor);
  const clamp = (v: number) => Math.max(0, Math.min(255, v));
  return (
    "#" +
    [clamp(r), clamp(g), clamp(b)]
      .map((v) => v.toString(16).padStart(2, "0"))
      .join("")
  );
}

/** Shapes of the session service's JSON payloads. */

/** One voxel: [x, y, z, blockTypeId, orientation]. */
export type Voxel = [number, number, number, number, number];

export interface Candidate {
  index: number;
  displayable: boolean;
  block_count: number;
  voxels: Voxel[];
}

export interface GenerationPayload {
  session_id: string;
  generation: number;
  goal: string;
  n_candidates: number;
  box_extent: [number, number, number];
  min_size: number;
  reroll_available: boolean;
  candidates: Candidate[];
}

export interface BlockSchemaEntry {
  id: number;
  name: string;
  movability: string;
  physics: string;
  color: string;
}

export interface BlockSchema {
  schema_version: number;
  orientations: string[];
  blocks: BlockSchemaEntry[];
}

/** Runtime validation: the UI shows an error state instead of crashing on
 * malformed payloads. */
export function validatePayload(data: unknown): GenerationPayload {
  const p = data as GenerationPayload;
  if (
    typeof p !== "object" || p === null ||
    typeof p.session_id !== "string" ||
    typeof p.generation !== "number" ||
    !Array.isArray(p.candidates)
  ) {
    throw new Error("malformed generation payload");
  }
  for (const c of p.candidates) {
    if (
      typeof c.index !== "number" ||
      typeof c.displayable !== "boolean" ||
      !Array.isArray(c.voxels)
    ) {
      throw new Error("malformed candidate entry");
    }
    for (const v of c.voxels) {
      if (!Array.isArray(v) || v.length !== 5 || v.some((n) => typeof n !== "number")) {
        throw new Error("malformed voxel entry");
      }
    }
  }
  return p;
}

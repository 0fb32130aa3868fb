import { describe, expect, it } from "vitest";

import { buildColorMap, colorFor, FALLBACK_COLOR, shade } from "../src/colors.js";
import { BlockSchema } from "../src/types.js";

const SCHEMA: BlockSchema = {
  schema_version: 1,
  orientations: ["NORTH", "WEST", "EAST", "SOUTH", "UP", "DOWN"],
  blocks: [
    { id: 0, name: "A", movability: "movable", physics: "inert_solid", color: "#112233" },
    { id: 202, name: "SLIME", movability: "movable", physics: "inert_solid", color: "#6fc05c" },
  ],
};

describe("color map", () => {
  it("is keyed by wire id from the schema file", () => {
    const map = buildColorMap(SCHEMA);
    expect(colorFor(map, 202)).toBe("#6fc05c");
  });

  it("falls back for unknown ids instead of crashing", () => {
    const map = buildColorMap(SCHEMA);
    expect(colorFor(map, 9999)).toBe(FALLBACK_COLOR);
  });
});

describe("shade", () => {
  it("scales channels by the factor", () => {
    expect(shade("#808080", 0.5)).toBe("#404040");
  });

  it("keeps full-brightness colors unchanged", () => {
    expect(shade("#6fc05c", 1.0)).toBe("#6fc05c");
  });

  it("clamps to the byte range", () => {
    expect(shade("#ffffff", 2.0)).toBe("#ffffff");
  });
});

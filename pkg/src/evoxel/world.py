"""Sparse voxel world and the protocol-level operations on it.

Axis convention (fixed): +x = east, -x = west, +y = up, -y = down,
+z = south, -z = north. One unit is one block.

The world is a sparse map from integer position to (block type, orientation);
absent cells are air, and air is never stored. All state is a pure function
of the applied operations and the tick count, so identical call sequences
produce bit-identical worlds.
"""
from __future__ import annotations

from dataclasses import dataclass
from enum import IntEnum
from typing import Callable, Iterable, Iterator, NamedTuple, Optional

from . import blocks
from .blocks import AIR, PISTON_HEAD, UnknownBlockTypeError


class Orientation(IntEnum):
    NORTH = 0
    WEST = 1
    EAST = 2
    SOUTH = 3
    UP = 4
    DOWN = 5


# Unit vector (dx, dy, dz) for each orientation, indexed by value.
DIRECTION = (
    (0, 0, -1),  # NORTH
    (-1, 0, 0),  # WEST
    (1, 0, 0),   # EAST
    (0, 0, 1),   # SOUTH
    (0, 1, 0),   # UP
    (0, -1, 0),  # DOWN
)

FACE_NEIGHBORS = DIRECTION  # same six offsets, fixed scan order


class Position(NamedTuple):
    x: int
    y: int
    z: int

    def offset(self, d: tuple[int, int, int]) -> "Position":
        return Position(self.x + d[0], self.y + d[1], self.z + d[2])


class Block(NamedTuple):
    position: Position
    type: blocks.BlockType
    orientation: Orientation


class DegenerateCubeError(ValueError):
    """Raised when a cube's min corner exceeds its max corner."""


@dataclass(frozen=True)
class Cube:
    min: Position
    max: Position

    def __post_init__(self):
        lo, hi = self.min, self.max
        if lo.x > hi.x or lo.y > hi.y or lo.z > hi.z:
            raise DegenerateCubeError(f"cube min {tuple(lo)} exceeds max {tuple(hi)}")

    @property
    def volume(self) -> int:
        lo, hi = self.min, self.max
        return (hi.x - lo.x + 1) * (hi.y - lo.y + 1) * (hi.z - lo.z + 1)

    def contains(self, pos: tuple[int, int, int]) -> bool:
        lo, hi = self.min, self.max
        return (lo.x <= pos[0] <= hi.x and lo.y <= pos[1] <= hi.y
                and lo.z <= pos[2] <= hi.z)

    def cells(self) -> Iterator[Position]:
        """All cells in lexicographic (x, y, z) order: x outer, z inner."""
        lo, hi = self.min, self.max
        for x in range(lo.x, hi.x + 1):
            for y in range(lo.y, hi.y + 1):
                for z in range(lo.z, hi.z + 1):
                    yield Position(x, y, z)

    def expanded(self, horizontal: int, vertical: int) -> "Cube":
        lo, hi = self.min, self.max
        return Cube(
            Position(lo.x - horizontal, lo.y - vertical, lo.z - horizontal),
            Position(hi.x + horizontal, hi.y + vertical, hi.z + horizontal),
        )


def cube(min_xyz: tuple[int, int, int], max_xyz: tuple[int, int, int]) -> Cube:
    return Cube(Position(*min_xyz), Position(*max_xyz))


class World:
    """Single-writer sparse world; mutations must be externally serialized.

    ``on_change(pos, old, new)`` is invoked for every effective cell change,
    where old/new are (type_id, orientation_id) or None for air. The tick
    engine uses this hook to drive observers and piston power updates. Bulk
    operations deliver one ``on_batch(changes)`` call instead when that hook
    is set, so a large fill does not pay per-cell notification costs.
    """

    __slots__ = ("_cells", "tick", "on_change", "on_batch")

    def __init__(self):
        self._cells: dict[tuple[int, int, int], tuple[int, int]] = {}
        self.tick: int = 0
        self.on_change: Optional[Callable] = None
        self.on_batch: Optional[Callable] = None

    # -- low-level cell access -------------------------------------------------

    def get(self, pos: tuple[int, int, int]) -> Optional[tuple[int, int]]:
        """(type_id, orientation_id) or None for air."""
        return self._cells.get(tuple(pos))

    def type_at(self, pos: tuple[int, int, int]) -> int:
        cell = self._cells.get(tuple(pos))
        return cell[0] if cell else int(AIR)

    def set_cell(self, pos: tuple[int, int, int], type_id: int, orient_id: int = 0) -> bool:
        """Write one cell; returns True if the cell actually changed."""
        key = (pos[0], pos[1], pos[2])
        old = self._cells.get(key)
        if type_id == AIR:
            new = None
            if old is None:
                return False
            del self._cells[key]
        else:
            new = (type_id, orient_id)
            if old == new:
                return False
            self._cells[key] = new
        if self.on_change is not None:
            self.on_change(key, old, new)
        return True

    def stored_cells(self) -> Iterable[tuple[tuple[int, int, int], tuple[int, int]]]:
        return self._cells.items()

    def cell_count(self) -> int:
        return len(self._cells)

    def snapshot(self) -> dict[tuple[int, int, int], tuple[int, int]]:
        return dict(self._cells)

    def clear(self):
        # Deletes cell by cell so change listeners stay consistent.
        for key in list(self._cells):
            self.set_cell(key, int(AIR))

    def wipe(self):
        """Drop all cells without notifying listeners; callers must reset any
        attached engine state themselves (TickEngine.reset does)."""
        self._cells.clear()

    # -- protocol operations ---------------------------------------------------

    def spawn_blocks(self, block_list: Iterable[Block | tuple]) -> int:
        """Place blocks as given; later entries win on duplicate positions.

        Air entries delete. Unknown type ids reject the whole call: nothing
        is applied partially.
        """
        staged = []
        for b in block_list:
            pos, btype, orient = b
            type_id = int(btype)
            if not blocks.is_known(type_id):
                raise UnknownBlockTypeError(type_id)
            staged.append(((pos[0], pos[1], pos[2]), type_id, int(orient)))
        if self.on_batch is not None:
            air = int(AIR)
            cells = self._cells
            changes = []
            for pos, type_id, orient in staged:
                old = cells.get(pos)
                if type_id == air:
                    if old is not None:
                        del cells[pos]
                        changes.append((pos, old, None))
                else:
                    new = (type_id, orient)
                    if old != new:
                        cells[pos] = new
                        changes.append((pos, old, new))
            if changes:
                self.on_batch(changes)
            return len(staged)
        placed = 0
        for pos, type_id, orient in staged:
            self.set_cell(pos, type_id, orient)
            placed += 1
        return placed

    def read_cube(self, region: Cube) -> list[Block]:
        """One entry per cell, air included, in lexicographic (x, y, z) order."""
        out = []
        get = self._cells.get
        for pos in region.cells():
            cell = get(pos)
            if cell is None:
                out.append(Block(pos, AIR, Orientation.NORTH))
            else:
                out.append(Block(pos, blocks.BlockType(cell[0]), Orientation(cell[1])))
        return out

    def fill_cube(self, region: Cube, type_id: int) -> None:
        """Set every cell in the region to (type, NORTH)."""
        if not blocks.is_known(int(type_id)):
            raise UnknownBlockTypeError(int(type_id))
        type_id = int(type_id)
        if self.on_batch is None and self.on_change is not None:
            north = int(Orientation.NORTH)
            for pos in region.cells():
                self.set_cell(pos, type_id, north)
            return
        # Bulk path: plain-tuple loop, one batched notification at the end.
        lo, hi = region.min, region.max
        cells = self._cells
        changes: list = []
        append = changes.append
        if type_id == int(AIR):
            pop = cells.pop
            for x in range(lo.x, hi.x + 1):
                for y in range(lo.y, hi.y + 1):
                    for z in range(lo.z, hi.z + 1):
                        key = (x, y, z)
                        old = pop(key, None)
                        if old is not None:
                            append((key, old, None))
        else:
            get = cells.get
            new = (type_id, 0)
            for x in range(lo.x, hi.x + 1):
                for y in range(lo.y, hi.y + 1):
                    for z in range(lo.z, hi.z + 1):
                        key = (x, y, z)
                        old = get(key)
                        if old != new:
                            cells[key] = new
                            append((key, old, new))
        if changes and self.on_batch is not None:
            self.on_batch(changes)

    def center_of_mass(self, region: Cube) -> Optional[tuple[float, float, float]]:
        """Unweighted mean position of mass-bearing cells; None if all air.

        Piston heads are mechanism extensions, not placed blocks, and carry
        no mass (they appear and disappear as pistons actuate).
        """
        head = int(PISTON_HEAD)
        sx = sy = sz = 0
        n = 0
        for (x, y, z), (type_id, _) in self._iter_region(region):
            if type_id == head:
                continue
            sx += x
            sy += y
            sz += z
            n += 1
        if n == 0:
            return None
        return (sx / n, sy / n, sz / n)

    def non_air_count(self, region: Cube) -> int:
        return sum(1 for _ in self._iter_region(region))

    def _iter_region(self, region: Cube):
        # Scan whichever of (region, store) is smaller.
        if region.volume <= len(self._cells):
            get = self._cells.get
            for pos in region.cells():
                cell = get(pos)
                if cell is not None:
                    yield pos, cell
        else:
            contains = region.contains
            for pos, cell in self._cells.items():
                if contains(pos):
                    yield pos, cell

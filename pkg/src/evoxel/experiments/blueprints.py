"""Versioned reference structures used by experiments and golden tests.

The flying machine is an eight-block, two-group handshake that perpetually
moves north under the tick engine:

* front group (z = 0..1): two slime blocks, an observer facing down that
  powers the sticky puller above it, and the sticky piston facing south;
* back group (z = 3..4): the pull-contact slime, a north-facing pusher,
  a glue slime, and an observer facing south that powers the pusher.

Each handshake: the puller extends into the gap, grips the back group and
drags it one block north; the back group's observer (having moved) powers
the pusher, which shoves the front group one block north; the front
observer then re-arms the puller. One full cycle takes
``engine.REFERENCE_CYCLE_TICKS`` ticks and translates every block one block
north, which calibrates to the target displacement over 200 ticks.
"""
from __future__ import annotations

from dataclasses import dataclass

from .. import blocks
from ..world import Block, Orientation, Position, World


@dataclass(frozen=True)
class Blueprint:
    """Immutable named block list relative to an origin."""

    name: str
    version: int
    blocks: tuple[Block, ...]

    def placed_at(self, origin: tuple[int, int, int]) -> list[Block]:
        ox, oy, oz = origin
        return [
            Block(Position(b.position.x + ox, b.position.y + oy, b.position.z + oz),
                  b.type, b.orientation)
            for b in self.blocks
        ]

    def spawn(self, world: World, origin: tuple[int, int, int] = (0, 0, 0)) -> int:
        return world.spawn_blocks(self.placed_at(origin))

    def bounds(self) -> tuple[Position, Position]:
        xs = [b.position.x for b in self.blocks]
        ys = [b.position.y for b in self.blocks]
        zs = [b.position.z for b in self.blocks]
        return (Position(min(xs), min(ys), min(zs)),
                Position(max(xs), max(ys), max(zs)))


def _b(x: int, y: int, z: int, type_, orientation=Orientation.NORTH) -> Block:
    return Block(Position(x, y, z), type_, orientation)


def flying_machine() -> Blueprint:
    """The reference self-propelling machine; moves one block north per
    engine cycle. Fits a single push set (8 blocks)."""
    return Blueprint(
        name="flying-machine",
        version=1,
        blocks=(
            # front group
            _b(0, 0, 0, blocks.SLIME),
            _b(0, 1, 0, blocks.SLIME),
            _b(0, 0, 1, blocks.OBSERVER, Orientation.DOWN),
            _b(0, 1, 1, blocks.STICKY_PISTON, Orientation.SOUTH),
            # back group
            _b(0, 1, 3, blocks.SLIME),
            _b(0, 0, 3, blocks.PISTON, Orientation.NORTH),
            _b(0, 1, 4, blocks.SLIME),
            _b(0, 0, 4, blocks.OBSERVER, Orientation.SOUTH),
        ),
    )

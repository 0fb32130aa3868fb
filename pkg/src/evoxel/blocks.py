"""Block registry loaded from the shipped schema file.

The schema file (``data/blocks.json``) is the source of truth for the wire
protocol: block ids are stable, and every block carries a movability class
(how pistons may move it) and a physics class (its role in circuits). The
simulation itself only gives special behaviour to a small closed subset
(redstone blocks, observers, pistons, slime); every other type is treated as
an inert solid with its movability class.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from enum import IntEnum
from functools import lru_cache
from importlib import resources

MOVABLE = "movable"
IMMOVABLE = "immovable"
BREAKS = "breaks"

PHYS_AIR = "air"
PHYS_POWER = "power_source"
PHYS_MECHANISM = "mechanism"
PHYS_TRANSMISSION = "transmission"
PHYS_INERT = "inert_solid"


class UnknownBlockTypeError(ValueError):
    """Raised when an operation names a block type id outside the registry."""

    def __init__(self, type_id: int):
        self.type_id = type_id
        super().__init__(f"unknown block type id: {type_id}")


@dataclass(frozen=True)
class BlockInfo:
    id: int
    name: str
    movability: str
    physics: str
    color: str


def _load_schema() -> dict:
    with resources.files("evoxel.data").joinpath("blocks.json").open() as f:
        return json.load(f)


@lru_cache(maxsize=1)
def registry() -> tuple[BlockInfo, ...]:
    """All block types, indexed by wire id."""
    schema = _load_schema()
    infos = tuple(BlockInfo(**e) for e in schema["blocks"])
    for i, info in enumerate(infos):
        if info.id != i:
            raise ValueError(f"schema ids must be dense, got {info.id} at index {i}")
    return infos


@lru_cache(maxsize=1)
def schema_version() -> int:
    return _load_schema()["schema_version"]


def _build_enum() -> type[IntEnum]:
    return IntEnum("BlockType", {info.name: info.id for info in registry()})


BlockType = _build_enum()

AIR = BlockType.AIR
OBSIDIAN = BlockType.OBSIDIAN
REDSTONE_BLOCK = BlockType.REDSTONE_BLOCK
OBSERVER = BlockType.OBSERVER
PISTON = BlockType.PISTON
STICKY_PISTON = BlockType.STICKY_PISTON
PISTON_HEAD = BlockType.PISTON_HEAD
SLIME = BlockType.SLIME
GOLD_BLOCK = BlockType.GOLD_BLOCK

PISTON_TYPES = frozenset({int(PISTON), int(STICKY_PISTON)})

_MOVABILITY = tuple(info.movability for info in registry())
_N = len(_MOVABILITY)


def info(type_id: int) -> BlockInfo:
    if 0 <= type_id < _N:
        return registry()[type_id]
    raise UnknownBlockTypeError(type_id)


def is_known(type_id: int) -> bool:
    return 0 <= type_id < _N


def movability(type_id: int) -> str:
    return _MOVABILITY[type_id]


def by_name(name: str) -> BlockInfo:
    try:
        return registry()[BlockType[name]]
    except KeyError:
        raise UnknownBlockTypeError(-1) from None

"""Backend abstraction: the evolution code targets either the in-process
simulator or a remote server through the same three base operations.

The in-process backend is the single-writer command queue from the
concurrency model: every mutating call (and tick step) takes the backend
lock, so concurrent RPC handlers are serialized while reads return plain
values computed under the same lock.
"""
from __future__ import annotations

import threading
from typing import Optional, Protocol, runtime_checkable

from ..engine import TickEngine
from ..world import Block, Cube, World


class UnsupportedOperationError(RuntimeError):
    """The backend does not implement the simulator extension service."""


@runtime_checkable
class WorldBackend(Protocol):
    def spawn_blocks(self, block_list: list[Block]) -> None: ...

    def read_cube(self, region: Cube) -> list[Block]: ...

    def fill_cube(self, region: Cube, type_id: int) -> None: ...

    # simulator-only extension surface
    def step(self, n_ticks: int) -> int: ...

    def reset(self) -> None: ...

    def set_tick_rate(self, rate: Optional[float]) -> None: ...

    def center_of_mass(self, region: Cube) -> Optional[tuple[float, float, float]]: ...


class InProcessBackend:
    """Owns a world and its tick engine behind a command lock."""

    def __init__(self, world: Optional[World] = None):
        self.world = world if world is not None else World()
        self.engine = TickEngine(self.world)
        self._lock = threading.Lock()

    def spawn_blocks(self, block_list: list[Block]) -> None:
        with self._lock:
            self.world.spawn_blocks(block_list)

    def read_cube(self, region: Cube) -> list[Block]:
        with self._lock:
            return self.world.read_cube(region)

    def fill_cube(self, region: Cube, type_id: int) -> None:
        with self._lock:
            self.world.fill_cube(region, type_id)

    def step(self, n_ticks: int) -> int:
        with self._lock:
            return self.engine.step(n_ticks)

    def reset(self) -> None:
        with self._lock:
            self.engine.reset()

    def set_tick_rate(self, rate: Optional[float]) -> None:
        with self._lock:
            self.engine.set_tick_rate(rate)

    def center_of_mass(self, region: Cube) -> Optional[tuple[float, float, float]]:
        with self._lock:
            return self.world.center_of_mass(region)

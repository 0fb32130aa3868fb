"""Performance benchmarks: cube-spawn latency and flying-machine tick-rate
stress. Both report raw per-step numbers; nothing is assumed monotonic."""
from __future__ import annotations

import time
from dataclasses import dataclass, field

from .. import blocks
from ..rpc.backends import InProcessBackend, WorldBackend
from ..world import Cube, Position
from .blueprints import flying_machine

TARGET_TICK_RATE = 20.0


@dataclass
class CubeBenchRow:
    n: int
    volume: int
    fill_ms: float
    clear_ms: float
    achieved_tps: float


@dataclass
class CubeBenchReport:
    rows: list[CubeBenchRow] = field(default_factory=list)

    def to_csv(self) -> str:
        lines = ["n,volume,fill_ms,clear_ms,achieved_tps"]
        for r in self.rows:
            lines.append(f"{r.n},{r.volume},{r.fill_ms:.3f},{r.clear_ms:.3f},"
                         f"{r.achieved_tps:.1f}")
        return "\n".join(lines) + "\n"


def bench_cubes(max_n: int = 31, backend: WorldBackend | None = None,
                probe_ticks: int = 20) -> CubeBenchReport:
    """Alternate NxNxN obsidian and air fills for N = 1..max_n, recording the
    fill latency and the tick rate the server still achieves; stops early if
    the rate falls below 20 ticks/second."""
    own = backend is None
    if own:
        backend = InProcessBackend()
    report = CubeBenchReport()
    for n in range(1, max_n + 1):
        region = Cube(Position(0, 0, 0), Position(n - 1, n - 1, n - 1))
        t0 = time.perf_counter()
        backend.fill_cube(region, int(blocks.OBSIDIAN))
        fill_ms = (time.perf_counter() - t0) * 1000.0
        t0 = time.perf_counter()
        backend.step(probe_ticks)
        tick_s = time.perf_counter() - t0
        achieved = probe_ticks / tick_s if tick_s > 0 else float("inf")
        t0 = time.perf_counter()
        backend.fill_cube(region, int(blocks.AIR))
        clear_ms = (time.perf_counter() - t0) * 1000.0
        report.rows.append(CubeBenchRow(n, n ** 3, fill_ms, clear_ms, achieved))
        if achieved < TARGET_TICK_RATE:
            break
    return report


@dataclass
class MachineBenchRow:
    count: int
    ticks: int
    elapsed_s: float
    achieved_tps: float


@dataclass
class MachineBenchReport:
    rows: list[MachineBenchRow] = field(default_factory=list)

    @property
    def max_sustained(self) -> int:
        """Largest machine count that kept the target tick rate."""
        ok = [r.count for r in self.rows if r.achieved_tps >= TARGET_TICK_RATE]
        return max(ok) if ok else 0

    def to_csv(self) -> str:
        lines = ["count,ticks,elapsed_s,achieved_tps"]
        for r in self.rows:
            lines.append(f"{r.count},{r.ticks},{r.elapsed_s:.3f},{r.achieved_tps:.1f}")
        return "\n".join(lines) + "\n"


def _machine_grid(count: int):
    """Origins spaced so machines never interact: 4 apart in x (no adjacency)
    and 16 apart in z (identical speeds keep gaps constant)."""
    per_row = 64
    return [(4 * (i % per_row), 0, 16 * (i // per_row)) for i in range(count)]


def bench_machines(max_count: int = 1600, ticks: int = 400,
                   counts: list[int] | None = None) -> MachineBenchReport:
    """Spawn N reference machines and measure the unthrottled tick rate over
    `ticks` ticks (20 simulated seconds), growing N until the rate drops
    below 20 ticks/second or max_count is reached."""
    if counts is None:
        ladder = [1, 10, 50, 100, 200, 400, 800, 1200]
        counts = [c for c in ladder if c <= max_count]
        step = 400
        nxt = 1600
        while nxt <= max_count:
            counts.append(nxt)
            nxt += step
        if not counts or counts[-1] != max_count:
            counts.append(max_count)
    machine = flying_machine()
    report = MachineBenchReport()
    for count in counts:
        backend = InProcessBackend()
        for origin in _machine_grid(count):
            backend.spawn_blocks(machine.placed_at(origin))
        t0 = time.perf_counter()
        backend.step(ticks)
        elapsed = time.perf_counter() - t0
        achieved = ticks / elapsed if elapsed > 0 else float("inf")
        report.rows.append(MachineBenchRow(count, ticks, elapsed, achieved))
        if achieved < TARGET_TICK_RATE:
            break
    return report

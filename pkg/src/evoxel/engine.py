"""Deterministic 20-ticks/second simulation of the mechanism subset.

Simulated behaviour is limited to the smallest closed system that supports
self-propelling machines: redstone blocks (constant power), observers (a
short pulse from the back face when the watched cell changes or the observer
is placed/moved), pistons and sticky pistons, and slime adhesion. Every
other block type participates only through its movability class.

Determinism: all scheduled work is kept in a priority queue keyed by
(due tick, event kind, position) and dirty pistons are recomputed in sorted
position order, so identical worlds stepped identically produce bit-identical
results regardless of batching or pacing.

Timing constants: an observer pulse is emitted 1 tick after its trigger and
lasts 2 ticks; piston extension and retraction each take 3 ticks from the
power edge to the movement. The piston latencies were calibrated (and are
frozen by the reference-machine golden test) so the reference flying machine
covers its target distance: one full engine handshake takes
``REFERENCE_CYCLE_TICKS`` ticks and moves a machine one block.
"""
from __future__ import annotations

import time
from collections import deque
from heapq import heappop, heappush
from typing import Optional

from . import blocks
from .blocks import BREAKS, IMMOVABLE, MOVABLE
from .world import DIRECTION, World

OBSERVER = int(blocks.OBSERVER)
REDSTONE_BLOCK = int(blocks.REDSTONE_BLOCK)
PISTON = int(blocks.PISTON)
STICKY_PISTON = int(blocks.STICKY_PISTON)
PISTON_HEAD = int(blocks.PISTON_HEAD)
SLIME = int(blocks.SLIME)
AIR = int(blocks.AIR)

PUSH_LIMIT = 12

OBSERVER_DELAY = 1
OBSERVER_PULSE_TICKS = 2
EXTEND_LATENCY = 3
RETRACT_LATENCY = 3

# One push + one pull handshake of the reference machine; see blueprints.
REFERENCE_CYCLE_TICKS = 11

_RETRACT = 0
_EXTEND = 1

Pos = tuple[int, int, int]


class Blocked:
    """Sentinel result: the requested piston motion cannot happen this tick."""

    __slots__ = ()

    def __repr__(self):
        return "Blocked"


BLOCKED = Blocked()


def _add(p: Pos, d: tuple[int, int, int]) -> Pos:
    return (p[0] + d[0], p[1] + d[1], p[2] + d[2])


def _sub(p: Pos, d: tuple[int, int, int]) -> Pos:
    return (p[0] - d[0], p[1] - d[1], p[2] - d[2])


class TickEngine:
    """Owns a world's clock and all mechanism state.

    The engine must be the only writer while a tick is in progress; external
    commands (RPCs) are applied between ticks by the backend's command lock.
    """

    def __init__(self, world: World):
        self.world = world
        self.ticks_per_second: Optional[float] = None  # None = unthrottled
        self._init_state()
        world.on_change = self._handle_change
        world.on_batch = self._handle_batch

    def _init_state(self) -> None:
        self._events: list[tuple[int, int, Pos]] = []  # (due, kind, pos)
        self._pending: dict[Pos, tuple[int, int]] = {}  # pos -> (due, kind)
        self._extended: dict[Pos, Pos] = {}  # piston base -> head cell
        self._pulses: dict[Pos, tuple[int, int]] = {}  # observer -> (start, end)
        self._watchers: dict[Pos, set[Pos]] = {}  # watched cell -> observers
        self._pistons: set[Pos] = set()
        self._dirty_now: set[Pos] = set()
        self._dirty_at: dict[int, set[Pos]] = {}
        self._moved_this_tick: set[Pos] = set()
        self._now = self.world.tick
        for pos, (type_id, orient) in self.world.stored_cells():
            if type_id == OBSERVER:
                self._watchers.setdefault(_add(pos, DIRECTION[orient]), set()).add(pos)
            elif type_id in blocks.PISTON_TYPES:
                self._pistons.add(pos)
                self._dirty_now.add(pos)

    # -- public control ---------------------------------------------------------

    def step(self, n_ticks: int) -> int:
        """Advance the simulation by n_ticks; returns the new tick counter."""
        if n_ticks < 1:
            raise ValueError("n_ticks must be >= 1")
        rate = self.ticks_per_second
        period = 1.0 / rate if rate else 0.0
        next_deadline = time.perf_counter() + period
        for _ in range(n_ticks):
            self._tick_once()
            if rate:
                delay = next_deadline - time.perf_counter()
                if delay > 0:
                    time.sleep(delay)
                next_deadline += period
        return self.world.tick

    def set_tick_rate(self, rate: Optional[float]) -> None:
        """Wall-clock pacing only; never affects per-tick results."""
        if rate is not None and rate <= 0:
            raise ValueError("tick rate must be positive (or None for unthrottled)")
        self.ticks_per_second = rate

    def reset(self) -> None:
        """Restore an empty world at tick 0."""
        self.world.wipe()
        self.world.tick = 0
        self._init_state()

    def power_level(self, pos: Pos, tick: Optional[int] = None) -> bool:
        """True iff a redstone block is face-adjacent or an observer whose
        back faces this cell is mid-pulse."""
        t = self.world.tick if tick is None else tick
        get = self.world.get
        pos = tuple(pos)
        for d in DIRECTION:
            n = _add(pos, d)
            cell = get(n)
            if cell is None:
                continue
            if cell[0] == REDSTONE_BLOCK:
                return True
            if cell[0] == OBSERVER and _sub(n, DIRECTION[cell[1]]) == pos:
                window = self._pulses.get(n)
                if window and window[0] <= t <= window[1]:
                    return True
        return False

    def is_extended(self, piston_pos: Pos) -> bool:
        return tuple(piston_pos) in self._extended

    # -- change propagation -------------------------------------------------------

    def _bookkeep(self, pos: Pos, old, new) -> None:
        """Registry, trigger, and cleanup updates for one cell change."""
        if old is not None:
            type_id, orient = old
            if type_id == OBSERVER:
                self._watchers.get(_add(pos, DIRECTION[orient]), set()).discard(pos)
                self._pulses.pop(pos, None)
            elif type_id in blocks.PISTON_TYPES:
                self._pistons.discard(pos)
                self._pending.pop(pos, None)
                head = self._extended.pop(pos, None)
                if head is not None and self.world.type_at(head) == PISTON_HEAD:
                    self.world.set_cell(head, AIR)
        if new is not None:
            type_id, orient = new
            if type_id == OBSERVER:
                self._watchers.setdefault(_add(pos, DIRECTION[orient]), set()).add(pos)
                self._trigger(pos)
            elif type_id in blocks.PISTON_TYPES:
                self._pistons.add(pos)
                self._dirty_now.add(pos)
        watchers = self._watchers.get(pos)
        if watchers:
            for obs in sorted(watchers):
                self._trigger(obs)

    def _handle_change(self, pos: Pos, old, new) -> None:
        self._bookkeep(pos, old, new)
        # Power may have changed next to any neighbouring piston.
        pistons = self._pistons
        for d in DIRECTION:
            n = _add(pos, d)
            if n in pistons:
                self._dirty_now.add(n)

    def _handle_batch(self, changes: list[tuple[Pos, object, object]]) -> None:
        for pos, old, new in changes:
            self._bookkeep(pos, old, new)
        # Dirty-mark pistons adjacent to any changed cell, scanning whichever
        # side is smaller (a bulk fill can touch far more cells than there
        # are pistons in the world).
        pistons = self._pistons
        dirty = self._dirty_now
        if len(pistons) * 6 < len(changes):
            changed = {pos for pos, _, _ in changes}
            for p in pistons:
                for d in DIRECTION:
                    if _add(p, d) in changed:
                        dirty.add(p)
                        break
        else:
            for pos, _, _ in changes:
                for d in DIRECTION:
                    n = _add(pos, d)
                    if n in pistons:
                        dirty.add(n)

    def _trigger(self, observer_pos: Pos) -> None:
        t = self._now
        start, end = t + OBSERVER_DELAY, t + OBSERVER_DELAY + OBSERVER_PULSE_TICKS - 1
        window = self._pulses.get(observer_pos)
        if window:
            start, end = min(window[0], start), max(window[1], end)
        self._pulses[observer_pos] = (start, end)
        cell = self.world.get(observer_pos)
        if cell is not None:
            powered = _sub(observer_pos, DIRECTION[cell[1]])
            self._dirty_at.setdefault(start, set()).add(powered)
            self._dirty_at.setdefault(end + 1, set()).add(powered)

    # -- tick loop ----------------------------------------------------------------

    def _tick_once(self) -> None:
        t = self.world.tick + 1
        self._now = t
        self._moved_this_tick.clear()
        events = self._events
        while events and events[0][0] == t:
            due, kind, pos = heappop(events)
            if self._pending.get(pos) != (due, kind):
                continue  # superseded (piston moved or was overwritten)
            del self._pending[pos]
            if kind == _EXTEND:
                self._do_extend(pos)
            else:
                self._do_retract(pos)
        dirty = self._dirty_now | self._dirty_at.pop(t, set())
        self._dirty_now = set()
        for pos in sorted(dirty):
            self._recompute(pos, t)
        self.world.tick = t

    def _recompute(self, pos: Pos, t: int) -> None:
        cell = self.world.get(pos)
        if cell is None or cell[0] not in blocks.PISTON_TYPES or pos in self._pending:
            return
        powered = self.power_level(pos, t)
        extended = pos in self._extended
        if powered and not extended:
            self._schedule(pos, t + EXTEND_LATENCY, _EXTEND)
        elif not powered and extended:
            self._schedule(pos, t + RETRACT_LATENCY, _RETRACT)

    def _schedule(self, pos: Pos, due: int, kind: int) -> None:
        self._pending[pos] = (due, kind)
        heappush(self._events, (due, kind, pos))

    # -- piston motion --------------------------------------------------------------

    def compute_push_set(self, piston_pos: Pos, facing: int):
        """Closure of blocks a piston extension would move, or BLOCKED.

        Returns (members, deletions): members in deterministic BFS order,
        deletions the breaks-when-pushed cells that get destroyed.
        """
        f = DIRECTION[facing]
        piston_pos = tuple(piston_pos)
        front = _add(piston_pos, f)
        get = self.world.get
        members: list[Pos] = []
        member_set: set[Pos] = set()
        deletions: set[Pos] = set()
        seen = {front, piston_pos}
        queue = deque([front])
        while queue:
            c = queue.popleft()
            cell = get(c)
            if cell is None:
                continue
            type_id = cell[0]
            if c in self._moved_this_tick:
                return BLOCKED  # lost a same-tick contest to a lower-position piston
            mov = blocks.movability(type_id)
            if mov == IMMOVABLE or (type_id in blocks.PISTON_TYPES and c in self._extended):
                return BLOCKED
            if mov == BREAKS:
                deletions.add(c)
                continue
            members.append(c)
            member_set.add(c)
            if len(members) > PUSH_LIMIT:
                return BLOCKED
            inline = _add(c, f)
            if inline not in seen:
                seen.add(inline)
                queue.append(inline)
            if type_id == SLIME:
                for d in DIRECTION:
                    nb = _add(c, d)
                    if nb not in seen:
                        seen.add(nb)
                        queue.append(nb)
        return members, deletions

    def _do_extend(self, pos: Pos) -> None:
        cell = self.world.get(pos)
        if cell is None or cell[0] not in blocks.PISTON_TYPES or pos in self._extended:
            return
        facing = cell[1]
        result = self.compute_push_set(pos, facing)
        if result is BLOCKED:
            # Retry while power holds; the next recompute reschedules.
            self._dirty_at.setdefault(self._now + 1, set()).add(pos)
            return
        members, deletions = result
        assert len(members) <= PUSH_LIMIT  # compute_push_set guarantees this
        f = DIRECTION[facing]
        set_cell = self.world.set_cell
        for c in sorted(deletions):
            set_cell(c, AIR)
        # Move farthest-first so no move lands on a not-yet-vacated cell.
        moved = self._moved_this_tick
        for c in sorted(members, key=lambda p: p[0] * f[0] + p[1] * f[1] + p[2] * f[2],
                        reverse=True):
            b = self.world.get(c)
            set_cell(c, AIR)
            dest = _add(c, f)
            set_cell(dest, b[0], b[1])
            moved.add(dest)
        front = _add(pos, f)
        set_cell(front, PISTON_HEAD, facing)
        self._extended[pos] = front

    def _pull_closure(self, contact: Pos, piston_pos: Pos):
        """Slime-adhesion closure for a sticky retraction (no in-line chaining);
        breaks-when-pushed neighbours are left behind rather than pulled."""
        get = self.world.get
        members: list[Pos] = []
        seen = {contact, piston_pos}
        queue = deque([contact])
        while queue:
            c = queue.popleft()
            cell = get(c)
            if cell is None:
                continue
            type_id = cell[0]
            if c in self._moved_this_tick:
                return BLOCKED
            mov = blocks.movability(type_id)
            if mov == IMMOVABLE or (type_id in blocks.PISTON_TYPES and c in self._extended):
                return BLOCKED
            if mov == BREAKS:
                continue
            members.append(c)
            if len(members) > PUSH_LIMIT:
                return BLOCKED
            if type_id == SLIME:
                for d in DIRECTION:
                    nb = _add(c, d)
                    if nb not in seen:
                        seen.add(nb)
                        queue.append(nb)
        return members

    def _do_retract(self, pos: Pos) -> None:
        head = self._extended.get(pos)
        if head is None:
            return
        cell = self.world.get(pos)
        if cell is None or cell[0] not in blocks.PISTON_TYPES:
            return
        facing = cell[1]
        f = DIRECTION[facing]
        set_cell = self.world.set_cell
        if self.world.type_at(head) == PISTON_HEAD:
            set_cell(head, AIR)
        del self._extended[pos]
        if cell[0] != STICKY_PISTON:
            return
        contact = _add(head, f)
        contact_cell = self.world.get(contact)
        if contact_cell is None or blocks.movability(contact_cell[0]) != MOVABLE:
            return
        members = self._pull_closure(contact, pos)
        if members is BLOCKED:
            return  # head is gone but the blocks stay (the pull is dropped)
        member_set = set(members)
        for c in members:
            dest = _sub(c, f)
            if dest != head and dest not in member_set and self.world.get(dest) is not None:
                return  # something solid in the way: drop the pull
        moved = self._moved_this_tick
        # Move nearest-the-piston first; each destination was just vacated.
        for c in sorted(members, key=lambda p: p[0] * f[0] + p[1] * f[1] + p[2] * f[2]):
            b = self.world.get(c)
            set_cell(c, AIR)
            dest = _sub(c, f)
            set_cell(dest, b[0], b[1])
            moved.add(dest)

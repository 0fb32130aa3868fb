"""Interactive-evolution sessions.

A session owns one evolution-strategy state and always has exactly one
generation of decoded candidates awaiting a human choice. Submitting a
choice assigns one-hot fitness, advances the strategy, and decodes the next
generation; candidates below the minimum block count are filtered from
display and cannot be chosen. When every candidate is filtered, a reroll
(re-sample without an update) is offered instead.

Sessions are deterministic: the recorded event history (choices and rerolls)
replayed against the same config reproduces identical payloads.
"""
from __future__ import annotations

import threading
import uuid
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .. import blocks
from ..encodings.mlp import (DecodeBox, MlpConfig, MlpGenome,
                             decode_box_arrays, param_count)
from ..evolve import EsState, iec_fitness
from ..world import Position

DEFAULT_PALETTE = ("OBSIDIAN", "REDSTONE_BLOCK", "GLASS", "BROWN_MUSHROOM",
                   "NETHERRACK", "COBBLESTONE", "SLIME")


class StaleGenerationError(RuntimeError):
    """A choice or reroll named a generation that is no longer current."""


class RerollUnavailableError(RuntimeError):
    """Reroll requested while displayable candidates exist."""


@dataclass(frozen=True)
class IecConfig:
    seed: int = 0
    n_candidates: int = 9
    box_extent: tuple[int, int, int] = (10, 10, 10)
    palette: tuple[str, ...] = DEFAULT_PALETTE
    with_orientation: bool = True
    symmetrize: bool = False
    activations: str = "default"
    min_size: int = 8
    sigma: float = 0.1
    lr: float = 0.01
    init_std: float = 0.1
    goal: str = ""

    def mlp_config(self) -> MlpConfig:
        ids = tuple(int(blocks.BlockType[n]) for n in self.palette)
        return MlpConfig(palette=ids, with_orientation=self.with_orientation,
                         symmetrize=self.symmetrize, activations=self.activations)


class IecSession:
    def __init__(self, config: IecConfig, session_id: Optional[str] = None):
        self.id = session_id or uuid.uuid4().hex
        self.config = config
        self.generation = 0
        self.history: list[tuple] = []  # ("choice", index) | ("reroll",)
        self._lock = threading.Lock()
        self._mlp_config = config.mlp_config()
        self._rng = np.random.default_rng(config.seed)
        theta0 = config.init_std * self._rng.standard_normal(param_count(self._mlp_config))
        self._es = EsState(theta0, sigma=config.sigma, lr=config.lr,
                           n=config.n_candidates)
        self._box = DecodeBox(Position(0, 0, 0), config.box_extent)
        self._candidates: list[dict] = []
        self._decode_generation(self._es.ask(self._rng))

    # -- internals ---------------------------------------------------------------

    def _decode_generation(self, thetas) -> None:
        candidates = []
        for i, theta in enumerate(thetas):
            genome = MlpGenome(theta, self._mlp_config)
            voxels = decode_box_arrays(genome, self._box).tolist()
            candidates.append({
                "index": i,
                "displayable": len(voxels) >= self.config.min_size,
                "block_count": len(voxels),
                "voxels": voxels,
            })
        self._candidates = candidates

    def _check_generation(self, generation: int) -> None:
        if generation != self.generation:
            raise StaleGenerationError(
                f"generation {generation} is not current (now at {self.generation}); "
                "a choice may have been submitted twice")

    # -- public surface -----------------------------------------------------------

    def payload(self) -> dict:
        """Idempotent snapshot of the generation awaiting a choice."""
        with self._lock:
            return {
                "session_id": self.id,
                "generation": self.generation,
                "goal": self.config.goal,
                "n_candidates": self.config.n_candidates,
                "box_extent": list(self.config.box_extent),
                "min_size": self.config.min_size,
                "reroll_available": not any(c["displayable"] for c in self._candidates),
                "candidates": self._candidates,
            }

    def submit_choice(self, index: int, generation: int) -> dict:
        """One-hot fitness for the choice, then advance one generation."""
        with self._lock:
            self._check_generation(generation)
            sizes = [c["block_count"] for c in self._candidates]
            fitness = iec_fitness(index, self.config.n_candidates, sizes,
                                  self.config.min_size)
            self._es.tell(fitness)
            self._decode_generation(self._es.ask(self._rng))
            self.generation += 1
            self.history.append(("choice", index))
        return self.payload()

    def reroll(self, generation: int) -> dict:
        """Resample the current generation without an update; only offered
        when every candidate fell below the minimum size."""
        with self._lock:
            self._check_generation(generation)
            if any(c["displayable"] for c in self._candidates):
                raise RerollUnavailableError(
                    "reroll is only available when all candidates are filtered")
            self._es.cancel_ask()
            self._decode_generation(self._es.ask(self._rng))
            self.history.append(("reroll",))
        return self.payload()

    @staticmethod
    def replay(config: IecConfig, history: list[tuple]) -> "IecSession":
        """Rebuild a session from its recorded events (determinism check)."""
        session = IecSession(config)
        for event in history:
            if event[0] == "choice":
                session.submit_choice(event[1], session.generation)
            elif event[0] == "reroll":
                session.reroll(session.generation)
            else:
                raise ValueError(f"unknown event {event!r}")
        return session


class SessionStore:
    """Concurrent session registry; each session serializes its own mutations."""

    def __init__(self):
        self._sessions: dict[str, IecSession] = {}
        self._lock = threading.Lock()

    def create(self, config: IecConfig) -> IecSession:
        session = IecSession(config)
        with self._lock:
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> IecSession:
        with self._lock:
            session = self._sessions.get(session_id)
        if session is None:
            raise KeyError(session_id)
        return session

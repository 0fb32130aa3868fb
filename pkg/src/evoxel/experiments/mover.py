"""Moving-machine task: an evolution strategy over the network encoding,
rewarded by how far a structure displaces its center of mass in ten
simulated seconds (200 ticks).

Each candidate decodes into a fresh world so evaluations are independent;
the tracking region is the spawn box expanded 20 blocks horizontally and 10
vertically so a departing machine stays counted.
"""
from __future__ import annotations

import math
from typing import Optional

import numpy as np

from ..encodings.mlp import DecodeBox, MlpConfig, MlpGenome, decode_box, param_count
from ..evolve import EsState, FitnessRecord
from ..rpc.backends import InProcessBackend
from ..world import Cube, Position
from .runlog import ExperimentConfig, RunLog
from .tower import palette_ids

# Mechanism-heavy palette so machines are expressible; the two filler types
# give evolution something inert to build bodies from.
MOVER_PALETTE = ("REDSTONE_BLOCK", "SLIME", "PISTON", "STICKY_PISTON",
                 "OBSERVER", "GLASS", "COBBLESTONE")

TRACK_MARGIN_HORIZONTAL = 20
TRACK_MARGIN_VERTICAL = 10


def mover_fitness(com_before: Optional[tuple], com_after: Optional[tuple]) -> float:
    """Euclidean displacement of the center of mass; degenerate (empty)
    structures score 0."""
    if com_before is None or com_after is None:
        return 0.0
    return math.dist(com_before, com_after)


def default_config(seed: int = 0, generations: int = 50,
                   population: int = 10) -> ExperimentConfig:
    return ExperimentConfig(task="mover", seed=seed, generations=generations,
                            population=population, palette=MOVER_PALETTE,
                            box_extent=(8, 8, 8))


def evaluate_candidate(genome: MlpGenome, box: DecodeBox, ticks: int) -> float:
    """Decode into a fresh world, run the physics, measure the CoM shift."""
    backend = InProcessBackend()
    decoded = decode_box(genome, box)
    if not decoded:
        return 0.0
    backend.spawn_blocks(decoded)
    sx, sy, sz = box.extent
    spawn_box = Cube(box.base, Position(box.base.x + sx - 1, box.base.y + sy - 1,
                                        box.base.z + sz - 1))
    region = spawn_box.expanded(TRACK_MARGIN_HORIZONTAL, TRACK_MARGIN_VERTICAL)
    before = backend.center_of_mass(region)
    backend.step(ticks)
    after = backend.center_of_mass(region)
    return mover_fitness(before, after)


def run_mover(config: ExperimentConfig) -> RunLog:
    if config.backend != "inprocess":
        raise ValueError("the mover task needs the in-process backend "
                         "(explicit tick stepping)")
    rng = np.random.default_rng(config.seed)
    mlp_config = MlpConfig(palette=palette_ids(config.palette or MOVER_PALETTE),
                           with_orientation=True)
    theta0 = 0.1 * rng.standard_normal(param_count(mlp_config))
    es = EsState(theta0, n=config.population)
    box = DecodeBox(Position(0, 0, 0), config.box_extent)
    log = RunLog(config)

    best: tuple[float, np.ndarray] = (-1.0, theta0)
    for gen in range(config.generations):
        candidates = es.ask(rng)
        fitnesses = [
            evaluate_candidate(MlpGenome(theta, mlp_config), box,
                               config.evaluation_ticks)
            for theta in candidates
        ]
        es.tell(fitnesses)
        record = FitnessRecord.from_fitnesses(
            gen, fitnesses, minimize=False,
            elapsed_ticks=(gen + 1) * config.population * config.evaluation_ticks)
        log.append(record)
        if record.best_fitness > best[0]:
            best = (record.best_fitness, candidates[record.best_index])
    from ..encodings import mlp as mlp_serial
    log.artifacts["best.mlp"] = mlp_serial.dumps(MlpGenome(best[1], mlp_config))
    return log

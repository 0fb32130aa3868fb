"""Tower-growth task: trees evolve toward a gold block suspended ten blocks
north, ten west, and ten up from each tower's base.

All twenty towers live in one world on a grid (40-block spacing by default);
each tower owns the region around its base and its own gold target, so
evaluations are independent and deterministic.
"""
from __future__ import annotations

import math
from typing import Optional

import numpy as np

from .. import blocks
from ..encodings.tree import tree_decode, tree_random
from ..evolve import FitnessRecord, GaPopulation, ga_step
from ..world import Block, Cube, Orientation, Position, World
from .runlog import ExperimentConfig, RunLog

# The seven allowed tower block types ("nether block" mapped to netherrack).
TOWER_PALETTE = ("OBSIDIAN", "REDSTONE_BLOCK", "GLASS", "BROWN_MUSHROOM",
                 "NETHERRACK", "COBBLESTONE", "SLIME")

# Gold target offset from the base: 10 west (-x), 10 up (+y), 10 north (-z).
TARGET_OFFSET = (-10, 10, -10)

# Each tower owns base +/- 19 horizontally and 40 blocks of height, leaving
# a buffer between neighbours at the default 40-block spacing.
REGION_HALF = 19
REGION_HEIGHT = 40


def palette_ids(names) -> tuple[int, ...]:
    return tuple(int(blocks.BlockType[n]) for n in names)


def tower_region(base: Position) -> Cube:
    return Cube(Position(base.x - REGION_HALF, base.y, base.z - REGION_HALF),
                Position(base.x + REGION_HALF, base.y + REGION_HEIGHT,
                         base.z + REGION_HALF))


def tower_fitness(world: World, tower_region: Cube, target: Position,
                  base: Optional[Position] = None) -> float:
    """Distance from the closest non-air, non-gold block to the target.

    An empty region is degenerate and scores the worst case: the distance
    from the tower base (or the region's min corner when no base is given).
    """
    gold = int(blocks.GOLD_BLOCK)
    tx, ty, tz = target
    best = None
    for (x, y, z), (type_id, _) in world._iter_region(tower_region):
        if type_id == gold:
            continue
        d = math.sqrt((x - tx) ** 2 + (y - ty) ** 2 + (z - tz) ** 2)
        if best is None or d < best:
            best = d
    if best is None:
        origin = base if base is not None else tower_region.min
        return math.dist(origin, target)
    return best


def default_config(seed: int = 0, generations: int = 30,
                   population: int = 20) -> ExperimentConfig:
    return ExperimentConfig(task="tower", seed=seed, generations=generations,
                            population=population, palette=TOWER_PALETTE, spacing=40)


def run_tower(config: ExperimentConfig) -> RunLog:
    """Evaluate-then-breed loop; logs the per-generation fitness vector."""
    if config.population < 2:
        raise ValueError("tower task needs a population of at least 2")
    rng = np.random.default_rng(config.seed)
    palette = palette_ids(config.palette or TOWER_PALETTE)
    spacing = config.spacing
    per_row = 5

    bases = [Position(spacing * (i % per_row), 0, spacing * (i // per_row))
             for i in range(config.population)]
    targets = [Position(b.x + TARGET_OFFSET[0], b.y + TARGET_OFFSET[1],
                        b.z + TARGET_OFFSET[2]) for b in bases]
    regions = [tower_region(b) for b in bases]

    world = World()
    gold = int(blocks.GOLD_BLOCK)
    pop = GaPopulation([tree_random(rng, palette) for _ in range(config.population)])
    log = RunLog(config)

    for gen in range(config.generations):
        for i, genome in enumerate(pop.genomes):
            region = regions[i]
            # Wipe the tower's region sparsely, then decode in place.
            for pos, _ in list(world._iter_region(region)):
                world.set_cell(pos, int(blocks.AIR))
            decoded = tree_decode(genome, bases[i])
            world.spawn_blocks([b for b in decoded if region.contains(b.position)])
            world.spawn_blocks([Block(targets[i], gold, Orientation.NORTH)])
        fitnesses = [tower_fitness(world, regions[i], targets[i], bases[i])
                     for i in range(config.population)]
        pop.fitnesses = fitnesses
        log.append(FitnessRecord.from_fitnesses(gen, fitnesses, minimize=True))
        if gen < config.generations - 1:
            pop = ga_step(pop, rng, palette)
    from ..encodings import tree as tree_serial
    log.artifacts["best.tree"] = tree_serial.dumps(pop.genomes[pop.best_index()])
    return log

"""Optimizers: a simple evolution strategy, one-hot interactive fitness, and
the generational GA over block trees.

The ES estimates a search direction from fitness-weighted Gaussian
perturbations: ask() samples n candidates theta + sigma * eps_i and tell()
applies theta += lr/(n*sigma) * sum(F~_i * eps_i) with z-score standardized
fitnesses (higher fitness is better). Standardization maps constant fitness
vectors to all zeros, so an uninformative generation moves nothing.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import ceil
from typing import Optional

import numpy as np

from .encodings.tree import TreeGenome, tree_crossover, tree_mutate

ES_SIGMA = 0.1
ES_LEARNING_RATE = 0.01


class AskTellError(RuntimeError):
    """ask/tell called out of order."""


class FilteredChoiceError(ValueError):
    """An interactive choice named a candidate below the minimum size."""


class EsState:
    """Evolution-strategy optimizer state (maximizes fitness)."""

    def __init__(self, theta: np.ndarray, sigma: float = ES_SIGMA,
                 lr: float = ES_LEARNING_RATE, n: int = 10, antithetic: bool = False):
        if sigma <= 0 or lr <= 0 or n < 2:
            raise ValueError("need sigma > 0, lr > 0, n >= 2")
        if antithetic and n % 2:
            raise ValueError("antithetic sampling needs an even population")
        self.theta = np.asarray(theta, dtype=np.float64).copy()
        self.sigma = float(sigma)
        self.lr = float(lr)
        self.n = int(n)
        self.antithetic = antithetic
        self._noise: Optional[np.ndarray] = None

    @property
    def dim(self) -> int:
        return self.theta.shape[0]

    def ask(self, rng: np.random.Generator) -> list[np.ndarray]:
        """Sample n candidates theta + sigma * eps_i; one tell must follow."""
        if self._noise is not None:
            raise AskTellError("ask called with an outstanding ask")
        if self.antithetic:
            half = rng.standard_normal((self.n // 2, self.dim))
            noise = np.concatenate([half, -half], axis=0)
        else:
            noise = rng.standard_normal((self.n, self.dim))
        self._noise = noise
        return [self.theta + self.sigma * noise[i] for i in range(self.n)]

    def cancel_ask(self) -> None:
        """Abandon the outstanding ask without an update (reroll support)."""
        self._noise = None

    def tell(self, fitnesses) -> np.ndarray:
        """Consume fitnesses for the outstanding ask; returns the new theta."""
        if self._noise is None:
            raise AskTellError("tell called without an outstanding ask")
        f = np.asarray(fitnesses, dtype=np.float64)
        if f.shape != (self.n,):
            raise ValueError(f"expected {self.n} fitnesses, got shape {f.shape}")
        std = f.std()
        standardized = np.zeros_like(f) if std == 0 else (f - f.mean()) / std
        step = (self.lr / (self.n * self.sigma)) * (self._noise.T @ standardized)
        self.theta = self.theta + step
        self._noise = None
        return self.theta.copy()


def es_ask(state: EsState, rng: np.random.Generator) -> list[np.ndarray]:
    return state.ask(rng)


def es_tell(state: EsState, fitnesses) -> np.ndarray:
    return state.tell(fitnesses)


def displayable_mask(sizes, min_size: int) -> list[bool]:
    return [s >= min_size for s in sizes]


def iec_fitness(chosen_index: int, n: int, sizes, min_size: int) -> np.ndarray:
    """One-hot fitness: 1.0 for the human's choice, 0.0 elsewhere. Candidates
    under the minimum size are filtered and cannot be chosen."""
    if not 0 <= chosen_index < n:
        raise ValueError(f"chosen index {chosen_index} out of range 0..{n - 1}")
    if len(sizes) != n:
        raise ValueError("sizes must have one entry per candidate")
    if sizes[chosen_index] < min_size:
        raise FilteredChoiceError(
            f"candidate {chosen_index} is below the minimum size ({sizes[chosen_index]} "
            f"< {min_size}) and cannot be chosen")
    fitness = np.zeros(n)
    fitness[chosen_index] = 1.0
    return fitness


@dataclass
class GaPopulation:
    """Tree genomes with their (lower-is-better) fitnesses."""

    genomes: list[TreeGenome]
    fitnesses: Optional[list[float]] = None
    generation: int = 0

    def __post_init__(self):
        if self.fitnesses is not None and len(self.fitnesses) != len(self.genomes):
            raise ValueError("fitness list must parallel the genome list")

    @property
    def size(self) -> int:
        return len(self.genomes)

    def best_index(self) -> int:
        if self.fitnesses is None:
            raise ValueError("population has no fitnesses yet")
        return int(np.argmin(self.fitnesses))  # ties break to the lowest index


def ga_step(pop: GaPopulation, rng: np.random.Generator, palette: tuple[int, ...],
            elite: int = 1, parent_fraction: float = 0.10,
            mutation_rate: float = 0.05) -> GaPopulation:
    """One generation: keep the best genome unchanged, breed the rest from
    crossovers of two uniformly-drawn parents (with replacement) out of the
    top parent_fraction, then mutate each child."""
    if pop.size < 2:
        raise ValueError("population must have at least two genomes")
    if pop.fitnesses is None:
        raise ValueError("evaluate fitnesses before stepping")
    order = sorted(range(pop.size), key=lambda i: (pop.fitnesses[i], i))
    pool = [pop.genomes[i] for i in order[:ceil(parent_fraction * pop.size)]]
    next_genomes = [pop.genomes[order[i]].copy() for i in range(elite)]
    while len(next_genomes) < pop.size:
        a = pool[rng.integers(len(pool))]
        b = pool[rng.integers(len(pool))]
        child = tree_crossover(a, b, rng)
        next_genomes.append(tree_mutate(child, rng, palette, rate=mutation_rate))
    return GaPopulation(next_genomes, None, pop.generation + 1)


@dataclass(frozen=True)
class FitnessRecord:
    """One generation's results; an append-only run log is a list of these.

    elapsed_ticks counts cumulative simulated ticks (0 for tasks that never
    advance a world clock)."""

    generation: int
    fitnesses: tuple[float, ...]
    best_fitness: float
    best_index: int
    elapsed_ticks: int = 0

    @staticmethod
    def from_fitnesses(generation: int, fitnesses, minimize: bool = False,
                       elapsed_ticks: int = 0) -> "FitnessRecord":
        f = list(fitnesses)
        best = int(np.argmin(f)) if minimize else int(np.argmax(f))
        return FitnessRecord(generation, tuple(f), f[best], best, elapsed_ticks)

"""Run configuration and append-only run logs.

A run log is line-delimited JSON: one header line (the full config) followed
by one record per generation. Logs carry no wall-clock data, so a re-run
with the same config and code version is byte-identical.
"""
from __future__ import annotations

import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Optional

from ..evolve import FitnessRecord


@dataclass(frozen=True)
class ExperimentConfig:
    task: str  # tower | mover | bench-cubes | bench-machines
    seed: int = 0
    generations: int = 30
    population: int = 20
    palette: tuple[str, ...] = ()
    box_extent: tuple[int, int, int] = (10, 10, 10)
    spacing: int = 40
    backend: str = "inprocess"  # or host:port of a remote server
    evaluation_ticks: int = 200  # ten seconds at 20 ticks/second
    extras: tuple[tuple[str, object], ...] = field(default_factory=tuple)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["extras"] = dict(self.extras)
        return d


@dataclass
class RunLog:
    config: ExperimentConfig
    records: list[FitnessRecord] = field(default_factory=list)
    # Side artifacts (e.g. the serialized best genome), written next to the
    # log by the CLI but never part of the JSONL stream itself.
    artifacts: dict[str, str] = field(default_factory=dict)

    def append(self, record: FitnessRecord) -> None:
        self.records.append(record)

    def best_per_generation(self) -> list[float]:
        return [r.best_fitness for r in self.records]

    def to_jsonl(self) -> str:
        lines = [json.dumps({"config": self.config.to_dict()}, sort_keys=True)]
        for r in self.records:
            lines.append(json.dumps({
                "generation": r.generation,
                "fitnesses": list(r.fitnesses),
                "best_fitness": r.best_fitness,
                "best_index": r.best_index,
                "elapsed_ticks": r.elapsed_ticks,
            }, sort_keys=True))
        return "\n".join(lines) + "\n"

    def write(self, path: Path) -> Path:
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(self.to_jsonl())
        return path

    @staticmethod
    def summary_line(log: "RunLog") -> str:
        best = log.records[-1].best_fitness if log.records else float("nan")
        return (f"task={log.config.task} seed={log.config.seed} "
                f"generations={len(log.records)} final_best={best:.4f}")

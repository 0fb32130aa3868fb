"""Figure rendering for experiment outputs.

Every runner writes delimited data (JSONL or CSV) plus a PNG rendered here;
figures are a view of the data files, never an extra source of truth.
"""
from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from .bench import CubeBenchReport, MachineBenchReport, TARGET_TICK_RATE
from .runlog import RunLog


def _finish(fig, path: Path) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    return path


def plot_fitness_curves(logs: list[RunLog], path: Path, ylabel: str,
                        title: str, log_scale: bool = False) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    for log in logs:
        gens = [r.generation for r in log.records]
        ax.plot(gens, log.best_per_generation(),
                label=f"seed {log.config.seed}", alpha=0.85)
    ax.set_xlabel("generation")
    ax.set_ylabel(ylabel)
    ax.set_title(title)
    if log_scale:
        ax.set_yscale("log")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    return _finish(fig, path)


def plot_cube_bench(report: CubeBenchReport, path: Path) -> Path:
    fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(9, 4))
    volumes = [r.volume for r in report.rows]
    ax1.plot(volumes, [r.fill_ms for r in report.rows], "o-", label="fill")
    ax1.plot(volumes, [r.clear_ms for r in report.rows], "s-", label="clear")
    ax1.axhline(50.0, color="gray", ls="--", lw=1, label="50 ms reference")
    ax1.set_xlabel("blocks per cube")
    ax1.set_ylabel("response time (ms)")
    ax1.set_xscale("log")
    ax1.grid(True, alpha=0.3)
    ax1.legend(fontsize=8)
    ax2.plot(volumes, [r.achieved_tps for r in report.rows], "o-")
    ax2.axhline(TARGET_TICK_RATE, color="gray", ls="--", lw=1)
    ax2.set_xlabel("blocks per cube")
    ax2.set_ylabel("achieved ticks/s")
    ax2.set_xscale("log")
    ax2.set_yscale("log")
    ax2.grid(True, alpha=0.3)
    fig.suptitle("cube spawn benchmark")
    return _finish(fig, path)


def plot_machine_bench(report: MachineBenchReport, path: Path) -> Path:
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot([r.count for r in report.rows],
            [r.achieved_tps for r in report.rows], "o-")
    ax.axhline(TARGET_TICK_RATE, color="gray", ls="--", lw=1,
               label=f"{TARGET_TICK_RATE:.0f} ticks/s target")
    ax.set_xlabel("flying machines")
    ax.set_ylabel("achieved ticks/s")
    ax.set_yscale("log")
    ax.set_title(f"machine stress (max sustained: {report.max_sustained})")
    ax.grid(True, alpha=0.3)
    ax.legend(fontsize=8)
    return _finish(fig, path)

"""Command-line entry points.

Subcommands: tower | mover | bench-cubes | bench-machines | serve | iec.
Experiment runs write line-delimited logs (or CSV for benchmarks), a short
summary table, and a PNG figure into --out. Options may also come from a
JSON config file (--config); explicit flags win.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time
from pathlib import Path

log = logging.getLogger("evoxel")


def _parse_seeds(text: str) -> list[int]:
    return [int(s) for s in text.split(",") if s != ""]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="evoxel",
        description="deterministic voxel-world simulator and evolution runners")
    parser.add_argument("--config", type=Path, default=None,
                        help="JSON file with defaults for the subcommand options")
    parser.add_argument("--log-level", default="info",
                        choices=["debug", "info", "warning", "error"])
    sub = parser.add_subparsers(dest="command", required=True)

    tower = sub.add_parser("tower", help="tower-growth GA toward a gold target")
    tower.add_argument("--seeds", type=_parse_seeds, default=[0],
                       help="comma-separated seeds, one run per seed")
    tower.add_argument("--generations", type=int, default=30)
    tower.add_argument("--population", type=int, default=20)
    tower.add_argument("--out", type=Path, default=Path("runs/tower"))

    mover = sub.add_parser("mover", help="moving-machine ES on CoM displacement")
    mover.add_argument("--seeds", type=_parse_seeds, default=[0])
    mover.add_argument("--generations", type=int, default=50)
    mover.add_argument("--population", type=int, default=10)
    mover.add_argument("--box", type=int, nargs=3, default=[8, 8, 8],
                       metavar=("SX", "SY", "SZ"))
    mover.add_argument("--out", type=Path, default=Path("runs/mover"))

    bc = sub.add_parser("bench-cubes", help="cube spawn latency benchmark")
    bc.add_argument("--max-n", type=int, default=31)
    bc.add_argument("--out", type=Path, default=Path("runs/bench"))

    bm = sub.add_parser("bench-machines", help="flying machine tick-rate stress")
    bm.add_argument("--max-count", type=int, default=1600)
    bm.add_argument("--out", type=Path, default=Path("runs/bench"))

    serve = sub.add_parser("serve", help="run the world server (port 5001)")
    serve.add_argument("--port", type=int, default=5001)
    serve.add_argument("--free-run", action="store_true",
                       help="advance the clock continuously at 20 ticks/s "
                            "(default: ticks advance only via the extension service)")
    serve.add_argument("--unthrottled", action="store_true",
                       help="with --free-run, drop wall-clock pacing")
    serve.add_argument("--world-seed", type=int, default=None,
                       help="reserved for future terrain support")

    iec = sub.add_parser("iec", help="interactive evolution session service")
    iec.add_argument("--port", type=int, default=8000)
    iec.add_argument("--host", default="127.0.0.1")
    return parser


def _apply_config_file(args: argparse.Namespace):
    if not args.config:
        return args
    overrides = json.loads(Path(args.config).read_text())
    explicit = {a.split("=")[0].lstrip("-").replace("-", "_")
                for a in sys.argv[1:] if a.startswith("--")}
    for key, value in overrides.items():
        attr = key.replace("-", "_")
        if hasattr(args, attr) and attr not in explicit:
            if attr == "seeds" and isinstance(value, list):
                setattr(args, attr, [int(v) for v in value])
            elif attr in ("out", "config"):
                setattr(args, attr, Path(value))
            else:
                setattr(args, attr, value)
    return args


def _write_runs(logs, out: Path, task: str, ylabel: str, log_scale: bool):
    from .experiments.report import plot_fitness_curves
    from .experiments.runlog import RunLog
    out.mkdir(parents=True, exist_ok=True)
    summary = []
    for run in logs:
        path = run.write(out / f"{task}-seed{run.config.seed}.jsonl")
        summary.append(RunLog.summary_line(run))
        log.info("wrote %s", path)
        for name, content in run.artifacts.items():
            (out / f"{task}-seed{run.config.seed}-{name}").write_text(content)
    fig = plot_fitness_curves(logs, out / f"{task}.png", ylabel,
                              f"{task} runs", log_scale=log_scale)
    (out / f"{task}-summary.txt").write_text("\n".join(summary) + "\n")
    log.info("wrote %s", fig)
    print("\n".join(summary))


def cmd_tower(args) -> int:
    from .experiments.tower import default_config, run_tower
    logs = []
    for seed in args.seeds:
        t0 = time.perf_counter()
        run = run_tower(default_config(seed=seed, generations=args.generations,
                                       population=args.population))
        log.info("tower seed %d finished in %.1fs (best %.3f)", seed,
                 time.perf_counter() - t0, run.records[-1].best_fitness)
        logs.append(run)
    _write_runs(logs, args.out, "tower", "best distance to gold block", False)
    return 0


def cmd_mover(args) -> int:
    from .experiments.mover import default_config, run_mover
    from dataclasses import replace
    logs = []
    for seed in args.seeds:
        config = replace(default_config(seed=seed, generations=args.generations,
                                        population=args.population),
                         box_extent=tuple(args.box))
        t0 = time.perf_counter()
        run = run_mover(config)
        log.info("mover seed %d finished in %.1fs (best %.3f)", seed,
                 time.perf_counter() - t0,
                 max(r.best_fitness for r in run.records))
        logs.append(run)
    _write_runs(logs, args.out, "mover", "best CoM displacement (blocks)", False)
    return 0


def cmd_bench_cubes(args) -> int:
    from .experiments.bench import bench_cubes
    from .experiments.report import plot_cube_bench
    report = bench_cubes(max_n=args.max_n)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "bench-cubes.csv").write_text(report.to_csv())
    plot_cube_bench(report, args.out / "bench-cubes.png")
    print(report.to_csv().rstrip())
    return 0


def cmd_bench_machines(args) -> int:
    from .experiments.bench import bench_machines
    from .experiments.report import plot_machine_bench
    report = bench_machines(max_count=args.max_count)
    args.out.mkdir(parents=True, exist_ok=True)
    (args.out / "bench-machines.csv").write_text(report.to_csv())
    plot_machine_bench(report, args.out / "bench-machines.png")
    print(report.to_csv().rstrip())
    print(f"max machines sustaining >=20 ticks/s: {report.max_sustained}")
    return 0


def cmd_serve(args) -> int:
    import threading
    from .rpc import InProcessBackend, serve
    backend = InProcessBackend()
    if args.world_seed is not None:
        log.info("world seed %d noted (terrain generation not implemented)",
                 args.world_seed)
    server = serve(port=args.port, backend=backend)
    log.info("world server on port %d", args.port)
    if args.free_run:
        backend.set_tick_rate(None if args.unthrottled else 20.0)

        def ticker():
            while True:
                backend.step(1)

        threading.Thread(target=ticker, daemon=True).start()
        log.info("free-running clock (%s)",
                 "unthrottled" if args.unthrottled else "20 ticks/s")
    try:
        server.wait_for_termination()
    except KeyboardInterrupt:
        server.stop(grace=1.0)
    return 0


def cmd_iec(args) -> int:
    import uvicorn
    from .iec.api import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="warning")
    return 0


_COMMANDS = {
    "tower": cmd_tower,
    "mover": cmd_mover,
    "bench-cubes": cmd_bench_cubes,
    "bench-machines": cmd_bench_machines,
    "serve": cmd_serve,
    "iec": cmd_iec,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=args.log_level.upper(),
                        format="%(asctime)s %(name)s %(levelname)s %(message)s")
    args = _apply_config_file(args)
    return _COMMANDS[args.command](args)


if __name__ == "__main__":
    sys.exit(main())

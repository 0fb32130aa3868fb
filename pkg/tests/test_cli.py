import json

import pytest

from evoxel.cli import build_parser, main


def test_parser_covers_all_subcommands():
    parser = build_parser()
    for argv, attr, expected in [
        (["tower", "--seeds", "3,4"], "seeds", [3, 4]),
        (["mover", "--generations", "7"], "generations", 7),
        (["bench-cubes", "--max-n", "9"], "max_n", 9),
        (["bench-machines", "--max-count", "50"], "max_count", 50),
        (["serve", "--port", "6001"], "port", 6001),
        (["iec", "--port", "8100"], "port", 8100),
    ]:
        args = parser.parse_args(argv)
        assert getattr(args, attr) == expected


def test_serve_flags_exist():
    args = build_parser().parse_args(
        ["serve", "--free-run", "--unthrottled", "--world-seed", "7"])
    assert args.free_run and args.unthrottled and args.world_seed == 7


def test_tower_run_writes_outputs(tmp_path):
    rc = main(["--log-level", "warning", "tower", "--seeds", "0",
               "--generations", "2", "--out", str(tmp_path)])
    assert rc == 0
    assert (tmp_path / "tower-seed0.jsonl").exists()
    assert (tmp_path / "tower-seed0-best.tree").exists()
    assert (tmp_path / "tower-summary.txt").exists()
    assert (tmp_path / "tower.png").stat().st_size > 0


def test_config_file_merges_under_flags(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"generations": 2, "seeds": [1],
                               "out": str(tmp_path / "out")}))
    rc = main(["--log-level", "warning", "--config", str(cfg), "tower"])
    assert rc == 0
    assert (tmp_path / "out" / "tower-seed1.jsonl").exists()


def test_bench_cubes_writes_csv_and_figure(tmp_path):
    rc = main(["--log-level", "warning", "bench-cubes", "--max-n", "4",
               "--out", str(tmp_path)])
    assert rc == 0
    csv = (tmp_path / "bench-cubes.csv").read_text()
    assert csv.startswith("n,volume,")
    assert len(csv.strip().split("\n")) == 5
    assert (tmp_path / "bench-cubes.png").exists()

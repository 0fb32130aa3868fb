import pytest

from evoxel import blocks
from evoxel.engine import BLOCKED, PUSH_LIMIT, TickEngine
from evoxel.world import Block, Orientation, Position, World, cube


def blk(x, y, z, t, o=Orientation.NORTH):
    return Block(Position(x, y, z), t, o)


class TestPowerLevel:
    def test_redstone_block_powers_neighbours(self, world, engine):
        world.spawn_blocks([blk(0, 0, 0, blocks.REDSTONE_BLOCK)])
        assert engine.power_level((1, 0, 0))
        assert engine.power_level((0, -1, 0))
        assert not engine.power_level((1, 1, 0))  # diagonal

    def test_isolated_solid_is_unpowered(self, world, engine):
        world.spawn_blocks([blk(0, 0, 0, blocks.OBSIDIAN)])
        assert not engine.power_level((0, 0, 0))
        assert not engine.power_level((1, 0, 0))

    def test_observer_pulse_window(self, world, engine):
        world.spawn_blocks([blk(0, 0, 0, blocks.OBSERVER, Orientation.NORTH)])
        engine.step(5)  # placement pulse expires
        assert not engine.power_level((0, 0, 1))
        t0 = world.tick
        world.spawn_blocks([blk(0, 0, -1, blocks.OBSIDIAN)])  # watched cell changes
        powered = []
        for _ in range(4):
            engine.step(1)
            powered.append(engine.power_level((0, 0, 1)))
        assert powered == [True, True, False, False]
        # power comes out of the back only
        world.spawn_blocks([blk(0, 0, -1, blocks.AIR)])
        engine.step(1)
        assert not engine.power_level((0, 1, 0))


class TestPushSets:
    def test_single_slime(self, world, engine):
        world.spawn_blocks([blk(0, 0, 0, blocks.STICKY_PISTON, Orientation.EAST),
                            blk(1, 0, 0, blocks.SLIME)])
        members, deletions = engine.compute_push_set((0, 0, 0), Orientation.EAST)
        assert members == [(1, 0, 0)] and not deletions

    def test_slime_with_adjacent_obsidian_blocks(self, world, engine):
        world.spawn_blocks([blk(0, 0, 0, blocks.STICKY_PISTON, Orientation.EAST),
                            blk(1, 0, 0, blocks.SLIME),
                            blk(1, 1, 0, blocks.OBSIDIAN)])
        assert engine.compute_push_set((0, 0, 0), Orientation.EAST) is BLOCKED

    def test_line_of_13_blocked_12_fine(self, world, engine):
        world.spawn_blocks([blk(0, 0, 0, blocks.PISTON, Orientation.EAST)])
        world.spawn_blocks([blk(i, 0, 0, blocks.BlockType.STONE) for i in range(1, 14)])
        assert engine.compute_push_set((0, 0, 0), Orientation.EAST) is BLOCKED
        world.spawn_blocks([blk(13, 0, 0, blocks.AIR)])
        members, _ = engine.compute_push_set((0, 0, 0), Orientation.EAST)
        assert len(members) == 12 == PUSH_LIMIT

    def test_slime_recruits_transitively(self, world, engine):
        world.spawn_blocks([blk(0, 0, 0, blocks.PISTON, Orientation.EAST),
                            blk(1, 0, 0, blocks.SLIME),
                            blk(1, 1, 0, blocks.SLIME),
                            blk(1, 2, 0, blocks.BlockType.STONE)])
        members, _ = engine.compute_push_set((0, 0, 0), Orientation.EAST)
        assert set(members) == {(1, 0, 0), (1, 1, 0), (1, 2, 0)}

    def test_breaks_class_is_deleted_not_recruited(self, world, engine):
        world.spawn_blocks([blk(0, 0, 0, blocks.PISTON, Orientation.EAST),
                            blk(1, 0, 0, blocks.BlockType.STONE),
                            blk(2, 0, 0, blocks.BlockType.TORCH)])
        members, deletions = engine.compute_push_set((0, 0, 0), Orientation.EAST)
        assert members == [(1, 0, 0)] and deletions == {(2, 0, 0)}

    def test_push_into_extended_piston_blocked(self, world, engine):
        world.spawn_blocks([blk(0, 0, 0, blocks.PISTON, Orientation.EAST),
                            blk(0, 0, 1, blocks.REDSTONE_BLOCK)])
        engine.step(5)
        assert engine.is_extended((0, 0, 0))
        world.spawn_blocks([blk(0, 2, 0, blocks.PISTON, Orientation.DOWN),
                            blk(0, 1, 0, blocks.SLIME)])
        # slime at (0,1,0) is adjacent to the extended piston base at (0,0,0)
        assert engine.compute_push_set((0, 2, 0), Orientation.DOWN) is BLOCKED


class TestPistonCycle:
    def test_lone_piston_with_redstone_extends_and_stays(self, world, engine):
        world.spawn_blocks([blk(0, 0, 0, blocks.REDSTONE_BLOCK),
                            blk(1, 0, 0, blocks.PISTON, Orientation.EAST)])
        engine.step(4)
        assert engine.is_extended((1, 0, 0))
        assert world.type_at((2, 0, 0)) == int(blocks.PISTON_HEAD)
        engine.step(100)
        assert engine.is_extended((1, 0, 0))

    def test_piston_pushes_block_one_cell(self, world, engine):
        world.spawn_blocks([blk(0, 0, 0, blocks.REDSTONE_BLOCK),
                            blk(1, 0, 0, blocks.PISTON, Orientation.EAST),
                            blk(2, 0, 0, blocks.BlockType.STONE)])
        engine.step(10)
        assert world.type_at((3, 0, 0)) == int(blocks.BlockType.STONE)
        assert world.type_at((2, 0, 0)) == int(blocks.PISTON_HEAD)

    def test_sticky_piston_pulls_back(self, world, engine):
        world.spawn_blocks([blk(1, 0, 0, blocks.STICKY_PISTON, Orientation.EAST),
                            blk(2, 0, 0, blocks.BlockType.STONE),
                            blk(0, 0, 0, blocks.REDSTONE_BLOCK)])
        engine.step(6)
        assert world.type_at((3, 0, 0)) == int(blocks.BlockType.STONE)
        world.spawn_blocks([blk(0, 0, 0, blocks.AIR)])  # cut power
        engine.step(6)
        assert world.type_at((2, 0, 0)) == int(blocks.BlockType.STONE)
        assert not engine.is_extended((1, 0, 0))

    def test_block_conservation_under_pure_motion(self, world, engine):
        from evoxel.experiments.blueprints import flying_machine
        from evoxel.engine import REFERENCE_CYCLE_TICKS
        flying_machine().spawn(world)
        region = cube((-500, -50, -500), (500, 50, 500))
        engine.step(18)  # settle into the steady cycle, heads clear
        counts = []
        for _ in range(20):
            counts.append(world.non_air_count(region))
            engine.step(REFERENCE_CYCLE_TICKS)
        assert len(set(counts)) == 1


class TestDeterminism:
    def _machine_world(self):
        from evoxel.experiments.blueprints import flying_machine
        w = World()
        e = TickEngine(w)
        flying_machine().spawn(w)
        return w, e

    def test_step_batching_equivalence(self):
        w1, e1 = self._machine_world()
        w2, e2 = self._machine_world()
        e1.step(200)
        for _ in range(200):
            e2.step(1)
        assert w1.snapshot() == w2.snapshot()
        assert w1.tick == w2.tick == 200

    def test_identical_runs_bit_identical(self):
        snaps = []
        for _ in range(3):
            w, e = self._machine_world()
            e.step(137)
            snaps.append(w.snapshot())
        assert snaps[0] == snaps[1] == snaps[2]

    def test_fixed_point_without_mechanisms(self, world, engine):
        world.fill_cube(cube((0, 0, 0), (3, 3, 3)), blocks.OBSIDIAN)
        before = world.snapshot()
        engine.step(200)
        assert world.snapshot() == before
        assert world.tick == 200

    def test_pacing_does_not_change_semantics(self):
        w1, e1 = self._machine_world()
        w2, e2 = self._machine_world()
        e2.set_tick_rate(2000.0)
        e1.step(40)
        e2.step(40)
        assert w1.snapshot() == w2.snapshot()


class TestTickRate:
    def test_rate_zero_rejected(self, engine):
        with pytest.raises(ValueError):
            engine.set_tick_rate(0)
        with pytest.raises(ValueError):
            engine.set_tick_rate(-5)

    def test_unthrottled_allowed(self, engine):
        engine.set_tick_rate(None)
        engine.set_tick_rate(20.0)

    def test_step_requires_positive_ticks(self, engine):
        with pytest.raises(ValueError):
            engine.step(0)

    def test_throttled_step_paces_wall_clock(self, world, engine):
        import time
        engine.set_tick_rate(200.0)
        t0 = time.perf_counter()
        engine.step(20)  # 0.1 s at 200 ticks/s
        elapsed = time.perf_counter() - t0
        assert elapsed >= 0.08

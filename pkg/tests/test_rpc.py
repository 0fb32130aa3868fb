"""Loopback tests: the remote view of a world must match the in-process one
exactly, and protocol errors must carry machine-readable reasons."""
import grpc
import numpy as np
import pytest

from evoxel import blocks
from evoxel.rpc import (InProcessBackend, RemoteBackend, measure_rpc_latency,
                        serve)
from evoxel.rpc import schema
from evoxel.world import Block, Cube, Orientation, Position, cube

PORT = 50912


@pytest.fixture(scope="module")
def loopback():
    backend = InProcessBackend()
    server = serve(port=PORT, backend=backend)
    client = RemoteBackend(f"localhost:{PORT}")
    yield backend, client
    client.close()
    server.stop(0)


@pytest.fixture(autouse=True)
def fresh(loopback):
    loopback[0].reset()


def blk(x, y, z, t=blocks.OBSIDIAN, o=Orientation.NORTH):
    return Block(Position(x, y, z), t, o)


class TestRoundTrip:
    def test_spawn_then_read(self, loopback):
        _, client = loopback
        client.spawn_blocks([blk(0, 5, 0)])
        got = client.read_cube(cube((0, 5, 0), (0, 5, 0)))
        assert got == [blk(0, 5, 0)]

    def test_empty_spawn_is_valid_and_fast(self, loopback):
        _, client = loopback
        latency = measure_rpc_latency(client.spawn_blocks, [])
        assert latency < 100.0

    def test_in_process_single_block_under_1ms(self, loopback):
        backend, _ = loopback
        latency = measure_rpc_latency(backend.spawn_blocks, [blk(1, 1, 1)])
        assert latency < 1.0

    def test_backend_equivalence_random_ops(self, loopback):
        backend_local = InProcessBackend()
        _, client = loopback
        rng = np.random.default_rng(5)
        types = [int(blocks.OBSIDIAN), int(blocks.SLIME), int(blocks.AIR),
                 int(blocks.BlockType.STONE)]
        for _ in range(30):
            batch = [blk(*(int(v) for v in rng.integers(-8, 8, 3)),
                         int(rng.choice(types)), Orientation(int(rng.integers(6))))
                     for _ in range(rng.integers(1, 12))]
            backend_local.spawn_blocks(batch)
            client.spawn_blocks(batch)
        region = cube((-8, -8, -8), (7, 7, 7))
        assert backend_local.read_cube(region) == client.read_cube(region)

    def test_fill_cube_remote(self, loopback):
        _, client = loopback
        client.fill_cube(cube((0, 0, 0), (2, 2, 2)), blocks.OBSIDIAN)
        got = client.read_cube(cube((0, 0, 0), (2, 2, 2)))
        assert all(b.type == blocks.OBSIDIAN for b in got)


class TestErrors:
    def test_unknown_type_id_status_and_atomicity(self, loopback):
        backend, client = loopback
        with pytest.raises(grpc.RpcError) as e:
            client.spawn_blocks([blk(1, 1, 1), Block(Position(2, 2, 2), 999,
                                                     Orientation.NORTH)])
        assert e.value.code() == grpc.StatusCode.INVALID_ARGUMENT
        assert "999" in e.value.details()
        assert backend.read_cube(cube((1, 1, 1), (2, 2, 2)))[0].type == blocks.AIR

    def test_degenerate_cube(self, loopback):
        _, client = loopback
        msg = client._m.Cube()
        msg.min.x, msg.min.y, msg.min.z = (1, 0, 0)
        msg.max.x, msg.max.y, msg.max.z = (0, 0, 0)
        with pytest.raises(grpc.RpcError) as e:
            client._read(msg)
        assert e.value.code() == grpc.StatusCode.INVALID_ARGUMENT

    def test_step_zero_rejected(self, loopback):
        _, client = loopback
        with pytest.raises(grpc.RpcError) as e:
            client.step(0)
        assert e.value.code() == grpc.StatusCode.INVALID_ARGUMENT

    def test_bad_tick_rate_rejected(self, loopback):
        _, client = loopback
        with pytest.raises(grpc.RpcError) as e:
            client.set_tick_rate(-3.0)
        assert e.value.code() == grpc.StatusCode.INVALID_ARGUMENT


class TestExtensionService:
    def test_reset_then_read_all_air(self, loopback):
        _, client = loopback
        client.fill_cube(cube((0, 0, 0), (3, 3, 3)), blocks.OBSIDIAN)
        client.reset()
        got = client.read_cube(cube((0, 0, 0), (3, 3, 3)))
        assert all(b.type == blocks.AIR for b in got)

    def test_step_returns_tick_counter(self, loopback):
        _, client = loopback
        assert client.step(5) == 5
        assert client.step(3) == 8

    def test_mover_measurement_pipeline(self, loopback):
        from evoxel.experiments.blueprints import flying_machine
        _, client = loopback
        client.spawn_blocks(flying_machine().placed_at((0, 0, 0)))
        region = cube((-300, -30, -300), (300, 30, 300))
        com0 = client.center_of_mass(region)
        client.step(200)
        com1 = client.center_of_mass(region)
        assert com0[2] - com1[2] == pytest.approx(18.0)

    def test_center_of_mass_no_mass_sentinel(self, loopback):
        _, client = loopback
        assert client.center_of_mass(cube((0, 0, 0), (2, 2, 2))) is None

    def test_extension_isolation(self, loopback):
        """A base-service-only client sees exactly the three RPCs; calling a
        method that is not part of the base service fails cleanly."""
        _, client = loopback
        bogus = client._channel.unary_unary(
            schema.method_path(schema.BASE_SERVICE, "step"),
            request_serializer=lambda m: m.SerializeToString(),
            response_deserializer=client._m.TickCount.FromString)
        with pytest.raises(grpc.RpcError) as e:
            bogus(client._m.StepRequest(ticks=1))
        assert e.value.code() == grpc.StatusCode.UNIMPLEMENTED

    def test_port_conflict_raises(self, loopback):
        with pytest.raises(RuntimeError):
            serve(port=PORT, backend=InProcessBackend())

"""Client-side view of a world server: the same backend surface as the
in-process simulator, spoken over gRPC."""
from __future__ import annotations

import time
from typing import Optional

import grpc

from ..world import Block, Cube, Orientation, Position
from . import schema
from .backends import UnsupportedOperationError


class RemoteBackend:
    """Backend over a gRPC channel.

    The three base operations work against any server implementing the base
    service; the extension operations (step/reset/tick rate/center of mass)
    exist only on the simulator and raise UnsupportedOperationError when the
    server does not provide them.
    """

    def __init__(self, target: str = "localhost:5001",
                 channel: Optional[grpc.Channel] = None):
        self._channel = channel if channel is not None else grpc.insecure_channel(target)
        m = schema.messages()
        self._m = m

        def unary(service, method, response_cls):
            return self._channel.unary_unary(
                schema.method_path(service, method),
                request_serializer=lambda msg: msg.SerializeToString(),
                response_deserializer=response_cls.FromString)

        base, sim = schema.BASE_SERVICE, schema.SIM_SERVICE
        self._spawn = unary(base, "spawnBlocks", m.Empty)
        self._read = unary(base, "readCube", m.Blocks)
        self._fill = unary(base, "fillCube", m.Empty)
        self._step = unary(sim, "step", m.TickCount)
        self._reset = unary(sim, "reset", m.Empty)
        self._set_rate = unary(sim, "setTickRate", m.Empty)
        self._com = unary(sim, "centerOfMass", m.CenterOfMass)

    def close(self):
        self._channel.close()

    # -- base service -----------------------------------------------------------

    def spawn_blocks(self, block_list: list[Block]) -> None:
        msg = self._m.Blocks()
        for b in block_list:
            e = msg.blocks.add()
            e.position.x, e.position.y, e.position.z = b.position
            e.type = int(b.type)
            e.orientation = int(b.orientation)
        self._spawn(msg)

    def read_cube(self, region: Cube) -> list[Block]:
        from .. import blocks as _blocks
        reply = self._read(self._cube_msg(region))
        return [Block(Position(b.position.x, b.position.y, b.position.z),
                      _blocks.BlockType(b.type), Orientation(b.orientation))
                for b in reply.blocks]

    def fill_cube(self, region: Cube, type_id: int) -> None:
        msg = self._m.FillCubeRequest(cube=self._cube_msg(region), type=int(type_id))
        self._fill(msg)

    # -- extension service --------------------------------------------------------

    def step(self, n_ticks: int) -> int:
        return self._ext(lambda: self._step(self._m.StepRequest(ticks=n_ticks))).tick

    def reset(self) -> None:
        self._ext(lambda: self._reset(self._m.Empty()))

    def set_tick_rate(self, rate: Optional[float]) -> None:
        msg = self._m.TickRate(ticks_per_second=0.0 if rate is None else rate)
        self._ext(lambda: self._set_rate(msg))

    def center_of_mass(self, region: Cube) -> Optional[tuple[float, float, float]]:
        reply = self._ext(lambda: self._com(self._cube_msg(region)))
        return (reply.x, reply.y, reply.z) if reply.has_mass else None

    # -- helpers -------------------------------------------------------------------

    def _cube_msg(self, region: Cube):
        msg = self._m.Cube()
        msg.min.x, msg.min.y, msg.min.z = region.min
        msg.max.x, msg.max.y, msg.max.z = region.max
        return msg

    @staticmethod
    def _ext(call):
        try:
            return call()
        except grpc.RpcError as e:
            if e.code() in (grpc.StatusCode.UNIMPLEMENTED, grpc.StatusCode.UNKNOWN):
                raise UnsupportedOperationError(
                    "server does not provide the simulator extension service") from e
            raise


def measure_rpc_latency(op, payload) -> float:
    """Wall-clock duration of one backend call, in milliseconds."""
    t0 = time.perf_counter()
    op(payload)
    return (time.perf_counter() - t0) * 1000.0

"""gRPC server exposing the base service (wire-compatible spawn/read/fill)
plus the simulator extension service on the same port (default 5001)."""
from __future__ import annotations

import logging
from concurrent import futures
from typing import Optional

import grpc

from .. import blocks
from ..world import Block, Cube, DegenerateCubeError, Orientation, Position
from ..blocks import UnknownBlockTypeError
from . import schema
from .backends import InProcessBackend, WorldBackend

log = logging.getLogger(__name__)

DEFAULT_PORT = 5001


def _to_cube(msg) -> Cube:
    return Cube(Position(msg.min.x, msg.min.y, msg.min.z),
                Position(msg.max.x, msg.max.y, msg.max.z))


def _to_blocks(msg) -> list[Block]:
    return [Block(Position(b.position.x, b.position.y, b.position.z),
                  b.type, Orientation(b.orientation)) for b in msg.blocks]


def _from_blocks(block_list: list[Block], m) -> object:
    out = m.Blocks()
    for b in block_list:
        entry = out.blocks.add()
        entry.position.x, entry.position.y, entry.position.z = b.position
        entry.type = int(b.type)
        entry.orientation = int(b.orientation)
    return out


class _BaseService:
    def __init__(self, backend: WorldBackend):
        self._backend = backend
        self._m = schema.messages()

    def spawnBlocks(self, request, context):
        try:
            self._backend.spawn_blocks(_to_blocks(request))
        except UnknownBlockTypeError as e:
            context.abort(grpc.StatusCode.INVALID_ARGUMENT, str(e))
        return self._m.Empty()

    def readCube(self, request, context):
        try:
            result = self._backend.read_cube(_to_cube(request))
        except DegenerateCubeError as e:
            context.abort(grpc.StatusCode.INVALID_ARGUMENT, str(e))
        return _from_blocks(result, self._m)

    def fillCube(self, request, context):
        try:
            self._backend.fill_cube(_to_cube(request.cube), request.type)
        except (UnknownBlockTypeError, DegenerateCubeError) as e:
            context.abort(grpc.StatusCode.INVALID_ARGUMENT, str(e))
        return self._m.Empty()

    def handlers(self) -> grpc.GenericRpcHandler:
        m = self._m
        table = {
            "spawnBlocks": grpc.unary_unary_rpc_method_handler(
                self.spawnBlocks,
                request_deserializer=m.Blocks.FromString,
                response_serializer=lambda msg: msg.SerializeToString()),
            "readCube": grpc.unary_unary_rpc_method_handler(
                self.readCube,
                request_deserializer=m.Cube.FromString,
                response_serializer=lambda msg: msg.SerializeToString()),
            "fillCube": grpc.unary_unary_rpc_method_handler(
                self.fillCube,
                request_deserializer=m.FillCubeRequest.FromString,
                response_serializer=lambda msg: msg.SerializeToString()),
        }
        return grpc.method_handlers_generic_handler(schema.BASE_SERVICE, table)


class _SimulatorService:
    """Extension RPCs; only meaningful against the in-process simulator."""

    def __init__(self, backend: WorldBackend):
        self._backend = backend
        self._m = schema.messages()

    def step(self, request, context):
        if request.ticks < 1:
            context.abort(grpc.StatusCode.INVALID_ARGUMENT, "ticks must be >= 1")
        tick = self._backend.step(request.ticks)
        return self._m.TickCount(tick=tick)

    def reset(self, request, context):
        self._backend.reset()
        return self._m.Empty()

    def setTickRate(self, request, context):
        rate = request.ticks_per_second
        try:
            self._backend.set_tick_rate(None if rate == 0 else rate)
        except ValueError as e:
            context.abort(grpc.StatusCode.INVALID_ARGUMENT, str(e))
        return self._m.Empty()

    def centerOfMass(self, request, context):
        try:
            com = self._backend.center_of_mass(_to_cube(request))
        except DegenerateCubeError as e:
            context.abort(grpc.StatusCode.INVALID_ARGUMENT, str(e))
        if com is None:
            return self._m.CenterOfMass(has_mass=False)
        return self._m.CenterOfMass(has_mass=True, x=com[0], y=com[1], z=com[2])

    def handlers(self) -> grpc.GenericRpcHandler:
        m = self._m
        table = {
            "step": grpc.unary_unary_rpc_method_handler(
                self.step,
                request_deserializer=m.StepRequest.FromString,
                response_serializer=lambda msg: msg.SerializeToString()),
            "reset": grpc.unary_unary_rpc_method_handler(
                self.reset,
                request_deserializer=m.Empty.FromString,
                response_serializer=lambda msg: msg.SerializeToString()),
            "setTickRate": grpc.unary_unary_rpc_method_handler(
                self.setTickRate,
                request_deserializer=m.TickRate.FromString,
                response_serializer=lambda msg: msg.SerializeToString()),
            "centerOfMass": grpc.unary_unary_rpc_method_handler(
                self.centerOfMass,
                request_deserializer=m.Cube.FromString,
                response_serializer=lambda msg: msg.SerializeToString()),
        }
        return grpc.method_handlers_generic_handler(schema.SIM_SERVICE, table)


def serve(port: int = DEFAULT_PORT, backend: Optional[WorldBackend] = None,
          max_workers: int = 8) -> grpc.Server:
    """Start the server; returns the running grpc.Server handle.

    Raises RuntimeError if the port is already in use.
    """
    if backend is None:
        backend = InProcessBackend()
    server = grpc.server(futures.ThreadPoolExecutor(max_workers=max_workers),
                         options=(("grpc.so_reuseport", 0),))
    server.add_generic_rpc_handlers((_BaseService(backend).handlers(),))
    server.add_generic_rpc_handlers((_SimulatorService(backend).handlers(),))
    bound = server.add_insecure_port(f"[::]:{port}")
    if bound == 0:
        raise RuntimeError(f"could not bind port {port} (already in use?)")
    server.start()
    log.info("serving on port %d", bound)
    return server

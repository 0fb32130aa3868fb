"""Protocol-buffer message classes built at runtime from the block registry.

The message and service shapes mirror the vendored ``minecraft.proto`` and
``simulator.proto`` files field for field; a schema-diff test keeps the two
representations and the block registry in lock step. Building descriptors at
runtime avoids a code-generation step while staying wire-compatible.
"""
from __future__ import annotations

from functools import lru_cache

from google.protobuf import descriptor_pb2, descriptor_pool, message_factory

from .. import blocks

BASE_PACKAGE = "dk.itu.real.ooe"
SIM_PACKAGE = "dk.itu.real.ooe.sim"

BASE_SERVICE = f"{BASE_PACKAGE}.MinecraftService"
SIM_SERVICE = f"{SIM_PACKAGE}.SimulatorService"

BASE_METHODS = ("spawnBlocks", "readCube", "fillCube")
SIM_METHODS = ("step", "reset", "setTickRate", "centerOfMass")

_F = descriptor_pb2.FieldDescriptorProto


def _field(msg, name, number, ftype, type_name=None, repeated=False):
    f = msg.field.add()
    f.name = name
    f.number = number
    f.type = ftype
    f.label = _F.LABEL_REPEATED if repeated else _F.LABEL_OPTIONAL
    if type_name:
        f.type_name = type_name
    return f


def _base_file() -> descriptor_pb2.FileDescriptorProto:
    fdp = descriptor_pb2.FileDescriptorProto()
    fdp.name = "minecraft.proto"
    fdp.package = BASE_PACKAGE
    fdp.syntax = "proto3"

    orient = fdp.enum_type.add()
    orient.name = "Orientation"
    for i, n in enumerate(("NORTH", "WEST", "EAST", "SOUTH", "UP", "DOWN")):
        v = orient.value.add(); v.name = n; v.number = i

    btype = fdp.enum_type.add()
    btype.name = "BlockType"
    for info in blocks.registry():
        v = btype.value.add(); v.name = info.name; v.number = info.id

    fdp.message_type.add().name = "Empty"

    point = fdp.message_type.add()
    point.name = "Point"
    for i, n in enumerate(("x", "y", "z"), start=1):
        _field(point, n, i, _F.TYPE_INT32)

    cube = fdp.message_type.add()
    cube.name = "Cube"
    _field(cube, "min", 1, _F.TYPE_MESSAGE, f".{BASE_PACKAGE}.Point")
    _field(cube, "max", 2, _F.TYPE_MESSAGE, f".{BASE_PACKAGE}.Point")

    fill = fdp.message_type.add()
    fill.name = "FillCubeRequest"
    _field(fill, "cube", 1, _F.TYPE_MESSAGE, f".{BASE_PACKAGE}.Cube")
    _field(fill, "type", 2, _F.TYPE_ENUM, f".{BASE_PACKAGE}.BlockType")

    block = fdp.message_type.add()
    block.name = "Block"
    _field(block, "position", 1, _F.TYPE_MESSAGE, f".{BASE_PACKAGE}.Point")
    _field(block, "type", 2, _F.TYPE_ENUM, f".{BASE_PACKAGE}.BlockType")
    _field(block, "orientation", 3, _F.TYPE_ENUM, f".{BASE_PACKAGE}.Orientation")

    blocks_msg = fdp.message_type.add()
    blocks_msg.name = "Blocks"
    _field(blocks_msg, "blocks", 1, _F.TYPE_MESSAGE, f".{BASE_PACKAGE}.Block",
           repeated=True)

    svc = fdp.service.add()
    svc.name = "MinecraftService"
    for method, inp, out in (("spawnBlocks", "Blocks", "Empty"),
                             ("readCube", "Cube", "Blocks"),
                             ("fillCube", "FillCubeRequest", "Empty")):
        m = svc.method.add()
        m.name = method
        m.input_type = f".{BASE_PACKAGE}.{inp}"
        m.output_type = f".{BASE_PACKAGE}.{out}"
    return fdp


def _sim_file() -> descriptor_pb2.FileDescriptorProto:
    fdp = descriptor_pb2.FileDescriptorProto()
    fdp.name = "simulator.proto"
    fdp.package = SIM_PACKAGE
    fdp.syntax = "proto3"
    fdp.dependency.append("minecraft.proto")

    step = fdp.message_type.add()
    step.name = "StepRequest"
    _field(step, "ticks", 1, _F.TYPE_INT32)

    tick = fdp.message_type.add()
    tick.name = "TickCount"
    _field(tick, "tick", 1, _F.TYPE_INT64)

    rate = fdp.message_type.add()
    rate.name = "TickRate"
    _field(rate, "ticks_per_second", 1, _F.TYPE_DOUBLE)

    com = fdp.message_type.add()
    com.name = "CenterOfMass"
    _field(com, "has_mass", 1, _F.TYPE_BOOL)
    _field(com, "x", 2, _F.TYPE_DOUBLE)
    _field(com, "y", 3, _F.TYPE_DOUBLE)
    _field(com, "z", 4, _F.TYPE_DOUBLE)

    svc = fdp.service.add()
    svc.name = "SimulatorService"
    for method, inp, out in (
            ("step", f"{SIM_PACKAGE}.StepRequest", f"{SIM_PACKAGE}.TickCount"),
            ("reset", f"{BASE_PACKAGE}.Empty", f"{BASE_PACKAGE}.Empty"),
            ("setTickRate", f"{SIM_PACKAGE}.TickRate", f"{BASE_PACKAGE}.Empty"),
            ("centerOfMass", f"{BASE_PACKAGE}.Cube", f"{SIM_PACKAGE}.CenterOfMass")):
        m = svc.method.add()
        m.name = method
        m.input_type = f".{inp}"
        m.output_type = f".{out}"
    return fdp


class _Messages:
    """Lazily-built message classes plus the descriptor pool they live in."""

    def __init__(self):
        self.pool = descriptor_pool.DescriptorPool()
        self.pool.Add(_base_file())
        self.pool.Add(_sim_file())

        def cls(full_name: str):
            return message_factory.GetMessageClass(
                self.pool.FindMessageTypeByName(full_name))

        self.Empty = cls(f"{BASE_PACKAGE}.Empty")
        self.Point = cls(f"{BASE_PACKAGE}.Point")
        self.Cube = cls(f"{BASE_PACKAGE}.Cube")
        self.FillCubeRequest = cls(f"{BASE_PACKAGE}.FillCubeRequest")
        self.Block = cls(f"{BASE_PACKAGE}.Block")
        self.Blocks = cls(f"{BASE_PACKAGE}.Blocks")
        self.StepRequest = cls(f"{SIM_PACKAGE}.StepRequest")
        self.TickCount = cls(f"{SIM_PACKAGE}.TickCount")
        self.TickRate = cls(f"{SIM_PACKAGE}.TickRate")
        self.CenterOfMass = cls(f"{SIM_PACKAGE}.CenterOfMass")


@lru_cache(maxsize=1)
def messages() -> _Messages:
    return _Messages()


def method_path(service: str, method: str) -> str:
    return f"/{service}/{method}"

"""Wire protocol: the base block-manipulation service plus the simulator
extension service, both speaking protocol buffers over gRPC on port 5001."""

from .backends import InProcessBackend, UnsupportedOperationError, WorldBackend
from .client import RemoteBackend, measure_rpc_latency
from .server import serve

__all__ = [
    "InProcessBackend", "RemoteBackend", "UnsupportedOperationError",
    "WorldBackend", "measure_rpc_latency", "serve",
]

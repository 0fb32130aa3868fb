"""Coordinate-queried feedforward decoder.

A flat parameter vector describes three linear layers (input -> 20 -> 20 ->
output). The network is queried once per cell of a bounded box with the
cell's normalized relative coordinates plus its distance to the box center,
and the output decides air-vs-matter, the block type, and (optionally) the
orientation. Decoding is deterministic for a fixed parameter vector; a
stochastic top-k mode exists behind a flag but defaults off.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from ..world import Block, Orientation, Position

HIDDEN = 20
INPUT_DIM = 4  # dx, dy, dz, distance-to-center

# Round-robin assignment over hidden neurons for the "cppn" activation set.
_CPPN_CYCLE = ("sin", "gaussian", "tanh", "cos")


@dataclass(frozen=True)
class DecodeBox:
    base: Position
    extent: tuple[int, int, int]

    def __post_init__(self):
        if any(s < 1 for s in self.extent):
            raise ValueError(f"extent must be positive, got {self.extent}")

    @property
    def volume(self) -> int:
        sx, sy, sz = self.extent
        return sx * sy * sz


@dataclass(frozen=True)
class MlpConfig:
    palette: tuple[int, ...]
    with_orientation: bool = True
    symmetrize: bool = False
    activations: str = "default"  # "default" (relu) or "cppn" (sin/gauss/tanh/cos)

    def __post_init__(self):
        if self.activations not in ("default", "cppn"):
            raise ValueError(f"unknown activation set: {self.activations!r}")
        if not self.palette:
            raise ValueError("palette must name at least one block type")

    @property
    def n_types(self) -> int:
        return len(self.palette)

    @property
    def output_dim(self) -> int:
        # 1 air/matter bit + N types (+ 6 orientations when enabled)
        return self.n_types + (7 if self.with_orientation else 1)


def param_count(config: MlpConfig) -> int:
    out = config.output_dim
    return (INPUT_DIM * HIDDEN + HIDDEN) + (HIDDEN * HIDDEN + HIDDEN) + (HIDDEN * out + out)


@dataclass(frozen=True)
class MlpGenome:
    theta: np.ndarray
    config: MlpConfig

    def __post_init__(self):
        expected = param_count(self.config)
        if self.theta.shape != (expected,):
            raise ValueError(
                f"parameter vector has shape {self.theta.shape}, expected ({expected},)")


def random_genome(config: MlpConfig, rng: np.random.Generator, std: float = 0.1) -> MlpGenome:
    return MlpGenome(std * rng.standard_normal(param_count(config)), config)


def _unpack(theta: np.ndarray, out_dim: int):
    i = 0
    w1 = theta[i:i + INPUT_DIM * HIDDEN].reshape(HIDDEN, INPUT_DIM); i += INPUT_DIM * HIDDEN
    b1 = theta[i:i + HIDDEN]; i += HIDDEN
    w2 = theta[i:i + HIDDEN * HIDDEN].reshape(HIDDEN, HIDDEN); i += HIDDEN * HIDDEN
    b2 = theta[i:i + HIDDEN]; i += HIDDEN
    w3 = theta[i:i + HIDDEN * out_dim].reshape(out_dim, HIDDEN); i += HIDDEN * out_dim
    b3 = theta[i:i + out_dim]
    return w1, b1, w2, b2, w3, b3


def _logistic(x: np.ndarray) -> np.ndarray:
    return 1.0 / (1.0 + np.exp(-x))


def _hidden_activation(x: np.ndarray, activations: str) -> np.ndarray:
    """x has shape (batch, HIDDEN); cppn activations rotate per neuron."""
    if activations == "default":
        return np.maximum(x, 0.0)
    out = np.empty_like(x)
    for i in range(HIDDEN):
        kind = _CPPN_CYCLE[i % 4]
        col = x[:, i]
        if kind == "sin":
            out[:, i] = np.sin(col)
        elif kind == "gaussian":
            out[:, i] = np.exp(-0.5 * col * col)
        elif kind == "tanh":
            out[:, i] = np.tanh(col)
        else:
            out[:, i] = np.cos(col)
    return out


def forward_batch(genome: MlpGenome, coords: np.ndarray) -> np.ndarray:
    """Apply the network to coords of shape (batch, 4); returns (batch, out)."""
    coords = np.asarray(coords, dtype=np.float64)
    if coords.ndim != 2 or coords.shape[1] != INPUT_DIM:
        raise ValueError(f"expected (batch, {INPUT_DIM}) input, got {coords.shape}")
    cfg = genome.config
    w1, b1, w2, b2, w3, b3 = _unpack(genome.theta, cfg.output_dim)
    h1 = _hidden_activation(coords @ w1.T + b1, cfg.activations)
    h2 = _hidden_activation(h1 @ w2.T + b2, cfg.activations)
    return _logistic(h2 @ w3.T + b3)


def mlp_forward(genome: MlpGenome, coord) -> np.ndarray:
    """Single query; coord is (dx, dy, dz, d) with components in [-1, 1]."""
    coord = np.asarray(coord, dtype=np.float64)
    if coord.shape != (INPUT_DIM,):
        raise ValueError(f"expected {INPUT_DIM} inputs, got shape {coord.shape}")
    return forward_batch(genome, coord[None, :])[0]


def box_coordinates(box: DecodeBox, symmetrize: bool) -> np.ndarray:
    """Normalized (dx, dy, dz, d) per cell, in the box's x-outer iteration order.

    Relative coordinates are scaled by the box half-extent into [-1, 1]
    (degenerate axes map to 0) and d is the Euclidean norm over sqrt(3).
    """
    sx, sy, sz = box.extent
    axes = []
    for s in (sx, sy, sz):
        if s == 1:
            axes.append(np.zeros(1))
        else:
            half = (s - 1) / 2.0
            axes.append((np.arange(s) - half) / half)
    gx, gy, gz = np.meshgrid(axes[0], axes[1], axes[2], indexing="ij")
    coords = np.stack([gx.ravel(), gy.ravel(), gz.ravel()], axis=1)
    if symmetrize:
        coords = np.abs(coords)
    d = np.linalg.norm(coords, axis=1, keepdims=True) / np.sqrt(3.0)
    return np.concatenate([coords, d], axis=1)


def decode_box_arrays(genome: MlpGenome, box: DecodeBox) -> np.ndarray:
    """Deterministic (k = 1) decode as an (M, 5) int array of
    [x, y, z, type, orientation] rows in the box's x-outer cell order;
    air cells are omitted."""
    cfg = genome.config
    out = forward_batch(genome, box_coordinates(box, cfg.symmetrize))
    n = cfg.n_types
    matter = out[:, 0] > 0.5
    if not matter.any():
        return np.empty((0, 5), dtype=np.int64)
    sx, sy, sz = box.extent
    bx, by, bz = box.base
    gx, gy, gz = np.meshgrid(np.arange(sx) + bx, np.arange(sy) + by,
                             np.arange(sz) + bz, indexing="ij")
    types = np.take(np.asarray(cfg.palette), np.argmax(out[:, 1:1 + n], axis=1))
    if cfg.with_orientation:
        orients = np.argmax(out[:, 1 + n:1 + n + 6], axis=1)
    else:
        orients = np.zeros(out.shape[0], dtype=np.int64)
    rows = np.stack([gx.ravel(), gy.ravel(), gz.ravel(), types, orients], axis=1)
    return rows[matter]


def decode_box(genome: MlpGenome, box: DecodeBox,
               top_k: int = 1, rng: Optional[np.random.Generator] = None) -> list[Block]:
    """Decode a structure; air cells are omitted from the result.

    A cell is matter iff the first output exceeds 0.5; the block type is the
    argmax over the next N outputs and the orientation the argmax over the
    final six (NORTH when orientations are disabled). With top_k > 1 the
    type/orientation are sampled from the top k outputs instead (requires an
    rng); the default k = 1 is fully deterministic.
    """
    if top_k > 1 and rng is None:
        raise ValueError("stochastic decode (top_k > 1) requires an rng")
    if top_k <= 1:
        return [Block(Position(int(x), int(y), int(z)), int(t), Orientation(int(o)))
                for x, y, z, t, o in decode_box_arrays(genome, box)]
    cfg = genome.config
    out = forward_batch(genome, box_coordinates(box, cfg.symmetrize))
    n = cfg.n_types
    matter = out[:, 0] > 0.5
    type_scores = out[:, 1:1 + n]
    orient_scores = out[:, 1 + n:1 + n + 6] if cfg.with_orientation else None

    def pick(scores: np.ndarray) -> int:
        if scores.shape[0] == 1:
            return 0
        k = min(top_k, scores.shape[0])
        top = np.argsort(scores)[::-1][:k]
        weights = np.exp(scores[top] - scores[top].max())
        return int(rng.choice(top, p=weights / weights.sum()))

    sx, sy, sz = box.extent
    bx, by, bz = box.base
    result = []
    idx = 0
    for ix in range(sx):
        for iy in range(sy):
            for iz in range(sz):
                if matter[idx]:
                    type_id = cfg.palette[pick(type_scores[idx])]
                    orient = Orientation(pick(orient_scores[idx])) \
                        if orient_scores is not None else Orientation.NORTH
                    result.append(Block(Position(bx + ix, by + iy, bz + iz),
                                        type_id, orient))
                idx += 1
    return result


# -- serialization ---------------------------------------------------------------

FORMAT_NAME = "evoxel-mlp"
FORMAT_VERSION = 1


def dumps(genome: MlpGenome) -> str:
    """Two-line text form: a JSON config header, then the flat float list."""
    import json
    cfg = genome.config
    header = json.dumps({
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "palette": list(cfg.palette),
        "with_orientation": cfg.with_orientation,
        "symmetrize": cfg.symmetrize,
        "activations": cfg.activations,
    })
    floats = " ".join(repr(v) for v in genome.theta.tolist())
    return header + "\n" + floats + "\n"


def loads(text: str) -> MlpGenome:
    import json
    header_line, float_line = text.strip().split("\n", 1)
    header = json.loads(header_line)
    if header.get("format") != FORMAT_NAME or header.get("version") != FORMAT_VERSION:
        raise ValueError(f"not a {FORMAT_NAME} v{FORMAT_VERSION} document")
    cfg = MlpConfig(
        palette=tuple(header["palette"]),
        with_orientation=header["with_orientation"],
        symmetrize=header["symmetrize"],
        activations=header["activations"],
    )
    theta = np.array([float(v) for v in float_line.split()], dtype=np.float64)
    return MlpGenome(theta, cfg)

"""Genotype-to-structure decoders."""

from .mlp import DecodeBox, MlpConfig, MlpGenome, decode_box, mlp_forward, param_count
from .tree import TreeGenome, tree_crossover, tree_decode, tree_mutate, tree_random

__all__ = [
    "DecodeBox", "MlpConfig", "MlpGenome", "decode_box", "mlp_forward", "param_count",
    "TreeGenome", "tree_crossover", "tree_decode", "tree_mutate", "tree_random",
]

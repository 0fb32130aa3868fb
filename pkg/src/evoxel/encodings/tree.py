"""Ternary block trees: every node is a (type, facing) block and may grow a
child to the north, west, and up. Subtree crossover and point mutation keep
the slot-uniqueness and finiteness invariants by construction.
"""
from __future__ import annotations

from typing import Iterator, Optional

import numpy as np

from ..world import Block, Orientation, Position

SLOTS = ("north", "west", "up")
SLOT_OFFSETS = {
    "north": (0, 0, -1),
    "west": (-1, 0, 0),
    "up": (0, 1, 0),
}

GROWTH_P0 = 0.5
GROWTH_DECAY = 0.05


class TreeNode:
    """One block of a ternary tree; children keyed by slot name."""

    __slots__ = ("type_id", "orientation", "children")

    def __init__(self, type_id: int, orientation: int,
                 children: Optional[dict[str, "TreeNode"]] = None):
        self.type_id = int(type_id)
        self.orientation = int(orientation)
        self.children = children if children is not None else {}

    def copy(self) -> "TreeNode":
        return TreeNode(self.type_id, self.orientation,
                        {slot: child.copy() for slot, child in self.children.items()})

    def __eq__(self, other) -> bool:
        if not isinstance(other, TreeNode):
            return NotImplemented
        return (self.type_id == other.type_id
                and self.orientation == other.orientation
                and self.children == other.children)

    def __repr__(self):
        return f"TreeNode({self.type_id}, {self.orientation}, {len(self.children)} children)"


TreeGenome = TreeNode  # the genome is its root node


def node_count(tree: TreeNode) -> int:
    return 1 + sum(node_count(c) for c in tree.children.values())


def depth(tree: TreeNode) -> int:
    if not tree.children:
        return 0
    return 1 + max(depth(c) for c in tree.children.values())


def walk(tree: TreeNode) -> Iterator[tuple[TreeNode, Optional[TreeNode], Optional[str], int]]:
    """Yield (node, parent, slot-in-parent, depth) in north/west/up DFS order."""
    stack = [(tree, None, None, 0)]
    while stack:
        node, parent, slot, d = stack.pop()
        yield node, parent, slot, d
        for s in reversed(SLOTS):
            child = node.children.get(s)
            if child is not None:
                stack.append((child, node, s, d + 1))


def tree_random(rng: np.random.Generator, palette: tuple[int, ...],
                p0: float = GROWTH_P0, decay: float = GROWTH_DECAY,
                start_depth: int = 0) -> TreeNode:
    """Grow a random tree: a node at depth d fills each of its three slots
    independently with probability max(0, p0 - decay * d); types and facings
    are uniform over the palette and the six orientations. The decay drives
    the fill probability to zero, so generation always terminates."""

    def grow(d: int) -> TreeNode:
        node = TreeNode(palette[rng.integers(len(palette))], rng.integers(6))
        p = p0 - decay * d
        if p > 0:
            for slot in SLOTS:
                if rng.random() < p:
                    node.children[slot] = grow(d + 1)
        return node

    return grow(start_depth)


def tree_decode(tree: TreeNode, base: Position) -> list[Block]:
    """Place the root at base and children one cell north/west/up of their
    parent, in north/west/up DFS order; the first writer wins a cell."""
    out: list[Block] = []
    seen: set[tuple[int, int, int]] = set()

    def visit(node: TreeNode, pos: tuple[int, int, int]):
        if pos not in seen:
            seen.add(pos)
            out.append(Block(Position(*pos), node.type_id, Orientation(node.orientation)))
        for slot in SLOTS:
            child = node.children.get(slot)
            if child is not None:
                off = SLOT_OFFSETS[slot]
                visit(child, (pos[0] + off[0], pos[1] + off[1], pos[2] + off[2]))

    visit(tree, tuple(base))
    return out


def _non_root_nodes(tree: TreeNode):
    return [(node, parent, slot) for node, parent, slot, _ in walk(tree) if parent is not None]


def tree_crossover(parent_a: TreeNode, parent_b: TreeNode,
                   rng: np.random.Generator) -> TreeNode:
    """Cut a random non-root node of A and replace its subtree with a copy of
    a random non-root subtree of B. Parents are never modified.

    Degenerate cases: a root-only A receives the graft in a random empty root
    slot; a root-only B donates a copy of its whole self.
    """
    child = parent_a.copy()
    b_nodes = _non_root_nodes(parent_b)
    if b_nodes:
        graft = b_nodes[rng.integers(len(b_nodes))][0].copy()
    else:
        graft = parent_b.copy()
    cut_sites = _non_root_nodes(child)
    if cut_sites:
        _, parent, slot = cut_sites[rng.integers(len(cut_sites))]
        parent.children[slot] = graft
    else:
        empty = [s for s in SLOTS if s not in child.children]
        child.children[empty[rng.integers(len(empty))]] = graft
    return child


def tree_mutate(tree: TreeNode, rng: np.random.Generator, palette: tuple[int, ...],
                rate: float = 0.05) -> TreeNode:
    """With probability `rate`, apply exactly one mutation to a copy: either
    reassign one node's (type, facing) to a different combination, or regrow
    one node's subtree from its depth. Otherwise return an unchanged copy."""
    out = tree.copy()
    if rng.random() >= rate:
        return out
    reassign = rng.integers(2) == 0
    nodes = [(node, parent, slot, d) for node, parent, slot, d in walk(out)]
    node, parent, slot, d = nodes[rng.integers(len(nodes))]
    if reassign:
        # Draw a (type, facing) combo other than the current one.
        combos = len(palette) * 6
        current = palette.index(node.type_id) * 6 + node.orientation \
            if node.type_id in palette else combos
        pick = int(rng.integers(combos - 1 if current < combos else combos))
        if current < combos and pick >= current:
            pick += 1
        node.type_id = palette[pick // 6]
        node.orientation = pick % 6
    else:
        regrown = tree_random(rng, palette, start_depth=d)
        if parent is None:
            return regrown
        parent.children[slot] = regrown
    return out


# -- serialization ---------------------------------------------------------------

FORMAT_NAME = "evoxel-tree"
FORMAT_VERSION = 1


def dumps(tree: TreeNode) -> str:
    """Header line plus an s-expression: (type facing (north ...) (west ...) (up ...))."""

    def render(node: TreeNode) -> str:
        parts = [f"({node.type_id} {node.orientation}"]
        for slot in SLOTS:
            child = node.children.get(slot)
            if child is not None:
                parts.append(f" ({slot} {render(child)})")
        parts.append(")")
        return "".join(parts)

    return f"{FORMAT_NAME} v{FORMAT_VERSION}\n{render(tree)}\n"


def loads(text: str) -> TreeNode:
    header, body = text.strip().split("\n", 1)
    if header != f"{FORMAT_NAME} v{FORMAT_VERSION}":
        raise ValueError(f"not a {FORMAT_NAME} v{FORMAT_VERSION} document")
    tokens = body.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def expect(tok: str):
        nonlocal pos
        if tokens[pos] != tok:
            raise ValueError(f"expected {tok!r} at token {pos}, got {tokens[pos]!r}")
        pos += 1

    def parse_node() -> TreeNode:
        nonlocal pos
        expect("(")
        type_id = int(tokens[pos]); pos += 1
        orientation = int(tokens[pos]); pos += 1
        node = TreeNode(type_id, orientation)
        while tokens[pos] == "(":
            pos += 1
            slot = tokens[pos]; pos += 1
            if slot not in SLOTS:
                raise ValueError(f"unknown slot {slot!r}")
            node.children[slot] = parse_node()
            expect(")")
        expect(")")
        return node

    tree = parse_node()
    if pos != len(tokens):
        raise ValueError("trailing content after tree")
    return tree

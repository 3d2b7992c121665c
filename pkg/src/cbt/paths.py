"""Skew tableaux stored as chains of diagrams grouped by residue runs.

A tableau is built from the order in which nodes are added; consecutive
nodes with equal residue are merged into one step ``(r, m)``, so the chain
records only the diagrams at run boundaries.  The step list is exactly the
residue word fed to :func:`cbt.fock.apply_word`.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .partition import (
    Context,
    Node,
    Partition,
    boundary_nodes,
    format_partition,
    is_l_regular,
    residue,
)

__all__ = [
    "SkewPath",
    "path_from_nodes",
    "ladder_index",
    "ladder_path",
    "box_path",
    "column_path",
    "check_property_L",
]


@dataclass(frozen=True)
class SkewPath:
    chain: tuple[Partition, ...]
    steps: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if len(self.chain) != len(self.steps) + 1:
            raise ValueError("chain must have one more diagram than there are steps")

    @property
    def start(self) -> Partition:
        return self.chain[0]

    @property
    def end(self) -> Partition:
        return self.chain[-1]

    def tail(self, index: int) -> SkewPath:
        """The sub-path starting at ``chain[index]``."""
        return SkewPath(self.chain[index:], self.steps[index:])

    def __str__(self) -> str:
        return " -> ".join(format_partition(lam) for lam in self.chain)


def path_from_nodes(start: Sequence[int], nodes: Iterable[tuple[int, int]], l: int) -> SkewPath:
    """Add ``nodes`` to ``start`` one at a time and group them into residue runs."""
    parts = list(Partition(start))
    chain = [Partition(parts)]
    steps: list[list[int]] = []
    for row, col in nodes:
        if row < 1 or col < 1:
            raise ValueError(f"invalid node {(row, col)}")
        if row > len(parts) + 1 or (row == len(parts) + 1 and col != 1):
            raise ValueError(f"node {(row, col)} cannot be added to {format_partition(parts)}")
        current = parts[row - 1] if row <= len(parts) else 0
        if col != current + 1 or (row > 1 and parts[row - 2] < col):
            raise ValueError(f"node {(row, col)} cannot be added to {format_partition(parts)}")
        if row > len(parts):
            parts.append(1)
        else:
            parts[row - 1] += 1
        r = residue((row, col), l)
        if steps and steps[-1][0] == r:
            steps[-1][1] += 1
            chain[-1] = Partition._trusted(parts)
        else:
            steps.append([r, 1])
            chain.append(Partition._trusted(parts))
    return SkewPath(tuple(Partition._trusted(c) for c in chain), tuple((r, m) for r, m in steps))


def ladder_index(node: tuple[int, int], l: int) -> int:
    row, col = node
    return row + (l - 1) * (col - 1)


def ladder_path(mu: Sequence[int], ctx: Context) -> SkewPath:
    """Fill ``mu`` ladder by ladder, each ladder from the top row down."""
    mu = Partition(mu)
    if not is_l_regular(mu, ctx.l):
        raise ValueError(f"{format_partition(mu)} is not {ctx.l}-regular")
    if len(mu) > ctx.k:
        raise ValueError(f"{format_partition(mu)} has more than {ctx.k} rows")
    nodes = [Node(i + 1, j + 1) for i, p in enumerate(mu) for j in range(p)]
    nodes.sort(key=lambda n: (ladder_index(n, ctx.l), n.row))
    return path_from_nodes((), nodes, ctx.l)


def _column_nodes(parts: list[int], i: int) -> list[Node]:
    # the i nodes of Lambda_i, top to bottom; mutates parts
    out = []
    for row in range(1, i + 1):
        parts[row - 1] += 1
        out.append(Node(row, parts[row - 1]))
    return out


def box_path(nu: Sequence[int], dprime: Sequence[int], ctx: Context) -> SkewPath:
    """Add dprime[k-2] copies of Lambda_{k-1}, then ..., then dprime[0] copies of Lambda_1."""
    k = ctx.k
    if len(dprime) != k - 1:
        raise ValueError(f"expected {k - 1} box coordinates, got {len(dprime)}")
    parts = list(Partition(nu).padded(k))
    nodes: list[Node] = []
    for i in range(k - 1, 0, -1):
        for _ in range(dprime[i - 1]):
            nodes.extend(_column_nodes(parts, i))
    return path_from_nodes(nu, nodes, ctx.l)


def column_path(nu: Sequence[int], j: int, ctx: Context) -> SkewPath:
    """``nu -> nu + Lambda_j -> ... -> nu + l Lambda_j``."""
    if not 1 <= j <= ctx.k:
        raise ValueError(f"column index {j} outside 1..{ctx.k}")
    parts = list(Partition(nu).padded(ctx.k))
    nodes: list[Node] = []
    for _ in range(ctx.l):
        nodes.extend(_column_nodes(parts, j))
    return path_from_nodes(nu, nodes, ctx.l)


def check_property_L(p: SkewPath, ctx: Context) -> bool:
    """Every step fills the highest m indent r-nodes, with no removable r-node above them.

    Removable r-nodes are only required to lie below the nodes being filled,
    not below every indent r-node: that is what makes the filling's own
    weight v**0, and the stronger form fails for ladder tableaux such as
    (5,2) at l=2.
    """
    for before, after, (r, m) in zip(p.chain, p.chain[1:], p.steps):
        removables, indents = boundary_nodes(before, ctx.l, r, ctx.k)
        if len(indents) < m:
            return False
        filled = indents[:m]
        if removables and min(n.row for n in removables) < filled[-1].row:
            return False
        expected = list(before)
        for node in filled:
            if node.row > len(expected):
                expected.append(1)
            else:
                expected[node.row - 1] += 1
        if tuple(expected) != tuple(after):
            return False
    return True

"""Partitions (Young diagrams) with the node conventions used throughout.

Nodes are ``(row, col)`` with 1-based indices.  The *content* of a node is
``row - col`` (not the more common ``col - row``), so the l-residue of
``(i, j)`` is ``(i - j) mod l``.  Every residue computation in the package
goes through :func:`residue` to keep that convention in one place.

A diagram with at most ``k`` rows is also a dominant weight of gl_k:
``Lambda_i`` is the column of ``i`` nodes and ``rho = (k-1, ..., 1, 0)``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple, Sequence

__all__ = [
    "Partition",
    "Node",
    "Context",
    "residue",
    "boundary_nodes",
    "dominance_leq",
    "lex_cmp",
    "is_l_regular",
    "gaps",
    "add_fundamental",
    "add_rho",
    "is_k_critical",
    "is_interior",
    "box_coords",
    "critical_anchor",
    "orbit_members",
    "in_same_orbit",
    "partitions",
    "l_regular_partitions",
    "parse_partition",
    "format_partition",
]


class Partition(tuple):
    """Weakly decreasing tuple of positive integers.

    Trailing zeros are trimmed on construction, so ``Partition((2, 1, 0))``
    equals ``Partition((2, 1))`` and both equal the plain tuple ``(2, 1)``.
    """

    __slots__ = ()

    def __new__(cls, parts: Iterable[int] = ()):
        parts = [int(p) for p in parts]
        while parts and parts[-1] == 0:
            parts.pop()
        for a, b in zip(parts, parts[1:]):
            if a < b:
                raise ValueError(f"parts must be weakly decreasing: {parts}")
        if parts and parts[-1] < 0:
            raise ValueError(f"parts must be non-negative: {parts}")
        return super().__new__(cls, parts)

    @classmethod
    def _trusted(cls, parts) -> Partition:
        return tuple.__new__(cls, parts)

    def size(self) -> int:
        return sum(self)

    def length(self) -> int:
        return len(self)

    def padded(self, k: int) -> tuple[int, ...]:
        if len(self) > k:
            raise ValueError(f"{format_partition(self)} has more than {k} rows")
        return tuple(self) + (0,) * (k - len(self))

    def __repr__(self) -> str:
        return f"Partition({tuple(self)!r})"

    def __str__(self) -> str:
        return format_partition(self)


class Node(NamedTuple):
    row: int
    col: int


@dataclass(frozen=True)
class Context:
    k: int
    l: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("k must be at least 1")
        if self.l < 2:
            raise ValueError("l must be at least 2")

    @property
    def rho(self) -> tuple[int, ...]:
        return tuple(range(self.k - 1, -1, -1))


def residue(node: tuple[int, int], l: int) -> int:
    row, col = node
    return (row - col) % l


def boundary_nodes(lam: Sequence[int], l: int, r: int | None = None,
                   k: int | None = None) -> tuple[list[Node], list[Node]]:
    """Removable and indent nodes of ``lam``, each sorted by row.

    The indent node below the last row is included unless ``k`` is given
    and that row would exceed ``k``.
    """
    n = len(lam)
    removables = []
    indents = []
    for i in range(n):
        row = i + 1
        if i == n - 1 or lam[i + 1] < lam[i]:
            node = Node(row, lam[i])
            if r is None or (row - lam[i]) % l == r:
                removables.append(node)
        if i == 0 or lam[i - 1] > lam[i]:
            node = Node(row, lam[i] + 1)
            if r is None or (row - lam[i] - 1) % l == r:
                indents.append(node)
    if k is None or n < k:
        node = Node(n + 1, 1)
        if r is None or n % l == r:
            indents.append(node)
    return removables, indents


def dominance_leq(lam: Sequence[int], mu: Sequence[int]) -> bool:
    """``lam`` is dominated by ``mu``; false for diagrams of different size."""
    if sum(lam) != sum(mu):
        return False
    s = t = 0
    for i in range(max(len(lam), len(mu))):
        s += lam[i] if i < len(lam) else 0
        t += mu[i] if i < len(mu) else 0
        if s > t:
            return False
    return True


def lex_cmp(lam: Sequence[int], mu: Sequence[int]) -> int:
    a, b = tuple(lam), tuple(mu)
    return (a > b) - (a < b)


def is_l_regular(lam: Sequence[int], l: int) -> bool:
    return all(c < l for p, c in Counter(lam).items() if p > 0)


def gaps(lam: Sequence[int], k: int) -> list[int]:
    """c_i = lam_i - lam_{i+1} + 1 for i = 1..k-1 (gaps of lam + rho)."""
    x = Partition(lam).padded(k)
    return [x[i] - x[i + 1] + 1 for i in range(k - 1)]


def add_fundamental(lam: Sequence[int], i: int, count: int, k: int) -> Partition:
    """``lam + count * Lambda_i`` (``count`` may be negative)."""
    if not 1 <= i <= k:
        raise ValueError(f"fundamental weight index {i} outside 1..{k}")
    x = list(Partition(lam).padded(k))
    for row in range(i):
        x[row] += count
    return Partition(x)


def add_rho(lam: Sequence[int], k: int) -> tuple[int, ...]:
    x = Partition(lam).padded(k)
    return tuple(x[i] + k - 1 - i for i in range(k))


def is_k_critical(lam: Sequence[int], k: int, l: int) -> bool:
    return all(c % l == 0 for c in gaps(lam, k))


def is_interior(lam: Sequence[int], k: int, l: int) -> bool:
    """``lam - (l-1) rho`` is dominant."""
    return all(c >= l for c in gaps(lam, k))


def box_coords(lam: Sequence[int], k: int, l: int) -> list[int]:
    return [c % l for c in gaps(lam, k)]


def critical_anchor(lam: Sequence[int], k: int, l: int) -> Partition:
    """The k-critical mu_c with lam = mu_c + sum d_i Lambda_i, 0 <= d_i < l."""
    if not is_interior(lam, k, l):
        raise ValueError(f"{format_partition(lam)} is not interior")
    x = Partition(lam).padded(k)
    d = box_coords(lam, k, l)
    out = [0] * k
    out[k - 1] = x[k - 1]
    for i in range(k - 2, -1, -1):
        out[i] = out[i + 1] + (x[i] - x[i + 1]) - d[i]
    return Partition(out)


def _residue_signature(lam: Sequence[int], k: int, l: int) -> tuple[int, ...]:
    return tuple(sorted(x % l for x in add_rho(lam, k)))


def in_same_orbit(lam: Sequence[int], mu: Sequence[int], k: int, l: int) -> bool:
    """Whether lam + rho and mu + rho lie in one orbit of the level-l affine Weyl group."""
    return (sum(lam) == sum(mu)
            and _residue_signature(lam, k, l) == _residue_signature(mu, k, l))


def orbit_members(mu: Sequence[int], k: int, l: int) -> list[Partition]:
    """All diagrams with at most k rows whose ``+rho`` shares the orbit of ``mu + rho``.

    Sorted lexicographically descending.
    """
    sig = _residue_signature(mu, k, l)
    out = [lam for lam in partitions(sum(mu), k)
           if _residue_signature(lam, k, l) == sig]
    return out


def partitions(n: int, k: int | None = None, max_part: int | None = None) -> Iterator[Partition]:
    """Partitions of n with at most k parts, lexicographically descending."""
    if max_part is None:
        max_part = n
    if k is None:
        k = n

    def rec(remaining, rows_left, cap, prefix):
        if remaining == 0:
            yield Partition._trusted(prefix)
            return
        if rows_left == 0:
            return
        for p in range(min(cap, remaining), 0, -1):
            if p * rows_left < remaining:
                break
            yield from rec(remaining - p, rows_left - 1, p, prefix + (p,))

    yield from rec(n, k, max_part, ())


def l_regular_partitions(n: int, k: int, l: int) -> Iterator[Partition]:
    return (p for p in partitions(n, k) if is_l_regular(p, l))


def parse_partition(text: str) -> Partition:
    text = text.strip()
    if text in ("", "0", "()", "[]"):
        return Partition()
    try:
        parts = [int(tok) for tok in text.replace(" ", "").strip("()[]").split(",") if tok != ""]
    except ValueError:
        raise ValueError(f"cannot parse partition {text!r}") from None
    return Partition(parts)


def format_partition(lam: Sequence[int]) -> str:
    return ",".join(str(p) for p in lam) if len(lam) else "0"

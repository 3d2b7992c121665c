"""Lowering operators on the Fock space truncated to at most k rows.

The action of ``f_r`` adds one node of residue ``r`` in every possible way,
weighted by ``v**N`` where ``N`` counts indent r-nodes above the new node
minus removable r-nodes above it.  Divided powers ``f_r^(m)`` add ``m``
such nodes at once; the exponent is the top-to-bottom sum of single-node
exponents plus ``binom(m, 2)``, which collapses to the per-node count of
indent r-nodes above that are *not* being filled, minus removable r-nodes
above.  Diagrams that grow past ``k`` rows are dropped at every step.
"""

from __future__ import annotations

from collections import defaultdict
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Mapping, Sequence

from .laurent import LaurentPoly, ONE
from .partition import Context, Partition, boundary_nodes, format_partition

__all__ = [
    "FockVector",
    "n_exponent",
    "divided_power_terms",
    "f_action",
    "divided_power",
    "apply_word",
]


class FockVector:
    """Finite formal sum of diagrams (at most ``ctx.k`` rows) with Laurent coefficients."""

    __slots__ = ("ctx", "_entries")

    def __init__(self, ctx: Context, entries: Mapping[Sequence[int], LaurentPoly | int] | None = None):
        self.ctx = ctx
        self._entries: dict[Partition, LaurentPoly] = {}
        for lam, c in (entries or {}).items():
            lam = Partition(lam)
            if len(lam) > ctx.k:
                raise ValueError(f"{format_partition(lam)} has more than {ctx.k} rows")
            c = c if isinstance(c, LaurentPoly) else LaurentPoly.constant(c)
            if c:
                self._entries[lam] = self._entries.get(lam, LaurentPoly()) + c
        self._entries = {lam: c for lam, c in self._entries.items() if c}

    @classmethod
    def basis(cls, ctx: Context, lam: Sequence[int]) -> FockVector:
        return cls(ctx, {Partition(lam): ONE})

    @classmethod
    def _from_flat(cls, ctx: Context, flat: Mapping[tuple[tuple[int, ...], int], int]) -> FockVector:
        grouped: dict[tuple, dict[int, int]] = defaultdict(dict)
        for (lam, e), c in flat.items():
            if c:
                grouped[lam][e] = c
        out = object.__new__(cls)
        out.ctx = ctx
        out._entries = {Partition._trusted(lam): LaurentPoly._wrap(t) for lam, t in grouped.items() if t}
        return out

    def _to_flat(self) -> dict[tuple[tuple[int, ...], int], int]:
        return {(tuple(lam), e): c for lam, p in self._entries.items() for e, c in p.items()}

    # -- mapping-like access -----------------------------------------------

    @property
    def entries(self) -> dict[Partition, LaurentPoly]:
        return dict(self._entries)

    def items(self):
        return self._entries.items()

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __contains__(self, lam) -> bool:
        return tuple(lam) in self._entries

    def coeff(self, lam: Sequence[int]) -> LaurentPoly:
        return self._entries.get(tuple(Partition(lam)), LaurentPoly())

    def support(self) -> list[Partition]:
        return sorted(self._entries, reverse=True)

    def sorted_items(self) -> list[tuple[Partition, LaurentPoly]]:
        return [(lam, self._entries[lam]) for lam in self.support()]

    # -- linear structure --------------------------------------------------

    def _combine(self, other: FockVector, sign: int) -> FockVector:
        if self.ctx != other.ctx:
            raise ValueError("cannot combine vectors from different contexts")
        out = dict(self._entries)
        for lam, c in other._entries.items():
            s = out.get(lam, LaurentPoly()) + (c if sign > 0 else -c)
            if s:
                out[lam] = s
            else:
                out.pop(lam, None)
        res = object.__new__(FockVector)
        res.ctx = self.ctx
        res._entries = out
        return res

    def __add__(self, other: FockVector) -> FockVector:
        return self._combine(other, 1)

    def __sub__(self, other: FockVector) -> FockVector:
        return self._combine(other, -1)

    def scale(self, c: LaurentPoly | int) -> FockVector:
        c = c if isinstance(c, LaurentPoly) else LaurentPoly.constant(c)
        res = object.__new__(FockVector)
        res.ctx = self.ctx
        res._entries = {lam: p * c for lam, p in self._entries.items()} if c else {}
        res._entries = {lam: p for lam, p in res._entries.items() if p}
        return res

    def shift_columns(self, count: int = 1) -> FockVector:
        """Add ``count`` full columns (``count * Lambda_k``) to every diagram."""
        k = self.ctx.k
        res = object.__new__(FockVector)
        res.ctx = self.ctx
        res._entries = {}
        for lam, p in self._entries.items():
            x = [a + count for a in Partition._trusted(lam).padded(k)]
            res._entries[Partition(x)] = p
        return res

    def map_partitions(self, fn) -> FockVector:
        out: dict[Partition, LaurentPoly] = {}
        for lam, p in self._entries.items():
            mu = Partition(fn(lam))
            out[mu] = out.get(mu, LaurentPoly()) + p
        return FockVector(self.ctx, out)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FockVector):
            return NotImplemented
        return self.ctx == other.ctx and self._entries == other._entries

    __hash__ = None

    def __repr__(self) -> str:
        return f"FockVector({self})"

    def __str__(self) -> str:
        if not self._entries:
            return "0"
        return " | ".join(f"{format_partition(lam)}: {p}" for lam, p in self.sorted_items())


def n_exponent(lam: Sequence[int], target_row: int, r: int, ctx: Context) -> int:
    """Exponent N(lam, nu) for adding the residue-r node at the end of ``target_row``."""
    lam = tuple(lam)
    removables, indents = boundary_nodes(lam, ctx.l, r)
    if not any(node.row == target_row for node in indents):
        raise ValueError(
            f"row {target_row} of {format_partition(lam)} has no indent node of residue {r}")
    above = sum(1 for node in indents if node.row < target_row)
    above -= sum(1 for node in removables if node.row < target_row)
    return above


@lru_cache(maxsize=1 << 20)
def _targets(lam: tuple[int, ...], r: int, m: int, l: int, k: int) -> tuple[tuple[tuple[int, ...], int], ...]:
    removables, indents = boundary_nodes(lam, l, r, k)
    if len(indents) < m:
        return ()
    rem_rows = [node.row for node in removables]
    # removable r-nodes strictly above each indent node
    rem_above = [sum(1 for rr in rem_rows if rr < node.row) for node in indents]
    out = []
    for chosen in combinations(range(len(indents)), m):
        exp = 0
        parts = list(lam)
        for i, t in enumerate(chosen):
            exp += t - i - rem_above[t]
            row = indents[t].row
            if row > len(parts):
                parts.append(1)
            else:
                parts[row - 1] += 1
        out.append((tuple(parts), exp))
    return tuple(out)


def divided_power_terms(lam: Sequence[int], r: int, m: int, ctx: Context) -> list[tuple[Partition, int]]:
    """The terms ``(mu, N(lam, mu))`` of ``f_r^(m) lam`` in the truncated space."""
    return [(Partition._trusted(mu), e) for mu, e in _targets(tuple(lam), r % ctx.l, m, ctx.l, ctx.k)]


def _apply_flat(flat: dict, word: Iterable[tuple[int, int]], l: int, k: int) -> dict:
    for r, m in word:
        r %= l
        nxt: dict = defaultdict(int)
        for (lam, e), c in flat.items():
            for mu, n in _targets(lam, r, m, l, k):
                nxt[(mu, e + n)] += c
        flat = {key: c for key, c in nxt.items() if c}
        if not flat:
            break
    return flat


def divided_power(r: int, m: int, x: FockVector) -> FockVector:
    if m < 1:
        raise ValueError("divided power order must be at least 1")
    return apply_word([(r, m)], x)


def f_action(r: int, x: FockVector) -> FockVector:
    return apply_word([(r, 1)], x)


def apply_word(word: Iterable[tuple[int, int]], x: FockVector) -> FockVector:
    """Apply ``f_{r_s}^(m_s) ... f_{r_1}^(m_1)``; the first pair of ``word`` acts first."""
    word = list(word)
    if not word:
        return x
    flat = _apply_flat(x._to_flat(), word, x.ctx.l, x.ctx.k)
    return FockVector._from_flat(x.ctx, flat)

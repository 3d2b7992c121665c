"""Alcove geometry for the affine symmetric group acting at level l.

Points live in Z^k.  The reflecting hyperplanes are ``x_i - x_j = m*l``;
an alcove is recorded by the matrix ``d_ij = floor((x_i - x_j) / l)``
(``i < j``) of any interior point, stored flat in lexicographic pair order.

All computations are exact.  Interior points of an alcove are produced at
the scaled level ``k*l`` where the base point ``B_i = (k - i) * l`` of the
lowest alcove is integral and never on a wall.  The same scaling realises
the infinitesimal push ``x + t*delta`` used for singular points: ``k*x +
delta`` with ``delta = (k-1, ..., 0)`` lies in the alcove a^+(x).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Sequence

from .partition import Context

__all__ = [
    "AffineWeylElement",
    "Alcove",
    "Face",
    "alcove_of_point",
    "a_plus_of_point",
    "right_multiply",
    "separation_length",
    "face_signature",
    "lowest_alcove",
    "generator",
]


@dataclass(frozen=True)
class AffineWeylElement:
    """``x -> (x_{sigma^-1(i)} + l * t_i)_i``; ``sigma`` is 0-based, one-line notation."""

    sigma: tuple[int, ...]
    t: tuple[int, ...]

    def __post_init__(self):
        k = len(self.sigma)
        if sorted(self.sigma) != list(range(k)):
            raise ValueError(f"{self.sigma} is not a permutation of 0..{k - 1}")
        if len(self.t) != k or sum(self.t) != 0:
            raise ValueError("translation must have length k and sum zero")

    @classmethod
    def identity(cls, k: int) -> AffineWeylElement:
        return cls(tuple(range(k)), (0,) * k)

    @property
    def k(self) -> int:
        return len(self.sigma)

    def act(self, x: Sequence[int], level: int) -> tuple[int, ...]:
        """Act on ``x`` at the given level (``l``, or ``k*l`` for scaled points)."""
        if len(x) != self.k:
            raise ValueError("dimension mismatch")
        inv = self.inverse_sigma
        return tuple(x[inv[i]] + level * self.t[i] for i in range(self.k))

    @property
    def inverse_sigma(self) -> tuple[int, ...]:
        inv = [0] * self.k
        for i, s in enumerate(self.sigma):
            inv[s] = i
        return tuple(inv)

    def compose(self, other: AffineWeylElement) -> AffineWeylElement:
        """``self * other`` (``other`` acts first)."""
        inv = self.inverse_sigma
        sigma = tuple(self.sigma[other.sigma[i]] for i in range(self.k))
        t = tuple(other.t[inv[i]] + self.t[i] for i in range(self.k))
        return AffineWeylElement(sigma, t)

    __mul__ = compose

    def inverse(self) -> AffineWeylElement:
        inv = self.inverse_sigma
        t = tuple(-self.t[self.sigma[i]] for i in range(self.k))
        return AffineWeylElement(inv, t)


def generator(i: int, k: int) -> AffineWeylElement:
    """Reflection in a wall of the lowest alcove.

    ``i`` in 1..k-1 is the wall ``x_i = x_{i+1}``; ``i = 0`` is ``x_1 - x_k = l``.
    """
    if not 0 <= i < k or k < 2:
        raise ValueError(f"generator index {i} outside 0..{k - 1}")
    sigma = list(range(k))
    t = [0] * k
    if i == 0:
        sigma[0], sigma[k - 1] = k - 1, 0
        t[0], t[k - 1] = 1, -1
    else:
        sigma[i - 1], sigma[i] = i, i - 1
    return AffineWeylElement(tuple(sigma), tuple(t))


def _pairs(k: int):
    return list(combinations(range(k), 2))


def _dmat(x: Sequence[int], level: int) -> tuple[int, ...]:
    return tuple((x[i] - x[j]) // level for i, j in _pairs(len(x)))


def _base_point(k: int, l: int) -> tuple[int, ...]:
    return tuple((k - 1 - i) * l for i in range(k))


@dataclass(frozen=True)
class Alcove:
    """An alcove ``elem . A+``; equality and hashing use ``dmat`` only."""

    dmat: tuple[int, ...]
    elem: AffineWeylElement = field(compare=False, hash=False)
    l: int = field(compare=False, hash=False)

    @classmethod
    def from_element(cls, w: AffineWeylElement, l: int) -> Alcove:
        k = w.k
        x = w.act(_base_point(k, l), k * l)
        return cls(_dmat(x, k * l), w, l)

    @property
    def k(self) -> int:
        return self.elem.k

    def d(self, i: int, j: int) -> int:
        """``d_ij`` for 1-based ``i < j``."""
        k = self.k
        i, j = i - 1, j - 1
        return self.dmat[i * (2 * k - i - 1) // 2 + (j - i - 1)]

    def interior_point(self) -> tuple[int, ...]:
        """An interior point at the scaled level ``k*l``."""
        return self.elem.act(_base_point(self.k, self.l), self.k * self.l)

    @property
    def in_chamber(self) -> bool:
        return all(self.d(i, i + 1) >= 0 for i in range(1, self.k))

    @property
    def is_lowest(self) -> bool:
        return not any(self.dmat)

    def __repr__(self) -> str:
        return f"Alcove{self.dmat}"


def lowest_alcove(ctx: Context) -> Alcove:
    return Alcove.from_element(AffineWeylElement.identity(ctx.k), ctx.l)


def _alcove_of_scaled(x: Sequence[int], k: int, l: int) -> Alcove:
    # x is a regular point at level L = k*l; write w^-1 x in the lowest alcove
    L = k * l
    q = [xi // L for xi in x]
    r = [xi % L for xi in x]
    total = sum(q)
    e = total // k
    lifted = total - k * e
    order = sorted(range(k), key=lambda i: r[i])
    level = [e] * k
    for i in order[:lifted]:
        level[i] = e + 1
    y = [r[i] + L * level[i] for i in range(k)]
    ranked = sorted(range(k), key=lambda i: -y[i])
    inv = [0] * k
    for pos, i in enumerate(ranked):
        inv[i] = pos
    t = tuple(q[i] - level[i] for i in range(k))
    sigma = [0] * k
    for i in range(k):
        sigma[inv[i]] = i
    w = AffineWeylElement(tuple(sigma), t)
    return Alcove(_dmat(x, L), w, l)


def alcove_of_point(x: Sequence[int], ctx: Context) -> Alcove:
    """The alcove containing the regular point ``x``."""
    k, l = ctx.k, ctx.l
    if len(x) != k:
        raise ValueError(f"expected a point with {k} coordinates")
    if any((x[i] - x[j]) % l == 0 for i, j in _pairs(k)):
        raise ValueError("point is singular; use a_plus_of_point")
    return _alcove_of_scaled([k * xi for xi in x], k, l)


def a_plus_of_point(x: Sequence[int], ctx: Context) -> Alcove:
    """The alcove touching ``x`` on the positive side of every wall through it."""
    k, l = ctx.k, ctx.l
    if len(x) != k:
        raise ValueError(f"expected a point with {k} coordinates")
    return _alcove_of_scaled([k * xi + (k - 1 - i) for i, xi in enumerate(x)], k, l)


def right_multiply(a: Alcove, s: int, ctx: Context) -> tuple[Alcove, str, bool]:
    """``(A s, 'succ' or 'prec', A s in the positive chamber)``."""
    b = Alcove.from_element(a.elem * generator(s, ctx.k), ctx.l)
    changed = [(da, db) for da, db in zip(a.dmat, b.dmat) if da != db]
    if len(changed) != 1:
        raise AssertionError("adjacent alcoves must differ across exactly one wall")
    da, db = changed[0]
    return b, ("succ" if db > da else "prec"), b.in_chamber


def separation_length(a: Alcove) -> int:
    return sum(abs(d) for d in a.dmat)


@dataclass(frozen=True)
class Face:
    """Walls ``(i, j, m)`` (1-based, ``x_i - x_j = m*l``) through a point, plus ``d_ij`` off the walls."""

    walls: frozenset
    dmat: tuple[tuple[tuple[int, int], int], ...]

    def signature(self) -> tuple:
        # level-free description: per pair, the floor and whether it is on the wall
        on = {(i, j): m for i, j, m in self.walls}
        rows = [((i, j), on[(i, j)], True) for i, j in on]
        rows += [((i, j), d, False) for (i, j), d in self.dmat]
        return tuple(sorted(rows))


def face_signature(x: Sequence[int], ctx: Context) -> Face:
    l = ctx.l
    walls = set()
    off = []
    for i, j in _pairs(len(x)):
        diff = x[i] - x[j]
        if diff % l == 0:
            walls.add((i + 1, j + 1, diff // l))
        else:
            off.append(((i + 1, j + 1), diff // l))
    return Face(frozenset(walls), tuple(off))

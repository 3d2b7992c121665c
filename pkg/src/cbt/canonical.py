"""Truncated lower global crystal basis G~(mu) of the level-1 Fock space.

Two ways of producing the bar-invariant starting vector A~(mu) are offered:

``llt``
    the ladder tableau of ``mu`` applied to the empty diagram;
``fast``
    a short tableau started from a nearby, highly singular diagram ``nu``
    whose G~ is cheap (critical diagrams are their own basis vector, full
    columns are split off first).

Either vector is then reduced against lexicographically smaller basis
vectors until every off-diagonal coefficient lies in v Z[v].  Both modes
must produce identical results because that basis is unique.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Sequence

from .fock import FockVector, apply_word
from .laurent import LaurentPoly, ONE
from .partition import (
    Context,
    Partition,
    add_fundamental,
    box_coords,
    critical_anchor,
    dominance_leq,
    format_partition,
    gaps,
    in_same_orbit,
    is_l_regular,
    l_regular_partitions,
    partitions,
)
from .paths import SkewPath, box_path, check_property_L, column_path, ladder_path
from .recursion import AlgorithmError, drive

__all__ = ["Session", "Plan", "plan_fast", "DecMatrix", "validate_gcb", "MODES"]

MODES = ("llt", "fast")

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class Plan:
    """How A~(mu) is obtained: ``path`` applied to G~(``start``)."""

    case: str
    start: Partition | None = None
    path: SkewPath | None = None
    shift: int = 0


def _from_gaps(g: Sequence[int], k: int) -> Partition:
    # diagram with last row 0 and row differences g
    parts = [0] * k
    for i in range(k - 2, -1, -1):
        parts[i] = parts[i + 1] + g[i]
    return Partition(parts)


def plan_fast(mu: Sequence[int], ctx: Context) -> Plan:
    """Choose the starting diagram and skew tableau for the fast algorithm.

    Candidates that are not l-regular or whose tableau fails property (L)
    (which happens for some boundary diagrams once k > l) are skipped, and
    the ladder tableau from the empty diagram is the final fallback.
    """
    k, l = ctx.k, ctx.l
    mu = Partition(mu)
    x = mu.padded(k)
    if x[k - 1] > 0:
        return Plan("shift", add_fundamental(mu, k, -x[k - 1], k), shift=x[k - 1])
    c = gaps(mu, k)
    if all(ci % l == 0 for ci in c):
        return Plan("critical")
    if all(ci >= l for ci in c):
        anchor = critical_anchor(mu, k, l)
        path = box_path(anchor, box_coords(mu, k, l), ctx)
        if check_property_L(path, ctx):
            return Plan("interior", anchor, path)
        return Plan("ladder", Partition(), ladder_path(mu, ctx))
    q = [ci // l for ci in c]
    if not any(q):
        return Plan("ladder", Partition(), ladder_path(mu, ctx))
    on_wall = [qi == 0 for qi in q]
    nu = _from_gaps([0 if w else l * qi - 1 for w, qi in zip(on_wall, q)], k)
    dprime = [ci - 1 if w else ci % l for w, ci in zip(on_wall, c)]
    if any(dprime):
        path = box_path(nu, dprime, ctx)
        # for k > l the box corner may be l-singular: restart at the first
        # l-regular diagram along the tableau
        for t in range(len(path.steps)):
            lam = path.chain[t]
            if is_l_regular(lam, l):
                tail = path.tail(t)
                if check_property_L(tail, ctx):
                    return Plan("box" if t == 0 else "box-tail", lam, tail)
    for j in range(k - 1, 0, -1):
        if on_wall[j - 1] or c[j - 1] <= l:
            continue
        nu = add_fundamental(mu, j, -l, k)
        if is_l_regular(nu, l):
            path = column_path(nu, j, ctx)
            if check_property_L(path, ctx):
                return Plan("column", nu, path)
    return Plan("ladder", Partition(), ladder_path(mu, ctx))


def validate_gcb(mu: Sequence[int], vec: FockVector) -> None:
    """Raise AlgorithmError unless ``vec`` has the shape required of G~(mu)."""
    k, l = vec.ctx.k, vec.ctx.l
    mu = Partition(mu)
    if vec.coeff(mu) != ONE:
        raise AlgorithmError(f"G~({format_partition(mu)}) does not have coefficient 1 at itself")
    for lam, p in vec.items():
        if lam == mu:
            continue
        if not p.in_vZv():
            raise AlgorithmError(
                f"G~({format_partition(mu)}) has coefficient {p} outside vZ[v] at {format_partition(lam)}")
        if not dominance_leq(lam, mu) or not in_same_orbit(lam, mu, k, l):
            raise AlgorithmError(
                f"G~({format_partition(mu)}) has {format_partition(lam)} outside the dominated orbit")


@dataclass(frozen=True)
class DecMatrix:
    rows: tuple[Partition, ...]
    cols: tuple[Partition, ...]
    entries: tuple[tuple[LaurentPoly | int, ...], ...]

    def column(self, mu: Sequence[int]) -> dict[Partition, LaurentPoly | int]:
        j = self.cols.index(Partition(mu))
        return {lam: row[j] for lam, row in zip(self.rows, self.entries)}


class Session:
    """Memoized computation of G~ for one (k, l, mode)."""

    def __init__(self, ctx: Context, mode: str = "fast", cache=None, trace: bool = False):
        if mode not in MODES:
            raise ValueError(f"mode must be one of {MODES}, not {mode!r}")
        self.ctx = ctx
        self.mode = mode
        self.cache = cache
        self.memo: dict[Partition, FockVector] = {}
        self.computed_count = 0
        self.cache_hits = 0
        self.cache_rejects = 0
        self.trace: list[tuple[Partition, Plan]] | None = [] if trace else None

    # -- public API -------------------------------------------------------

    def gcb(self, mu: Sequence[int]) -> FockVector:
        mu = self._check_regular(mu)
        hit = self._lookup(mu)
        if hit is not None:
            return hit
        return drive(self, self._single(mu))

    def a_element(self, mu: Sequence[int]) -> FockVector:
        mu = self._check_regular(mu)
        return drive(self, self._a_task(mu))

    def reduce(self, a: FockVector, mu: Sequence[int]) -> FockVector:
        mu = Partition(mu)
        return drive(self, self._reduce_task(a, mu))

    def d_poly(self, lam: Sequence[int], mu: Sequence[int]) -> LaurentPoly:
        return self.gcb(mu).coeff(lam)

    def plan(self, mu: Sequence[int]) -> Plan:
        mu = self._check_regular(mu)
        if self.mode == "llt":
            return Plan("ladder", Partition(), ladder_path(mu, self.ctx))
        return plan_fast(mu, self.ctx)

    def dec_matrix(self, n: int, at_one: bool = False) -> DecMatrix:
        k, l = self.ctx.k, self.ctx.l
        rows = tuple(partitions(n, k))
        cols = tuple(l_regular_partitions(n, k, l))
        columns = [self.gcb(mu) for mu in cols]
        entries = []
        for lam in rows:
            row = []
            for g in columns:
                p = g.coeff(lam)
                row.append(p.eval_at_one() if at_one else p)
            entries.append(tuple(row))
        return DecMatrix(rows, cols, tuple(entries))

    # -- internals --------------------------------------------------------

    def _check_regular(self, mu) -> Partition:
        mu = Partition(mu)
        if len(mu) > self.ctx.k:
            raise ValueError(f"{format_partition(mu)} has more than {self.ctx.k} rows")
        if not is_l_regular(mu, self.ctx.l):
            raise ValueError(f"{format_partition(mu)} is not {self.ctx.l}-regular")
        return mu

    def _single(self, mu):
        result = yield mu
        return result

    def _lookup(self, mu):
        hit = self.memo.get(mu)
        if hit is None and self.cache is not None:
            hit = self.cache.get(self.ctx, self.mode, mu)
            if hit is not None:
                try:
                    validate_gcb(mu, hit)
                except AlgorithmError as exc:
                    log.warning("ignoring cached entry: %s", exc)
                    self.cache.discard(self.ctx, self.mode, mu)
                    self.cache_rejects += 1
                    return None
                self.memo[Partition(mu)] = hit
                self.cache_hits += 1
        return hit

    def _task(self, mu):
        if not is_l_regular(mu, self.ctx.l):
            raise AlgorithmError(f"reduction needs G~ of the {self.ctx.l}-singular {format_partition(mu)}")
        a = yield from self._a_task(mu)
        return (yield from self._reduce_task(a, mu))

    def _store(self, mu, vec):
        validate_gcb(mu, vec)
        self.memo[Partition(mu)] = vec
        self.computed_count += 1
        if self.cache is not None:
            self.cache.put(self.ctx, self.mode, mu, vec)
        return vec

    def _a_task(self, mu):
        plan = self.plan(mu)
        if self.trace is not None:
            self.trace.append((mu, plan))
        if plan.case == "shift":
            base = yield plan.start
            return base.shift_columns(plan.shift)
        if plan.case == "critical":
            return FockVector.basis(self.ctx, mu)
        if not check_property_L(plan.path, self.ctx):
            raise AlgorithmError(
                f"{plan.case} tableau {plan.path} for {format_partition(mu)} violates property (L)")
        if plan.case in ("ladder", "interior"):
            # empty and critical starting diagrams are their own basis vectors
            start = FockVector.basis(self.ctx, plan.start)
        else:
            start = yield plan.start
        a = apply_word(plan.path.steps, start)
        if a.coeff(mu) != ONE:
            raise AlgorithmError(f"A~({format_partition(mu)}) has coefficient {a.coeff(mu)} at itself")
        return a

    def _reduce_task(self, a: FockVector, mu: Partition):
        vec = dict(a.items())
        last = None
        while True:
            bad = [lam for lam, p in vec.items() if lam != mu and not p.in_vZv()]
            if not bad:
                break
            lam = max(bad)
            if last is not None and lam >= last:
                raise AlgorithmError(f"reduction of {format_partition(mu)} did not descend at {format_partition(lam)}")
            gamma = vec[lam].gamma_correction()
            g = yield Partition(lam)
            for nu, c in g.items():
                p = vec.get(nu, LaurentPoly()) - gamma * c
                if p:
                    vec[nu] = p
                else:
                    vec.pop(nu, None)
            last = lam
        return FockVector(self.ctx, vec)

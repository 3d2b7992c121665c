"""Invariant checks shared by the ``selftest`` command and the test-suite.

Each check returns a list of human-readable problems; an empty list means
the property holds.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

from .canonical import Session, plan_fast
from .fock import FockVector
from .kl import KLSession, compare_with_gcb, describe_mismatch
from .laurent import ONE
from .partition import (
    Context,
    Partition,
    add_fundamental,
    dominance_leq,
    format_partition,
    in_same_orbit,
    is_k_critical,
    is_l_regular,
    l_regular_partitions,
)
from .paths import check_property_L, ladder_path


def structure_problems(mu, vec: FockVector) -> list[str]:
    """Unitriangularity, positivity and orbit support of one G~(mu)."""
    k, l = vec.ctx.k, vec.ctx.l
    out = []
    if vec.coeff(mu) != ONE:
        out.append(f"d[{format_partition(mu)},{format_partition(mu)}] = {vec.coeff(mu)}")
    for lam, p in vec.items():
        if lam == tuple(mu):
            continue
        cls = p.classify()
        if not (cls.in_vZv and cls.nonneg_coeffs):
            out.append(f"d[{format_partition(lam)},{format_partition(mu)}] = {p} not in vN[v]")
        if not dominance_leq(lam, mu) or not in_same_orbit(lam, mu, k, l):
            out.append(f"{format_partition(lam)} outside the dominated orbit of {format_partition(mu)}")
    return out


def mode_problems(mu, llt: Session, fast: Session) -> list[str]:
    a, b = llt.gcb(mu), fast.gcb(mu)
    return [] if a == b else [f"llt and fast differ at {format_partition(mu)}: {a} vs {b}"]


def shift_problems(mu, session: Session) -> list[str]:
    k, l = session.ctx.k, session.ctx.l
    up = add_fundamental(mu, k, 1, k)
    if not is_l_regular(up, l):
        return []
    lhs = session.gcb(up)
    rhs = session.gcb(mu).shift_columns(1)
    return [] if lhs == rhs else [f"G~({format_partition(up)}) is not the shift of G~({format_partition(mu)})"]


def critical_problems(mu, ctx: Context) -> list[str]:
    if not is_k_critical(mu, ctx.k, ctx.l):
        return []
    s = Session(ctx, "fast")
    g = s.gcb(mu)
    out = []
    if g != FockVector.basis(ctx, mu):
        out.append(f"G~({format_partition(mu)}) = {g}, expected the diagram itself")
    # one computation, plus one for the column shift when the last row is nonzero
    allowed = 1 + (Partition(mu).padded(ctx.k)[-1] > 0)
    if s.computed_count > allowed:
        out.append(f"critical {format_partition(mu)} needed {s.computed_count} computations")
    return out


def property_L_problems(mu, ctx: Context) -> list[str]:
    out = []
    paths = [("ladder", ladder_path(mu, ctx))]
    plan = plan_fast(mu, ctx)
    if plan.path is not None:
        paths.append((plan.case, plan.path))
    for name, p in paths:
        if not check_property_L(p, ctx):
            out.append(f"{name} tableau {p} for {format_partition(mu)} violates (L)")
    return out


def kl_problems(mu, session: Session, kl: KLSession) -> list[str]:
    return [f"{format_partition(mu)} -> {describe_mismatch(r)}" for r in compare_with_gcb(mu, session, kl)]


@dataclass
class Report:
    checks: int = 0
    failures: list[str] = field(default_factory=list)
    per_property: dict[str, int] = field(default_factory=dict)

    def run(self, name: str, fn: Callable[[], list[str]]) -> None:
        self.checks += 1
        self.per_property[name] = self.per_property.get(name, 0) + 1
        self.failures.extend(f"[{name}] {msg}" for msg in fn())

    @property
    def ok(self) -> bool:
        return not self.failures


def run_selftest(max_k: int = 3, max_l: int = 3, bound: int = 8) -> Report:
    report = Report()
    for k in range(2, max_k + 1):
        for l in range(2, max_l + 1):
            ctx = Context(k, l)
            llt, fast, kl = Session(ctx, "llt"), Session(ctx, "fast"), KLSession(ctx)
            for n in range(bound + 1):
                for mu in l_regular_partitions(n, k, l):
                    mu = Partition(mu)
                    report.run("mode agreement", lambda: mode_problems(mu, llt, fast))
                    report.run("structure", lambda: structure_problems(mu, fast.gcb(mu)))
                    report.run("kl agreement", lambda: kl_problems(mu, fast, kl))
                    report.run("column shift", lambda: shift_problems(mu, fast))
                    report.run("critical", lambda: critical_problems(mu, ctx))
                    report.run("property L", lambda: property_L_problems(mu, ctx))
    return report

"""Affine Kazhdan-Lusztig polynomials via the antispherical module.

The module has a basis ``N_A`` indexed by alcoves ``A`` in the positive Weyl
chamber.  Only the right action of the self-dual generators ``C_s`` is
needed::

    N_A C_s = N_{As} + v N_A       if As in the chamber and As above A
            = N_{As} + v^-1 N_A    if As in the chamber and As below A
            = 0                    otherwise

The self-dual basis element ``Nbar_A`` is obtained from ``Nbar_{As} C_s`` for
a lower neighbour ``As``, followed by subtracting self-dual multiples of
smaller ``Nbar_B`` until all lower coefficients lie in ``v Z[v]``.  Weights
are attached to alcoves through ``a_plus_of_point(lambda + rho)``.
"""

from __future__ import annotations

from typing import Mapping, Sequence

from .alcove import Alcove, a_plus_of_point, right_multiply, separation_length
from .laurent import LaurentPoly, ONE, V, V_INV
from .partition import (
    Context,
    Partition,
    add_rho,
    dominance_leq,
    format_partition,
    in_same_orbit,
    orbit_members,
)
from .recursion import AlgorithmError, drive

__all__ = ["KLVector", "KLSession", "cs_action", "n_poly", "compare_with_gcb"]


class KLVector:
    """Finite sum of chamber alcoves with Laurent coefficients."""

    __slots__ = ("ctx", "_entries")

    def __init__(self, ctx: Context, entries: Mapping[Alcove, LaurentPoly | int] | None = None):
        self.ctx = ctx
        self._entries: dict[Alcove, LaurentPoly] = {}
        for a, c in (entries or {}).items():
            if not a.in_chamber:
                raise ValueError(f"{a} is not in the positive chamber")
            c = c if isinstance(c, LaurentPoly) else LaurentPoly.constant(c)
            s = self._entries.get(a, LaurentPoly()) + c
            if s:
                self._entries[a] = s
            else:
                self._entries.pop(a, None)

    @classmethod
    def basis(cls, ctx: Context, a: Alcove) -> KLVector:
        return cls(ctx, {a: ONE})

    def items(self):
        return self._entries.items()

    def coeff(self, a: Alcove) -> LaurentPoly:
        return self._entries.get(a, LaurentPoly())

    def __len__(self) -> int:
        return len(self._entries)

    def __iter__(self):
        return iter(self._entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, KLVector):
            return NotImplemented
        return self.ctx == other.ctx and self._entries == other._entries

    __hash__ = None

    def __repr__(self) -> str:
        body = " + ".join(f"({p})N{a.dmat}" for a, p in sorted(
            self._entries.items(), key=lambda kv: _order_key(kv[0]), reverse=True))
        return f"KLVector({body or 0})"


def _order_key(a: Alcove):
    return (separation_length(a), a.dmat)


def cs_action(x: KLVector, s: int) -> KLVector:
    ctx = x.ctx
    out: dict[Alcove, LaurentPoly] = {}

    def add(a, p):
        q = out.get(a, LaurentPoly()) + p
        if q:
            out[a] = q
        else:
            out.pop(a, None)

    for a, p in x.items():
        b, rel, inside = right_multiply(a, s, ctx)
        if not inside:
            continue
        add(b, p)
        add(a, p * (V if rel == "succ" else V_INV))
    return KLVector(ctx, out)


class KLSession:
    """Memoized ``Nbar_A`` for one (k, l).

    ``generator_order`` fixes which admissible generator is tried first; any
    order must give the same result.
    """

    def __init__(self, ctx: Context, generator_order: Sequence[int] | None = None):
        self.ctx = ctx
        self.memo: dict[Alcove, KLVector] = {}
        self.computed_count = 0
        self.order = tuple(generator_order) if generator_order is not None else tuple(range(ctx.k))
        if sorted(self.order) != list(range(ctx.k)):
            raise ValueError("generator_order must be a permutation of 0..k-1")
        # coefficients seen outside Z[v] during a correction (none are expected)
        self.negative_exponents: list[tuple[Alcove, Alcove, LaurentPoly]] = []

    def nbar(self, a: Alcove) -> KLVector:
        if not a.in_chamber:
            raise ValueError(f"{a} is not in the positive chamber")
        hit = self.memo.get(a)
        if hit is not None:
            return hit
        return drive(self, self._single(a))

    def nbar_of_weight(self, mu: Sequence[int]) -> KLVector:
        return self.nbar(a_plus_of_point(add_rho(mu, self.ctx.k), self.ctx))

    def n_poly(self, lam: Sequence[int], mu: Sequence[int]) -> LaurentPoly:
        return n_poly(lam, mu, self)

    # -- driver protocol ------------------------------------------------------

    def _single(self, a):
        result = yield a
        return result

    def _lookup(self, a):
        return self.memo.get(a)

    def _store(self, a, vec):
        self._validate(a, vec)
        self.memo[a] = vec
        self.computed_count += 1
        return vec

    def _validate(self, a, vec):
        if vec.coeff(a) != ONE:
            raise AlgorithmError(f"Nbar{a.dmat} has coefficient {vec.coeff(a)} at itself")
        for b, p in vec.items():
            if b == a:
                continue
            cls = p.classify()
            if not cls.in_vZv or not cls.nonneg_coeffs:
                raise AlgorithmError(f"Nbar{a.dmat} has coefficient {p} at {b.dmat}")

    def _task(self, a):
        if a.is_lowest:
            return KLVector.basis(self.ctx, a)
        for s in self.order:
            b, rel, inside = right_multiply(a, s, self.ctx)
            if inside and rel == "prec":
                break
        else:
            raise AlgorithmError(f"no generator lowers {a.dmat} inside the chamber")
        lower = yield b
        vec = dict(cs_action(lower, s).items())
        last = None
        while True:
            for c, p in vec.items():
                if p and p.min_exp() < 0:
                    self.negative_exponents.append((a, c, p))
            bad = [c for c, p in vec.items() if c != a and not p.in_vZv()]
            if not bad:
                break
            c = max(bad, key=_order_key)
            key = _order_key(c)
            if last is not None and key >= last:
                raise AlgorithmError(f"correction of Nbar{a.dmat} did not descend at {c.dmat}")
            gamma = vec[c].gamma_correction()
            g = yield c
            for e, q in g.items():
                r = vec.get(e, LaurentPoly()) - gamma * q
                if r:
                    vec[e] = r
                else:
                    vec.pop(e, None)
            last = key
        return KLVector(self.ctx, vec)


def n_poly(lam: Sequence[int], mu: Sequence[int], session: KLSession) -> LaurentPoly:
    """``n_{lam+rho, mu+rho}``; zero when ``lam`` is outside the orbit of ``mu``."""
    k, l = session.ctx.k, session.ctx.l
    lam, mu = Partition(lam), Partition(mu)
    if len(lam) > k or len(mu) > k:
        raise ValueError(f"diagrams must have at most {k} rows")
    if not in_same_orbit(lam, mu, k, l):
        return LaurentPoly()
    top = a_plus_of_point(add_rho(mu, k), session.ctx)
    low = a_plus_of_point(add_rho(lam, k), session.ctx)
    return session.nbar(top).coeff(low)


def compare_with_gcb(mu: Sequence[int], gcb_session, kl_session: KLSession) -> list[tuple[Partition, LaurentPoly, LaurentPoly]]:
    """Diagrams ``lam`` where ``d_{lam,mu}`` and ``n_{lam+rho,mu+rho}`` differ, as ``(lam, d, n)``."""
    k, l = kl_session.ctx.k, kl_session.ctx.l
    mu = Partition(mu)
    g = gcb_session.gcb(mu)
    out = []
    for lam in orbit_members(mu, k, l):
        if not dominance_leq(lam, mu):
            continue
        d = g.coeff(lam)
        n = n_poly(lam, mu, kl_session)
        if d != n:
            out.append((lam, d, n))
    # anything in G~ outside the dominated orbit is a mismatch against n = 0
    for lam, d in g.items():
        if not dominance_leq(lam, mu) or not in_same_orbit(lam, mu, k, l):
            out.append((lam, d, LaurentPoly()))
    return out


def describe_mismatch(row) -> str:
    lam, d, n = row
    return f"{format_partition(lam)}: d={d} n={n}"

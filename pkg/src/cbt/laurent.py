"""Sparse Laurent polynomials in ``v`` with integer coefficients.

Coefficients are Python ints, so there is no overflow to guard against.
Every instance is kept in canonical form (no zero coefficients) and is
treated as immutable, which makes instances usable as dict keys.
"""

from __future__ import annotations

from typing import Iterable, Mapping, NamedTuple

__all__ = ["LaurentPoly", "Classification", "ZERO", "ONE", "V", "V_INV"]


class Classification(NamedTuple):
    in_vZv: bool
    nonneg_coeffs: bool
    bar_invariant: bool
    eval_at_one: int


class LaurentPoly:
    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | Iterable[tuple[int, int]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[int, int] = {}
        for exp, coeff in items:
            exp, coeff = int(exp), int(coeff)
            acc[exp] = acc.get(exp, 0) + coeff
        self._terms = {e: c for e, c in acc.items() if c}
        self._hash = None

    @classmethod
    def _wrap(cls, terms: dict[int, int]) -> LaurentPoly:
        # caller guarantees canonical form and gives up ownership of `terms`
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> LaurentPoly:
        return cls._wrap({exp: coeff} if coeff else {})

    @classmethod
    def constant(cls, c: int) -> LaurentPoly:
        return cls.monomial(0, c)

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def coeff(self, exp: int) -> int:
        return self._terms.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def min_exp(self) -> int | None:
        return min(self._terms) if self._terms else None

    def max_exp(self) -> int | None:
        return max(self._terms) if self._terms else None

    def in_vZv(self) -> bool:
        """True if every exponent is at least 1."""
        return all(e >= 1 for e in self._terms)

    def is_bar_invariant(self) -> bool:
        t = self._terms
        return all(t.get(-e) == c for e, c in t.items())

    def eval_at_one(self) -> int:
        return sum(self._terms.values())

    def classify(self) -> Classification:
        return Classification(
            in_vZv=self.in_vZv(),
            nonneg_coeffs=all(c > 0 for c in self._terms.values()),
            bar_invariant=self.is_bar_invariant(),
            eval_at_one=self.eval_at_one(),
        )

    # -- arithmetic -------------------------------------------------------

    @staticmethod
    def _coerce(other) -> LaurentPoly | None:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly.constant(other)
        return None

    def __add__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        out = dict(self._terms)
        for e, c in q._terms.items():
            s = out.get(e, 0) + c
            if s:
                out[e] = s
            else:
                del out[e]
        return LaurentPoly._wrap(out)

    __radd__ = __add__

    def __neg__(self) -> LaurentPoly:
        return LaurentPoly._wrap({e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return self + (-q)

    def __rsub__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        return q + (-self)

    def __mul__(self, other):
        q = self._coerce(other)
        if q is None:
            return NotImplemented
        out: dict[int, int] = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in q._terms.items():
                e = e1 + e2
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly._wrap({e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> LaurentPoly:
        if n < 0:
            if len(self._terms) == 1:
                (e, c), = self._terms.items()
                if c in (1, -1):
                    return LaurentPoly.monomial(e * n, c ** (-n))
            raise ValueError("only unit monomials have Laurent inverses")
        result = ONE
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, n: int) -> LaurentPoly:
        """Multiply by v**n."""
        if not n:
            return self
        return LaurentPoly._wrap({e + n: c for e, c in self._terms.items()})

    def bar(self) -> LaurentPoly:
        """The ring involution v -> v^-1."""
        return LaurentPoly._wrap({-e: c for e, c in self._terms.items()})

    def gamma_correction(self) -> LaurentPoly:
        """Bar-invariant part built from the non-positive exponents.

        gamma = sum_{n<0} p_n (v^n + v^-n) + p_0.  Subtracting it from a
        polynomial leaves only positive exponents in the low half.
        """
        t = self._terms
        out: dict[int, int] = {}
        for e, c in t.items():
            if e < 0:
                out[e] = out.get(e, 0) + c
                out[-e] = out.get(-e, 0) + c
            elif e == 0:
                out[0] = out.get(0, 0) + c
        return LaurentPoly._wrap({e: c for e, c in out.items() if c})

    # -- identity ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, LaurentPoly):
            return self._terms == other._terms
        if isinstance(other, int):
            return self._terms == ({0: other} if other else {})
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- rendering --------------------------------------------------------

    def to_json(self) -> dict[str, int]:
        return {str(e): c for e, c in sorted(self._terms.items())}

    @classmethod
    def from_json(cls, data: Mapping[str, int | str]) -> LaurentPoly:
        return cls((int(e), int(c)) for e, c in data.items())

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e in sorted(self._terms, reverse=True):
            c = self._terms[e]
            if e == 0:
                mono = str(abs(c))
            else:
                var = "v" if e == 1 else f"v^{e}"
                mono = var if abs(c) == 1 else f"{abs(c)}{var}"
            sign = "-" if c < 0 else "+"
            parts.append((sign, mono))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, mono in parts[1:]:
            out += f" {sign} {mono}"
        return out

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_json()!r})"


ZERO = LaurentPoly._wrap({})
ONE = LaurentPoly._wrap({0: 1})
V = LaurentPoly._wrap({1: 1})
V_INV = LaurentPoly._wrap({-1: 1})

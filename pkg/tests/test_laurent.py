import pytest
from hypothesis import given

from cbt.laurent import LaurentPoly, ONE, V, V_INV, ZERO

from strategies import laurent


def P(**kw):
    return LaurentPoly(kw)


def test_arithmetic_examples():
    assert V + V_INV == LaurentPoly({1: 1, -1: 1})
    assert V * V_INV == ONE
    p = LaurentPoly({2: 3, -1: -4})
    assert (p - p) == ZERO
    assert (p - p).terms == {}


def test_canonical_form_drops_zeros():
    p = LaurentPoly({0: 0, 3: 2, 4: 0})
    assert p.terms == {3: 2}
    assert LaurentPoly([(1, 2), (1, -2)]).is_zero()


def test_bar_examples():
    assert V.bar() == V_INV
    assert LaurentPoly({-2: 2, 0: 1}).bar() == LaurentPoly({2: 2, 0: 1})


def test_gamma_examples():
    assert LaurentPoly.constant(3).gamma_correction() == 3
    assert LaurentPoly({-1: 1, 1: 2}).gamma_correction() == V_INV + V
    assert LaurentPoly({1: 1, 2: 1}).gamma_correction() == ZERO


def test_classify_examples():
    c = LaurentPoly({1: 1, 3: 1}).classify()
    assert (c.in_vZv, c.nonneg_coeffs, c.bar_invariant, c.eval_at_one) == (True, True, False, 2)
    c = (V + V_INV).classify()
    assert c.bar_invariant and not c.in_vZv
    c = ZERO.classify()
    assert c.in_vZv and c.nonneg_coeffs and c.bar_invariant and c.eval_at_one == 0


def test_int_equality_and_hash():
    assert ONE == 1 and ZERO == 0 and V != 1
    assert {LaurentPoly({1: 1}): "x"}[V] == "x"


def test_powers():
    assert (1 + V) ** 2 == LaurentPoly({0: 1, 1: 2, 2: 1})
    assert V ** -3 == LaurentPoly({-3: 1})
    with pytest.raises(ValueError):
        (1 + V) ** -1


def test_rendering():
    assert str(LaurentPoly({2: 1, 1: 1})) == "v^2 + v"
    assert str(LaurentPoly({-1: -2, 0: 3})) == "3 - 2v^-1"
    assert str(ZERO) == "0"


@given(laurent, laurent)
def test_bar_is_ring_involution(p, q):
    assert (p * q).bar() == p.bar() * q.bar()
    assert (p + q).bar() == p.bar() + q.bar()
    assert p.bar().bar() == p


@given(laurent)
def test_gamma_is_bar_invariant_and_corrects(p):
    g = p.gamma_correction()
    assert g.is_bar_invariant()
    assert all(e > 0 for e, _ in (p - g).items())


@given(laurent)
def test_bar_invariant_gamma_identity(q):
    p = q + q.bar()
    # a bar-invariant polynomial is its own correction, so nothing survives
    assert p.gamma_correction() == p
    assert (p - p.gamma_correction()).is_zero()


@given(laurent)
def test_json_round_trip(p):
    assert LaurentPoly.from_json(p.to_json()) == p


@given(laurent, laurent, laurent)
def test_ring_axioms(p, q, r):
    assert p * (q + r) == p * q + p * r
    assert (p * q) * r == p * (q * r)
    assert p - q == -(q - p)


def test_shift_and_eval():
    p = LaurentPoly({-1: 2, 3: -1})
    assert p.shift(2) == LaurentPoly({1: 2, 5: -1})
    assert p.eval_at_one() == 1

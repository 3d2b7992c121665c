import random

import pytest

from cbt.canonical import DecMatrix, Plan, Session, plan_fast, validate_gcb
from cbt.fock import FockVector
from cbt.laurent import ONE, V, V_INV
from cbt.partition import (
    Context,
    Partition,
    add_fundamental,
    is_k_critical,
    is_l_regular,
    l_regular_partitions,
)
from cbt.recursion import AlgorithmError
from cbt.verify import structure_problems

C22 = Context(2, 2)

# Hand-computed in the 2-row Fock space at l = 2.
#   G~(2):   f_1 f_0 0 = f_1 (1) = (2) + v(1,1); already reduced.
#   G~(4):   ladder word f_1 f_0 f_1 f_0.  f_0 kills (1,1) (its only 0-indent
#            would be row 3) and sends (2) to (3); f_1 (3) = (4) + v(3,1)
#            since row 2 sees one 1-indent and no 1-removable above it.
#   G~(3,1): column shift of G~(2).
GOLDEN = {
    (2,): {(2,): ONE, (1, 1): V},
    (4,): {(4,): ONE, (3, 1): V},
    (3, 1): {(3, 1): ONE, (2, 2): V},
}


@pytest.mark.parametrize("mode", ["llt", "fast"])
@pytest.mark.parametrize("mu", list(GOLDEN))
def test_golden_values(mode, mu):
    assert Session(C22, mode).gcb(mu) == FockVector(C22, GOLDEN[mu])


def test_a_element_llt_example():
    assert Session(C22, "llt").a_element((4,)) == FockVector(C22, {(4,): 1, (3, 1): V})


def test_fast_dispatch_example():
    plan = plan_fast((20, 10, 0, 0), Context(4, 5))
    assert plan.case == "box"
    assert plan.start == (18, 9)
    assert plan.path.chain == ((18, 9), (19, 10), (20, 10))


def test_dispatch_cases():
    c = Context(3, 3)
    assert plan_fast((4, 2, 1), c).case == "shift"
    assert plan_fast((4, 2), c).case == "critical"
    assert plan_fast((9, 4), c).case == "interior"
    assert plan_fast((1,), c).case == "ladder"


def test_reduce_examples():
    c = Context(2, 3)
    s = Session(c, "fast")
    mu, lam = Partition((3,)), Partition((2, 1))
    # check that lam is its own basis vector before using it in hand examples
    assert s.gcb(lam) == FockVector.basis(c, lam)
    a = FockVector(c, {mu: 1, lam: 1 + V})
    assert s.reduce(a, mu) == FockVector(c, {mu: 1, lam: V})
    a = FockVector(c, {mu: 1, lam: V_INV + V})
    assert s.reduce(a, mu) == FockVector.basis(c, mu)
    done = FockVector(c, {mu: 1, lam: V})
    assert s.reduce(done, mu) == done


def test_d_poly_and_dec_matrix_examples():
    s = Session(C22, "fast")
    assert s.d_poly((2,), (2,)) == ONE
    assert s.d_poly((1, 1), (2,)) == V
    assert s.d_poly((2, 2), (4,)) == 0 and s.d_poly((3, 1), (4,)) == V
    m = s.dec_matrix(2, at_one=True)
    assert m.column((2,)) == {(2,): 1, (1, 1): 1}
    m1 = s.dec_matrix(1, at_one=True)
    assert m1.rows == ((1,),) and m1.entries == ((1,),)
    assert s.dec_matrix(4, at_one=True).column((4,)) == {(4,): 1, (3, 1): 1, (2, 2): 0}


def test_input_validation():
    s = Session(C22, "fast")
    with pytest.raises(ValueError):
        s.gcb((1, 1))
    with pytest.raises(ValueError):
        s.gcb((3, 2, 1))
    with pytest.raises(ValueError):
        Session(C22, "bogus")


def test_validate_gcb_rejects_bad_vectors():
    with pytest.raises(AlgorithmError):
        validate_gcb((2,), FockVector(C22, {(2,): 1, (1, 1): ONE}))
    with pytest.raises(AlgorithmError):
        validate_gcb((2,), FockVector(C22, {(2,): V}))
    with pytest.raises(AlgorithmError):
        validate_gcb((2,), FockVector(C22, {(2,): 1, (3,): V}))


def test_counts_are_memo_insertions():
    s = Session(Context(4, 5), "fast")
    s.gcb((20, 10))
    assert s.computed_count == len(s.memo) == 5
    s.gcb((20, 10))
    assert s.computed_count == 5


def test_deep_recursion_does_not_overflow_the_stack():
    # a long chain of column shifts and reductions in a single session
    s = Session(Context(2, 2), "llt")
    g = s.gcb((301, 0))
    assert g.coeff((301,)) == ONE


@pytest.mark.parametrize("k,l", [(k, l) for k in range(2, 6) for l in range(2, 6)])
def test_modes_agree(k, l):
    c = Context(k, l)
    llt, fast = Session(c, "llt"), Session(c, "fast")
    for n in range(0, 13):
        for mu in l_regular_partitions(n, k, l):
            g = fast.gcb(mu)
            assert llt.gcb(mu) == g, mu
            assert structure_problems(mu, g) == []


def test_column_shift_rule_random():
    rng = random.Random(3)
    for _ in range(60):
        k, l = rng.randint(2, 4), rng.randint(2, 5)
        c = Context(k, l)
        s = Session(c, "llt")
        mu = Partition(sorted((rng.randint(0, 6) for _ in range(k)), reverse=True))
        up = add_fundamental(mu, k, 1, k)
        if is_l_regular(mu, l) and is_l_regular(up, l):
            assert s.gcb(up) == s.gcb(mu).shift_columns(1)


def test_critical_diagrams_are_their_own_basis_vectors():
    for k in range(2, 5):
        for l in range(2, 5):
            c = Context(k, l)
            for n in range(0, 16):
                for mu in l_regular_partitions(n, k, l):
                    if is_k_critical(mu, k, l):
                        assert Session(c, "llt").gcb(mu) == FockVector.basis(c, mu)


def test_trace_records_plans():
    s = Session(Context(4, 5), "fast", trace=True)
    s.gcb((20, 10))
    assert s.trace[0][0] == (20, 10) and isinstance(s.trace[0][1], Plan)
    assert isinstance(s.dec_matrix(1), DecMatrix)

import pytest
from hypothesis import given, strategies as st

from cbt.partition import (
    Context,
    Node,
    Partition,
    add_fundamental,
    add_rho,
    boundary_nodes,
    box_coords,
    critical_anchor,
    dominance_leq,
    format_partition,
    gaps,
    in_same_orbit,
    is_interior,
    is_k_critical,
    is_l_regular,
    lex_cmp,
    orbit_members,
    parse_partition,
    partitions,
    residue,
)

from strategies import partitions as partition_st


def test_partition_canonical_form():
    assert Partition((2, 1, 0, 0)) == (2, 1)
    assert Partition(()) == ()
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((1, -1))


def test_context_validation():
    with pytest.raises(ValueError):
        Context(0, 2)
    with pytest.raises(ValueError):
        Context(2, 1)
    assert Context(3, 2).rho == (2, 1, 0)


def test_residues():
    assert residue((1, 1), 5) == 0
    assert residue((1, 3), 2) == 0
    assert residue((2, 1), 3) == 1


def test_boundary_examples():
    assert boundary_nodes((), 2) == ([], [Node(1, 1)])
    rem, ind = boundary_nodes((1,), 2, 1)
    assert ind == [Node(1, 2), Node(2, 1)] and rem == []
    rem, _ = boundary_nodes((2,), 2, 1)
    assert rem == [Node(1, 2)]


def test_boundary_respects_row_bound():
    _, ind = boundary_nodes((2, 1), 2, None, k=2)
    assert Node(3, 1) not in ind


def test_orders():
    assert dominance_leq((1, 1), (2,))
    assert lex_cmp((1, 1), (2,)) == -1
    assert dominance_leq((3, 1), (3, 1)) and lex_cmp((3, 1), (3, 1)) == 0
    assert dominance_leq((2, 2), (3, 1))
    assert not dominance_leq((2,), (1,))


def test_regularity():
    assert not is_l_regular((1, 1), 2)
    assert is_l_regular((), 2)
    assert is_l_regular((2, 1), 2)


def test_weight_examples():
    assert gaps((1,), 2) == [2] and is_k_critical((1,), 2, 2)
    for k in range(2, 6):
        for l in range(2, 6):
            steinberg = [(l - 1) * (k - 1 - i) for i in range(k)]
            assert is_k_critical(steinberg, k, l)
    assert gaps((4,), 2) == [5]
    assert is_interior((4,), 2, 3)
    assert box_coords((4,), 2, 3) == [2]
    assert critical_anchor((4,), 2, 3) == (2,)
    assert add_fundamental((1,), 2, 2, 2) == (3, 2)
    assert add_rho((1,), 3) == (3, 1, 0)


def test_orbit_examples():
    assert orbit_members((2,), 2, 2) == [(2,), (1, 1)]
    assert (1, 1) not in orbit_members((2,), 2, 3)


def test_parse_and_format():
    assert parse_partition("20,10,0,0") == (20, 10)
    assert parse_partition("0") == () and parse_partition("") == ()
    assert format_partition(()) == "0"
    assert format_partition((3, 1)) == "3,1"
    with pytest.raises(ValueError):
        parse_partition("2,x")


def test_partitions_enumeration():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert list(partitions(4, 2)) == [(4,), (3, 1), (2, 2)]
    assert list(partitions(0)) == [()]
    # counts p(n)
    assert [sum(1 for _ in partitions(n)) for n in range(10)] == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30]


@given(partition_st(), st.integers(2, 5))
def test_boundary_moves_give_partitions(lam, l):
    rem, ind = boundary_nodes(lam, l)
    for node in rem:
        parts = list(lam)
        parts[node.row - 1] -= 1
        Partition(parts)
    for node in ind:
        parts = list(lam) + [0]
        parts[node.row - 1] += 1
        Partition(parts)


@given(partition_st(), st.integers(2, 5), st.integers(0, 4))
def test_same_residue_indents_distinct_rows_and_columns(lam, l, r):
    _, ind = boundary_nodes(lam, l, r % l)
    assert len({n.row for n in ind}) == len(ind)
    assert len({n.col for n in ind}) == len(ind)


@given(st.integers(2, 5), st.integers(2, 5), st.lists(st.integers(0, 12), min_size=4, max_size=4))
def test_interior_round_trip(k, l, raw):
    gs = [l + g for g in raw[:k - 1]]
    parts = [0] * k
    for i in range(k - 2, -1, -1):
        parts[i] = parts[i + 1] + gs[i] - 1
    lam = Partition(parts)
    assert is_interior(lam, k, l)
    anchor = critical_anchor(lam, k, l)
    assert is_k_critical(anchor, k, l)
    d = box_coords(lam, k, l)
    assert all(0 <= x < l for x in d)
    rebuilt = anchor
    for i, di in enumerate(d, start=1):
        rebuilt = add_fundamental(rebuilt, i, di, k)
    assert rebuilt == lam


@given(partition_st(max_rows=3, max_part=5), partition_st(max_rows=3, max_part=5), st.integers(2, 4))
def test_orbit_symmetry(lam, mu, l):
    assert in_same_orbit(lam, mu, 3, l) == in_same_orbit(mu, lam, 3, l)
    if sum(lam) == sum(mu):
        assert (lam in orbit_members(mu, 3, l)) == (mu in orbit_members(lam, 3, l))


@given(partition_st(), partition_st())
def test_dominance_implies_lex(lam, mu):
    if dominance_leq(lam, mu):
        assert lex_cmp(lam, mu) <= 0

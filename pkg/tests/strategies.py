"""Hypothesis strategies shared across the test modules."""

from hypothesis import strategies as st

from cbt.laurent import LaurentPoly
from cbt.partition import Partition

laurent = st.dictionaries(st.integers(-6, 6), st.integers(-5, 5), max_size=6).map(LaurentPoly)


@st.composite
def partitions(draw, max_rows=4, max_part=8):
    rows = draw(st.integers(0, max_rows))
    parts = sorted((draw(st.integers(1, max_part)) for _ in range(rows)), reverse=True)
    return Partition(parts)


@st.composite
def regular_partitions(draw, k, l, max_part=10):
    lam = draw(partitions(k, max_part))
    from cbt.partition import is_l_regular
    from hypothesis import assume
    assume(is_l_regular(lam, l))
    return lam

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from targetctl.linalg import ColumnSpan, float_rank, integer_row, parse_scalar, rank

from oracles import fraction_rank

scalars = st.one_of(
    st.integers(-6, 6),
    st.fractions(min_value=-5, max_value=5, max_denominator=7),
)


@st.composite
def matrices(draw, max_rows=6, max_cols=6):
    rows = draw(st.integers(1, max_rows))
    cols = draw(st.integers(1, max_cols))
    return [[draw(scalars) for _ in range(cols)] for _ in range(rows)]


def test_small_ranks():
    assert rank([[1, 2], [2, 4]]) == 1
    assert rank([[0, 0], [0, 0]]) == 0
    assert rank([[Fraction(1, 3), 1], [1, 3]]) == 1
    assert rank([[1, 0, 0], [0, 0, 1]]) == 2
    assert rank([]) == 0


def test_integer_row_clears_denominators():
    assert integer_row([Fraction(1, 2), Fraction(2, 3), 1]) == [3, 4, 6]


def test_parse_scalar_round_trip():
    assert parse_scalar("3") == 3 and isinstance(parse_scalar("3"), int)
    assert parse_scalar("-2/6") == Fraction(-1, 3)


@settings(max_examples=300, deadline=None)
@given(matrices())
def test_rank_matches_fraction_elimination(m):
    assert rank(m) == fraction_rank(m)
    assert rank([list(c) for c in zip(*m)]) == fraction_rank(m)


@settings(max_examples=200, deadline=None)
@given(matrices())
def test_column_span_matches_rank(m):
    span = ColumnSpan(len(m))
    for col in zip(*m):
        span.add(col)
    assert span.rank == fraction_rank(m)


@settings(max_examples=100, deadline=None)
@given(matrices())
def test_float_rank_agrees_on_small_entries(m):
    assert float_rank(m) == rank(m)


def test_near_singular_exact_vs_float():
    eps = Fraction(1, 10**12)
    m = [[1, 1], [1, 1 + eps]]
    assert rank(m) == 2
    assert float_rank(m) == 1

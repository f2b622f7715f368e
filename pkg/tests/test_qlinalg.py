"""Exact linear algebra: RREF, kernels, solving, positive kernel points."""

from fractions import Fraction

from hypothesis import given, settings, strategies as st

from rht.qlinalg import (
    QMatrix,
    kernel_basis,
    positive_integer_kernel,
    rank,
    rref,
    solve,
)

fractions = st.fractions(
    min_value=-5, max_value=5, max_denominator=4
)


def matrices(max_rows=4, max_cols=4):
    return st.integers(1, max_rows).flatmap(
        lambda r: st.integers(1, max_cols).flatmap(
            lambda c: st.lists(
                st.lists(fractions, min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            ).map(QMatrix.from_rows)
        )
    )


@given(matrices())
def test_rref_is_idempotent(m):
    r1, piv1 = rref(m)
    r2, piv2 = rref(r1)
    assert r1 == r2
    assert piv1 == piv2


@given(matrices())
def test_rank_plus_nullity_is_column_count(m):
    assert rank(m) + len(kernel_basis(m)) == m.cols


@given(matrices())
def test_kernel_vectors_are_killed(m):
    for v in kernel_basis(m):
        assert all(c == 0 for c in m.apply(v))


@given(matrices())
def test_solve_returns_actual_solutions(m):
    # build a right-hand side that is certainly in the column span
    x = [Fraction(i + 1, 2) for i in range(m.cols)]
    b = m.apply(x)
    y = solve(m, b)
    assert y is not None
    assert tuple(m.apply(y)) == tuple(b)


@given(matrices(max_rows=3, max_cols=3))
def test_solve_none_means_inconsistent(m):
    b = [Fraction(1)] * m.rows
    y = solve(m, b)
    if y is None:
        # b must be outside the column span: appending it raises the rank
        aug = QMatrix.from_rows(
            [list(m.row(i)) + [b[i]] for i in range(m.rows)]
        )
        assert rank(aug) == rank(m) + 1


def _brute_positive_point(m, box):
    from itertools import product

    for cand in product(range(1, box + 1), repeat=m.cols):
        if all(
            sum(m.entry(i, j) * cand[j] for j in range(m.cols)) == 0
            for i in range(m.rows)
        ):
            return list(cand)
    return None


@settings(max_examples=150, deadline=None)
@given(
    st.integers(1, 3).flatmap(
        lambda r: st.integers(1, 3).flatmap(
            lambda c: st.lists(
                st.lists(st.integers(-3, 3).map(Fraction), min_size=c, max_size=c),
                min_size=r,
                max_size=r,
            ).map(QMatrix.from_rows)
        )
    )
)
def test_positive_kernel_matches_brute_force(m):
    res = positive_integer_kernel(m)
    brute = _brute_positive_point(m, box=9)
    if res.feasible:
        point = res.solution
        assert all(isinstance(v, int) and v >= 1 for v in point)
        assert all(
            sum(m.entry(i, j) * point[j] for j in range(m.cols)) == 0
            for i in range(m.rows)
        )
    else:
        # solver infeasible: the box search must come up empty too
        assert brute is None
    if brute is not None:
        assert res.feasible


def test_positive_kernel_simple_feasible():
    # single row x - 2y = 0
    m = QMatrix.from_rows([[Fraction(1), Fraction(-2)]])
    res = positive_integer_kernel(m)
    assert res.feasible
    assert list(res.solution) == [2, 1]


def test_positive_kernel_forced_zero_is_infeasible():
    # x + y = 0 has no positive solutions
    m = QMatrix.from_rows([[Fraction(1), Fraction(1)]])
    res = positive_integer_kernel(m)
    assert not res.feasible


def test_positive_kernel_conflicting_ratios():
    # x = 2y and x = 3y force y = 0
    m = QMatrix.from_rows(
        [[Fraction(1), Fraction(-2)], [Fraction(1), Fraction(-3)]]
    )
    assert not positive_integer_kernel(m).feasible


def test_positive_kernel_point_is_coprime():
    # 2x - 4y = 0: infinitely many positive points, smallest is (2, 1)
    m = QMatrix.from_rows([[Fraction(2), Fraction(-4)]])
    res = positive_integer_kernel(m)
    assert list(res.solution) == [2, 1]


def test_empty_constraint_matrix_gives_all_ones():
    m = QMatrix(0, 3, {})
    res = positive_integer_kernel(m)
    assert res.feasible
    assert list(res.solution) == [1, 1, 1]


def test_witness_rows_are_minimal_for_conflict():
    # x = 2y, x = 3y: both rows together are infeasible, either alone is fine
    m = QMatrix.from_rows(
        [[Fraction(1), Fraction(-2)], [Fraction(1), Fraction(-3)]]
    )
    res = positive_integer_kernel(m)
    assert sorted(res.witness) == [0, 1]

from __future__ import annotations

import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hgd.errors import InvalidArgument
from hgd.gf2 import Gf2Matrix, RankContext, rank, rank_incremental, rank_rows
from hgd.overlap import OverlapAssignment, build_delta, delta_layout


@st.composite
def symmetric(draw, max_dim=9, zero_diagonal=False):
    n = draw(st.integers(min_value=0, max_value=max_dim))
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            if i == j and zero_diagonal:
                continue
            rows[i][j] = rows[j][i] = draw(st.integers(0, 1))
    return Gf2Matrix.from_lists(rows)


@st.composite
def square(draw, max_dim=9):
    n = draw(st.integers(min_value=1, max_value=max_dim))
    rows = draw(st.lists(st.lists(st.integers(0, 1), min_size=n, max_size=n), min_size=n, max_size=n))
    return Gf2Matrix.from_lists(rows)


def test_rank_examples():
    assert rank(Gf2Matrix.zeros(4)) == 0
    for n in range(1, 8):
        assert rank(Gf2Matrix.identity(n)) == n
    assert rank(Gf2Matrix.from_lists([[0, 1], [1, 0]])) == 2


def test_all_ones_delta_11_has_rank_3():
    asg = OverlapAssignment.all_ones((1, 1))
    m = build_delta((1, 1), asg)
    assert m.to_lists() == [[1, 1, 1, 1], [1, 1, 1, 1], [1, 1, 1, 0], [1, 1, 0, 1]]
    assert rank(m) == 3


def test_rank_incremental_single_flip_from_zero():
    layout = delta_layout((1, 1))
    for bit in range(layout.nbits):
        ctx = RankContext(layout.dim, layout.positions)
        i, j = layout.positions[bit]
        assert rank_incremental(ctx, bit) == (1 if i == j else 2)


def test_from_lists_rejects_ragged():
    with pytest.raises(InvalidArgument):
        Gf2Matrix.from_lists([[1, 0], [1]])


def test_gray_sweep_matches_rebuild():
    layout = delta_layout((1, 1))
    ctx = RankContext(layout.dim, layout.positions)
    seen = set()
    for assignment, r in ctx.gray_sweep():
        assert r == layout.build(assignment).rank()
        seen.add(assignment)
    assert len(seen) == 1 << layout.nbits


@given(square())
def test_rank_invariant_under_transpose(m):
    assert rank(m) == rank(m.transpose())


@given(symmetric(), st.randoms(use_true_random=False))
def test_rank_invariant_under_symmetric_permutation(m, rnd):
    perm = list(range(m.dim))
    rnd.shuffle(perm)
    pm = m.permuted(perm)
    assert pm.is_symmetric()
    assert rank(pm) == rank(m)


@given(symmetric(zero_diagonal=True))
def test_zero_diagonal_symmetric_rank_is_even(m):
    assert rank(m) % 2 == 0


@given(square())
def test_rank_bounded_and_matches_rows(m):
    assert 0 <= rank(m) <= m.dim
    assert rank(m) == rank_rows(m.rows)


def test_rank_incremental_random_walk():
    rnd = random.Random(7)
    layout = delta_layout((2, 1, 2))
    ctx = RankContext(layout.dim, layout.positions)
    for _ in range(500):
        bit = rnd.randrange(layout.nbits)
        assert rank_incremental(ctx, bit) == layout.build(ctx.assignment).rank()

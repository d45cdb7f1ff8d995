from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hgd import overlap
from hgd.errors import BudgetExceeded, InvalidArgument
from hgd.gf2 import rank
from hgd.overlap import (
    OverlapAssignment,
    build_delta,
    build_lambda_matrix,
    build_phi,
    build_tridiag,
    delta_layout,
    enumerate_distribution,
    enumerate_distribution_python,
    expected_delta_bits,
    expected_lambda_bits,
    lambda_layout,
)
from hgd.polynomial import GenusPolynomial, coefficient_sum
from hgd.recurrence import L_poly, euler_genus_poly, lambda_poly, phi_poly

SMALL = [(1, 1), (1, 2), (2, 1), (2, 2), (1, 1, 1), (1, 2, 1), (2, 1, 1), (1, 1, 1, 1)]


def test_build_tridiag_examples():
    assert build_tridiag([1], []).to_lists() == [[1]]
    assert build_tridiag([0, 0], [1]).to_lists() == [[0, 1], [1, 0]]
    with pytest.raises(InvalidArgument):
        build_tridiag([0, 0], [])


def test_delta_11_all_ones_and_zeros():
    ones = build_delta((1, 1), OverlapAssignment.all_ones((1, 1)))
    assert ones.to_lists() == [[1, 1, 1, 1], [1, 1, 1, 1], [1, 1, 1, 0], [1, 1, 0, 1]]
    zeros = build_delta((1, 1), OverlapAssignment((1, 1)))
    assert zeros.rows == (0, 0, 0, 0)


def test_delta_22_single_spine_pair():
    asg = OverlapAssignment((2, 2)).with_bit(("y", 1), 1)
    m = build_delta((2, 2), asg)
    assert m[0, 1] == m[1, 0] == 1
    assert sum(bin(r).count("1") for r in m.rows) == 2
    assert rank(m) == 2


def test_from_vectors_matches_all_ones():
    p = (2, 3, 1)
    asg = OverlapAssignment.from_vectors(
        p,
        x0=[1] * 3,
        y0=[1] * 2,
        xi=[[1] * 2, [1] * 3, [1]],
        yi=[[1], [1] * 2, []],
        z=[[1] * 3, [1] * 5, [1] * 2],
    )
    assert asg.bits == OverlapAssignment.all_ones(p).bits


def test_from_vectors_rejects_wrong_length():
    with pytest.raises(InvalidArgument):
        OverlapAssignment.from_vectors((1, 1), [1], [1], [[1], [1]], [[], []], [[1, 1], [1, 1]])


def test_non_strict_rejected():
    with pytest.raises(InvalidArgument):
        delta_layout((2, 0))


@pytest.mark.parametrize("p", SMALL)
def test_bit_counts(p):
    assert delta_layout(p).nbits == expected_delta_bits(p)
    assert lambda_layout(p).nbits == expected_lambda_bits(p)


@pytest.mark.parametrize("p", [(1, 1), (1, 2), (1, 1, 1)])
def test_lambda_zeroes_last_spine_row(p):
    k = len(p)
    asg = OverlapAssignment.all_ones(p)
    m = build_lambda_matrix(p, asg)
    assert m.rows[k - 1] == 0
    assert all(not (r >> (k - 1)) & 1 for r in m.rows)


def test_phi_builder_zero_and_shape():
    m = build_phi(3, [0] * 4, [0] * 2, [0] * 3)
    assert m.dim == 4 and rank(m) == 0
    with pytest.raises(InvalidArgument):
        build_phi(3, [0] * 3, [0] * 2, [0] * 3)


def test_enumeration_examples():
    assert enumerate_distribution("delta", (1, 1)) == GenusPolynomial([1, 11, 80, 212, 208])
    assert enumerate_distribution("delta", (2, 2)) == GenusPolynomial([1, 19, 248, 1668, 6704, 13504, 10624])
    assert enumerate_distribution("tridiag", 1) == GenusPolynomial([1, 1])
    assert enumerate_distribution("tridiag", 2) == GenusPolynomial([1, 3, 4])
    assert enumerate_distribution("phi", 2) == GenusPolynomial([1, 3, 4])
    assert enumerate_distribution("phi", 3) == GenusPolynomial([1, 7, 28, 28])
    lam = enumerate_distribution("lambda", (1, 1))
    assert lam == GenusPolynomial([1, 5, 14, 12])
    assert coefficient_sum(lam) == 32


@pytest.mark.parametrize("p", [(1, 1), (1, 2), (2, 1), (1, 1, 1)])
def test_compiled_matches_python_reference(p):
    for builder in ("delta", "lambda"):
        assert enumerate_distribution(builder, p) == enumerate_distribution_python(builder, p)


@pytest.mark.parametrize("p", SMALL)
def test_enumeration_matches_recurrence(p):
    assert 2 * enumerate_distribution("delta", p) == euler_genus_poly(p)
    assert enumerate_distribution("lambda", p) == lambda_poly(p)


@pytest.mark.parametrize("m", range(1, 9))
def test_tridiag_and_phi_match_recurrence(m):
    assert enumerate_distribution("tridiag", m) == L_poly(m)
    assert enumerate_distribution("phi", m + 1) == phi_poly(m + 1)


def test_ringel_ladder_via_delta():
    for m in range(1, 6):
        assert 2 * enumerate_distribution("delta", (m,)) == euler_genus_poly((m,))


@pytest.mark.parametrize("workers", [1, 2, 3, 8])
def test_worker_count_does_not_change_result(workers):
    assert enumerate_distribution("delta", (2, 1, 2), workers=workers) == enumerate_distribution(
        "delta", (2, 1, 2)
    )


def test_budget_exceeded_names_bit_count():
    with pytest.raises(BudgetExceeded, match="33"):
        enumerate_distribution("delta", (3, 3, 3))
    with pytest.raises(BudgetExceeded):
        enumerate_distribution("delta", (1, 1), budget=8)


def test_unknown_builder():
    with pytest.raises(InvalidArgument):
        overlap.layout_for("nope", (1, 1))


@given(st.lists(st.integers(1, 3), min_size=2, max_size=4), st.data())
def test_delta_instances_symmetric_with_bounded_rank(m, data):
    layout = delta_layout(tuple(m))
    bits = data.draw(st.integers(0, (1 << layout.nbits) - 1))
    mat = build_delta(tuple(m), OverlapAssignment(tuple(m), bits))
    assert mat.is_symmetric()
    assert 0 <= rank(mat) <= layout.dim

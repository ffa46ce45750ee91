import logging

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import sparse

from app.exceptions import NonFiniteIterateError, OperatorError
from app.services.spectral import (
    ChainOperator,
    SparseOperator,
    power_iterate,
    smooth,
    stochasticize,
)

from .helpers import dense_smooth, dense_stochastic, leading_left_vector


def test_stochasticize_rows_and_dangling():
    op = stochasticize([[0, 2, 2], [0, 0, 0], [1, 0, 0]])

    np.testing.assert_allclose(
        op.to_dense(),
        [[0, 0.5, 0.5], [1 / 3, 1 / 3, 1 / 3], [1, 0, 0]],
    )
    np.testing.assert_allclose(op.row_sums(), 1.0)


def test_stochasticize_apply_matches_dense():
    rng = np.random.default_rng(3)
    matrix = rng.random((6, 6)) * (rng.random((6, 6)) < 0.4)
    matrix[2] = 0.0
    op = stochasticize(sparse.csr_matrix(matrix))
    x = rng.random(6)

    np.testing.assert_allclose(op.apply(x), x @ op.to_dense(), atol=1e-14)


def test_stochasticize_rejects_negative_entries():
    with pytest.raises(OperatorError):
        stochasticize([[0, -1], [1, 0]])


def test_smooth_requires_stochastic_input():
    with pytest.raises(OperatorError):
        smooth(np.array([[0.0, 2.0], [1.0, 0.0]]), 0.9)


@pytest.mark.parametrize("zeta", [0.0, 1.0, -0.5, 1.5])
def test_smooth_rejects_zeta_outside_open_interval(zeta):
    with pytest.raises(OperatorError):
        smooth(stochasticize([[0, 1], [1, 0]]), zeta)


def test_smoothed_operator_is_positive_and_stochastic():
    op = smooth(stochasticize([[0, 1, 0], [0, 0, 1], [0, 0, 0]]), 0.85)
    dense = op.to_dense()

    assert np.all(dense > 0)
    np.testing.assert_allclose(dense.sum(axis=1), 1.0)
    x = np.array([0.2, 0.3, 0.5])
    np.testing.assert_allclose(op.apply(x), x @ dense, atol=1e-15)


def test_chain_operator_never_forms_the_product():
    rng = np.random.default_rng(0)
    a, b = rng.random((5, 5)), rng.random((5, 5))
    chain = ChainOperator([sparse.csr_matrix(a), sparse.csr_matrix(b)])
    x = rng.random(5)

    np.testing.assert_allclose(chain.apply(x), x @ a @ b)
    np.testing.assert_allclose(chain.row_sums(), (a @ b).sum(axis=1))
    np.testing.assert_allclose(chain.to_dense(), a @ b)


def test_chain_factors_must_agree():
    with pytest.raises(OperatorError):
        ChainOperator([np.eye(2), np.eye(3)])


def test_power_iterate_fixed_point_and_trace():
    op = smooth(stochasticize([[0, 1], [1, 0]]), 0.85)
    result = power_iterate(op)

    np.testing.assert_allclose(result.scores, [0.5, 0.5])
    assert result.converged
    assert len(result.trace) == result.iterations
    assert result.scores.sum() == pytest.approx(1.0, abs=1e-12)


def test_power_iterate_exhaustion_is_not_an_error(caplog):
    op = smooth(stochasticize([[0, 1, 1], [1, 0, 0], [0, 1, 0]]), 0.99)
    start = np.array([1.0, 0.0, 0.0])

    with caplog.at_level(logging.WARNING):
        result = power_iterate(op, start=start, tolerance=1e-15, max_iterations=3)

    assert not result.converged
    assert result.iterations == 3
    assert "stopped after 3 iterations" in caplog.text


def test_power_iterate_rejects_bad_start():
    op = smooth(stochasticize([[0, 1], [1, 0]]), 0.85)

    with pytest.raises(OperatorError):
        power_iterate(op, start=np.array([0.7, 0.7]))
    with pytest.raises(OperatorError):
        power_iterate(op, start=np.array([1.0]))


def test_power_iterate_flags_non_finite_iterates():
    op = SparseOperator(np.array([[1e308, 1e308], [1e308, 1e308]]))

    with pytest.raises(NonFiniteIterateError) as excinfo:
        power_iterate(op, normalize_each_step=False)
    assert excinfo.value.iteration >= 1


def test_power_iterate_vanishing_iterate():
    op = SparseOperator(np.zeros((2, 2)))

    with pytest.raises(OperatorError):
        power_iterate(op)


# ============================================================
# Worked examples
# ============================================================

def test_stochasticize_hand_example():
    np.testing.assert_allclose(
        stochasticize([[1, 3], [2, 2]]).to_dense(), [[0.25, 0.75], [0.5, 0.5]]
    )


def test_stochasticize_is_idempotent():
    rng = np.random.default_rng(11)
    matrix = rng.random((7, 7)) * (rng.random((7, 7)) < 0.5)
    matrix[4] = 0.0
    once = stochasticize(matrix).to_dense()

    np.testing.assert_allclose(stochasticize(once).to_dense(), once, atol=1e-15)


def test_smooth_identity_hand_example():
    np.testing.assert_allclose(smooth(np.eye(2), 0.8).to_dense(), [[0.9, 0.1], [0.1, 0.9]])


def test_identity_converges_in_one_step_to_the_start():
    start = np.array([0.1, 0.2, 0.3, 0.4])
    result = power_iterate(SparseOperator(np.eye(4)), start=start)

    assert result.converged
    assert result.iterations == 1
    np.testing.assert_allclose(result.scores, start)


# ============================================================
# Start independence and dense agreement
# ============================================================

@pytest.mark.parametrize("seed", range(5))
def test_random_starts_reach_the_same_vector(seed):
    rng = np.random.default_rng(seed)
    matrix = rng.random((12, 12)) * (rng.random((12, 12)) < 0.3)
    matrix[0] = 0.0
    op = smooth(stochasticize(matrix), 0.85)
    tolerance = 1e-10

    baseline = power_iterate(op, tolerance=tolerance).scores
    for _ in range(3):
        start = rng.dirichlet(np.ones(12))
        scores = power_iterate(op, start=start, tolerance=tolerance).scores
        assert np.abs(scores - baseline).sum() <= 10 * tolerance


@settings(max_examples=40, deadline=None)
@given(
    st.integers(min_value=1, max_value=50),
    st.floats(min_value=0.05, max_value=1.0),
    st.floats(min_value=0.5, max_value=0.95),
    st.integers(min_value=0, max_value=2**32 - 1),
)
def test_sparse_engine_matches_dense_power_method(n, density, zeta, seed):
    rng = np.random.default_rng(seed)
    matrix = rng.random((n, n)) * (rng.random((n, n)) < density)
    op = smooth(stochasticize(sparse.csr_matrix(matrix)), zeta)

    dense = dense_smooth(dense_stochastic(matrix), zeta)
    np.testing.assert_allclose(op.to_dense(), dense, atol=1e-14)

    result = power_iterate(op, tolerance=1e-13, max_iterations=100000)
    assert result.converged
    assert np.abs(result.scores - leading_left_vector(dense)).sum() < 1e-8

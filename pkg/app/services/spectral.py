"""
Power-iteration driver and the operator transforms every ranking uses.

Operators act on row vectors: ``op.apply(x)`` returns x·Op. They are built
from sparse factors and never materialized densely; ``to_dense`` exists for
oracle comparisons on small inputs only.
"""

import logging
from typing import Optional, Protocol, Sequence, Union

import numpy as np
from scipy import sparse

from ..exceptions import NonFiniteIterateError, OperatorError
from ..schemas.rank import ConvergenceTrace, RankResult

logger = logging.getLogger(__name__)

MatrixLike = Union[np.ndarray, sparse.spmatrix, Sequence[Sequence[float]]]

STOCHASTIC_ATOL = 1e-9


class RowOperator(Protocol):
    size: int

    def apply(self, x: np.ndarray) -> np.ndarray:
        ...

    def row_sums(self) -> np.ndarray:
        ...

    def to_dense(self) -> np.ndarray:
        ...


def _as_csr(matrix: MatrixLike) -> sparse.csr_matrix:
    if sparse.issparse(matrix):
        csr = sparse.csr_matrix(matrix, dtype=float)
    else:
        csr = sparse.csr_matrix(np.asarray(matrix, dtype=float))
    if csr.shape[0] != csr.shape[1]:
        raise OperatorError(f"operator must be square, got shape {csr.shape}")
    if not np.all(np.isfinite(csr.data)):
        raise OperatorError("operator has non-finite entries")
    return csr


# ============================================================
# Operators
# ============================================================

class SparseOperator:
    """x -> x·A for a sparse A"""

    def __init__(self, matrix: MatrixLike):
        self.matrix = _as_csr(matrix)
        self._transposed = self.matrix.T.tocsr()
        self.size = self.matrix.shape[0]

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self._transposed @ x

    def row_sums(self) -> np.ndarray:
        return np.asarray(self.matrix.sum(axis=1)).ravel()

    def to_dense(self) -> np.ndarray:
        return self.matrix.toarray()


class ChainOperator:
    """x -> x·A1·A2·…·Ak without forming the product"""

    def __init__(self, factors: Sequence[MatrixLike]):
        if not factors:
            raise OperatorError("chain needs at least one factor")
        self.factors = [SparseOperator(f) for f in factors]
        sizes = {f.size for f in self.factors}
        if len(sizes) != 1:
            raise OperatorError(f"chain factors disagree in size: {sorted(sizes)}")
        self.size = self.factors[0].size

    def apply(self, x: np.ndarray) -> np.ndarray:
        for factor in self.factors:
            x = factor.apply(x)
        return x

    def row_sums(self) -> np.ndarray:
        y = np.ones(self.size)
        for factor in reversed(self.factors):
            y = factor.matrix @ y
        return y

    def to_dense(self) -> np.ndarray:
        dense = np.eye(self.size)
        for factor in self.factors:
            dense = dense @ factor.to_dense()
        return dense


class RowStochasticOperator:
    """
    Row-normalized A where zero rows stand for the uniform row 1/N.
    The uniform rows are applied as a rank-one term so they stay implicit.
    """

    def __init__(self, normalized: sparse.csr_matrix, dangling: np.ndarray):
        self.matrix = normalized
        self._transposed = normalized.T.tocsr()
        self.dangling = dangling
        self.size = normalized.shape[0]

    def apply(self, x: np.ndarray) -> np.ndarray:
        y = self._transposed @ x
        if self.dangling.any():
            y = y + x[self.dangling].sum() / self.size
        return y

    def row_sums(self) -> np.ndarray:
        return np.ones(self.size)

    def to_dense(self) -> np.ndarray:
        dense = self.matrix.toarray()
        dense[self.dangling, :] = 1.0 / self.size
        return dense


class SmoothedOperator:
    """x -> zeta·x·A + ((1 - zeta)/N)·sum(x)·e, i.e. zeta·A + (1-zeta)/N·eeᵀ"""

    def __init__(self, inner: RowOperator, zeta: float):
        self.inner = inner
        self.zeta = zeta
        self.size = inner.size

    def apply(self, x: np.ndarray) -> np.ndarray:
        return self.zeta * self.inner.apply(x) + (1.0 - self.zeta) * x.sum() / self.size

    def row_sums(self) -> np.ndarray:
        return self.zeta * self.inner.row_sums() + (1.0 - self.zeta)

    def to_dense(self) -> np.ndarray:
        return self.zeta * self.inner.to_dense() + (1.0 - self.zeta) / self.size


# ============================================================
# Transforms
# ============================================================

def stochasticize(matrix: MatrixLike) -> RowStochasticOperator:
    """
    Divide every nonzero row by its sum; zero rows become uniform 1/N rows
    (the dangling-vertex correction).
    """
    csr = _as_csr(matrix)
    if csr.nnz and csr.data.min() < 0:
        raise OperatorError("stochasticize needs a nonnegative matrix")

    sums = np.asarray(csr.sum(axis=1)).ravel()
    dangling = sums <= 0
    scale = np.zeros_like(sums)
    scale[~dangling] = 1.0 / sums[~dangling]
    normalized = sparse.csr_matrix(sparse.diags(scale) @ csr)
    normalized.eliminate_zeros()
    return RowStochasticOperator(normalized, dangling)


def smooth(
    operator: Union[RowOperator, MatrixLike],
    zeta: float,
    require_stochastic: bool = True,
) -> SmoothedOperator:
    """
    Mix an operator with the uniform matrix: zeta·A + (1-zeta)/N·eeᵀ.

    With ``require_stochastic`` the input must be row-stochastic and so is
    the result; HITS-style operators pass False and rely on per-step
    normalization instead.
    """
    if not 0 < zeta < 1:
        raise OperatorError(f"zeta must lie in (0, 1), got {zeta}")
    if not hasattr(operator, "apply"):
        operator = SparseOperator(operator)

    if require_stochastic and not isinstance(operator, RowStochasticOperator):
        sums = operator.row_sums()
        if not np.allclose(sums, 1.0, rtol=0, atol=STOCHASTIC_ATOL):
            raise OperatorError("smooth expects a row-stochastic operator")
    return SmoothedOperator(operator, zeta)


# ============================================================
# Power iteration
# ============================================================

def uniform_start(size: int) -> np.ndarray:
    return np.full(size, 1.0 / size)


def power_iterate(
    operator: RowOperator,
    start: Optional[np.ndarray] = None,
    tolerance: float = 1e-8,
    max_iterations: int = 10000,
    normalize_each_step: bool = True,
) -> RankResult:
    """
    Iterate x <- normalize(x·Op) until the 1-norm distance between
    successive normalized iterates drops to ``tolerance``.

    Running out of iterations is not an error: the result comes back with
    ``converged=False``.
    """
    n = operator.size
    if start is None:
        x = uniform_start(n)
    else:
        x = np.asarray(start, dtype=float).copy()
        if x.shape != (n,):
            raise OperatorError(f"start vector has shape {x.shape}, operator size is {n}")
        if np.any(x < 0) or abs(x.sum() - 1.0) > STOCHASTIC_ATOL:
            raise OperatorError("start vector must be a probability vector")
    if tolerance <= 0 or max_iterations <= 0:
        raise OperatorError("tolerance and max_iterations must be positive")

    residuals = []
    current = x
    converged = False
    logger.debug(f"⚙️ Power iteration on {n} vertices (tol={tolerance:g})")

    for iteration in range(1, max_iterations + 1):
        x = operator.apply(x)
        if not np.all(np.isfinite(x)):
            raise NonFiniteIterateError(iteration)

        total = x.sum()
        if total <= 0:
            raise OperatorError(f"iterate vanished at iteration {iteration}")
        normalized = x / total
        if normalize_each_step:
            x = normalized

        residual = float(np.abs(normalized - current).sum())
        residuals.append(residual)
        current = normalized
        if residual <= tolerance:
            converged = True
            break

    if not converged:
        logger.warning(
            f"⚠️ Power iteration stopped after {max_iterations} iterations "
            f"(residual {residuals[-1]:.3e} > {tolerance:g})"
        )
    else:
        logger.debug(f"✅ Converged in {len(residuals)} iterations")

    return RankResult(
        scores=current,
        iterations=len(residuals),
        trace=ConvergenceTrace(tuple(residuals)),
        converged=converged,
    )

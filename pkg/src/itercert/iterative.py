"""Matrix splittings ``A = A1 + A2`` and the fixed-point iteration they define.

Each step solves ``A1 x_m = b - A2 x_{m-1}``; the error then propagates by
the iteration matrix ``S = -A1^{-1} A2``, which is formed column by column
from solves and never through an explicit inverse.
"""

from dataclasses import dataclass, field
import enum
import math
from typing import Optional

import numpy as np

from .complex_core import EPS_ZERO
from .dense_linalg import (
    PIVOT_RTOL,
    lu_factor,
    lu_solve_factored,
    max_modulus,
    triangular_solve,
    vec_norm2,
)
from .errors import DimensionMismatch, InsufficientData, ZeroDiagonal
from .validation import check_matrix, check_vector

DEFAULT_TOL = 1e-10
DEFAULT_MAX_ITERS = 100_000
DIVERGENCE_FACTOR = 1e12
RATE_WINDOW = 20
STORE_CAP = 10_000


class SplittingKind(str, enum.Enum):
    JACOBI = "jacobi"
    GAUSS_SEIDEL = "gauss-seidel"
    CUSTOM = "custom"


class TraceStatus(str, enum.Enum):
    REACHED_TOL = "reached_tol"
    MAX_ITERS = "max_iters"
    DIVERGED = "diverged"


@dataclass(frozen=True, eq=False)
class Splitting:
    a1: np.ndarray
    a2: np.ndarray
    kind: SplittingKind
    source_dim: int
    _lu: Optional[tuple] = field(default=None, repr=False)

    @property
    def matrix(self):
        """The split matrix ``A = A1 + A2``."""
        return self.a1 + self.a2

    def solve_a1(self, rhs):
        """Apply ``A1^{-1}`` to a vector or to each column of a matrix."""
        if self.kind is SplittingKind.JACOBI:
            d = np.diag(self.a1)
            return rhs / (d if np.ndim(rhs) == 1 else d[:, None])
        if self.kind is SplittingKind.GAUSS_SEIDEL:
            return triangular_solve(self.a1, rhs, lower=True)
        return lu_solve_factored(self._lu, rhs)


def _check_diagonal(A):
    threshold = PIVOT_RTOL * max_modulus(A)
    diag = np.diag(A)
    for i, d in enumerate(diag):
        if not abs(d) > threshold:
            raise ZeroDiagonal(i, complex(d))


def jacobi_splitting(A):
    """``A1 = diag(A)``, ``A2 = A - diag(A)`` by entry selection."""
    A = check_matrix(A, square=True)
    _check_diagonal(A)
    a1 = np.diag(np.diag(A))
    a2 = A.copy()
    np.fill_diagonal(a2, 0.0)
    return Splitting(a1, a2, SplittingKind.JACOBI, A.shape[0])


def gauss_seidel_splitting(A):
    """``A1`` = lower triangle with diagonal, ``A2`` = strict upper triangle."""
    A = check_matrix(A, square=True)
    _check_diagonal(A)
    return Splitting(np.tril(A), np.triu(A, 1), SplittingKind.GAUSS_SEIDEL, A.shape[0])


def custom_splitting(a1, a2):
    """User-chosen split; ``a1`` must be LU-factorisable (checked here)."""
    a1 = check_matrix(a1, square=True, name="a1")
    a2 = check_matrix(a2, square=True, name="a2")
    if a1.shape != a2.shape:
        raise DimensionMismatch(f"a1 {a1.shape} and a2 {a2.shape} differ in shape")
    return Splitting(a1.copy(), a2.copy(), SplittingKind.CUSTOM, a1.shape[0], lu_factor(a1))


def make_splitting(A, method):
    method = SplittingKind(method)
    if method is SplittingKind.JACOBI:
        return jacobi_splitting(A)
    if method is SplittingKind.GAUSS_SEIDEL:
        return gauss_seidel_splitting(A)
    raise ValueError("custom splittings need explicit a1/a2; use custom_splitting")


def iteration_matrix(s):
    """``S = -A1^{-1} A2`` solved from ``A1 S = -A2``."""
    return s.solve_a1(-s.a2)


@dataclass
class IterationTrace:
    iterates: list
    update_norms: list
    status: TraceStatus
    final_iterate: np.ndarray
    error_norms: Optional[list] = None

    @property
    def iterations(self):
        return len(self.update_norms)

    @property
    def final_update_norm(self):
        return self.update_norms[-1] if self.update_norms else 0.0

    @property
    def final_error_norm(self):
        return self.error_norms[-1] if self.error_norms else None


def iterate(
    s,
    b,
    x0=None,
    *,
    max_iters=DEFAULT_MAX_ITERS,
    tol=DEFAULT_TOL,
    divergence_threshold=None,
    x_ref=None,
    store_cap=STORE_CAP,
):
    """Run ``x_m = A1^{-1} (b - A2 x_{m-1})`` from ``x0`` (zero by default).

    Stops when ``||x_m - x_{m-1}|| <= tol * (1 + ||x_m||)`` (ReachedTol),
    when an update norm exceeds ``divergence_threshold`` or is not finite
    (Diverged, default threshold ``1e12 * (1 + ||b||)``), or after
    ``max_iters`` steps. Only the first ``store_cap`` iterates are kept;
    norms are recorded for every step.
    """
    n = s.source_dim
    b = check_vector(b, dim=n, name="b")
    x = np.zeros(n, dtype=complex) if x0 is None else check_vector(x0, dim=n, name="x0").copy()
    if x_ref is not None:
        x_ref = check_vector(x_ref, dim=n, name="x_ref")
    if max_iters < 1:
        raise ValueError(f"max_iters must be >= 1, got {max_iters}")
    if divergence_threshold is None:
        divergence_threshold = DIVERGENCE_FACTOR * (1.0 + vec_norm2(b))

    iterates = [x.copy()]
    errors = [vec_norm2(x - x_ref)] if x_ref is not None else None
    updates = []
    status = TraceStatus.MAX_ITERS
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(max_iters):
            x_new = s.solve_a1(b - s.a2 @ x)
            update = vec_norm2(x_new - x)
            x = x_new
            updates.append(update)
            if len(iterates) < store_cap:
                iterates.append(x.copy())
            if errors is not None:
                errors.append(vec_norm2(x - x_ref))
            if not math.isfinite(update) or update > divergence_threshold:
                status = TraceStatus.DIVERGED
                break
            if update <= tol * (1.0 + vec_norm2(x)):
                status = TraceStatus.REACHED_TOL
                break
    return IterationTrace(iterates, updates, status, x, errors)


def observed_rate(trace, window=RATE_WINDOW):
    """Geometric mean of successive error ratios over the last ``window`` steps."""
    errors = trace.error_norms
    if errors is None or len(errors) < window + 1:
        have = 0 if errors is None else len(errors)
        raise InsufficientData(f"need {window + 1} error norms, have {have}")
    tail = errors[-(window + 1):]
    if min(tail) <= EPS_ZERO:
        raise InsufficientData("error norms in the rate window reach the zero threshold")
    return (tail[-1] / tail[0]) ** (1.0 / window)


def recurrence_defect(trace, S, x_ref):
    """Largest ``||(x_m - x) - S (x_{m-1} - x)||`` over the stored iterates."""
    S = np.asarray(S, dtype=complex)
    x_ref = np.asarray(x_ref, dtype=complex)
    worst = 0.0
    prev = trace.iterates[0] - x_ref
    for x in trace.iterates[1:]:
        cur = x - x_ref
        worst = max(worst, vec_norm2(cur - S @ prev))
        prev = cur
    return worst

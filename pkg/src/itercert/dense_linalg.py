"""Dense complex matrices and vectors.

Matrices are 2-D ``numpy`` arrays of ``complex128`` (real input is embedded
with zero imaginary part); vectors are 1-D arrays. Besides thin, checked
wrappers for the algebra this module provides the vector 2-norm, the
Frobenius norm, the induced 2-norm by power iteration, and an LU solver with
partial pivoting that yields the direct reference solution ``x = A^{-1} b``.
"""

from collections import namedtuple
import math

import numpy as np

from .complex_core import EPS_ZERO
from .errors import ConvergenceFailure, DimensionMismatch, IndexOutOfRange, SingularMatrix
from .validation import check_matrix, check_system, check_vector

#: relative Rayleigh-quotient change that stops the power iteration
TOL_NORM = 1e-12
MAX_ITERS_NORM = 10_000
#: pivot threshold relative to the largest entry modulus
PIVOT_RTOL = 1e-13
TOL_RESIDUAL = 1e-10

LUFactor = namedtuple("LUFactor", ["lu", "perm"])


def embed_real(A):
    """Embed a real matrix or vector entrywise as ``a + 0i``."""
    arr = np.asarray(A)
    if np.iscomplexobj(arr):
        raise TypeError("embed_real expects real input")
    return arr.astype(complex)


def identity(n):
    return np.eye(n, dtype=complex)


def zeros(rows, cols=None):
    if cols is None:
        return np.zeros(rows, dtype=complex)
    return np.zeros((rows, cols), dtype=complex)


def conjugate_transpose(A):
    A = check_matrix(A)
    return A.conj().T.copy()


def matmul(A, B):
    A = check_matrix(A, name="A")
    B = check_matrix(B, name="B")
    if A.shape[1] != B.shape[0]:
        raise DimensionMismatch(f"cannot multiply {A.shape} by {B.shape}")
    return A @ B


def matvec(A, v):
    A = check_matrix(A)
    v = check_vector(v, dim=A.shape[1])
    return A @ v


def _same_shape(A, B):
    A = np.asarray(A, dtype=complex)
    B = np.asarray(B, dtype=complex)
    if A.shape != B.shape:
        raise DimensionMismatch(f"shape mismatch: {A.shape} vs {B.shape}")
    return A, B


def add(A, B):
    A, B = _same_shape(A, B)
    return A + B


def sub(A, B):
    A, B = _same_shape(A, B)
    return A - B


def negate(A):
    return -np.asarray(A, dtype=complex)


def scale(alpha, A):
    return complex(alpha) * np.asarray(A, dtype=complex)


def unit_vector(n, j):
    if n < 1:
        raise DimensionMismatch(f"dimension must be positive, got {n}")
    if not 0 <= j < n:
        raise IndexOutOfRange(f"index {j} out of range for dimension {n}")
    e = np.zeros(n, dtype=complex)
    e[j] = 1.0
    return e


def _pow2_exponent(X):
    """Binary exponent of ``max|X_ij|`` (0 for zero or non-finite data)."""
    peak = float(np.max(np.abs(X))) if X.size else 0.0
    if peak == 0.0 or not math.isfinite(peak):
        return 0
    return math.frexp(peak)[1]


def _ldexp(X, e):
    """``X * 2**e`` for complex arrays, exact barring underflow."""
    return np.ldexp(X.real, e) + 1j * np.ldexp(X.imag, e)


def _root_sum_squares(X):
    # scaling keeps the squares clear of underflow and overflow
    X = np.asarray(X, dtype=complex)
    e = _pow2_exponent(X)
    Y = _ldexp(X, -e)
    return math.ldexp(math.sqrt(float(np.sum(Y.real**2 + Y.imag**2))), e)


def vec_norm2(v):
    """Euclidean norm ``sqrt(sum |v_j|^2)``."""
    return _root_sum_squares(v)


def frobenius_norm(A):
    return _root_sum_squares(A)


def max_modulus(A):
    A = np.asarray(A)
    return float(np.max(np.abs(A))) if A.size else 0.0


def induced_2norm(A, tol=TOL_NORM, max_iters=MAX_ITERS_NORM):
    """Spectral norm ``sqrt(lambda_max(A^H A))`` by power iteration.

    Starts from the all-ones vector and stops once the Rayleigh quotient
    changes by at most ``tol`` relative. If ``A^H A`` annihilates the start
    vector, the column of ``A^H A`` with the largest norm is used instead.
    """
    A = check_matrix(A, square=True)
    e = _pow2_exponent(A)
    A = _ldexp(A, -e)
    gram = A.conj().T @ A
    scale_g = frobenius_norm(gram)
    if scale_g == 0.0:
        return 0.0
    n = gram.shape[0]
    v = np.ones(n, dtype=complex) / math.sqrt(n)
    w = gram @ v
    if vec_norm2(w) <= EPS_ZERO * scale_g:
        col = int(np.argmax(np.sum(np.abs(gram) ** 2, axis=0)))
        v = gram[:, col] / vec_norm2(gram[:, col])
        w = gram @ v
    rayleigh = float(np.vdot(v, w).real)
    for _ in range(max_iters):
        v = w / vec_norm2(w)
        w = gram @ v
        new = float(np.vdot(v, w).real)
        if abs(new - rayleigh) <= tol * abs(new):
            return math.ldexp(math.sqrt(max(new, 0.0)), e)
        rayleigh = new
    raise ConvergenceFailure(
        f"power iteration for the 2-norm did not settle within {max_iters} iterations"
    )


def lu_factor(A):
    """LU factorisation with partial pivoting, ``A[perm] = L @ U``.

    ``L`` (unit lower) and ``U`` are packed into one array. A pivot with
    modulus at most ``1e-13 * max|A_ij|`` raises :class:`SingularMatrix`.
    """
    lu = check_matrix(A, square=True).copy()
    n = lu.shape[0]
    perm = np.arange(n)
    threshold = PIVOT_RTOL * max_modulus(lu)
    if threshold == 0.0:
        raise SingularMatrix("matrix is identically zero")
    for k in range(n):
        p = k + int(np.argmax(np.abs(lu[k:, k])))
        if abs(lu[p, k]) <= threshold:
            raise SingularMatrix(f"pivot {k} has modulus {abs(lu[p, k]):.3e} <= {threshold:.3e}")
        if p != k:
            lu[[k, p]] = lu[[p, k]]
            perm[[k, p]] = perm[[p, k]]
        lu[k + 1:, k] /= lu[k, k]
        lu[k + 1:, k + 1:] -= np.outer(lu[k + 1:, k], lu[k, k + 1:])
    return LUFactor(lu, perm)


def lu_solve_factored(factor, b):
    lu, perm = factor
    rhs = np.asarray(b, dtype=complex)[perm]
    y = triangular_solve(lu, rhs, lower=True, unit_diagonal=True)
    return triangular_solve(lu, y, lower=False)


def lu_solve(A, b):
    """Direct solve of ``A x = b`` by LU with partial pivoting."""
    A, b = check_system(A, b)
    return lu_solve_factored(lu_factor(A), b)


def relative_residual(A, x, b):
    """``||Ax - b|| / (||A||_F ||x|| + ||b||)``, the quantity bounded by ``TOL_RESIDUAL``."""
    A = np.asarray(A, dtype=complex)
    r = vec_norm2(A @ x - b)
    denom = frobenius_norm(A) * vec_norm2(x) + vec_norm2(b)
    return r / denom if denom else r


def triangular_solve(T, b, lower=True, unit_diagonal=False):
    """Forward (``lower=True``) or back substitution.

    Only the declared triangle of ``T`` is read. ``b`` may be a vector or a
    matrix of right-hand sides (one per column).
    """
    T = check_matrix(T, square=True, name="T")
    b = np.asarray(b, dtype=complex)
    n = T.shape[0]
    if b.shape[0] != n:
        raise DimensionMismatch(f"right-hand side has {b.shape[0]} rows, expected {n}")
    if not unit_diagonal:
        diag = np.diag(T)
        zero = np.flatnonzero(diag == 0)
        if zero.size:
            raise SingularMatrix(f"zero diagonal entry at index {int(zero[0])}")
    x = np.zeros_like(b)
    order = range(n) if lower else range(n - 1, -1, -1)
    for i in order:
        if lower:
            acc = b[i] - T[i, :i] @ x[:i]
        else:
            acc = b[i] - T[i, i + 1:] @ x[i + 1:]
        x[i] = acc if unit_diagonal else acc / T[i, i]
    return x

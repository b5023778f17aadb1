"""Input validation helpers shared by the numerical modules and the estimator."""

import numpy as np

from .errors import DimensionMismatch


def check_matrix(A, *, square=False, name="A", dtype=complex):
    """Return ``A`` as a 2-D ndarray of ``dtype``.

    Lists, tuples and ndarrays are accepted. Raises :class:`DimensionMismatch`
    for non-2-D input, empty dimensions, or (with ``square=True``) a
    rectangular matrix.
    """
    arr = np.asarray(A, dtype=dtype)
    if arr.ndim != 2:
        raise DimensionMismatch(f"{name} must be 2-D, got ndim={arr.ndim}")
    rows, cols = arr.shape
    if rows < 1 or cols < 1:
        raise DimensionMismatch(f"{name} must have at least one row and column, got {arr.shape}")
    if square and rows != cols:
        raise DimensionMismatch(f"{name} must be square, got {arr.shape}")
    return arr


def check_vector(v, *, dim=None, name="v", dtype=complex):
    """Return ``v`` as a 1-D ndarray; column matrices of shape (n, 1) are flattened."""
    arr = np.asarray(v, dtype=dtype)
    if arr.ndim == 2 and arr.shape[1] == 1:
        arr = arr[:, 0]
    if arr.ndim != 1:
        raise DimensionMismatch(f"{name} must be a vector, got shape {arr.shape}")
    if arr.shape[0] < 1:
        raise DimensionMismatch(f"{name} must have at least one entry")
    if dim is not None and arr.shape[0] != dim:
        raise DimensionMismatch(f"{name} has dimension {arr.shape[0]}, expected {dim}")
    return arr


def check_system(A, b, *, name_a="A", name_b="b"):
    A = check_matrix(A, square=True, name=name_a)
    b = check_vector(b, dim=A.shape[0], name=name_b)
    return A, b


def is_real(A, tol=0.0):
    """True when every imaginary part is at most ``tol`` in magnitude."""
    arr = np.asarray(A)
    if not np.iscomplexobj(arr):
        return True
    return bool(np.all(np.abs(arr.imag) <= tol))

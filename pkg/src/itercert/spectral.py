"""Eigenvalues, spectral radius and Jordan-block powers.

General spectra come from Householder reduction to Hessenberg form followed
by complex single-shift QR iteration (Wilkinson shift, deflation on small
subdiagonals). Tridiagonal Toeplitz matrices have a closed form. Jordan
blocks are only ever *specified* (eigenvalue and size); their powers and
the entrywise bounds on those powers drive the decay prediction.
"""

from dataclasses import dataclass, field
import enum
from functools import cmp_to_key
import math

import numpy as np
from scipy.optimize import linear_sum_assignment

from .complex_core import cmod, cpow
from .dense_linalg import frobenius_norm
from .errors import ConvergenceFailure, DomainError, NegativeProduct
from .sequences import binom_float, power_over_factorial
from .validation import check_matrix

DEFLATION_RTOL = 1e-14
MAX_QR_SWEEPS_PER_DIM = 100
_EXCEPTIONAL_SHIFT_EVERY = 10


class SpectrumMethod(str, enum.Enum):
    QR_ITERATION = "qr_iteration"
    TRIDIAG_CLOSED_FORM = "tridiag_closed_form"
    PROVIDED = "provided"


@dataclass(frozen=True)
class Spectrum:
    eigenvalues: tuple
    method: SpectrumMethod = SpectrumMethod.PROVIDED
    residual_estimate: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "eigenvalues", tuple(complex(v) for v in self.eigenvalues))

    def __len__(self):
        return len(self.eigenvalues)

    def __iter__(self):
        return iter(self.eigenvalues)

    @property
    def spectral_radius(self):
        return spectral_radius(self)


@dataclass(frozen=True)
class JordanBlockSpec:
    eigenvalue: complex
    size: int = 1

    def __post_init__(self):
        object.__setattr__(self, "eigenvalue", complex(self.eigenvalue))
        if int(self.size) != self.size or self.size < 1:
            raise ValueError(f"Jordan block size must be a positive integer, got {self.size!r}")


def _close(a, b, scale):
    return abs(a - b) <= 1e-12 * scale


def _compare(z, w):
    mz, mw = abs(z), abs(w)
    scale = max(mz, mw, 1.0)
    if not _close(mz, mw, scale):
        return -1 if mz > mw else 1
    if not _close(z.real, w.real, scale):
        return -1 if z.real > w.real else 1
    if z.imag != w.imag:
        return -1 if z.imag > w.imag else 1
    return 0


def sort_eigenvalues(values):
    """Descending modulus, then descending real part, then descending imaginary part.

    Moduli and real parts within 1e-12 (relative) count as ties.
    """
    return sorted((complex(v) for v in values), key=cmp_to_key(_compare))


def hessenberg(A):
    """Unitary similarity to upper Hessenberg form by Householder reflections."""
    H = check_matrix(A, square=True).copy()
    n = H.shape[0]
    for k in range(n - 2):
        x = H[k + 1:, k]
        alpha = np.linalg.norm(x)
        if alpha == 0.0:
            continue
        phase = x[0] / abs(x[0]) if x[0] != 0 else 1.0
        v = x.copy()
        v[0] += phase * alpha
        v /= np.linalg.norm(v)
        H[k + 1:, k:] -= 2.0 * np.outer(v, v.conj() @ H[k + 1:, k:])
        H[:, k + 1:] -= 2.0 * np.outer(H[:, k + 1:] @ v, v.conj())
        H[k + 2:, k] = 0.0
    return H


def _wilkinson_shift(B):
    a, b = B[-2, -2], B[-2, -1]
    c, d = B[-1, -2], B[-1, -1]
    half = 0.5 * (a - d)
    disc = np.sqrt(half * half + b * c)
    mu1 = d + half + disc
    mu2 = d + half - disc
    return mu1 if abs(mu1 - d) <= abs(mu2 - d) else mu2


def _qr_sweep(B, mu):
    """One explicit shifted QR step ``B - mu I = QR, B <- RQ + mu I`` in place."""
    m = B.shape[0]
    idx = np.arange(m)
    B[idx, idx] -= mu
    rotations = []
    for k in range(m - 1):
        x, y = B[k, k], B[k + 1, k]
        r = math.hypot(abs(x), abs(y))
        if r == 0.0:
            c, s = 1.0 + 0j, 0j
        else:
            c, s = x / r, y / r
        row_k = B[k, k:].copy()
        row_k1 = B[k + 1, k:].copy()
        B[k, k:] = c.conjugate() * row_k + s.conjugate() * row_k1
        B[k + 1, k:] = -s * row_k + c * row_k1
        rotations.append((c, s))
    for k, (c, s) in enumerate(rotations):
        top = min(k + 2, m - 1) + 1
        col_k = B[:top, k].copy()
        col_k1 = B[:top, k + 1].copy()
        B[:top, k] = c * col_k + s * col_k1
        B[:top, k + 1] = -s.conjugate() * col_k + c.conjugate() * col_k1
    B[idx, idx] += mu


def eigenvalues_qr(A, max_sweeps=None):
    """All eigenvalues of a square matrix, with multiplicity.

    Raises :class:`ConvergenceFailure` when the total number of QR sweeps
    exceeds ``max_sweeps`` (default ``100 * n``).
    """
    H = hessenberg(A)
    n = H.shape[0]
    if max_sweeps is None:
        max_sweeps = MAX_QR_SWEEPS_PER_DIM * n
    floor = np.finfo(float).tiny * max(frobenius_norm(H), 1.0)
    eig = np.empty(n, dtype=complex)
    residual = 0.0
    sweeps = 0
    since_deflation = 0
    hi = n - 1
    while hi >= 0:
        lo = hi
        while lo > 0:
            sub = abs(H[lo, lo - 1])
            scale = abs(H[lo - 1, lo - 1]) + abs(H[lo, lo])
            if sub <= DEFLATION_RTOL * scale or sub <= floor:
                residual = max(residual, sub)
                H[lo, lo - 1] = 0.0
                break
            lo -= 1
        if lo == hi:
            eig[hi] = H[hi, hi]
            hi -= 1
            since_deflation = 0
            continue
        if sweeps >= max_sweeps:
            raise ConvergenceFailure(
                f"QR iteration failed to deflate eigenvalue {hi} within {max_sweeps} sweeps"
            )
        sweeps += 1
        since_deflation += 1
        block = H[lo:hi + 1, lo:hi + 1]
        if since_deflation % _EXCEPTIONAL_SHIFT_EVERY == 0:
            mu = block[-1, -1] + abs(block[-1, -2]) * (0.75 + 0.5j)
        else:
            mu = _wilkinson_shift(block)
        _qr_sweep(block, mu)
    return Spectrum(sort_eigenvalues(eig), SpectrumMethod.QR_ITERATION, residual)


def spectral_radius(spec):
    """Largest eigenvalue modulus; 0 for an empty spectrum."""
    values = spec.eigenvalues if isinstance(spec, Spectrum) else spec
    return max((cmod(v) for v in values), default=0.0)


def spectrum_distance(a, b):
    """Distance between two eigenvalue multisets.

    Eigenvalues are paired by an optimal assignment (minimum total distance)
    and the largest paired distance is returned. This upper-bounds the
    bottleneck matching distance, so a small value is conclusive.
    """
    a = np.array([complex(v) for v in a])
    b = np.array([complex(v) for v in b])
    if a.shape != b.shape:
        raise ValueError(f"multisets differ in size: {a.size} vs {b.size}")
    if a.size == 0:
        return 0.0
    cost = np.abs(a[:, None] - b[None, :])
    rows, cols = linear_sum_assignment(cost)
    return float(np.max(cost[rows, cols]))


def tridiag_toeplitz_eigenvalues(a, b, c, n):
    """Closed-form spectrum of the n x n tridiagonal Toeplitz matrix.

    ``a`` is the sub-diagonal, ``b`` the diagonal and ``c`` the
    super-diagonal value. Eigenvalues ``b + 2 sqrt(a c) cos(m pi / (n + 1))``
    are returned for m = 1..n in that order.
    """
    if n < 1:
        raise ValueError(f"n must be positive, got {n}")
    if a * c < 0:
        raise NegativeProduct(f"a * c = {a * c!r} is negative; closed form needs a real root")
    root = 2.0 * math.sqrt(a * c)
    values = [complex(b + root * math.cos(m * math.pi / (n + 1)), 0.0) for m in range(1, n + 1)]
    return Spectrum(values, SpectrumMethod.TRIDIAG_CLOSED_FORM, 0.0)


def tridiag_toeplitz_matrix(a, b, c, n):
    T = np.zeros((n, n), dtype=complex)
    idx = np.arange(n)
    T[idx, idx] = b
    T[idx[1:], idx[:-1]] = a
    T[idx[:-1], idx[1:]] = c
    return T


def jordan_block(block):
    k = block.size
    J = np.diag(np.full(k, block.eigenvalue, dtype=complex))
    J[np.arange(k - 1), np.arange(1, k)] = 1.0
    return J


def jordan_block_power(block, m):
    """``J_k(lam)**m`` with entries ``C(m, j - i) * lam**(m - (j - i))`` above the diagonal."""
    if m < 0 or int(m) != m:
        raise ValueError(f"power must be a natural number, got {m!r}")
    m = int(m)
    k = block.size
    if m < k - 1:
        J = jordan_block(block)
        P = np.eye(k, dtype=complex)
        for _ in range(m):
            P = P @ J
        return P
    P = np.zeros((k, k), dtype=complex)
    for d in range(k):
        entry = binom_float(m, d) * cpow(block.eigenvalue, m - d)
        idx = np.arange(k - d)
        P[idx, idx + d] = entry
    return P


def jordan_entry_bound(eigenvalue, k_offset, m):
    """Upper bound ``m**k / k! * |lam|**(m - k)`` on the modulus of an entry
    ``k_offset`` places above the diagonal of ``J(lam)**m``."""
    if not 0 <= k_offset <= m:
        raise DomainError(f"need 0 <= k_offset <= m, got k_offset={k_offset}, m={m}")
    return power_over_factorial(m, k_offset) * cmod(cpow(eigenvalue, m - k_offset))


def predict_decay(blocks, m):
    """Frobenius-style aggregate of entry bounds over a block-diagonal Jordan matrix.

    Bounds ``||J**m||_F`` (hence ``||J**m||_2``) from above; it tends to
    zero as ``m`` grows whenever every ``|lam| < 1``.
    """
    total = 0.0
    for block in blocks:
        for d in range(min(block.size, m + 1)):
            bound = jordan_entry_bound(block.eigenvalue, d, m)
            total += (block.size - d) * bound * bound
    return math.sqrt(total)

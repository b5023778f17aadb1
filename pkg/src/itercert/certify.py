"""A priori convergence certificates for stationary iterations.

Two criteria are available. The spectral-radius criterion is a
characterisation: the iteration converges from every start exactly when
``rho(S) < 1``. Because a computed ``rho`` carries rounding error, values
within ``CERT_MARGIN`` of 1 yield an ``unknown`` verdict. Reich's criterion
(real symmetric, positive diagonal, positive definite => Gauss-Seidel
converges) is only sufficient, so it never reports divergence.
"""

from dataclasses import dataclass, field
import enum
import math
from typing import Optional

import numpy as np

from .dense_linalg import conjugate_transpose, frobenius_norm
from .errors import ConvergenceFailure, ItercertError
from .iterative import gauss_seidel_splitting, iteration_matrix
from .spectral import eigenvalues_qr, spectral_radius
from .validation import check_matrix

CERT_MARGIN = 1e-8
PD_TOL = 1e-12
SYM_TOL = 1e-12
NORMALITY_RTOL = 1e-10


class Verdict(str, enum.Enum):
    CONVERGES = "converges"
    DIVERGES = "diverges"
    UNKNOWN = "unknown"


class Criterion(str, enum.Enum):
    SPECTRAL_RADIUS = "spectral_radius"
    REICH = "reich"


@dataclass(frozen=True)
class ConvergenceCertificate:
    verdict: Verdict
    criterion: Criterion
    spectral_radius: Optional[float] = None
    eigenvalues: tuple = ()
    predicted_rate: Optional[float] = None
    predicted_iters: Optional[int] = None
    notes: str = ""
    error_code: Optional[str] = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "verdict", Verdict(self.verdict))
        object.__setattr__(self, "criterion", Criterion(self.criterion))
        object.__setattr__(self, "eigenvalues", tuple(complex(v) for v in self.eigenvalues))


def _verdict_for(rho, margin=CERT_MARGIN):
    if rho < 1.0 - margin:
        return Verdict.CONVERGES
    if rho > 1.0 + margin:
        return Verdict.DIVERGES
    return Verdict.UNKNOWN


def predicted_iterations(rho, target_reduction, n, margin=CERT_MARGIN):
    """Steps for the asymptotic rate ``rho`` to shrink the error by ``target_reduction``.

    A nilpotent iteration matrix (``rho == 0``) reaches the solution in at
    most ``n`` steps. ``None`` when ``rho`` is not safely below 1.
    """
    if rho == 0.0:
        return n
    if rho >= 1.0 - margin:
        return None
    return max(1, math.ceil(math.log(target_reduction) / math.log(rho)))


def _check_reduction(target_reduction):
    if not 0.0 < target_reduction < 1.0:
        raise ValueError(f"target_reduction must lie in (0, 1), got {target_reduction!r}")


def _normality_note(S):
    SH = conjugate_transpose(S)
    scale = frobenius_norm(S) ** 2
    if scale and frobenius_norm(S @ SH - SH @ S) > NORMALITY_RTOL * scale:
        return (
            "iteration matrix is non-normal; errors may grow transiently before the "
            "asymptotic rate applies"
        )
    return ""


def _join(*notes):
    return "; ".join(n for n in notes if n)


def certify_spectral(s, target_reduction=1e-10):
    """Certify a splitting by the spectral radius of its iteration matrix."""
    _check_reduction(target_reduction)
    S = iteration_matrix(s)
    try:
        spec = eigenvalues_qr(S)
    except ConvergenceFailure as exc:
        return ConvergenceCertificate(
            Verdict.UNKNOWN,
            Criterion.SPECTRAL_RADIUS,
            notes=f"{exc.code}: eigenvalue computation failed: {exc}",
            error_code=exc.code,
        )
    rho = spectral_radius(spec)
    verdict = _verdict_for(rho)
    iters = predicted_iterations(rho, target_reduction, s.source_dim)
    notes = []
    if verdict is Verdict.UNKNOWN:
        notes.append(f"spectral radius {rho!r} lies within {CERT_MARGIN} of 1; no verdict")
    elif verdict is Verdict.DIVERGES:
        notes.append("spectral radius exceeds 1: some starting vectors diverge")
    if rho == 0.0:
        notes.append("iteration matrix is nilpotent; exact after at most n steps")
    notes.append(_normality_note(S))
    return ConvergenceCertificate(
        verdict,
        Criterion.SPECTRAL_RADIUS,
        spectral_radius=rho,
        eigenvalues=spec.eigenvalues,
        predicted_rate=rho,
        predicted_iters=iters,
        notes=_join(*notes),
    )


def hermitian_part(A):
    A = check_matrix(A, square=True)
    return 0.5 * (A + A.conj().T)


def _cholesky_succeeds(H):
    """Pivot-free Cholesky of a Hermitian matrix; True iff every pivot is positive."""
    L = H.copy()
    n = L.shape[0]
    for k in range(n):
        pivot = L[k, k].real - float(np.sum(np.abs(L[k, :k]) ** 2))
        if not pivot > 0.0:
            return False
        root = math.sqrt(pivot)
        L[k, k] = root
        L[k + 1:, k] = (L[k + 1:, k] - L[k + 1:, :k] @ L[k, :k].conj()) / root
    return True


def is_positive_definite(A, tol=PD_TOL):
    """True iff ``Re(x^H A x) > 0`` for all nonzero ``x``.

    Decided on the Hermitian part ``H``: every eigenvalue must exceed
    ``tol * ||A||_F``. A Cholesky factorisation of ``H - tol ||A||_F I``
    settles the common case; when it breaks down the QR spectrum of ``H``
    gives the verdict.
    """
    A = check_matrix(A, square=True)
    H = hermitian_part(A)
    threshold = tol * frobenius_norm(A)
    shifted = H - threshold * np.eye(H.shape[0])
    if _cholesky_succeeds(shifted):
        return True
    try:
        spec = eigenvalues_qr(H)
    except ConvergenceFailure:
        return False
    return min(v.real for v in spec.eigenvalues) > threshold


def certify_reich(A, target_reduction=1e-10):
    """Gauss-Seidel certificate from Reich's sufficient condition.

    All premises are checked even though some are implied by others, so
    that a failing certificate names exactly what is missing: real entries,
    symmetry within ``SYM_TOL * ||A||_F``, a positive diagonal, and positive
    definiteness.
    """
    _check_reduction(target_reduction)
    A = check_matrix(A, square=True)
    scale = frobenius_norm(A)
    failed = []
    if np.any(A.imag != 0):
        failed.append("matrix is not real")
    if np.max(np.abs(A - A.T)) > SYM_TOL * scale:
        failed.append("matrix is not symmetric")
    if not np.all(np.diag(A).real > 0):
        failed.append("diagonal is not strictly positive")
    if not is_positive_definite(A):
        failed.append("matrix is not positive definite")
    if failed:
        return ConvergenceCertificate(
            Verdict.UNKNOWN,
            Criterion.REICH,
            notes="premise failed: " + "; ".join(failed),
        )

    notes = ["symmetric, positive diagonal and positive definite: Gauss-Seidel converges"]
    rho = None
    eigenvalues = ()
    iters = None
    try:
        S = iteration_matrix(gauss_seidel_splitting(A))
        spec = eigenvalues_qr(S)
        rho = spectral_radius(spec)
        eigenvalues = spec.eigenvalues
        iters = predicted_iterations(rho, target_reduction, A.shape[0])
        if rho >= 1.0:
            notes.append(f"computed Gauss-Seidel spectral radius {rho!r} is not below 1 (rounding?)")
        notes.append(_normality_note(S))
    except ItercertError as exc:
        notes.append(f"{exc.code}: informational Gauss-Seidel spectrum unavailable: {exc}")
    return ConvergenceCertificate(
        Verdict.CONVERGES,
        Criterion.REICH,
        spectral_radius=rho,
        eigenvalues=eigenvalues,
        predicted_rate=rho,
        predicted_iters=iters,
        notes=_join(*notes),
    )


def certificate_report(cert):
    """Serialise a certificate to the JSON-ready ``certificate`` object."""
    return {
        "verdict": cert.verdict.value,
        "criterion": cert.criterion.value,
        "spectral_radius": cert.spectral_radius,
        "eigenvalues": [{"re": v.real, "im": v.imag} for v in cert.eigenvalues],
        "predicted_rate": cert.predicted_rate,
        "predicted_iters": cert.predicted_iters,
        "notes": cert.notes,
    }


def certificate_from_report(data):
    return ConvergenceCertificate(
        verdict=data["verdict"],
        criterion=data["criterion"],
        spectral_radius=data.get("spectral_radius"),
        eigenvalues=[complex(e["re"], e["im"]) for e in data.get("eigenvalues", [])],
        predicted_rate=data.get("predicted_rate"),
        predicted_iters=data.get("predicted_iters"),
        notes=data.get("notes", ""),
    )

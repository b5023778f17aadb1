"""1-D Poisson benchmark: ``u'' = 1`` on (0, 1) with ``u(0) = u(1) = 0``.

Central differences on ``n`` interior points give the tridiagonal system
``A u = b`` with ``A = tridiag(-1, 2, -1) / h**2`` and ``b = -1``. The
Jacobi iteration matrix of this system has the closed-form spectrum
``cos(m pi / (n + 1))``, and Gauss-Seidel is covered by Reich's criterion,
so the system exercises both certificates end to end.
"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .certify import ConvergenceCertificate, certify_reich, certify_spectral
from .dense_linalg import lu_solve, vec_norm2
from .errors import InsufficientData, ItercertError
from .iterative import (
    DEFAULT_MAX_ITERS,
    IterationTrace,
    SplittingKind,
    iterate,
    iteration_matrix,
    make_splitting,
    observed_rate,
    recurrence_defect,
)
from .spectral import spectrum_distance, tridiag_toeplitz_eigenvalues

ANALYTIC_AGREEMENT_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class PoissonSystem:
    n: int
    h: float
    A: np.ndarray
    b: np.ndarray
    grid: np.ndarray

    def continuous_solution(self):
        """``u(x) = x (x - 1) / 2`` at the grid points."""
        x = self.grid
        return x * (x - 1.0) / 2.0


def build_poisson(n):
    if n < 1:
        raise ValueError(f"need at least one interior point, got n={n}")
    h = 1.0 / (n + 1)
    inv_h2 = 1.0 / (h * h)
    A = np.zeros((n, n))
    idx = np.arange(n)
    A[idx, idx] = 2.0 * inv_h2
    A[idx[1:], idx[:-1]] = -inv_h2
    A[idx[:-1], idx[1:]] = -inv_h2
    b = -np.ones(n)
    grid = np.arange(1, n + 1) * h
    return PoissonSystem(n, h, A, b, grid)


def jacobi_spectrum_analytic(system):
    """Closed-form spectrum ``{cos(m pi / (n + 1))}`` of the Jacobi iteration matrix.

    ``S_J = I - D^{-1} A`` is tridiagonal Toeplitz with zero diagonal and
    1/2 off the diagonal; it is unchanged when ``A`` is negated.
    """
    return tridiag_toeplitz_eigenvalues(0.5, 0.0, 0.5, system.n)


def negated_operator_spectrum(system):
    """Eigenvalues of ``-A``, i.e. ``-2/h**2 (1 - cos(m pi / (n + 1)))``."""
    inv_h2 = 1.0 / (system.h * system.h)
    return tridiag_toeplitz_eigenvalues(inv_h2, -2.0 * inv_h2, inv_h2, system.n)


def exact_discrete_solution(system):
    return lu_solve(system.A, system.b).real


@dataclass
class DemoReport:
    n: int
    method: SplittingKind
    certificate: Optional[ConvergenceCertificate] = None
    trace: Optional[IterationTrace] = None
    exact_solution: Optional[np.ndarray] = None
    observed_rate: Optional[float] = None
    analytic_distance: Optional[float] = None
    final_error: Optional[float] = None
    relative_error: Optional[float] = None
    recurrence_defect: Optional[float] = None
    error: Optional[str] = None

    @property
    def predicted_rate(self):
        return None if self.certificate is None else self.certificate.predicted_rate

    @property
    def converged(self):
        return self.trace is not None and self.trace.status.value == "reached_tol"


def run_demo(n, method="jacobi", tol=1e-10, max_iters=DEFAULT_MAX_ITERS, x0=None):
    """Build, certify and solve the Poisson system with Jacobi or Gauss-Seidel.

    Jacobi is certified by spectral radius and cross-checked against the
    closed-form spectrum; Gauss-Seidel is certified by Reich's criterion.
    Module errors are captured in ``report.error`` instead of raised.
    """
    if not 0.0 < tol < 1.0:
        raise ValueError(f"tol must lie in (0, 1), got {tol!r}")
    if n < 1:
        raise ValueError(f"need at least one interior point, got n={n}")
    method = SplittingKind(method)
    report = DemoReport(n=n, method=method)
    try:
        system = build_poisson(n)
        splitting = make_splitting(system.A, method)
        if method is SplittingKind.JACOBI:
            report.certificate = certify_spectral(splitting, target_reduction=tol)
            report.analytic_distance = spectrum_distance(
                report.certificate.eigenvalues, jacobi_spectrum_analytic(system).eigenvalues
            )
        else:
            report.certificate = certify_reich(system.A, target_reduction=tol)
        x_exact = exact_discrete_solution(system)
        report.exact_solution = x_exact
        trace = iterate(splitting, system.b, x0, tol=tol, max_iters=max_iters, x_ref=x_exact)
        report.trace = trace
        report.final_error = trace.final_error_norm
        report.relative_error = report.final_error / vec_norm2(x_exact)
        report.recurrence_defect = recurrence_defect(trace, iteration_matrix(splitting), x_exact)
        try:
            report.observed_rate = observed_rate(trace)
        except InsufficientData:
            report.observed_rate = None
    except ItercertError as exc:
        report.error = f"{exc.code}: {exc}"
    return report

"""Certified stationary iterative solvers (Jacobi, Gauss-Seidel) for dense systems."""

from .certify import (
    ConvergenceCertificate,
    Criterion,
    Verdict,
    certificate_report,
    certify_reich,
    certify_spectral,
    is_positive_definite,
)
from .dense_linalg import (
    conjugate_transpose,
    embed_real,
    frobenius_norm,
    induced_2norm,
    lu_solve,
    triangular_solve,
    unit_vector,
    vec_norm2,
)
from .errors import (
    ConvergenceFailure,
    DimensionMismatch,
    DivergentSystemError,
    ItercertError,
    MatrixMarketError,
    SingularMatrix,
    ZeroDiagonal,
)
from .estimator import StationarySolver
from .iterative import (
    IterationTrace,
    Splitting,
    SplittingKind,
    TraceStatus,
    custom_splitting,
    gauss_seidel_splitting,
    iterate,
    iteration_matrix,
    jacobi_splitting,
    observed_rate,
)
from .mmio import load_matrix_market, save_matrix_market
from .poisson import build_poisson, exact_discrete_solution, jacobi_spectrum_analytic, run_demo
from .spectral import (
    JordanBlockSpec,
    Spectrum,
    eigenvalues_qr,
    jordan_block_power,
    jordan_entry_bound,
    predict_decay,
    spectral_radius,
    tridiag_toeplitz_eigenvalues,
)

__version__ = "0.1.0"

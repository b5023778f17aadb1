"""scikit-learn style front end: certify on ``fit``, iterate on ``solve``."""

import numpy as np
from sklearn.base import BaseEstimator
from sklearn.utils.validation import check_is_fitted

from .certify import Verdict, certify_reich, certify_spectral
from .errors import DivergentSystemError
from .iterative import (
    DEFAULT_MAX_ITERS,
    DEFAULT_TOL,
    iterate,
    iteration_matrix,
    make_splitting,
    observed_rate,
)
from .validation import check_matrix, check_vector, is_real


class StationarySolver(BaseEstimator):
    """Jacobi / Gauss-Seidel solver with an a priori convergence certificate.

    Parameters
    ----------
    method : {"jacobi", "gauss-seidel"}
    criterion : {"spectral_radius", "reich"}
        Certificate used by ``fit``. Reich's criterion applies to
        Gauss-Seidel only.
    tol : float
        Relative update-norm tolerance of the iteration.
    max_iters : int
    target_reduction : float
        Error reduction used for the predicted iteration count.
    force : bool
        Iterate even when the certificate says the iteration diverges.

    Attributes
    ----------
    splitting_, iteration_matrix_, certificate_, n_dim_
        Set by ``fit``.
    trace_
        :class:`~itercert.iterative.IterationTrace` of the last ``solve``.
    """

    def __init__(
        self,
        method="jacobi",
        criterion="spectral_radius",
        tol=DEFAULT_TOL,
        max_iters=DEFAULT_MAX_ITERS,
        target_reduction=1e-10,
        force=False,
    ):
        self.method = method
        self.criterion = criterion
        self.tol = tol
        self.max_iters = max_iters
        self.target_reduction = target_reduction
        self.force = force

    def fit(self, A, y=None):
        A = check_matrix(A, square=True)
        if not 0.0 < self.tol < 1.0:
            raise ValueError(f"tol must lie in (0, 1), got {self.tol!r}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters!r}")
        self.splitting_ = make_splitting(A, self.method)
        if self.criterion == "reich":
            if self.splitting_.kind.value != "gauss-seidel":
                raise ValueError("Reich's criterion certifies Gauss-Seidel only")
            self.certificate_ = certify_reich(A, self.target_reduction)
        elif self.criterion == "spectral_radius":
            self.certificate_ = certify_spectral(self.splitting_, self.target_reduction)
        else:
            raise ValueError(f"unknown criterion {self.criterion!r}")
        self.iteration_matrix_ = iteration_matrix(self.splitting_)
        self.n_dim_ = A.shape[0]
        self._real_system = is_real(A)
        return self

    def solve(self, b, x0=None, x_ref=None):
        """Iterate from ``x0`` (zero by default) and return the final iterate.

        Raises :class:`DivergentSystemError` if the certificate says the
        iteration diverges and ``force`` is off.
        """
        check_is_fitted(self, "certificate_")
        b = check_vector(b, dim=self.n_dim_, name="b")
        if self.certificate_.verdict is Verdict.DIVERGES and not self.force:
            raise DivergentSystemError(
                f"certificate predicts divergence (spectral radius "
                f"{self.certificate_.spectral_radius!r}); pass force=True to iterate anyway"
            )
        self.trace_ = iterate(
            self.splitting_, b, x0, tol=self.tol, max_iters=self.max_iters, x_ref=x_ref
        )
        x = self.trace_.final_iterate
        real_inputs = self._real_system and is_real(b) and (x0 is None or is_real(x0))
        return x.real.copy() if real_inputs else x

    predict = solve

    def observed_rate(self):
        check_is_fitted(self, "trace_")
        return observed_rate(self.trace_)

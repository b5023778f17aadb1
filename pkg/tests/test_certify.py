import json
import math

import numpy as np
import pytest

from builders import diagonally_dominant, planted_splitting, random_hermitian, spd_positive_diagonal
from itercert.certify import (
    CERT_MARGIN,
    ConvergenceCertificate,
    Criterion,
    Verdict,
    certificate_from_report,
    certificate_report,
    certify_reich,
    certify_spectral,
    is_positive_definite,
    predicted_iterations,
)
from itercert.dense_linalg import frobenius_norm, lu_solve
from itercert.iterative import (
    TraceStatus,
    custom_splitting,
    gauss_seidel_splitting,
    iterate,
    iteration_matrix,
    jacobi_splitting,
)
from itercert.poisson import build_poisson
from itercert.spectral import eigenvalues_qr


def test_spectral_certificate_examples():
    cert = certify_spectral(jacobi_splitting([[2.0, -1.0], [-1.0, 2.0]]), 1e-10)
    assert cert.verdict is Verdict.CONVERGES
    assert cert.criterion is Criterion.SPECTRAL_RADIUS
    assert math.isclose(cert.spectral_radius, 0.5, rel_tol=1e-14)
    assert cert.predicted_iters == 34 == math.ceil(math.log(1e-10) / math.log(0.5))

    cert = certify_spectral(jacobi_splitting([[1.0, 2.0], [2.0, 1.0]]))
    assert cert.verdict is Verdict.DIVERGES
    assert math.isclose(cert.spectral_radius, 2.0, rel_tol=1e-14)
    assert cert.predicted_iters is None

    cert = certify_spectral(jacobi_splitting(build_poisson(3).A))
    assert cert.verdict is Verdict.CONVERGES
    assert abs(cert.spectral_radius - 0.70710678) < 1e-8
    assert len(cert.eigenvalues) == 3


def test_margin_band_is_unknown():
    # S = diag(1, 0.5) exactly: rho = 1 sits inside the margin band
    s = custom_splitting(np.eye(2), -np.diag([1.0, 0.5]))
    cert = certify_spectral(s)
    assert cert.verdict is Verdict.UNKNOWN
    assert cert.predicted_iters is None
    assert "within" in cert.notes


def test_nilpotent_prediction():
    cert = certify_spectral(gauss_seidel_splitting([[2.0, 1.0], [0.0, 3.0]]))
    assert cert.spectral_radius == 0.0
    assert cert.predicted_iters == 2


def test_predicted_iterations():
    assert predicted_iterations(0.5, 1e-10, 5) == 34
    assert predicted_iterations(1.0 - CERT_MARGIN / 2, 1e-10, 5) is None
    assert predicted_iterations(0.0, 1e-10, 5) == 5


def test_target_reduction_validated():
    with pytest.raises(ValueError):
        certify_spectral(jacobi_splitting(np.eye(2)), 1.5)


def test_eigensolver_failure_becomes_unknown(monkeypatch):
    from itercert import certify as mod
    from itercert.errors import ConvergenceFailure

    def boom(_):
        raise ConvergenceFailure("no deflation")

    monkeypatch.setattr(mod, "eigenvalues_qr", boom)
    cert = mod.certify_spectral(jacobi_splitting(np.eye(2) * 2))
    assert cert.verdict is Verdict.UNKNOWN
    assert cert.error_code == "E_EIG"


def test_positive_definite_examples():
    assert is_positive_definite(np.eye(3))
    assert not is_positive_definite(np.diag([1.0, -1.0]))
    assert is_positive_definite(build_poisson(3).A)
    assert not is_positive_definite(np.zeros((2, 2)))
    # non-symmetric but Re(x^H A x) = x^T x > 0
    assert is_positive_definite([[1.0, 5.0], [-5.0, 1.0]])


def test_poisson_positive_definite_all_sizes():
    for n in range(1, 65):
        assert is_positive_definite(build_poisson(n).A)


def test_pd_agrees_with_hermitian_spectrum(rng):
    checked = 0
    for _ in range(200):
        n = int(rng.integers(1, 7))
        H = random_hermitian(rng, n) + rng.uniform(-1.0, 3.0) * np.eye(n)
        lam_min = min(v.real for v in eigenvalues_qr(H).eigenvalues)
        threshold = 1e-12 * frobenius_norm(H)
        if abs(lam_min - threshold) <= 1e-9 * max(1.0, frobenius_norm(H)):
            continue
        assert is_positive_definite(H) == (lam_min > threshold)
        checked += 1
    assert checked > 190


def test_reich_examples():
    cert = certify_reich(build_poisson(3).A)
    assert cert.verdict is Verdict.CONVERGES and cert.criterion is Criterion.REICH
    assert math.isclose(cert.predicted_rate, 0.5, rel_tol=1e-12)

    cert = certify_reich(np.diag([1.0, -1.0]))
    assert cert.verdict is Verdict.UNKNOWN
    assert "diagonal is not strictly positive" in cert.notes
    assert "not positive definite" in cert.notes


def test_reich_on_random_spd(rng):
    for _ in range(30):
        n = int(rng.integers(1, 17))
        A = spd_positive_diagonal(rng, n)
        cert = certify_reich(A)
        assert cert.verdict is Verdict.CONVERGES
        assert cert.spectral_radius < 1.0


def test_reich_never_diverges(rng):
    for _ in range(30):
        A = rng.standard_normal((4, 4))
        assert certify_reich(A).verdict in (Verdict.CONVERGES, Verdict.UNKNOWN)


def test_reich_is_not_necessary():
    # non-symmetric, so Reich says nothing, yet Gauss-Seidel converges
    A = np.array([[4.0, 1.0, 0.0], [2.0, 5.0, 1.0], [0.0, 3.0, 6.0]])
    reich = certify_reich(A)
    spectral = certify_spectral(gauss_seidel_splitting(A))
    assert reich.verdict is Verdict.UNKNOWN and "not symmetric" in reich.notes
    assert spectral.verdict is Verdict.CONVERGES


def test_reich_rejects_complex():
    cert = certify_reich(np.array([[2.0, 1j], [-1j, 2.0]]))
    assert cert.verdict is Verdict.UNKNOWN and "not real" in cert.notes


def _check_soundness(rng, s, cert, n):
    b = rng.standard_normal(n)
    x = lu_solve(s.matrix, b)
    if cert.verdict is Verdict.CONVERGES:
        for _ in range(10):
            trace = iterate(s, b, rng.standard_normal(n), x_ref=x, max_iters=3 * cert.predicted_iters)
            assert trace.status is TraceStatus.REACHED_TOL
    elif cert.verdict is Verdict.DIVERGES:
        statuses = [iterate(s, b, rng.standard_normal(n)).status for _ in range(10)]
        assert TraceStatus.DIVERGED in statuses


def test_certificate_soundness(rng):
    for trial in range(40):
        n = int(rng.integers(1, 33))
        A = diagonally_dominant(rng, n)
        s = (jacobi_splitting if trial % 2 else gauss_seidel_splitting)(A)
        _check_soundness(rng, s, certify_spectral(s), n)
    for trial in range(40):
        n = int(rng.integers(1, 17))
        rho = rng.uniform(0.05, 0.95) if trial % 2 else rng.uniform(1.05, 3.0)
        s, _, _ = planted_splitting(rng, n, rho)
        cert = certify_spectral(s)
        assert cert.verdict is (Verdict.CONVERGES if rho < 1 else Verdict.DIVERGES)
        _check_soundness(rng, s, cert, n)


def test_report_round_trip():
    cert = certify_spectral(jacobi_splitting(build_poisson(3).A))
    data = json.loads(json.dumps(certificate_report(cert)))
    assert certificate_from_report(data) == cert
    assert len(data["eigenvalues"]) == 3

    unknown = ConvergenceCertificate(Verdict.UNKNOWN, Criterion.REICH, notes="premise failed: x")
    assert certificate_from_report(certificate_report(unknown)).notes == "premise failed: x"

import math

import numpy as np
import pytest

from itercert.iterative import TraceStatus, gauss_seidel_splitting, iteration_matrix, jacobi_splitting
from itercert.poisson import (
    build_poisson,
    exact_discrete_solution,
    jacobi_spectrum_analytic,
    negated_operator_spectrum,
    run_demo,
)
from itercert.spectral import eigenvalues_qr, spectral_radius, spectrum_distance


def test_build_examples():
    s1 = build_poisson(1)
    assert s1.h == 0.5
    assert s1.A.tolist() == [[8.0]] and s1.b.tolist() == [-1.0]
    s3 = build_poisson(3)
    assert s3.h == 0.25
    assert np.array_equal(s3.A, 16 * np.array([[2, -1, 0], [-1, 2, -1], [0, -1, 2]]))
    assert np.array_equal(s3.grid, [0.25, 0.5, 0.75])
    with pytest.raises(ValueError):
        build_poisson(0)


@pytest.mark.parametrize("n", [1, 2, 5, 17])
def test_difference_equation_rows(n):
    system = build_poisson(n)
    assert system.h == 1.0 / (n + 1)
    assert np.array_equal(system.A, system.A.T)
    assert np.all(np.triu(system.A, 2) == 0)
    assert np.all(np.diag(system.A) > 0)
    # a quadratic is reproduced exactly by central differences
    u = system.continuous_solution()
    padded = np.concatenate([[0.0], u, [0.0]])
    lhs = (-padded[2:] + 2 * padded[1:-1] - padded[:-2]) / system.h**2
    assert np.allclose(lhs, -1.0, atol=1e-9)


def test_analytic_spectrum_examples():
    spec = jacobi_spectrum_analytic(build_poisson(3))
    assert np.allclose([v.real for v in spec], [math.cos(math.pi / 4), 0.0, -math.cos(math.pi / 4)], atol=1e-16)
    S = iteration_matrix(jacobi_splitting(build_poisson(3).A))
    assert spectrum_distance(eigenvalues_qr(S).eigenvalues, spec.eigenvalues) < 1e-8
    assert abs(jacobi_spectrum_analytic(build_poisson(1)).eigenvalues[0]) < 1e-16
    for n in range(1, 513):
        assert spectral_radius(jacobi_spectrum_analytic(build_poisson(n))) < 1.0


def test_operator_spectrum_maps_to_jacobi_spectrum():
    system = build_poisson(7)
    mapped = [1 + system.h**2 / 2 * v for v in negated_operator_spectrum(system)]
    assert spectrum_distance(mapped, jacobi_spectrum_analytic(system).eigenvalues) < 1e-12


def test_exact_solution_examples():
    assert np.allclose(exact_discrete_solution(build_poisson(3)), [-0.09375, -0.125, -0.09375], atol=1e-16)
    assert exact_discrete_solution(build_poisson(1)).tolist() == [-0.125]
    for n in range(1, 65):
        system = build_poisson(n)
        x = exact_discrete_solution(system)
        assert np.allclose(x, x[::-1], atol=1e-12)
        assert np.max(np.abs(x - system.continuous_solution())) < 1e-10


@pytest.mark.parametrize("n", [1, 2, 9, 33, 64])
def test_sign_flip_invariance(n):
    A = build_poisson(n).A
    assert np.array_equal(iteration_matrix(jacobi_splitting(A)), iteration_matrix(jacobi_splitting(-A)))


def test_gauss_seidel_faster_than_jacobi():
    for n in range(2, 65, 7):
        A = build_poisson(n).A
        rho_gs = eigenvalues_qr(iteration_matrix(gauss_seidel_splitting(A))).spectral_radius
        rho_j = eigenvalues_qr(iteration_matrix(jacobi_splitting(A))).spectral_radius
        assert rho_gs < rho_j


def test_demo_jacobi():
    report = run_demo(3, "jacobi", tol=1e-10)
    assert report.error is None and report.converged
    assert 0.70 <= report.observed_rate <= 0.72
    assert report.analytic_distance < 1e-8
    assert report.recurrence_defect <= 1e-10 * (1 + np.linalg.norm(report.exact_solution))


def test_demo_gauss_seidel():
    report = run_demo(3, "gauss-seidel", tol=1e-10)
    assert report.certificate.criterion.value == "reich"
    assert report.converged
    assert 0.49 <= report.observed_rate <= 0.51
    assert math.isclose(report.predicted_rate, 0.5, rel_tol=1e-12)


@pytest.mark.parametrize("method", ["jacobi", "gauss-seidel"])
def test_demo_single_point(method):
    report = run_demo(1, method)
    assert report.trace.status is TraceStatus.REACHED_TOL
    assert report.trace.iterations <= 3
    assert report.observed_rate is None


def test_demo_rejects_bad_tol():
    with pytest.raises(ValueError):
        run_demo(3, "jacobi", tol=2.0)


def test_demo_precondition():
    with pytest.raises(ValueError):
        run_demo(0, "jacobi")


def test_demo_captures_module_errors(monkeypatch):
    from itercert import poisson
    from itercert.errors import SingularMatrix

    def singular(*_):
        raise SingularMatrix("forced")

    monkeypatch.setattr(poisson, "exact_discrete_solution", singular)
    report = run_demo(3, "jacobi")
    assert report.error == "E_SINGULAR: forced"
    assert report.certificate is not None and report.trace is None

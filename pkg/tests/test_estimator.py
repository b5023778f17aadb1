import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

from itercert import StationarySolver
from itercert.certify import Verdict
from itercert.errors import DivergentSystemError, ZeroDiagonal
from itercert.iterative import TraceStatus
from itercert.poisson import build_poisson


def test_params_and_clone():
    solver = StationarySolver(method="gauss-seidel", tol=1e-8)
    params = solver.get_params()
    assert params["method"] == "gauss-seidel" and params["tol"] == 1e-8
    twin = clone(solver).set_params(max_iters=50)
    assert twin.max_iters == 50 and solver.max_iters != 50


@pytest.mark.parametrize("method", ["jacobi", "gauss-seidel"])
def test_fit_solve_poisson(method):
    system = build_poisson(5)
    solver = StationarySolver(method=method).fit(system.A)
    assert solver.certificate_.verdict is Verdict.CONVERGES
    x = solver.solve(system.b, x_ref=np.linalg.solve(system.A, system.b))
    assert x.dtype == np.float64
    assert np.allclose(x, system.continuous_solution(), atol=1e-8)
    assert solver.trace_.status is TraceStatus.REACHED_TOL
    assert abs(solver.observed_rate() - solver.certificate_.predicted_rate) < 0.01


def test_reich_criterion():
    system = build_poisson(3)
    solver = StationarySolver(method="gauss-seidel", criterion="reich").fit(system.A)
    assert solver.certificate_.criterion.value == "reich"
    with pytest.raises(ValueError):
        StationarySolver(method="jacobi", criterion="reich").fit(system.A)


def test_divergent_system_refused_unless_forced():
    A = np.array([[1.0, 2.0], [2.0, 1.0]])
    solver = StationarySolver().fit(A)
    with pytest.raises(DivergentSystemError):
        solver.solve([1.0, 1.0])
    solver.set_params(force=True)
    solver.solve([1.0, 1.0], x0=[1.0, 0.0])
    assert solver.trace_.status is TraceStatus.DIVERGED


def test_not_fitted_and_validation():
    with pytest.raises(NotFittedError):
        StationarySolver().solve([1.0])
    with pytest.raises(ZeroDiagonal):
        StationarySolver().fit([[0.0, 1.0], [1.0, 0.0]])
    with pytest.raises(ValueError):
        StationarySolver(tol=0.0).fit(np.eye(2))


def test_predict_is_solve():
    system = build_poisson(3)
    solver = StationarySolver().fit(system.A)
    assert np.array_equal(solver.predict(system.b), solver.solve(system.b))

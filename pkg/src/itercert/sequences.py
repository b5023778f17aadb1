"""Sampled-sequence tools: ratio test, limit estimation, binomial bounds.

Exact limit statements cannot be checked by a computer, so the functions here
work on a finite window of samples (a :class:`SequenceProbe`) and use
explicit guard bands when turning samples into a verdict.
"""

from dataclasses import dataclass
import math
from typing import Callable, NamedTuple

import numpy as np

from .errors import DomainError, NonPositiveTerm

RATIO_MARGIN = 0.02
RATIO_STABILITY_TOL = 1e-3
LIMIT_STABILITY_TOL = 1e-9


@dataclass(frozen=True)
class SequenceProbe:
    """A real sequence ``generator(n)`` sampled up to (excluding) ``horizon``.

    Verdicts are computed over the last ``tail_window`` samples.
    """

    generator: Callable[[int], float]
    horizon: int = 5000
    tail_window: int = 100

    def __post_init__(self):
        if self.tail_window < 2:
            raise ValueError(f"tail_window must be >= 2, got {self.tail_window}")
        if self.horizon <= self.tail_window:
            raise ValueError(
                f"horizon ({self.horizon}) must exceed tail_window ({self.tail_window})"
            )

    def tail(self, extra=0):
        """The last ``tail_window + extra`` samples as a float array."""
        start = self.horizon - self.tail_window - extra
        return np.array([float(self.generator(n)) for n in range(start, self.horizon)])


class RatioTestResult(NamedTuple):
    converges_to_zero: bool
    ratio: float


def ratio_test(probe, margin=RATIO_MARGIN, stability_tol=RATIO_STABILITY_TOL):
    """Sampled ratio test for a positive sequence.

    ``ratio`` is the mean of ``a[n+1] / a[n]`` over the tail window. The
    sequence is declared to converge to zero when that estimate is below
    ``1 - margin`` and the ratios vary by less than ``stability_tol`` across
    the window; otherwise the result is inconclusive.
    """
    samples = probe.tail(extra=1)
    bad = np.flatnonzero(~(samples > 0))
    if bad.size:
        n = probe.horizon - probe.tail_window - 1 + int(bad[0])
        raise NonPositiveTerm(f"term a_{n} = {samples[bad[0]]!r} is not strictly positive")
    ratios = samples[1:] / samples[:-1]
    estimate = float(np.mean(ratios))
    variation = float(np.max(ratios) - np.min(ratios))
    converges = estimate < 1.0 - margin and variation < stability_tol
    return RatioTestResult(converges, estimate)


def tail_limit_estimate(probe, stability_tol=LIMIT_STABILITY_TOL):
    """Estimate ``lim a_n`` as the tail mean.

    Returns ``(estimate, converged)`` where ``converged`` requires the tail
    spread to be below ``stability_tol * (1 + |estimate|)``. Non-finite
    samples never count as converged.
    """
    samples = probe.tail()
    with np.errstate(invalid="ignore", over="ignore"):
        estimate = float(np.mean(samples))
        spread = float(np.max(samples) - np.min(samples))
    converged = bool(math.isfinite(spread) and spread < stability_tol * (1.0 + abs(estimate)))
    return estimate, converged


def powk_geometric_term(k, x, m, strict=True):
    """``(m + 1)**k * x**(m + 1)``, the polynomial-times-geometric term.

    With ``strict`` (default) ``x`` must lie in (0, 1), the range on which the
    term tends to zero.
    """
    if strict and not 0.0 < x < 1.0:
        raise DomainError(f"x must lie in (0, 1), got {x!r}")
    return float(m + 1) ** k * float(x) ** (m + 1)


def binom_float(m, k):
    """Binomial coefficient in floating point by the multiplicative formula."""
    if k < 0 or m < 0:
        raise DomainError(f"binomial needs naturals, got m={m}, k={k}")
    if k > m:
        raise DomainError(f"binomial needs k <= m, got m={m}, k={k}")
    k = min(k, m - k)
    result = 1.0
    for i in range(1, k + 1):
        result *= (m - k + i) / i
    return result


def power_over_factorial(m, k):
    """``m**k / k!`` as a running product, safe from overflow in ``m**k``."""
    result = 1.0
    for i in range(1, k + 1):
        result *= m / i
    return result


def binom_bound_check(m, k):
    """True when ``C(m, k) <= m**k / k!`` (with 1e-9 relative slack)."""
    bound = power_over_factorial(m, k)
    return binom_float(m, k) <= bound + 1e-9 * bound

"""Complex scalar arithmetic on Python's built-in ``complex``.

The built-in type already gives the (re, im) pair of doubles; this module adds
the modulus/conjugate toolkit with explicit, auditable algorithms (Smith's
division, binary exponentiation) and a zero tolerance for modulus tests.
"""

import math

from .errors import DivisionByZero

#: absolute threshold below which a modulus is treated as zero
EPS_ZERO = 1e-14


def cmod(z):
    """Modulus ``sqrt(re**2 + im**2)``.

    ``math.hypot`` is used so that large or tiny components do not
    overflow/underflow in the squares.
    """
    z = complex(z)
    return math.hypot(z.real, z.imag)


def conj(z):
    z = complex(z)
    return complex(z.real, -z.imag)


def is_zero(z, eps=EPS_ZERO):
    return cmod(z) <= eps


def cadd(z, w):
    return complex(z) + complex(w)


def csub(z, w):
    return complex(z) - complex(w)


def cneg(z):
    z = complex(z)
    return complex(-z.real, -z.imag)


def cmul(z, w):
    z, w = complex(z), complex(w)
    return complex(z.real * w.real - z.imag * w.imag, z.real * w.imag + z.imag * w.real)


def cdiv(z, w):
    """Divide ``z / w`` with Smith's scaling.

    Raises :class:`DivisionByZero` when ``cmod(w) <= EPS_ZERO``.
    """
    z, w = complex(z), complex(w)
    if cmod(w) <= EPS_ZERO:
        raise DivisionByZero(f"complex division by {w!r}")
    a, b = z.real, z.imag
    c, d = w.real, w.imag
    if abs(c) >= abs(d):
        r = d / c
        den = c + d * r
        return complex((a + b * r) / den, (b - a * r) / den)
    r = c / d
    den = c * r + d
    return complex((a * r + b) / den, (b * r - a) / den)


def cinv(z):
    return cdiv(1.0, z)


def cpow(z, n):
    """``z**n`` for a natural ``n`` by repeated squaring."""
    if n < 0 or int(n) != n:
        raise ValueError(f"cpow needs a natural exponent, got {n!r}")
    n = int(n)
    result = complex(1.0, 0.0)
    base = complex(z)
    while n:
        if n & 1:
            result = cmul(result, base)
        n >>= 1
        if n:
            base = cmul(base, base)
    return result


def csum(values):
    """Left-to-right sum of complex values."""
    total = complex(0.0, 0.0)
    for v in values:
        total = total + complex(v)
    return total

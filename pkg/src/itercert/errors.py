"""Exception hierarchy.

Every exception that the CLI can surface carries a stable ``code`` prefix
(``E_DIM``, ``E_SINGULAR``, ``E_EIG``, ``E_IO``, ``E_USAGE``).
"""


class ItercertError(Exception):
    code = "E_ITERCERT"


class DimensionMismatch(ItercertError, ValueError):
    code = "E_DIM"


class IndexOutOfRange(ItercertError, IndexError):
    code = "E_DIM"


class SingularMatrix(ItercertError, ArithmeticError):
    code = "E_SINGULAR"


class ZeroDiagonal(SingularMatrix):
    """A splitting needs a nonzero diagonal; ``index`` is the offending row."""

    def __init__(self, index, value=0.0):
        self.index = index
        self.value = value
        super().__init__(f"diagonal entry {index} is (numerically) zero: {value!r}")


class ConvergenceFailure(ItercertError, ArithmeticError):
    code = "E_EIG"


class DivisionByZero(ItercertError, ZeroDivisionError):
    code = "E_SINGULAR"


class NegativeProduct(ItercertError, ValueError):
    code = "E_USAGE"


class NonPositiveTerm(ItercertError, ValueError):
    code = "E_USAGE"


class DomainError(ItercertError, ValueError):
    code = "E_USAGE"


class InsufficientData(ItercertError, ValueError):
    code = "E_USAGE"


class DivergentSystemError(ItercertError):
    """Raised when a solve is requested on a system certified to diverge."""

    code = "E_DIVERGES"


class MatrixMarketError(ItercertError, OSError):
    code = "E_IO"

    def __init__(self, message, path=None, lineno=None):
        self.path = path
        self.lineno = lineno
        where = ""
        if path is not None:
            where = f"{path}"
            if lineno is not None:
                where += f":{lineno}"
            where += ": "
        super().__init__(where + message)

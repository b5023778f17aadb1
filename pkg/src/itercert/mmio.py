"""Matrix Market reader/writer for dense matrices and vectors.

Reads ``array`` and ``coordinate`` files (coordinate data is densified) with
``real``, ``integer``, ``complex`` or ``pattern`` fields and ``general``,
``symmetric``, ``skew-symmetric`` or ``hermitian`` storage. Writes the
``array general`` layout with 17 significant digits.
"""

import numpy as np

from .errors import MatrixMarketError

_FIELDS = {"real", "integer", "complex", "pattern"}
_SYMMETRIES = {"general", "symmetric", "skew-symmetric", "hermitian"}


def _data_lines(lines, start):
    for lineno, raw in enumerate(lines[start:], start=start + 1):
        text = raw.strip()
        if text and not text.startswith("%"):
            yield lineno, text.split()


def _parse_value(tokens, field, lineno, path):
    try:
        if field == "complex":
            if len(tokens) != 2:
                raise ValueError(f"expected 2 numbers, got {len(tokens)}")
            return complex(float(tokens[0]), float(tokens[1]))
        if field == "pattern":
            if tokens:
                raise ValueError("pattern entries carry no value")
            return 1.0
        if len(tokens) != 1:
            raise ValueError(f"expected 1 number, got {len(tokens)}")
        return float(tokens[0])
    except ValueError as exc:
        raise MatrixMarketError(f"bad entry {' '.join(tokens)!r}: {exc}", path, lineno) from None


def _mirror(M, symmetry):
    if symmetry == "general":
        return M
    lower = np.tril(M, -1)
    if symmetry == "symmetric":
        return M + lower.T
    if symmetry == "skew-symmetric":
        return M - lower.T
    return M + lower.conj().T


def load_matrix_market(path):
    """Load a Matrix Market file as a dense ndarray.

    Real and integer files give ``float64``; complex files give
    ``complex128``. Malformed input raises :class:`MatrixMarketError` naming
    the offending line.
    """
    try:
        with open(path, encoding="ascii") as fh:
            lines = fh.read().splitlines()
    except (OSError, UnicodeDecodeError) as exc:
        raise MatrixMarketError(f"cannot read file: {exc}", path) from None
    if not lines:
        raise MatrixMarketError("empty file", path, 1)

    header = lines[0].split()
    if len(header) != 5 or header[0] != "%%MatrixMarket" or header[1].lower() != "matrix":
        raise MatrixMarketError("missing '%%MatrixMarket matrix <format> <field> <symmetry>' header", path, 1)
    fmt, field, symmetry = (t.lower() for t in header[2:])
    if fmt not in {"array", "coordinate"}:
        raise MatrixMarketError(f"unknown format {fmt!r}", path, 1)
    if field not in _FIELDS:
        raise MatrixMarketError(f"unknown field {field!r}", path, 1)
    if symmetry not in _SYMMETRIES:
        raise MatrixMarketError(f"unknown symmetry {symmetry!r}", path, 1)
    if fmt == "array" and field == "pattern":
        raise MatrixMarketError("pattern field is only valid for coordinate format", path, 1)

    body = _data_lines(lines, 1)
    try:
        lineno, size = next(body)
    except StopIteration:
        raise MatrixMarketError("missing size line", path, len(lines)) from None
    want = 2 if fmt == "array" else 3
    try:
        dims = [int(t) for t in size]
    except ValueError:
        raise MatrixMarketError(f"bad size line {' '.join(size)!r}", path, lineno) from None
    if len(dims) != want or min(dims[:2]) < 1 or (fmt == "coordinate" and dims[2] < 0):
        raise MatrixMarketError(f"bad size line {' '.join(size)!r}", path, lineno)
    rows, cols = dims[:2]
    if symmetry != "general" and rows != cols:
        raise MatrixMarketError(f"{symmetry} storage needs a square matrix", path, lineno)

    dtype = complex if field == "complex" else float
    M = np.zeros((rows, cols), dtype=dtype)
    if fmt == "array":
        if symmetry == "general":
            slots = [(i, j) for j in range(cols) for i in range(rows)]
        elif symmetry == "skew-symmetric":
            slots = [(i, j) for j in range(cols) for i in range(j + 1, rows)]
        else:
            slots = [(i, j) for j in range(cols) for i in range(j, rows)]
        count = 0
        for lineno, tokens in body:
            if count == len(slots):
                raise MatrixMarketError("more entries than the size line declares", path, lineno)
            M[slots[count]] = _parse_value(tokens, field, lineno, path)
            count += 1
        if count != len(slots):
            raise MatrixMarketError(
                f"expected {len(slots)} entries, found {count}", path, len(lines)
            )
    else:
        nnz = dims[2]
        count = 0
        for lineno, tokens in body:
            if count == nnz:
                raise MatrixMarketError("more entries than the size line declares", path, lineno)
            if len(tokens) < 2:
                raise MatrixMarketError("entry needs row and column indices", path, lineno)
            try:
                i, j = int(tokens[0]) - 1, int(tokens[1]) - 1
            except ValueError:
                raise MatrixMarketError(f"bad indices {tokens[:2]!r}", path, lineno) from None
            if not (0 <= i < rows and 0 <= j < cols):
                raise MatrixMarketError(f"index ({i + 1}, {j + 1}) out of range", path, lineno)
            if symmetry != "general" and j > i:
                raise MatrixMarketError(f"{symmetry} storage holds the lower triangle only", path, lineno)
            M[i, j] += _parse_value(tokens[2:], field, lineno, path)
            count += 1
        if count != nnz:
            raise MatrixMarketError(f"expected {nnz} entries, found {count}", path, len(lines))
    return _mirror(M, symmetry)


def save_matrix_market(path, A, comment=None):
    """Write a matrix (or a vector, as one column) in ``array general`` layout."""
    M = np.asarray(A)
    if M.ndim == 1:
        M = M[:, None]
    if M.ndim != 2:
        raise ValueError(f"can only save vectors and matrices, got ndim={M.ndim}")
    field = "complex" if np.iscomplexobj(M) else "real"
    rows, cols = M.shape
    out = [f"%%MatrixMarket matrix array {field} general"]
    if comment:
        out.extend("% " + line for line in comment.splitlines())
    out.append(f"{rows} {cols}")
    for j in range(cols):
        for i in range(rows):
            v = M[i, j]
            if field == "complex":
                out.append(f"{v.real:.17g} {v.imag:.17g}")
            else:
                out.append(f"{float(v):.17g}")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("\n".join(out) + "\n")

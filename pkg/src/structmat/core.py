"""Dense matrix substrate.

Matrices are plain numpy arrays. Two representations are used:

* exact: ``dtype=object`` arrays of :class:`fractions.Fraction` (integer
  arrays are promoted to this form), used wherever a verdict must not depend
  on rounding;
* float: ``float64`` or ``complex128`` arrays.

Index sets are 1-based, strictly increasing tuples.
"""
from __future__ import annotations

import json
import math
import numbers
from fractions import Fraction
from functools import reduce
from typing import Iterable, Sequence

import numpy as np

from .exceptions import ArgumentError, SingularMatrixError

INF_NORM = "inf"
_P_VALUES = {1: 1, 2: 2, "1": 1, "2": 2, "inf": INF_NORM, "infinity": INF_NORM}


def _is_rational_scalar(x) -> bool:
    return isinstance(x, (numbers.Rational, np.integer)) and not isinstance(x, (bool, np.bool_))


def is_exact(A) -> bool:
    """True when ``A`` is an exact (Fraction object) matrix."""
    return isinstance(A, np.ndarray) and A.dtype == object


def as_matrix(A, exact: bool | None = None) -> np.ndarray:
    """Validate a square matrix and normalise its representation.

    Parameters
    ----------
    A : array_like
        Square matrix. Entries may be ints, Fractions, floats or complex.
    exact : bool, optional
        ``None`` keeps rational input exact and float input in floating
        point. ``True`` forces Fractions (floats are converted exactly, complex
        entries are rejected). ``False`` forces floating point.

    Returns
    -------
    numpy.ndarray
        ``object`` array of Fractions, or a float64/complex128 array.
    """
    if isinstance(A, np.ndarray) and A.dtype == object:
        arr = A
    else:
        arr = np.asarray(A)
        if arr.dtype == object:
            pass
        elif not (np.issubdtype(arr.dtype, np.number) or arr.dtype == bool):
            raise ArgumentError(f"unsupported matrix dtype {arr.dtype}")
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
        raise ArgumentError(f"expected a nonempty square matrix, got shape {arr.shape}")

    if arr.dtype == object:
        flat = arr.ravel()
        if all(_is_rational_scalar(x) for x in flat):
            rational = True
        else:
            try:
                arr = arr.astype(complex)
            except (TypeError, ValueError) as exc:
                raise ArgumentError("matrix entries must be numbers") from exc
            if not np.iscomplexobj(arr) or np.all(arr.imag == 0):
                arr = arr.real.copy()
            rational = False
    else:
        rational = np.issubdtype(arr.dtype, np.integer) or arr.dtype == bool

    if rational:
        if exact is False:
            return _fractions_to_float(arr)
        return _to_fraction_array(arr)

    if not np.all(np.isfinite(arr)):
        raise ArgumentError("matrix entries must be finite")
    if exact:
        if np.iscomplexobj(arr):
            if np.any(arr.imag != 0):
                raise ArgumentError("complex matrices have no exact representation here")
            arr = arr.real
        return _to_fraction_array(arr.astype(float))
    if np.iscomplexobj(arr):
        return arr.astype(complex)
    return arr.astype(float)


def _to_fraction_array(arr) -> np.ndarray:
    out = np.empty(arr.shape, dtype=object)
    for idx, x in np.ndenumerate(arr):
        if isinstance(x, Fraction):
            out[idx] = x
        elif isinstance(x, (np.integer, bool, np.bool_)):
            out[idx] = Fraction(int(x))
        else:
            out[idx] = Fraction(x)
    return out


def _fractions_to_float(arr) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in arr], dtype=float)


def to_float(A) -> np.ndarray:
    """Floating-point copy of ``A`` (complex kept complex)."""
    if is_exact(A):
        return _fractions_to_float(A)
    A = np.asarray(A)
    if np.issubdtype(A.dtype, np.integer):
        return A.astype(float)
    return A.copy()


def exact_vector(v) -> np.ndarray:
    return np.array([x if isinstance(x, Fraction) else Fraction(int(x) if isinstance(x, np.integer) else x)
                     for x in v], dtype=object)


def identity(n: int, exact: bool = False) -> np.ndarray:
    if exact:
        I = np.full((n, n), Fraction(0), dtype=object)
        for i in range(n):
            I[i, i] = Fraction(1)
        return I
    return np.eye(n)


def check_index_set(indices: Iterable[int], n: int) -> tuple[int, ...]:
    """Validate a 1-based, strictly increasing index set within ``1..n``."""
    idx = tuple(int(i) for i in indices)
    for a, b in zip(idx, idx[1:]):
        if b <= a:
            raise ArgumentError(f"index set {idx} is not strictly increasing")
    if idx and (idx[0] < 1 or idx[-1] > n):
        raise ArgumentError(f"index set {idx} out of range 1..{n}")
    return idx


def submatrix(A: np.ndarray, rows: Sequence[int], cols: Sequence[int]) -> np.ndarray:
    """``A(rows, cols)`` with 1-based indices."""
    r = np.asarray(rows, dtype=int) - 1
    c = np.asarray(cols, dtype=int) - 1
    return A[np.ix_(r, c)]


# --------------------------------------------------------------------------
# determinants

def _common_denominator(values) -> int:
    return reduce(math.lcm, (v.denominator for v in values), 1)


def integer_scaled(A: np.ndarray) -> tuple[list[list[int]], int]:
    """Return ``(M, L)`` with ``M = L*A`` an integer matrix (``A`` exact)."""
    L = _common_denominator(A.ravel())
    M = [[int(x * L) for x in row] for row in A]
    return M, L


def bareiss_det(M: list[list[int]]) -> int:
    """Fraction-free (Bareiss) determinant of an integer matrix, with row pivoting."""
    n = len(M)
    if n == 0:
        return 1
    M = [row[:] for row in M]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for r in range(k + 1, n):
                if M[r][k] != 0:
                    M[k], M[r] = M[r], M[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = M[k][k]
        row_k = M[k]
        for i in range(k + 1, n):
            row_i = M[i]
            f = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - f * row_k[j]) // prev
        prev = pivot
    return sign * M[n - 1][n - 1]


def det(A) -> Fraction | complex | float:
    """Determinant; exact for Fraction input."""
    A = as_matrix(A)
    if is_exact(A):
        M, L = integer_scaled(A)
        return Fraction(bareiss_det(M), L ** len(M))
    if A.shape[0] == 1:
        value = A[0, 0]
    elif A.shape[0] == 2:
        value = A[0, 0] * A[1, 1] - A[0, 1] * A[1, 0]
    else:
        value = np.linalg.det(A)
    return complex(value) if np.iscomplexobj(A) else float(value)


def minor(A, rows: Iterable[int], cols: Iterable[int]):
    """The minor ``A[rows, cols]`` (1-based index sets).

    Empty index sets give 1. Exact input gives an exact Fraction.

    Examples
    --------
    >>> minor([[1, 2], [3, 4]], (1, 2), (1, 2))
    Fraction(-2, 1)
    """
    A = as_matrix(A)
    n = A.shape[0]
    rows = check_index_set(rows, n)
    cols = check_index_set(cols, n)
    if len(rows) != len(cols):
        raise ArgumentError(f"minor needs equal cardinalities, got {len(rows)} and {len(cols)}")
    if not rows:
        return Fraction(1) if is_exact(A) else 1.0
    return det(submatrix(A, rows, cols))


# --------------------------------------------------------------------------
# norms

def _norm_kind(p):
    if p == math.inf or p == np.inf:
        return INF_NORM
    try:
        return _P_VALUES[p if not isinstance(p, str) else p.lower()]
    except (KeyError, TypeError):
        raise ArgumentError(f"p-norm must be one of 1, 2, inf; got {p!r}") from None


def p_norm(A, p=INF_NORM):
    """Operator p-norm for p in {1, 2, inf}.

    The 1- and inf-norms are exact (Fraction) for exact input. The 2-norm is
    the square root of the largest eigenvalue of ``A* A``.
    """
    A = as_matrix(A)
    kind = _norm_kind(p)
    if kind == 2:
        F = to_float(A)
        gram = F.conj().T @ F
        top = np.linalg.eigvalsh(gram)[-1]
        return float(math.sqrt(max(top, 0.0)))
    axis = 0 if kind == 1 else 1
    if is_exact(A):
        sums = np.sum(np.abs(A), axis=axis)
        return max(sums)
    return float(np.max(np.sum(np.abs(A), axis=axis)))


def vector_inf_norm(v) -> float:
    v = np.asarray(v)
    if v.dtype == object:
        v = v.astype(complex)
    return float(np.max(np.abs(v))) if v.size else 0.0


# --------------------------------------------------------------------------
# linear solves

def _solve_exact(A: np.ndarray, B: np.ndarray) -> np.ndarray:
    n = A.shape[0]
    M = [list(row) for row in A]
    X = [list(row) for row in B]
    for k in range(n):
        p = next((r for r in range(k, n) if M[r][k] != 0), None)
        if p is None:
            raise SingularMatrixError(k + 1, 0.0)
        if p != k:
            M[k], M[p] = M[p], M[k]
            X[k], X[p] = X[p], X[k]
        piv = M[k][k]
        for i in range(k + 1, n):
            f = M[i][k] / piv
            if f:
                M[i] = [a - f * b for a, b in zip(M[i], M[k])]
                X[i] = [a - f * b for a, b in zip(X[i], X[k])]
    for k in range(n - 1, -1, -1):
        row = M[k]
        for c in range(len(X[k])):
            s = X[k][c] - sum(row[j] * X[j][c] for j in range(k + 1, n))
            X[k][c] = s / row[k]
    return np.array(X, dtype=object)


def _solve_float(A: np.ndarray, B: np.ndarray, tol: float) -> np.ndarray:
    dtype = complex if (np.iscomplexobj(A) or np.iscomplexobj(B)) else float
    M = np.array(A, dtype=dtype)
    X = np.array(B, dtype=dtype)
    n = M.shape[0]
    scale = np.max(np.abs(M)) or 1.0
    for k in range(n):
        p = k + int(np.argmax(np.abs(M[k:, k])))
        if abs(M[p, k]) <= tol * scale:
            raise SingularMatrixError(k + 1, float(abs(M[p, k])))
        if p != k:
            M[[k, p]] = M[[p, k]]
            X[[k, p]] = X[[p, k]]
        f = M[k + 1:, k] / M[k, k]
        M[k + 1:, k:] -= np.outer(f, M[k, k:])
        X[k + 1:] -= np.outer(f, X[k])
    for k in range(n - 1, -1, -1):
        X[k] = (X[k] - M[k, k + 1:] @ X[k + 1:]) / M[k, k]
    return X


def solve(A, b, tol: float = 1e-12):
    """Solve ``A x = b`` by Gaussian elimination with partial pivoting.

    Exact input (matrix and right-hand side rational) is solved exactly.
    Raises :class:`SingularMatrixError` carrying the failing pivot when a
    pivot falls below ``tol`` relative to the largest entry of ``A``.
    """
    A = as_matrix(A)
    b_arr = np.asarray(b, dtype=object if is_exact(A) else None)
    vector = b_arr.ndim == 1
    B = b_arr.reshape(-1, 1) if vector else b_arr
    if B.shape[0] != A.shape[0]:
        raise ArgumentError(f"right-hand side has {B.shape[0]} rows, matrix has order {A.shape[0]}")
    if is_exact(A) and all(_is_rational_scalar(x) for x in B.ravel()):
        X = _solve_exact(A, _to_fraction_array(B))
    else:
        B = np.array(B.tolist(), dtype=complex)
        if np.all(B.imag == 0):
            B = B.real
        X = _solve_float(to_float(A), B, tol)
    return X[:, 0] if vector else X


def inverse(A, tol: float = 1e-12) -> np.ndarray:
    """Matrix inverse through :func:`solve`; exact for exact input."""
    A = as_matrix(A)
    n = A.shape[0]
    return solve(A, identity(n, exact=is_exact(A)), tol=tol)


def matrix_power(A: np.ndarray, m: int) -> np.ndarray:
    A = as_matrix(A)
    if is_exact(A):
        result = identity(A.shape[0], exact=True)
        base = A
        while m:
            if m & 1:
                result = result.dot(base)
            base = base.dot(base)
            m >>= 1
        return result
    return np.linalg.matrix_power(A, m)


def is_hermitian(A, tol: float = 1e-12) -> bool:
    A = as_matrix(A)
    if is_exact(A):
        return bool(np.all(A == A.T))
    scale = max(1.0, float(np.max(np.abs(A))))
    return bool(np.max(np.abs(A - A.conj().T)) <= tol * scale)


# --------------------------------------------------------------------------
# JSON matrix file format

def encode_scalar(x):
    """Entry encoding of the matrix file format: ``[re, im]`` or ``{"num", "den"}``."""
    if isinstance(x, Fraction) or _is_rational_scalar(x):
        x = Fraction(x)
        return {"num": x.numerator, "den": x.denominator}
    z = complex(x)
    return [z.real, z.imag]


def decode_scalar(obj):
    if isinstance(obj, dict):
        try:
            return Fraction(int(obj["num"]), int(obj["den"]))
        except (KeyError, ValueError, ZeroDivisionError) as exc:
            raise ArgumentError(f"bad exact entry {obj!r}") from exc
    if isinstance(obj, (list, tuple)):
        if len(obj) != 2:
            raise ArgumentError(f"complex entry must be [re, im], got {obj!r}")
        re, im = float(obj[0]), float(obj[1])
        return complex(re, im) if im else re
    if isinstance(obj, numbers.Number):
        return obj
    raise ArgumentError(f"cannot decode matrix entry {obj!r}")


def matrix_to_json(A) -> dict:
    A = as_matrix(A)
    return {"order": int(A.shape[0]), "entries": [encode_scalar(x) for x in A.ravel()]}


def matrix_from_json(obj) -> np.ndarray:
    """Inverse of :func:`matrix_to_json`. Accepts flat or nested-row entries."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        n = int(obj["order"])
        entries = obj["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ArgumentError("matrix JSON needs 'order' and 'entries'") from exc
    if not isinstance(entries, list):
        raise ArgumentError("matrix 'entries' must be a list")
    single_nested = n == 1 and len(entries) == 1 and isinstance(entries[0], list) and len(entries[0]) == 1
    if len(entries) == n * n and not single_nested:
        flat = list(entries)
    elif len(entries) == n and all(isinstance(row, list) and len(row) == n for row in entries):
        flat = [e for row in entries for e in row]
    else:
        flat = list(entries)
    if len(flat) != n * n:
        raise ArgumentError(f"expected {n * n} entries, got {len(flat)}")
    values = [decode_scalar(e) for e in flat]
    if all(isinstance(v, Fraction) or _is_rational_scalar(v) for v in values):
        return as_matrix(np.array(values, dtype=object).reshape(n, n))
    arr = np.array([complex(v) for v in values]).reshape(n, n)
    return as_matrix(arr.real if np.all(arr.imag == 0) else arr)


def load_matrix(path) -> np.ndarray:
    with open(path) as fh:
        return matrix_from_json(json.load(fh))


def save_matrix(A, path) -> None:
    with open(path, "w") as fh:
        json.dump(matrix_to_json(A), fh)

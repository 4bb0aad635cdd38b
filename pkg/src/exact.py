"""
exact.py

Exact rational linear algebra for the wsym toolkit.

Vectors and matrices are numpy object arrays holding fractions.Fraction values, so numpy
handles shapes, slicing and products while every entry stays exact. Row reduction is
fraction-free: each row is scaled to integers, elimination uses integer cross
multiplication with content (gcd) removal, and only the final pivot normalization
introduces fractions. The reduced echelon form it returns is canonical, which is what
makes subspace equality a plain comparison.

Functions:
    Conversion:
        to_fraction(), fraction_array(), format_fraction(), parse_rational()
    Construction:
        zeros(), zeros_matrix(), identity(), unit_vector()
    Elimination:
        row_reduce(), rank(), nullspace(), solve(), inverse()
    Predicates:
        is_zero(), arrays_equal()
"""
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, List, Optional, Sequence, Tuple
import numbers

import numpy as np

from errors import DimensionMismatchError, InputError


def to_fraction(value) -> Fraction:
    """
    Convert an exact scalar to Fraction.

    Accepts int, Fraction, numpy integers and strings of the form "p" or "p/q". Floats
    and booleans are rejected.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InputError(f"Boolean is not a rational value: {value!r}")
    if isinstance(value, (int, np.integer)):
        return Fraction(int(value))
    if isinstance(value, str):
        return parse_rational(value)
    if isinstance(value, numbers.Rational):
        return Fraction(value.numerator, value.denominator)
    raise InputError(f"Not an exact rational value: {value!r}")


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" (surrounding whitespace allowed)."""
    stripped = text.strip()
    parts = stripped.split("/")
    try:
        if len(parts) == 1:
            return Fraction(int(parts[0]))
        if len(parts) == 2:
            denominator = int(parts[1])
            if denominator == 0:
                raise InputError(f"Zero denominator in rational: {text!r}")
            return Fraction(int(parts[0]), denominator)
    except ValueError as exc:
        raise InputError(f"Malformed rational: {text!r}") from exc
    raise InputError(f"Malformed rational: {text!r}")


def format_fraction(value: Fraction) -> str:
    """Serialize a rational as "p" or "p/q"."""
    value = to_fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def fraction_array(values) -> np.ndarray:
    """Convert a nested sequence (or array) of exact scalars into an object array of Fraction."""
    array = np.array(values, dtype=object)
    flat = [to_fraction(v) for v in array.ravel()]
    result = np.empty(array.shape, dtype=object)
    result.ravel()[:] = flat if flat else []
    return result


def zeros(n: int) -> np.ndarray:
    result = np.empty(n, dtype=object)
    result[:] = [Fraction(0)] * n
    return result


def zeros_matrix(rows: int, cols: int) -> np.ndarray:
    result = np.empty((rows, cols), dtype=object)
    result.ravel()[:] = [Fraction(0)] * (rows * cols)
    return result


def identity(n: int) -> np.ndarray:
    result = zeros_matrix(n, n)
    for i in range(n):
        result[i, i] = Fraction(1)
    return result


def unit_vector(n: int, index: int) -> np.ndarray:
    result = zeros(n)
    result[index] = Fraction(1)
    return result


def is_zero(array) -> bool:
    """True when every entry of the array is exactly zero (vacuously true when empty)."""
    return all(v == 0 for v in np.asarray(array, dtype=object).ravel())


def arrays_equal(left, right) -> bool:
    left = np.asarray(left, dtype=object)
    right = np.asarray(right, dtype=object)
    if left.shape != right.shape:
        return False
    return all(a == b for a, b in zip(left.ravel(), right.ravel()))


def _as_rows(matrix, n_cols: Optional[int] = None) -> Tuple[List[List[Fraction]], int]:
    array = np.asarray(matrix, dtype=object)
    if array.ndim == 1 and array.size == 0:
        if n_cols is None:
            raise DimensionMismatchError("Cannot infer column count of an empty matrix")
        return [], n_cols
    if array.ndim != 2:
        raise DimensionMismatchError(f"Expected a 2-d matrix, got shape {array.shape}")
    if n_cols is not None and array.shape[1] != n_cols:
        raise DimensionMismatchError(
            f"Expected {n_cols} columns, got {array.shape[1]}")
    rows = [[to_fraction(v) for v in row] for row in array]
    return rows, array.shape[1]


def _integer_row(row: Sequence[Fraction]) -> List[int]:
    scale = lcm(*(v.denominator for v in row)) if row else 1
    return [int(v * scale) for v in row]


def _primitive(row: List[int]) -> List[int]:
    content = gcd(*row) if row else 0
    if content > 1:
        return [v // content for v in row]
    return row


def row_reduce(matrix, n_cols: Optional[int] = None) -> Tuple[np.ndarray, List[int]]:
    """
    Reduced row echelon form by fraction-free Gauss-Jordan elimination.

    Args:
        matrix: 2-d array-like of exact scalars.
        n_cols: Column count, required only when the matrix has no rows.

    Returns:
        (R, pivots): R holds the nonzero rows of the reduced echelon form (shape
        rank x n_cols, pivot entries equal to 1), pivots lists the pivot columns.
    """
    fraction_rows, width = _as_rows(matrix, n_cols)
    rows = [_integer_row(r) for r in fraction_rows]
    n_rows = len(rows)
    pivots: List[int] = []
    r = 0
    for col in range(width):
        if r == n_rows:
            break
        pivot_row = next((i for i in range(r, n_rows) if rows[i][col] != 0), None)
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        p = rows[r][col]
        for i in range(n_rows):
            if i != r and rows[i][col] != 0:
                f = rows[i][col]
                rows[i] = _primitive([p * a - f * b for a, b in zip(rows[i], rows[r])])
        pivots.append(col)
        r += 1

    reduced = zeros_matrix(len(pivots), width)
    for i, col in enumerate(pivots):
        p = rows[i][col]
        reduced[i, :] = [Fraction(v, p) for v in rows[i]]
    return reduced, pivots


def rank(matrix, n_cols: Optional[int] = None) -> int:
    return len(row_reduce(matrix, n_cols)[1])


def nullspace(matrix, n_cols: Optional[int] = None) -> List[np.ndarray]:
    """Basis of {x : matrix @ x = 0}, one vector per free column (free entry set to 1)."""
    reduced, pivots = row_reduce(matrix, n_cols)
    width = reduced.shape[1]
    pivot_set = set(pivots)
    basis = []
    for free in range(width):
        if free in pivot_set:
            continue
        v = unit_vector(width, free)
        for i, col in enumerate(pivots):
            v[col] = -reduced[i, free]
        basis.append(v)
    return basis


def solve(matrix, rhs) -> Optional[np.ndarray]:
    """
    Solve matrix @ x = rhs exactly.

    Returns the canonical particular solution (free variables set to 0) or None when the
    system is inconsistent.
    """
    a = np.asarray(matrix, dtype=object)
    b = np.asarray(rhs, dtype=object)
    if a.ndim != 2:
        raise DimensionMismatchError(f"Expected a 2-d matrix, got shape {a.shape}")
    if b.shape != (a.shape[0],):
        raise DimensionMismatchError(
            f"Right-hand side has shape {b.shape}, expected ({a.shape[0]},)")
    n = a.shape[1]
    augmented = zeros_matrix(a.shape[0], n + 1)
    augmented[:, :n] = a
    augmented[:, n] = b
    reduced, pivots = row_reduce(augmented, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = zeros(n)
    for i, col in enumerate(pivots):
        x[col] = reduced[i, n]
    return x


def inverse(matrix) -> np.ndarray:
    """Exact inverse of a square matrix; raises ValueError when singular."""
    a = np.asarray(matrix, dtype=object)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionMismatchError(f"Inverse needs a square matrix, got shape {a.shape}")
    n = a.shape[0]
    augmented = zeros_matrix(n, 2 * n)
    augmented[:, :n] = a
    augmented[:, n:] = identity(n)
    reduced, pivots = row_reduce(augmented, 2 * n)
    if pivots[:n] != list(range(n)):
        raise ValueError("Matrix is not invertible")
    return reduced[:, n:]


def stack_rows(vectors: Iterable, n_cols: int) -> np.ndarray:
    """Stack vectors as rows of an object matrix, keeping the column count for empty input."""
    vectors = list(vectors)
    result = zeros_matrix(len(vectors), n_cols)
    for i, v in enumerate(vectors):
        v = np.asarray(v, dtype=object)
        if v.shape != (n_cols,):
            raise DimensionMismatchError(f"Row {i} has shape {v.shape}, expected ({n_cols},)")
        result[i, :] = v
    return result

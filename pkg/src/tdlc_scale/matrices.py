"""Small exact matrix toolkit over the rationals.

Matrices are immutable tuples of row tuples of ``Fraction``.  Everything
here is O(n^3) Gaussian elimination; the dimensions in play are tiny.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence, Tuple

from .errors import DimensionError, InputError, SingularMatrixError
from .exact_arith import format_rational, to_rational

Matrix = Tuple[Tuple[Fraction, ...], ...]


def as_matrix(rows: Iterable[Iterable], *, square: bool = False) -> Matrix:
    try:
        m = tuple(tuple(to_rational(x) for x in row) for row in rows)
    except TypeError as exc:
        raise InputError(f"matrix entries must be rationals: {exc}") from None
    if not m or not m[0]:
        raise DimensionError("empty matrix")
    width = len(m[0])
    if any(len(r) != width for r in m):
        raise DimensionError("ragged matrix rows")
    if square and width != len(m):
        raise DimensionError(f"expected a square matrix, got {len(m)}x{width}")
    return m


def shape(a: Matrix) -> Tuple[int, int]:
    return len(a), len(a[0])


def identity(n: int) -> Matrix:
    return tuple(
        tuple(Fraction(1) if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def diag(*entries) -> Matrix:
    n = len(entries)
    vals = [to_rational(e) for e in entries]
    return tuple(
        tuple(vals[i] if i == j else Fraction(0) for j in range(n)) for i in range(n)
    )


def transpose(a: Matrix) -> Matrix:
    return tuple(zip(*a))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if len(a[0]) != len(b):
        raise DimensionError(f"cannot multiply {shape(a)} by {shape(b)}")
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in bt) for row in a)


def scalar_mul(c, a: Matrix) -> Matrix:
    c = to_rational(c)
    return tuple(tuple(c * x for x in row) for row in a)


def hstack(a: Matrix, b: Matrix) -> Matrix:
    if len(a) != len(b):
        raise DimensionError("row counts differ")
    return tuple(ra + rb for ra, rb in zip(a, b))


def _eliminate(a: Matrix):
    """Row-reduce a copy of ``a``; returns (rows, det) with rows in echelon form."""
    m = [list(r) for r in a]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return m, Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            if m[r][c] != 0:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return m, det


def det(a: Matrix) -> Fraction:
    if len(a) != len(a[0]):
        raise DimensionError("determinant of a non-square matrix")
    return _eliminate(a)[1]


def inverse(a: Matrix) -> Matrix:
    n = len(a)
    if n != len(a[0]):
        raise DimensionError("inverse of a non-square matrix")
    aug = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(a)]
    for c in range(n):
        piv = next((r for r in range(c, n) if aug[r][c] != 0), None)
        if piv is None:
            raise SingularMatrixError("matrix is singular (not an automorphism)")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv_p = 1 / aug[c][c]
        aug[c] = [x * inv_p for x in aug[c]]
        for r in range(n):
            if r != c and aug[r][c] != 0:
                f = aug[r][c]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[c])]
    return tuple(tuple(row[n:]) for row in aug)


def mat_pow(a: Matrix, k: int) -> Matrix:
    if k < 0:
        return mat_pow(inverse(a), -k)
    result = identity(len(a))
    base = a
    while k:
        if k & 1:
            result = matmul(result, base)
        base = matmul(base, base)
        k >>= 1
    return result


def block_diag(a: Matrix, b: Matrix) -> Matrix:
    return block_upper(a, None, b)


def block_upper(a: Matrix, c: Matrix | None, b: Matrix) -> Matrix:
    """``[[a, c], [0, b]]``; ``c=None`` means a zero block."""
    na, nb = len(a), len(b)
    zero = Fraction(0)
    top = []
    for i in range(na):
        right = c[i] if c is not None else (zero,) * nb
        top.append(tuple(a[i]) + tuple(right))
    bottom = [(zero,) * na + tuple(b[i]) for i in range(nb)]
    return tuple(top + bottom)


def require_invertible(a: Matrix) -> Matrix:
    if len(a) != len(a[0]):
        raise DimensionError(f"expected a square matrix, got {shape(a)}")
    if det(a) == 0:
        raise SingularMatrixError("matrix is singular (not an automorphism)")
    return a


def to_json(a: Sequence[Sequence]) -> list:
    return [[format_rational(x) for x in row] for row in a]

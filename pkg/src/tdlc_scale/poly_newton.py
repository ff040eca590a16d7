"""Characteristic polynomials and Newton polygons.

The multiset of p-adic valuations of the eigenvalues of a rational
matrix is read off the lower convex hull of the points
``(i, vp(a_i))``: a hull segment of slope ``s`` and width ``w`` carries
exactly ``w`` roots of valuation ``-s`` (so ``|root|_p = p**s``).  The
scale of ``x -> Mx`` on ``Q_p^n`` is the product of the absolute values
of the eigenvalues that exceed 1, i.e. ``p**E`` with
``E = sum(w * s for s > 0)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .errors import InputError, SingularMatrixError
from .exact_arith import INF, check_prime, format_rational, to_rational, vp
from .matrices import Matrix, as_matrix


@dataclass(frozen=True)
class MonicPolynomial:
    """Coefficients ``a_0 .. a_n`` (lowest degree first), ``a_n == 1``."""

    coefficients: Tuple[Fraction, ...]

    def __post_init__(self):
        coeffs = tuple(to_rational(c) for c in self.coefficients)
        if not coeffs or coeffs[-1] != 1:
            raise InputError("polynomial must be monic")
        object.__setattr__(self, "coefficients", coeffs)

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc

    def to_json(self) -> list:
        return [format_rational(c) for c in self.coefficients]


@dataclass(frozen=True)
class NewtonPolygon:
    vertices: Tuple[Tuple[int, int], ...]
    segments: Tuple[Tuple[Fraction, int], ...]  # (slope, width)

    @property
    def degree(self) -> int:
        return sum(w for _, w in self.segments)

    def root_valuations(self) -> List[Fraction]:
        """Valuations of the roots with multiplicity, in increasing slope order."""
        out = []
        for s, w in self.segments:
            out.extend([-s] * w)
        return out

    def to_json(self) -> dict:
        return {
            "vertices": [[i, v] for i, v in self.vertices],
            "segments": [
                {"slope": format_rational(s), "width": w} for s, w in self.segments
            ],
        }


def char_poly(m) -> MonicPolynomial:
    """``det(xI - M)`` via the Faddeev-LeVerrier recurrence, exact over Q."""
    m = as_matrix(m, square=True)
    n = len(m)
    coeffs = [Fraction(0)] * (n + 1)
    coeffs[n] = Fraction(1)
    # aux holds M_k; M_0 = 0.
    aux = [[Fraction(0)] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        # M_k = M * M_{k-1} + c_{n-k+1} * I
        aux = [
            [
                sum((m[i][t] * aux[t][j] for t in range(n)), Fraction(0))
                + (c_prev if i == j else 0)
                for j in range(n)
            ]
            for i in range(n)
        ]
        trace = sum(
            (sum((m[i][t] * aux[t][i] for t in range(n)), Fraction(0)) for i in range(n)),
            Fraction(0),
        )
        coeffs[n - k] = -trace / k
    return MonicPolynomial(tuple(coeffs))


def newton_polygon(f: MonicPolynomial, p: int) -> NewtonPolygon:
    check_prime(p)
    if f.coefficients[0] == 0:
        raise SingularMatrixError(
            "constant coefficient is zero: the matrix is singular (not an automorphism)"
        )
    pts = [(i, vp(a, p)) for i, a in enumerate(f.coefficients) if a != 0]
    hull: List[Tuple[int, int]] = []
    for pt in pts:
        # pop while the last turn is not strictly convex from below
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            x3, y3 = pt
            if (y2 - y1) * (x3 - x1) >= (y3 - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    segments = tuple(
        (Fraction(y2 - y1, x2 - x1), x2 - x1) for (x1, y1), (x2, y2) in zip(hull, hull[1:])
    )
    return NewtonPolygon(vertices=tuple(hull), segments=segments)


def scale_exponent(f: MonicPolynomial, p: int) -> int:
    """Exponent ``E`` with ``s(phi) = p**E`` for the automorphism with char poly ``f``."""
    poly = newton_polygon(f, p)
    total = Fraction(0)
    for slope, width in poly.segments:
        if slope > 0:
            total += slope * width
    # width * slope is the vertical drop of a hull edge between integer points
    assert total.denominator == 1
    return int(total)


def matrix_scale_exponent(m, p: int) -> int:
    return scale_exponent(char_poly(m), p)


__all__ = [
    "INF",
    "MonicPolynomial",
    "NewtonPolygon",
    "char_poly",
    "matrix_scale_exponent",
    "newton_polygon",
    "scale_exponent",
]

import random
from fractions import Fraction

import pytest
import sympy

from conftest import F, swap_matrix
from tdlc_scale.errors import SingularMatrixError
from tdlc_scale.lattice_qp import random_matrix
from tdlc_scale.matrices import (
    block_diag,
    block_upper,
    diag,
    identity,
    inverse,
    mat_pow,
    matmul,
)
from tdlc_scale.poly_newton import (
    MonicPolynomial,
    char_poly,
    matrix_scale_exponent,
    newton_polygon,
    scale_exponent,
)


def sympy_charpoly(m):
    """Independent oracle: sympy's characteristic polynomial, lowest degree first."""
    x = sympy.Symbol("x")
    coeffs = sympy.Matrix([[sympy.Rational(e.numerator, e.denominator) for e in row] for row in m]).charpoly(x).all_coeffs()
    return tuple(Fraction(int(c.p), int(c.q)) for c in reversed(coeffs))


@pytest.mark.parametrize("p", [2, 3, 5])
def test_char_poly_swap(p):
    assert char_poly(swap_matrix(p)).coefficients == (-1, 0, 1)


def test_char_poly_identity():
    # (x - 1)^3
    assert char_poly(identity(3)).coefficients == (-1, 3, -3, 1)


def test_char_poly_triangular():
    assert char_poly([[2, 1], [0, 3]]).coefficients == (6, -5, 1)


def test_char_poly_matches_sympy(rng):
    for _ in range(40):
        p = rng.choice([2, 3, 5])
        m = random_matrix(rng, p, rng.randint(1, 4))
        assert char_poly(m).coefficients == sympy_charpoly(m)


def test_newton_examples():
    np_ = newton_polygon(MonicPolynomial((F(-1), F(0), F(1))), 3)
    assert np_.segments == ((0, 2),)
    np_ = newton_polygon(MonicPolynomial((F(-1, 5), F(1))), 5)
    assert np_.segments == ((1, 1),)
    p = 2
    f = MonicPolynomial((F(1), -(F(p) + F(1, p)), F(1)))
    np_ = newton_polygon(f, p)
    assert np_.segments == ((-1, 1), (1, 1))
    assert np_.vertices == ((0, 0), (1, -1), (2, 0))
    assert np_.root_valuations() == [1, -1]


def test_newton_singular():
    with pytest.raises(SingularMatrixError):
        newton_polygon(MonicPolynomial((F(0), F(1))), 2)


def test_newton_collinear_points_merge():
    # x^2 - 2x + 4 over p=2: points (0,2), (1,1), (2,0) are collinear
    np_ = newton_polygon(MonicPolynomial((F(4), F(-2), F(1))), 2)
    assert np_.vertices == ((0, 2), (2, 0))
    assert np_.segments == ((-1, 2),)


def test_scale_exponent_examples():
    for p in (2, 3, 5):
        assert matrix_scale_exponent(swap_matrix(p), p) == 0
        assert matrix_scale_exponent(diag(F(1, p)), p) == 1
        assert matrix_scale_exponent(diag(F(1, p), F(1, p**2), F(p)), p) == 3


def test_hull_structure(rng):
    for _ in range(60):
        p = rng.choice([2, 3, 5])
        m = random_matrix(rng, p, rng.randint(1, 4))
        poly = newton_polygon(char_poly(m), p)
        n = len(m)
        assert poly.vertices[0][0] == 0 and poly.vertices[-1] == (n, 0)
        assert poly.degree == n
        slopes = [s for s, _ in poly.segments]
        assert slopes == sorted(set(slopes))
        for s, w in poly.segments:
            assert (s * w).denominator == 1


def test_triangular_rational_eigenvalues(rng):
    for _ in range(60):
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 4)
        ks = [rng.randint(-3, 3) for _ in range(n)]
        units = [rng.choice([1, -1]) * rng.choice([u for u in range(1, 10) if u % p]) for _ in range(n)]
        m = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            m[i][i] = Fraction(p) ** ks[i] * units[i]
            for j in range(i + 1, n):
                m[i][j] = Fraction(rng.randint(-20, 20), rng.choice([1, p, p * p]))
        assert matrix_scale_exponent(m, p) == sum(max(0, -k) for k in ks)


def test_power_law(rng):
    for _ in range(25):
        p = rng.choice([2, 3, 5])
        m = random_matrix(rng, p, rng.randint(1, 3))
        e = matrix_scale_exponent(m, p)
        for k in range(5):
            assert matrix_scale_exponent(mat_pow(m, k), p) == k * e


def test_conjugation_invariance(rng):
    for _ in range(25):
        p = rng.choice([2, 3, 5])
        n = rng.randint(1, 3)
        m, q = random_matrix(rng, p, n), random_matrix(rng, p, n)
        conj = matmul(matmul(q, m), inverse(q))
        assert matrix_scale_exponent(conj, p) == matrix_scale_exponent(m, p)


def test_block_additivity(rng):
    for _ in range(25):
        p = rng.choice([2, 3, 5])
        a = random_matrix(rng, p, rng.randint(1, 2))
        b = random_matrix(rng, p, rng.randint(1, 2))
        c = random_matrix(rng, p, max(len(a), len(b)))
        c = tuple(row[: len(b)] for row in c[: len(a)])
        total = matrix_scale_exponent(a, p) + matrix_scale_exponent(b, p)
        assert matrix_scale_exponent(block_diag(a, b), p) == total
        assert matrix_scale_exponent(block_upper(a, c, b), p) == total

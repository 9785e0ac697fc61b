import random
from fractions import Fraction

import pytest
import sympy as sp

from src.core.exactmath import (
    I,
    GaussRational,
    SymMatrix,
    determinant,
    gauss_root_of_unity,
    inertia,
    parse_rational,
    solve_symmetric,
    squarefree,
    uni_poly,
)
from src.utils.errors import SingularMatrix, ZeroPolynomial

x = sp.Symbol("x")


def test_gauss_arithmetic():
    assert I * I == -1
    assert (1 + I) * (1 - I) == 2
    assert GaussRational(1) / (1 - I) == GaussRational(Fraction(1, 2), Fraction(1, 2))
    assert (1 + I) ** -2 == GaussRational(0, Fraction(-1, 2))


def test_gauss_equality_with_rationals():
    assert GaussRational(3) == 3
    assert GaussRational(Fraction(1, 2)) == Fraction(1, 2)
    assert hash(GaussRational(Fraction(1, 2))) == hash(Fraction(1, 2))


@pytest.mark.parametrize(
    "text, value",
    [
        ("1/2+3/4*i", GaussRational(Fraction(1, 2), Fraction(3, 4))),
        ("4-4*i", GaussRational(4, -4)),
        ("0+0*i", GaussRational(0)),
    ],
)
def test_gauss_parse_and_print(text, value):
    assert GaussRational.parse(text) == value
    assert str(value) == text


def test_gauss_parse_rejects_garbage():
    with pytest.raises(ValueError):
        GaussRational.parse("1+i")


def test_parse_rational():
    assert parse_rational("-7/3") == Fraction(-7, 3)
    assert parse_rational("5") == 5


def test_roots_of_unity_cycle():
    assert [gauss_root_of_unity(k) for k in range(4)] == [1, I, -1, -I]
    assert gauss_root_of_unity(-1) == -I
    assert gauss_root_of_unity(9) == I


def test_from_sympy():
    assert GaussRational.from_sympy(sp.Rational(1, 3) - 2 * sp.I) == GaussRational(Fraction(1, 3), -2)
    assert GaussRational(Fraction(2, 5), 1).to_sympy() == sp.Rational(2, 5) + sp.I


def test_symmatrix_rejects_asymmetric():
    with pytest.raises(ValueError):
        SymMatrix([[1, 2], [3, 4]])


@pytest.mark.parametrize(
    "rows, expected",
    [
        ([[-2, 1], [1, -2]], (2, 0, 0)),
        ([[0, 1], [1, 0]], (1, 0, 1)),
        ([[1, 0], [0, 0]], (0, 1, 1)),
        ([[0, 0], [0, 0]], (0, 2, 0)),
        ([[-1]], (1, 0, 0)),
    ],
)
def test_inertia(rows, expected):
    assert inertia(SymMatrix(rows)) == expected


def test_inertia_invariant_under_congruence():
    rng = random.Random(7)
    for _ in range(20):
        n = rng.randint(1, 8)
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                rows[i][j] = rows[j][i] = rng.randint(-3, 3)
        m = SymMatrix(rows)
        p = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                p[i][j] = rng.randint(-2, 2)
        assert inertia(m.congruent(p)) == inertia(m)


def test_inertia_matches_sympy_eigenvalue_signs():
    m = SymMatrix([[-4, 1, 0], [1, -1, 1], [0, 1, -3]])
    eigen = sp.Matrix([[-4, 1, 0], [1, -1, 1], [0, 1, -3]]).eigenvals()
    negative = sum(k for v, k in eigen.items() if sp.re(sp.N(v)) < 0)
    assert inertia(m)[0] == negative


def test_determinant_against_sympy():
    rows = [[2, 1, 0], [1, 3, 1], [0, 1, 4]]
    assert determinant(SymMatrix(rows)) == int(sp.Matrix(rows).det())


def test_determinant_of_long_chains():
    for k in (1, 10, 40):
        rows = [[-2 if i == j else 1 if abs(i - j) == 1 else 0 for j in range(k)] for i in range(k)]
        assert abs(determinant(SymMatrix(rows))) == k + 1


def test_determinant_with_row_exchange_against_sympy():
    rng = random.Random(11)
    for _ in range(10):
        n = rng.randint(2, 6)
        rows = [[0] * n for _ in range(n)]
        for i in range(n):
            for j in range(i + 1, n):
                rows[i][j] = rows[j][i] = rng.randint(-2, 2)
        assert determinant(SymMatrix(rows)) == int(sp.Matrix(rows).det())


def test_solve_symmetric():
    m = SymMatrix([[-4, 1], [1, -2]])
    assert solve_symmetric(m, [2, 0]) == [Fraction(-4, 7), Fraction(-2, 7)]


def test_solve_singular():
    with pytest.raises(SingularMatrix):
        solve_symmetric(SymMatrix([[1, 1], [1, 1]]), [1, 0])


def test_uni_poly_domain():
    assert uni_poly([1, 0, 1], x).domain == sp.QQ
    assert uni_poly([I, 1], x).domain == sp.QQ_I


@pytest.mark.parametrize(
    "coefficients, expected",
    [
        ([1, 0, 1], True),
        ([0, 0, 1], False),
        ([0, 0, 1, 0, 1], False),
        ([1, 0, 0, 0, 1], True),
        ([5], True),
    ],
)
def test_squarefree(coefficients, expected):
    assert squarefree(uni_poly(coefficients, x)) is expected


def test_squarefree_zero():
    with pytest.raises(ZeroPolynomial):
        squarefree(uni_poly([0], x))

"""Exact scalars, univariate polynomials and symmetric bilinear forms.

Everything here works over ``fractions.Fraction`` or over the Gaussian
rationals Q(i); there is no floating point anywhere in the package.
"""
from __future__ import annotations

import logging
import re
from fractions import Fraction
from typing import Iterable, List, Sequence, Tuple, Union

import numpy as np
import sympy as sp

from ..utils.errors import SingularMatrix, ZeroPolynomial

logger = logging.getLogger(__name__)

Rational = Fraction
Scalar = Union[int, Fraction, "GaussRational"]

_GAUSS_RE = re.compile(r"^\s*([+-]?\d+(?:/\d+)?)\s*([+-])\s*(\d+(?:/\d+)?)\*i\s*$")


def parse_rational(text: str) -> Fraction:
    """Parses ``"a/b"`` or ``"a"``; the inverse of ``str(Fraction)``."""
    return Fraction(text.strip())


class GaussRational:
    """Element ``re + im*i`` of Q(i), the 4th cyclotomic field."""

    __slots__ = ("re", "im")

    def __init__(self, re: Union[int, Fraction] = 0, im: Union[int, Fraction] = 0):
        object.__setattr__(self, "re", Fraction(re))
        object.__setattr__(self, "im", Fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussRational is immutable")

    @classmethod
    def coerce(cls, value: Scalar) -> "GaussRational":
        if isinstance(value, GaussRational):
            return value
        return cls(value, 0)

    @classmethod
    def parse(cls, text: str) -> "GaussRational":
        match = _GAUSS_RE.match(text)
        if match is None:
            raise ValueError(f"Not a Gaussian rational: {text!r}")
        re_part, sign, im_part = match.groups()
        im = Fraction(im_part)
        return cls(Fraction(re_part), im if sign == "+" else -im)

    @classmethod
    def from_sympy(cls, value: sp.Expr) -> "GaussRational":
        re_part, im_part = sp.expand(value).as_real_imag()
        re_part, im_part = sp.Rational(re_part), sp.Rational(im_part)
        return cls(Fraction(int(re_part.p), int(re_part.q)), Fraction(int(im_part.p), int(im_part.q)))

    def to_sympy(self) -> sp.Expr:
        return sp.Rational(self.re.numerator, self.re.denominator) + sp.I * sp.Rational(
            self.im.numerator, self.im.denominator
        )

    def conjugate(self) -> "GaussRational":
        return GaussRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def is_real(self) -> bool:
        return self.im == 0

    def is_integer(self) -> bool:
        return self.im == 0 and self.re.denominator == 1

    def __add__(self, other: Scalar) -> "GaussRational":
        other = GaussRational.coerce(other)
        return GaussRational(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self) -> "GaussRational":
        return GaussRational(-self.re, -self.im)

    def __sub__(self, other: Scalar) -> "GaussRational":
        return self + (-GaussRational.coerce(other))

    def __rsub__(self, other: Scalar) -> "GaussRational":
        return GaussRational.coerce(other) - self

    def __mul__(self, other: Scalar) -> "GaussRational":
        other = GaussRational.coerce(other)
        return GaussRational(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> "GaussRational":
        other = GaussRational.coerce(other)
        n = other.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * GaussRational(other.re / n, -other.im / n)

    def __rtruediv__(self, other: Scalar) -> "GaussRational":
        return GaussRational.coerce(other) / self

    def __pow__(self, exponent: int) -> "GaussRational":
        if exponent < 0:
            return GaussRational(1) / (self ** (-exponent))
        result = GaussRational(1)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def __eq__(self, other: object) -> bool:
        if isinstance(other, (int, Fraction)):
            other = GaussRational(other)
        if not isinstance(other, GaussRational):
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self) -> int:
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __str__(self) -> str:
        sign = "-" if self.im < 0 else "+"
        return f"{self.re}{sign}{abs(self.im)}*i"

    def __repr__(self) -> str:
        return f"GaussRational({self})"


I = GaussRational(0, 1)


def gauss_root_of_unity(k: int) -> GaussRational:
    """Returns i**k; the powers cycle with period 4."""
    return (GaussRational(1), I, GaussRational(-1), -I)[k % 4]


class SymMatrix:
    """Immutable symmetric matrix with Fraction entries."""

    __slots__ = ("_rows", "_array")

    def __init__(self, rows: Iterable[Iterable[Union[int, Fraction]]]):
        entries = tuple(tuple(x if isinstance(x, Fraction) else Fraction(x) for x in row) for row in rows)
        n = len(entries)
        if n == 0:
            raise ValueError("SymMatrix needs a positive dimension")
        for i, row in enumerate(entries):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
        array = np.empty((n, n), dtype=object)
        for i, row in enumerate(entries):
            array[i, :] = row
        asymmetric = np.argwhere(np.triu(array != array.T))
        if asymmetric.size:
            i, j = asymmetric[0]
            raise ValueError(f"matrix is not symmetric at ({i}, {j})")
        object.__setattr__(self, "_rows", entries)
        object.__setattr__(self, "_array", array)

    def __setattr__(self, name, value):
        raise AttributeError("SymMatrix is immutable")

    @property
    def dimension(self) -> int:
        return len(self._rows)

    @property
    def entries(self) -> Tuple[Tuple[Fraction, ...], ...]:
        return self._rows

    def as_array(self) -> np.ndarray:
        """A fresh, mutable numpy object array of the entries."""
        return self._array.copy()

    def congruent(self, p: Sequence[Sequence[int]]) -> "SymMatrix":
        """Returns P^T M P."""
        pa = np.array([[Fraction(x) for x in row] for row in p], dtype=object)
        return SymMatrix((pa.T.dot(self.as_array()).dot(pa)).tolist())

    def __eq__(self, other: object) -> bool:
        return isinstance(other, SymMatrix) and self._rows == other._rows

    def __hash__(self) -> int:
        return hash(self._rows)

    def __repr__(self) -> str:
        return f"SymMatrix({[[str(x) for x in row] for row in self._rows]})"


def _swap(a: np.ndarray, i: int, j: int) -> None:
    if i != j:
        a[[i, j], :] = a[[j, i], :]
        a[:, [i, j]] = a[:, [j, i]]


def inertia(m: SymMatrix) -> Tuple[int, int, int]:
    """
    Sylvester inertia (n_minus, n_zero, n_plus) by symmetric elimination.

    A nonzero diagonal entry is used as a 1x1 pivot. When the whole active
    diagonal vanishes but some a[i, j] does not, the congruence
    row_i += row_j, col_i += col_j makes a[i, i] = 2 a[i, j] nonzero.
    """
    a = m.as_array()
    size = m.dimension
    n_minus = n_zero = n_plus = 0

    while size > 0:
        pivot = next((i for i in range(size) if a[i, i] != 0), None)
        if pivot is None:
            pair = next(
                ((i, j) for i in range(size) for j in range(i + 1, size) if a[i, j] != 0),
                None,
            )
            if pair is None:
                n_zero += size
                break
            i, j = pair
            a[i, :size] = a[i, :size] + a[j, :size]
            a[:size, i] = a[:size, i] + a[:size, j]
            pivot = i

        last = size - 1
        _swap(a, pivot, last)
        d = a[last, last]
        if d < 0:
            n_minus += 1
        else:
            n_plus += 1

        if last:
            # only rows meeting the pivot change; chains stay cheap
            support = np.flatnonzero(a[:last, last])
            if support.size:
                block = np.ix_(support, support)
                col = a[support, last] / d
                a[block] = a[block] - np.outer(col, a[last, support])
        size = last

    logger.debug(f"Inertia of {m.dimension}x{m.dimension} form: ({n_minus}, {n_zero}, {n_plus})")
    return n_minus, n_zero, n_plus


def determinant(m: SymMatrix) -> Fraction:
    """Exact determinant by Gaussian elimination with row exchanges."""
    a = m.as_array()
    n = m.dimension
    det = Fraction(1)
    for i in range(n):
        pivot = next((j for j in range(i, n) if a[j, i] != 0), None)
        if pivot is None:
            return Fraction(0)
        if pivot != i:
            a[[i, pivot], :] = a[[pivot, i], :]
            det = -det
        det *= a[i, i]
        rows = np.flatnonzero(a[i + 1 :, i]) + i + 1
        if rows.size:
            cols = np.flatnonzero(a[i, i:]) + i
            a[np.ix_(rows, cols)] = a[np.ix_(rows, cols)] - np.outer(a[rows, i] / a[i, i], a[i, cols])
    return det


def solve_symmetric(m: SymMatrix, v: Sequence[Union[int, Fraction]]) -> List[Fraction]:
    """
    Solves m x = v exactly.

    Raises:
        SingularMatrix: If det(m) = 0
    """
    n = m.dimension
    if len(v) != n:
        raise ValueError(f"right-hand side has length {len(v)}, expected {n}")

    augmented = np.empty((n, n + 1), dtype=object)
    augmented[:, :n] = m.as_array()
    for i, x in enumerate(v):
        augmented[i, n] = Fraction(x)

    # downward elimination
    for i in range(n):
        pivot = next((j for j in range(i, n) if augmented[j, i] != 0), None)
        if pivot is None:
            logger.error(f"No pivot in column {i}: matrix is singular")
            raise SingularMatrix(f"matrix {m!r} is singular")
        if pivot != i:
            augmented[[i, pivot], :] = augmented[[pivot, i], :]
        augmented[i, :] = augmented[i, :] / augmented[i, i]
        for j in range(i + 1, n):
            augmented[j, :] = augmented[j, :] - augmented[j, i] * augmented[i, :]

    # upward elimination
    for j in range(n - 2, -1, -1):
        for i in range(j + 1, n):
            augmented[j, :] = augmented[j, :] - augmented[j, i] * augmented[i, :]

    return [Fraction(x) for x in augmented[:, n]]


def uni_poly(coefficients: Sequence[Scalar], symbol: sp.Symbol) -> sp.Poly:
    """
    Builds a univariate polynomial from coefficients indexed by degree.

    The domain is QQ, or QQ<I> as soon as one coefficient has an
    imaginary part.
    """
    values = [GaussRational.coerce(c) for c in coefficients]
    domain = sp.QQ if all(c.is_real() for c in values) else sp.QQ_I
    return sp.Poly([c.to_sympy() for c in reversed(values)] or [0], symbol, domain=domain)


def squarefree(p: sp.Poly) -> bool:
    """
    Checks that p has no repeated root, i.e. gcd(p, p') is a nonzero constant.

    Raises:
        ZeroPolynomial: If p is the zero polynomial
    """
    if p.is_zero:
        logger.error("squarefree() called on the zero polynomial")
        raise ZeroPolynomial("the zero polynomial has no squarefree part")
    g = sp.gcd(p, p.diff())
    return g.degree() == 0

"""Exact integer and rational matrices.

Arithmetic is delegated to :class:`sympy.polys.matrices.DomainMatrix` over
``ZZ`` and ``QQ``, so entries are arbitrary precision throughout.
"""

import itertools
import logging
from fractions import Fraction

from cached_property import cached_property
from sympy import QQ, ZZ
from sympy.polys.matrices import DomainMatrix

from algentropy.utils import AlgEntropyError

logger = logging.getLogger(__name__)


class DimensionError(AlgEntropyError):
    """Matrix shapes are incompatible."""


class SingularMatrixError(AlgEntropyError):
    """A nonsingular matrix was required."""


def _to_int_rows(matrix):
    return [[int(entry) for entry in row] for row in matrix.to_Matrix().tolist()]


class IntMatrix(object):
    """Immutable square matrix of Python integers."""

    def __init__(self, rows):
        rows = tuple(tuple(int(entry) for entry in row) for row in rows)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise DimensionError("An IntMatrix must be square with dimension >= 1")
        self.rows = rows
        self.n = len(rows)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, *entries):
        n = len(entries)
        return cls([[entries[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_domain_matrix(cls, matrix):
        return cls(_to_int_rows(matrix))

    @cached_property
    def domain_matrix(self):
        return DomainMatrix(
            [[ZZ(entry) for entry in row] for row in self.rows], (self.n, self.n), ZZ
        )

    @property
    def columns(self):
        return tuple(zip(*self.rows))

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, IntMatrix) and self.rows == other.rows

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "IntMatrix({!r})".format([list(row) for row in self.rows])

    def __str__(self):
        return "\n".join(" ".join(str(entry) for entry in row) for row in self.rows)

    def __mul__(self, other):
        return mat_mul(self, other)

    def __add__(self, other):
        if other.n != self.n:
            raise DimensionError(
                "Cannot add {0}x{0} and {1}x{1} matrices".format(self.n, other.n)
            )
        return IntMatrix(
            [[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)]
        )

    def __pow__(self, N):
        return mat_pow(self, N)

    def trace(self):
        return sum(self.rows[i][i] for i in range(self.n))

    def row_sums(self):
        return tuple(sum(row) for row in self.rows)

    def norm1(self):
        """Induced 1-norm: the largest absolute column sum."""
        return max(sum(abs(entry) for entry in column) for column in self.columns)

    def submatrix(self, rows, cols):
        return IntMatrix([[self.rows[i][j] for j in cols] for i in rows])

    def is_zero(self):
        return all(entry == 0 for row in self.rows for entry in row)


class IntPolynomial(object):
    """Integer polynomial in ``t``, coefficients stored constant term first."""

    def __init__(self, coefficients):
        coefficients = [int(c) for c in coefficients]
        while coefficients and coefficients[-1] == 0:
            coefficients.pop()
        self.coefficients = tuple(coefficients)

    @classmethod
    def from_highest_first(cls, coefficients):
        return cls(reversed(list(coefficients)))

    @property
    def degree(self):
        """Degree, or -1 for the zero polynomial."""
        return len(self.coefficients) - 1

    @property
    def leading(self):
        return self.coefficients[-1] if self.coefficients else 0

    def highest_first(self):
        return list(reversed(self.coefficients))

    def __call__(self, x):
        value = 0
        for c in reversed(self.coefficients):
            value = value * x + c
        return value

    def __eq__(self, other):
        return (
            isinstance(other, IntPolynomial) and self.coefficients == other.coefficients
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.coefficients)

    def __repr__(self):
        return "IntPolynomial({!r})".format(list(self.coefficients))

    def __str__(self):
        if not self.coefficients:
            return "0"
        pieces = []
        for k in range(self.degree, -1, -1):
            c = self.coefficients[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            magnitude = abs(c)
            if k == 0:
                body = str(magnitude)
            else:
                power = "t" if k == 1 else "t^{}".format(k)
                body = power if magnitude == 1 else "{}*{}".format(magnitude, power)
            pieces.append((sign, body))
        first_sign, first_body = pieces[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in pieces[1:]:
            text += " {} {}".format(sign, body)
        return text


class RatMatrix(object):
    """Immutable square matrix of reduced fractions."""

    def __init__(self, rows):
        rows = tuple(tuple(Fraction(entry) for entry in row) for row in rows)
        if not rows or any(len(row) != len(rows) for row in rows):
            raise DimensionError("A RatMatrix must be square with dimension >= 1")
        self.rows = rows
        self.n = len(rows)

    @classmethod
    def from_domain_matrix(cls, matrix):
        return cls(
            [
                [Fraction(int(entry.p), int(entry.q)) for entry in row]
                for row in matrix.to_Matrix().tolist()
            ]
        )

    def __getitem__(self, index):
        i, j = index
        return self.rows[i][j]

    def __eq__(self, other):
        if isinstance(other, (RatMatrix, IntMatrix)):
            return self.rows == tuple(
                tuple(Fraction(entry) for entry in row) for row in other.rows
            )
        return NotImplemented

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "RatMatrix({!r})".format([[str(e) for e in row] for row in self.rows])

    def is_integral(self):
        return all(entry.denominator == 1 for row in self.rows for entry in row)

    def to_int_matrix(self):
        if not self.is_integral():
            raise ValueError("Matrix has non-integer entries")
        return IntMatrix([[entry.numerator for entry in row] for row in self.rows])


def _check_same_size(a, b):
    if a.n != b.n:
        raise DimensionError(
            "Cannot multiply {0}x{0} by {1}x{1} matrices".format(a.n, b.n)
        )


def mat_mul(a, b):
    _check_same_size(a, b)
    return IntMatrix.from_domain_matrix(a.domain_matrix * b.domain_matrix)


def rat_mul(a, b):
    """Exact product of two integer or rational matrices."""
    _check_same_size(a, b)
    columns = list(zip(*b.rows))
    return RatMatrix(
        [
            [sum(Fraction(x) * y for x, y in zip(row, column)) for column in columns]
            for row in a.rows
        ]
    )


def mat_pow(a, N):
    if N < 0:
        raise ValueError("Exponent must be nonnegative, got {}".format(N))
    if N == 0:
        return IntMatrix.identity(a.n)
    return IntMatrix.from_domain_matrix(a.domain_matrix ** N)


def powers(a):
    """Yield A, A^2, A^3, ... computed incrementally."""
    current = a.domain_matrix
    while True:
        yield IntMatrix.from_domain_matrix(current)
        current = current * a.domain_matrix


def determinant(a):
    """Exact determinant by fraction-free elimination."""
    return int(a.domain_matrix.det())


def char_poly(a):
    """det(tI - A) as an :class:`IntPolynomial`."""
    return IntPolynomial.from_highest_first(int(c) for c in a.domain_matrix.charpoly())


def evaluate_polynomial(p, a):
    """Substitute the matrix ``a`` into ``p`` by Horner's rule."""
    result = IntMatrix([[0] * a.n for _ in range(a.n)])
    for c in reversed(p.coefficients):
        result = mat_mul(result, a) + IntMatrix.diagonal(*([c] * a.n))
    return result


def compound_matrix(a, k):
    """The k-th compound: all k x k minors, subsets in lexicographic order."""
    if not 1 <= k <= a.n:
        raise ValueError("Compound order must lie in 1..{}, got {}".format(a.n, k))
    subsets = list(itertools.combinations(range(a.n), k))
    return IntMatrix(
        [[determinant(a.submatrix(rows, cols)) for cols in subsets] for rows in subsets]
    )


def adjugate(a):
    """Integer adjugate, so that A * adj(A) = det(A) * I."""
    if a.n == 1:
        return IntMatrix([[1]])
    indices = range(a.n)
    return IntMatrix(
        [
            [
                (-1) ** (i + j)
                * determinant(
                    a.submatrix(
                        [r for r in indices if r != j], [c for c in indices if c != i]
                    )
                )
                for j in indices
            ]
            for i in indices
        ]
    )


def inverse_rational(a):
    if determinant(a) == 0:
        raise SingularMatrixError("Matrix is singular:\n{}".format(a))
    inverse = a.domain_matrix.convert_to(QQ).inv()
    return RatMatrix.from_domain_matrix(inverse)

"""Monomial maps of projective space, encoded by integer matrices.

The row ``(a_i1, ..., a_in)`` of ``A`` gives the i-th component
``x_1^a_i1 * ... * x_n^a_in`` of the affine map.  The projective degree of
the map is the piecewise-linear function :func:`degree` of the entries.
"""

import itertools
import logging
from collections import namedtuple

from cached_property import cached_property

from algentropy.linalg import (
    IntMatrix,
    SingularMatrixError,
    determinant,
    inverse_rational,
    mat_mul,
    mat_pow,
    powers,
)
from algentropy.models import DegreeSequence
from algentropy.utils import AlgEntropyError, ConsistencyError

logger = logging.getLogger(__name__)


class NotUnimodularError(AlgEntropyError):
    """The inverse of the matrix has non-integer entries."""


def _max0(values):
    return max([0] + list(values))


def _column_shifts(A):
    return [_max0(-a for a in column) for column in A.columns]


def degree(A):
    """D(A): sum_j Max(-a_ij) + Max(sum_j a_ij), with Max(...) = max(0, ...)."""
    return sum(_column_shifts(A)) + _max0(A.row_sums())


class HomExpMatrix(object):
    """Nonnegative exponent matrix of the projectivized monomial map."""

    def __init__(self, rows, degree):
        rows = tuple(tuple(int(b) for b in row) for row in rows)
        size = len(rows)
        if not rows or any(len(row) != size for row in rows):
            raise ValueError("Exponent matrix must be square")
        if any(b < 0 for row in rows for b in row):
            raise ValueError("Exponent matrix entries must be nonnegative")
        if any(sum(row) != degree for row in rows):
            raise ValueError("Every row must sum to the degree {}".format(degree))
        if any(min(column) != 0 for column in zip(*rows)):
            raise ValueError("A column without zero is a joint common monomial factor")
        self.rows = rows
        self.degree = degree
        self.size = size

    @cached_property
    def supports(self):
        """For each row, the coordinates that appear with positive exponent."""
        return tuple(
            frozenset(j for j, b in enumerate(row) if b > 0) for row in self.rows
        )

    def __eq__(self, other):
        return isinstance(other, HomExpMatrix) and self.rows == other.rows

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.rows)

    def __repr__(self):
        return "HomExpMatrix({!r}, degree={})".format(
            [list(row) for row in self.rows], self.degree
        )


def homogenize(A):
    shifts = _column_shifts(A)
    d = degree(A)
    rows = []
    for row in A.rows:
        body = [a + m for a, m in zip(row, shifts)]
        rows.append(body + [d - sum(body)])
    rows.append(shifts + [_max0(A.row_sums())])
    return HomExpMatrix(rows, d)


def degree_sequence(A, Nmax):
    """[D(A), D(A^2), ..., D(A^Nmax)]."""
    if Nmax < 1:
        raise ValueError("Nmax must be at least 1")
    return [degree(M) for M in itertools.islice(powers(A), Nmax)]


def cN_sequence(A, Nmax, start=0):
    """c_N = (last row sum of A^N) - trace(A^N) for N = start..Nmax."""
    if Nmax < start:
        raise ValueError("Nmax must be at least {}".format(start))
    values = []
    if start == 0:
        values.append(1 - A.n)
        start = 1
    for M in itertools.islice(powers(A), start - 1, Nmax):
        values.append(sum(M.rows[-1]) - M.trace())
    return values


def agreement_indices(A, Nmax):
    """The N in 0..Nmax where c_N equals D(A^N)."""
    degrees = [1] + degree_sequence(A, Nmax)
    return [N for N, (c, d) in enumerate(zip(cN_sequence(A, Nmax), degrees)) if c == d]


class Attainment(namedtuple("Attainment", ["rows", "zero"])):
    """Which arguments attain one Max(0, ...) term of the degree formula."""

    __slots__ = ()

    def __str__(self):
        labels = [str(i + 1) for i in sorted(self.rows)]
        if self.zero:
            labels.append("0")
        return "{" + ",".join(labels) + "}"


def _attainment(values):
    values = list(values)
    best = _max0(values)
    return Attainment(frozenset(i for i, v in enumerate(values) if v == best), best == 0)


class ChamberKey(namedtuple("ChamberKey", ["columns", "rows"])):
    """The chamber of matrix space containing a matrix.

    ``columns[j]`` records the rows attaining Max_i(-a_ij) and ``rows`` the
    rows attaining Max_i(sum_j a_ij).  Row indices are zero based; the
    string form is one based.
    """

    __slots__ = ()

    def evaluate(self, M):
        """The linear functional that equals D on this chamber."""
        total = 0
        for j, attained in enumerate(self.columns):
            if attained.rows:
                total -= M.rows[min(attained.rows)][j]
        if self.rows.rows:
            total += sum(M.rows[min(self.rows.rows)])
        return total

    def diagonal_attains_columns(self):
        return all(j in attained.rows for j, attained in enumerate(self.columns))

    def __str__(self):
        return "cols={} rows={}".format(
            ";".join(str(attained) for attained in self.columns), self.rows
        )


def chamber_key(M):
    return ChamberKey(
        columns=tuple(_attainment(-a for a in column) for column in M.columns),
        rows=_attainment(M.row_sums()),
    )


class _Dead(object):
    def __repr__(self):
        return "DEAD"

    __str__ = __repr__


DEAD = _Dead()


def signature_step(B, s):
    """Zero pattern of the image of a point with zero pattern ``s``."""
    s = tuple(int(bit) for bit in s)
    if len(s) != B.size:
        raise ValueError("Signature length must be {}".format(B.size))
    if not any(s):
        raise ValueError("The all-zero signature is not a point")
    image = tuple(int(all(s[j] for j in support)) for support in B.supports)
    if not any(image):
        return DEAD
    return image


class SignatureFate(
    namedtuple("SignatureFate", ["signature", "dies_at", "transient", "period"])
):
    """Forward orbit of a signature: it dies, or enters a cycle."""

    __slots__ = ()

    @property
    def dies(self):
        return self.dies_at is not None

    @property
    def resolved_at(self):
        """Number of steps after which the orbit's fate is known."""
        if self.dies:
            return self.dies_at
        return self.transient + self.period

    def describe(self):
        if self.dies:
            return "dies at step {}".format(self.dies_at)
        return "periodic (transient {}, period {})".format(self.transient, self.period)


class SignatureReport(namedtuple("SignatureReport", ["size", "fates"])):

    __slots__ = ()

    @property
    def bound(self):
        return 2 ** self.size

    @property
    def surviving(self):
        return [fate.signature for fate in self.fates if not fate.dies]

    @property
    def dying(self):
        return [fate.signature for fate in self.fates if fate.dies]

    def fate(self, signature):
        signature = tuple(signature)
        for fate in self.fates:
            if fate.signature == signature:
                return fate
        raise KeyError(signature)

    def max_resolution(self):
        return max(fate.resolved_at for fate in self.fates)


def _orbit_fate(B, s):
    orbit = [s]
    seen = {s: 0}
    while True:
        image = signature_step(B, orbit[-1])
        if image is DEAD:
            return SignatureFate(s, len(orbit), None, None)
        if image in seen:
            return SignatureFate(s, None, seen[image], len(orbit) - seen[image])
        seen[image] = len(orbit)
        orbit.append(image)


def signature_analysis(B):
    fates = []
    for s in itertools.product((0, 1), repeat=B.size):
        if any(s):
            fates.append(_orbit_fate(B, s))
    report = SignatureReport(B.size, tuple(fates))
    if report.max_resolution() > report.bound:
        raise ConsistencyError("Signature orbit unresolved after {} steps".format(report.bound))
    logger.debug(
        "{} of {} signatures survive".format(len(report.surviving), len(fates))
    )
    return report


class MonomialMap(object):
    """The monomial map of a nonsingular integer matrix."""

    def __init__(self, matrix):
        if not isinstance(matrix, IntMatrix):
            matrix = IntMatrix(matrix)
        if determinant(matrix) == 0:
            raise SingularMatrixError(
                "A monomial map needs a nonsingular matrix:\n{}".format(matrix)
            )
        self.matrix = matrix
        self.n = matrix.n

    def __eq__(self, other):
        return isinstance(other, MonomialMap) and self.matrix == other.matrix

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return "MonomialMap({!r})".format([list(row) for row in self.matrix.rows])

    @cached_property
    def det(self):
        return determinant(self.matrix)

    def degree(self):
        return degree(self.matrix)

    def homogenize(self):
        return homogenize(self.matrix)

    def compose(self, other):
        """self o other; the exponent matrix of the composite is A * B."""
        return MonomialMap(mat_mul(self.matrix, other.matrix))

    def iterate(self, N):
        return MonomialMap(mat_pow(self.matrix, N))

    def inverse(self):
        return inverse_map(self)

    def degree_sequence(self, Nmax):
        return DegreeSequence(
            degree_sequence(self.matrix, Nmax), source="monomial.degree_formula"
        )

    def chamber_keys(self, Nmax):
        return [chamber_key(M) for M in itertools.islice(powers(self.matrix), Nmax)]

    def signature_analysis(self):
        return signature_analysis(self.homogenize())


def inverse_map(M):
    """The monomial map of A^-1; only unimodular matrices have one."""
    if abs(M.det) != 1:
        raise NotUnimodularError("det = {}, the inverse is not a monomial map".format(M.det))
    return MonomialMap(inverse_rational(M.matrix).to_int_matrix())

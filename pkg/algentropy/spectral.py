"""Spectral radii, entropies and dynamical degrees of integer matrices.

Eigenvalue moduli always come from the exact characteristic polynomial:
its square-free factors are solved by Aberth iteration in ``mpmath`` and
every root carries an inclusion radius, so each reported quantity has an
explicit error bound.
"""

import itertools
import logging
import math
from collections import namedtuple
from fractions import Fraction

import mpmath
from sympy import ZZ
from sympy.polys.orderings import lex
from sympy.polys.rings import PolyRing

from algentropy.linalg import (
    IntMatrix,
    RatMatrix,
    SingularMatrixError,
    adjugate,
    char_poly,
    compound_matrix,
    determinant,
    powers,
)
from algentropy.monomial import degree
from algentropy.utils import AlgEntropyError, ConsistencyError

logger = logging.getLogger(__name__)

DEFAULT_TOL = 1e-12
DEFAULT_MAX_STEPS = 500
DEFAULT_PRECISION = 50
DEFAULT_GELFAND_CAP = 60
COMPOUND_ROUTE_MAX_DIM = 8
ROUTE_AGREEMENT = 1e-8

_T_RING = PolyRing("t", ZZ, lex)


class RootFindingError(AlgEntropyError):
    """Simultaneous root iteration did not converge."""


class RootEstimate(
    namedtuple(
        "RootEstimate",
        ["value", "residual", "modulus_lo", "modulus_hi", "multiplicity"],
    )
):
    __slots__ = ()

    @property
    def modulus(self):
        return abs(self.value)

    def straddles_unit_circle(self):
        return self.modulus_lo <= 1 <= self.modulus_hi and self.modulus_lo < self.modulus_hi


class RootEstimates(namedtuple("RootEstimates", ["polynomial", "roots"])):
    """All roots of a polynomial, repeated according to multiplicity."""

    __slots__ = ()

    def __len__(self):
        return len(self.roots)

    def __iter__(self):
        return iter(self.roots)

    def max_modulus(self):
        return max(root.modulus for root in self.roots)


class Estimate(namedtuple("Estimate", ["value", "error"])):
    """A float together with an absolute error bound."""

    __slots__ = ()

    def log(self):
        if self.value <= 0:
            return Estimate(float("-inf"), 0.0)
        return Estimate(math.log(self.value), self.error / self.value)


def _squarefree_factors(p):
    element = _T_RING.from_dict(
        {(k,): ZZ(c) for k, c in enumerate(p.coefficients) if c}
    )
    _, factors = element.sqf_list()
    for factor, multiplicity in factors:
        top = factor.degree()
        yield [int(factor.get((k,), 0)) for k in range(top, -1, -1)], multiplicity


def _linear_root(coefficients):
    a1, a0 = coefficients
    root = Fraction(-a0, a1)
    value = complex(float(root), 0.0)
    return [RootEstimate(value, 0.0, abs(value), abs(value), 1)]


def _inclusion_radii(coefficients, z, values):
    n = len(z)
    lead = abs(coefficients[0])
    radii = []
    for k, zk in enumerate(z):
        separation = mpmath.mpf(1)
        for j, zj in enumerate(z):
            if j != k:
                separation *= abs(zk - zj)
        if separation == 0:
            radii.append(mpmath.inf)
        else:
            radii.append(n * abs(values[k]) / (lead * separation))
    return radii


def _disjoint(z, radii):
    for i, j in itertools.combinations(range(len(z)), 2):
        if abs(z[i] - z[j]) <= radii[i] + radii[j]:
            return False
    return True


def _working_precision(coefficients, precision):
    """Digits enough to resolve |p(z)| near roots bounded by the Cauchy radius."""
    n = len(coefficients) - 1
    lead = abs(coefficients[0])
    radius = 1 + max(abs(Fraction(c, lead)) for c in coefficients[1:])
    top = max(abs(c) for c in coefficients)
    extra = n * math.log10(float(radius)) + math.log10(top)
    return precision + int(math.ceil(extra))


def _aberth(coefficients, tol, max_steps, precision):
    n = len(coefficients) - 1
    digits = _working_precision(coefficients, precision)
    with mpmath.workdps(digits):
        a = [mpmath.mpf(c) for c in coefficients]
        da = [a[i] * (n - i) for i in range(n)]
        magnitudes = [abs(c) for c in a]
        radius = 1 + max(abs(c) for c in a[1:]) / abs(a[0])
        offset = mpmath.sqrt(2) - 1
        z = [
            radius * mpmath.expj(2 * mpmath.pi * k / n + offset) for k in range(n)
        ]
        for step in range(1, max_steps + 1):
            values = [mpmath.polyval(a, zk) for zk in z]
            radii = _inclusion_radii(a, z, values)
            # |p(z)| against the size of the terms it cancels
            scales = [mpmath.polyval(magnitudes, abs(zk)) for zk in z]
            if all(abs(v) <= tol * s for v, s in zip(values, scales)) and _disjoint(z, radii):
                logger.debug(
                    "Aberth converged in {} steps (degree {}, {} digits)".format(step, n, digits)
                )
                return [
                    _root_estimate(zk, value, r) for zk, value, r in zip(z, values, radii)
                ]
            updated = []
            for k, zk in enumerate(z):
                slope = mpmath.polyval(da, zk)
                if values[k] == 0 or slope == 0:
                    updated.append(zk)
                    continue
                ratio = values[k] / slope
                repulsion = mpmath.fsum(1 / (zk - zj) for j, zj in enumerate(z) if j != k)
                updated.append(zk - ratio / (1 - ratio * repulsion))
            z = updated
    raise RootFindingError(
        "Roots of a degree {} factor did not converge in {} steps".format(n, max_steps)
    )


def _root_estimate(z, residual, radius):
    center = abs(z)
    value = complex(z)
    modulus = abs(value)
    lo = min(float(max(center - radius, 0)), modulus)
    hi = max(float(center + radius), modulus)
    return RootEstimate(value, float(abs(residual)), lo, hi, 1)


def poly_roots(
    p, tol=DEFAULT_TOL, max_steps=DEFAULT_MAX_STEPS, precision=DEFAULT_PRECISION
):
    """All complex roots of the integer polynomial ``p``."""
    if p.degree < 1:
        raise ValueError("Cannot find roots of the constant polynomial {}".format(p))
    roots = []
    for coefficients, multiplicity in _squarefree_factors(p):
        if len(coefficients) == 2:
            estimates = _linear_root(coefficients)
        else:
            estimates = _aberth(coefficients, tol, max_steps, precision)
        for estimate in estimates:
            roots.extend([estimate._replace(multiplicity=multiplicity)] * multiplicity)
    roots.sort(key=lambda r: (r.modulus, r.value.real, r.value.imag))
    return RootEstimates(p, tuple(roots))


def _as_int_matrix(A):
    """Scale a rational matrix to an integer one; returns (matrix, scale)."""
    if isinstance(A, IntMatrix):
        return A, 1
    if isinstance(A, RatMatrix):
        scale = 1
        for row in A.rows:
            for entry in row:
                scale = scale * entry.denominator // math.gcd(scale, entry.denominator)
        return IntMatrix([[entry * scale for entry in row] for row in A.rows]), scale
    return IntMatrix(A), 1


def _gelfand_check(A, lower, cap):
    """Every ||A^N||_1^(1/N) bounds the spectral radius from above."""
    if lower <= 0:
        return
    floor = math.log(lower)
    for N, M in enumerate(itertools.islice(powers(A), cap), 1):
        norm = M.norm1()
        if norm == 0 or math.log(norm) / N < floor - 1e-12:
            logger.warning("Gelfand bound violated at N={}".format(N))
            raise ConsistencyError(
                "||A^{0}||_1^(1/{0}) is below the computed spectral radius".format(N)
            )


def spectral_radius(A, tol=DEFAULT_TOL, gelfand_cap=DEFAULT_GELFAND_CAP, **kwargs):
    """Largest root modulus of the characteristic polynomial, as an Estimate."""
    A, scale = _as_int_matrix(A)
    roots = poly_roots(char_poly(A), tol=tol, **kwargs)
    value = roots.max_modulus()
    lo = max(root.modulus_lo for root in roots)
    hi = max(root.modulus_hi for root in roots)
    _gelfand_check(A, lo, gelfand_cap)
    error = max(hi - value, value - lo)
    return Estimate(value / scale, error / scale)


def _require_nonsingular(A):
    if determinant(A) == 0:
        raise SingularMatrixError("Entropy needs a nonsingular matrix:\n{}".format(A))


def log_spectral_radius(A, **kwargs):
    return spectral_radius(A, **kwargs).log()


def algebraic_entropy(A, **kwargs):
    _require_nonsingular(A)
    return log_spectral_radius(A, **kwargs).value


def inverse_spectral_radius(A, **kwargs):
    """Spectral radius of A^-1, as rho(adj A) / |det A|."""
    det = determinant(A)
    if det == 0:
        raise SingularMatrixError("Matrix is singular:\n{}".format(A))
    radius = spectral_radius(adjugate(A), **kwargs)
    return Estimate(radius.value / abs(det), radius.error / abs(det))


class ToralEntropy(
    namedtuple(
        "ToralEntropy",
        ["value", "error", "ambiguous", "root_route", "compound_route", "method"],
    )
):
    """Sum of log|lambda| over eigenvalues outside the unit circle."""

    __slots__ = ()


def _root_route(A, tol, gelfand_cap=None, **kwargs):
    roots = poly_roots(char_poly(A), tol=tol, **kwargs)
    total = 0.0
    error = 0.0
    ambiguous = False
    for root in roots:
        if root.straddles_unit_circle():
            ambiguous = True
        if root.modulus > 1:
            total += math.log(root.modulus)
        if root.modulus_hi > 1:
            error += (root.modulus_hi - root.modulus_lo) / max(root.modulus_lo, 1)
    return Estimate(total, error), ambiguous


def _compound_route(A, tol, **kwargs):
    best = Estimate(0.0, 0.0)
    for k in range(1, A.n + 1):
        estimate = log_spectral_radius(compound_matrix(A, k), tol=tol, **kwargs)
        if estimate.value > best.value:
            best = estimate
    return best


def toral_entropy(A, tol=DEFAULT_TOL, **kwargs):
    _require_nonsingular(A)
    roots, ambiguous = _root_route(A, tol, **kwargs)
    if A.n > COMPOUND_ROUTE_MAX_DIM:
        return ToralEntropy(roots.value, roots.error, ambiguous, roots.value, None, "roots")
    compound = _compound_route(A, tol, **kwargs)
    if ambiguous:
        logger.warning("An eigenvalue modulus interval straddles the unit circle")
    elif abs(roots.value - compound.value) > roots.error + compound.error + ROUTE_AGREEMENT:
        raise ConsistencyError(
            "Toral entropy routes disagree: roots {} vs compound matrices {}".format(
                roots.value, compound.value
            )
        )
    return ToralEntropy(
        compound.value,
        compound.error,
        ambiguous,
        roots.value,
        compound.value,
        "compound-matrices",
    )


def _dynamical_degree_estimates(A, tol, **kwargs):
    return [
        log_spectral_radius(compound_matrix(A, k), tol=tol, **kwargs)
        for k in range(1, A.n + 1)
    ]


def dynamical_degrees(A, tol=DEFAULT_TOL, **kwargs):
    """log rho of the k-th compound for k = 1..n; conjectural for 1 < k < n."""
    _require_nonsingular(A)
    return [estimate.value for estimate in _dynamical_degree_estimates(A, tol, **kwargs)]


def conjectural_flags(n):
    return [1 < k < n for k in range(1, n + 1)]


class EntropyReport(
    namedtuple(
        "EntropyReport",
        [
            "algebraic_entropy",
            "toral_entropy",
            "dynamical_degrees",
            "conjectural",
            "error_bounds",
            "methods",
            "ambiguous",
        ],
    )
):
    __slots__ = ()

    def as_dict(self):
        return {
            "algebraic_entropy": self.algebraic_entropy,
            "toral_entropy": self.toral_entropy,
            "dynamical_degrees": list(self.dynamical_degrees),
            "conjectural": list(self.conjectural),
            "error_bounds": dict(self.error_bounds),
            "methods": dict(self.methods),
            "ambiguous": self.ambiguous,
        }


def entropy_report(A, tol=DEFAULT_TOL, **kwargs):
    _require_nonsingular(A)
    degrees = _dynamical_degree_estimates(A, tol, **kwargs)
    top = degrees[-1]
    log_det = math.log(abs(determinant(A)))
    if abs(top.value - log_det) > top.error + 1e-9:
        raise ConsistencyError(
            "Top dynamical degree {} differs from log|det| = {}".format(top.value, log_det)
        )
    toral = toral_entropy(A, tol=tol, **kwargs)
    if degrees[0].value > toral.value + toral.error + degrees[0].error + tol:
        raise ConsistencyError("Algebraic entropy exceeds toral entropy")
    return EntropyReport(
        algebraic_entropy=degrees[0].value,
        toral_entropy=toral.value,
        dynamical_degrees=tuple(d.value for d in degrees),
        conjectural=tuple(conjectural_flags(A.n)),
        error_bounds={
            "algebraic_entropy": degrees[0].error,
            "toral_entropy": toral.error,
            "dynamical_degrees": [d.error for d in degrees],
        },
        methods={
            "algebraic_entropy": "char-poly-roots",
            "toral_entropy": toral.method,
            "dynamical_degrees": "compound-matrices",
        },
        ambiguous=toral.ambiguous,
    )


class ConvergenceProfile(namedtuple("ConvergenceProfile", ["points", "limit", "deviation"])):
    __slots__ = ()


def convergence_profile(A, Nmax, **kwargs):
    """(N, log D(A^N) / N) for N = 1..Nmax and the gap to log rho(A) at Nmax."""
    if Nmax < 1:
        raise ValueError("Nmax must be at least 1")
    points = [
        (N, math.log(degree(M)) / N)
        for N, M in enumerate(itertools.islice(powers(A), Nmax), 1)
    ]
    limit = log_spectral_radius(A, **kwargs).value
    return ConvergenceProfile(points, limit, points[-1][1] - limit)


def gelfand_profile(A, Nmax):
    """(N, log ||A^N||_1 / N), an upper bound sequence for log rho(A)."""
    return [
        (N, math.log(M.norm1()) / N)
        for N, M in enumerate(itertools.islice(powers(A), Nmax), 1)
    ]

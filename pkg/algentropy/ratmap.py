"""Rational self-maps: composition with reduction, projective degree, Laurent checks."""

import logging

from algentropy import symbolic
from algentropy.models import DegreeSequence
from algentropy.symbolic import (
    RationalFn,
    ZeroDenominatorError,
    common_denominator,
    divide_monomial,
    exact_divide,
    gcd_probe,
    monomial_content,
    monomial_poly,
    poly_ring,
    poly_str,
    sorted_factors,
    total_degree,
)
from algentropy.utils import AlgEntropyError, check_budget

logger = logging.getLogger(__name__)

DEFAULT_TERM_BUDGET = 200000
HOMOGENIZING_NAMES = ("y", "z", "w", "t", "u", "v", "s", "h")


class CompositionError(AlgEntropyError):
    """A component of the inner map makes an outer denominator vanish."""


class ConjugationError(AlgEntropyError):
    """The supplied inverse does not invert the conjugating map."""


class ZeroMapError(AlgEntropyError):
    """Every component of the map is identically zero."""


class RationalMap(object):
    """An affine rational self-map given by one RationalFn per variable."""

    def __init__(self, variables, components):
        self.vars = tuple(variables)
        self.components = tuple(components)
        if len(self.components) != len(self.vars):
            raise ValueError(
                "A self-map of {} variables needs {} components, got {}".format(
                    len(self.vars), len(self.vars), len(self.components)
                )
            )
        ring = poly_ring(self.vars)
        if any(c.ring != ring for c in self.components):
            raise ValueError("All components must be over the variables {}".format(self.vars))
        self.ring = ring

    @classmethod
    def parse(cls, variables, sources):
        return cls(variables, [symbolic.parse(src, variables) for src in sources])

    @classmethod
    def identity(cls, variables):
        ring = poly_ring(tuple(variables))
        return cls(variables, [RationalFn(g) for g in ring.gens])

    @classmethod
    def from_matrix(cls, A, variables=None):
        """The affine monomial map x_i -> prod_j x_j^a_ij."""
        rows = A.rows if hasattr(A, "rows") else [tuple(row) for row in A]
        n = len(rows)
        if variables is None:
            variables = ("x", "y", "z")[:n] if n <= 3 else tuple(
                "x{}".format(i + 1) for i in range(n)
            )
        ring = poly_ring(tuple(variables))
        components = []
        for row in rows:
            num = monomial_poly(ring, [max(a, 0) for a in row])
            components.append(RationalFn(num, (), [max(-a, 0) for a in row]))
        return cls(variables, components)

    @property
    def n(self):
        return len(self.vars)

    def __eq__(self, other):
        return (
            isinstance(other, RationalMap)
            and self.vars == other.vars
            and self.components == other.components
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.vars, self.components))

    def __str__(self):
        return "({}) -> ({})".format(
            ", ".join(self.vars), ", ".join(str(c) for c in self.components)
        )

    def __repr__(self):
        return "RationalMap({!r}, {!r})".format(
            list(self.vars), [str(c) for c in self.components]
        )

    def is_identity(self):
        return self == RationalMap.identity(self.vars)

    def max_terms(self):
        return max(c.max_terms() for c in self.components)

    def evaluate(self, point):
        return tuple(c.evaluate(point) for c in self.components)

    def compose(self, other):
        return compose(self, other)

    def iterate(self, N, term_budget=DEFAULT_TERM_BUDGET):
        return iterate(self, N, term_budget)


def compose(f, g):
    """f o g, every component reduced."""
    if f.vars != g.vars:
        raise ValueError(
            "Cannot compose maps over {} and {}".format(f.vars, g.vars)
        )
    try:
        return RationalMap(f.vars, [c.substitute(g.components) for c in f.components])
    except ZeroDenominatorError as e:
        raise CompositionError("{} makes a denominator of {} vanish: {}".format(g, f, e))


def iterates(f, term_budget=DEFAULT_TERM_BUDGET):
    """Yield f, f^2, f^3, ... with the term budget checked at every step."""
    current = f
    N = 1
    while True:
        check_budget(current.max_terms(), term_budget, reached=N)
        yield current
        N += 1
        current = compose(current, f)
        logger.debug("f^{}: {} terms in the largest polynomial".format(N, current.max_terms()))


def iterate(f, N, term_budget=DEFAULT_TERM_BUDGET):
    if N < 1:
        raise ValueError("N must be at least 1")
    for k, g in enumerate(iterates(f, term_budget), 1):
        if k == N:
            return g


class ProjectiveForm(object):
    """Homogeneous polynomials of a common degree with no joint common factor.

    When ``exact`` is False the gcd probe found a common factor that trial
    division missed, so ``degree`` is an upper bound.
    """

    def __init__(self, polys, degree, exact=True):
        self.polys = tuple(polys)
        self.degree = degree
        self.exact = exact

    @property
    def names(self):
        return symbolic.ring_names(self.polys[0].ring)

    def as_dict(self):
        return {
            "degree": self.degree,
            "exact": self.exact,
            "polys": [poly_str(p) for p in self.polys],
        }

    def evaluate(self, point):
        return tuple(symbolic.evaluate_poly(p, point) for p in self.polys)

    def __str__(self):
        return "({})".format(" : ".join(poly_str(p) for p in self.polys))

    def __repr__(self):
        return "ProjectiveForm({}, degree={}, exact={})".format(self, self.degree, self.exact)


def homogenizing_name(variables):
    for name in HOMOGENIZING_NAMES:
        if name not in variables:
            return name
    return "x0"


def homogenize(p, degree, ring):
    """Lift ``p`` into ``ring`` (one extra last variable) with total degree ``degree``."""
    return ring.from_dict(
        {tuple(monom) + (degree - sum(monom),): c for monom, c in p.items()}
    )


def projectivize(f, trials=5, seed=0):
    """Homogeneous form of f via x_i -> x_i / x_(n+1), cleared and reduced."""
    if not any(f.components):
        raise ZeroMapError("Cannot projectivize the zero map {}".format(f))
    monomial, merged = common_denominator(f.components)
    basis = [factor for factor, _ in sorted_factors(merged)]
    polys = [c.num * c.cofactor(monomial, merged) for c in f.components]
    denominator = monomial_poly(f.ring, monomial)
    for factor in basis:
        denominator = denominator * factor ** merged[symbolic.factor_key(factor)][1]
    polys.append(denominator)

    degree = max(total_degree(p) for p in polys)
    ring = poly_ring(f.vars + (homogenizing_name(f.vars),))
    polys = [homogenize(p, degree, ring) for p in polys]

    nonzero = [p for p in polys if p]
    content = tuple(min(col) for col in zip(*(monomial_content(p) for p in nonzero)))
    if any(content):
        polys = [divide_monomial(p, content) if p else p for p in polys]
        degree -= sum(content)
    for factor in basis:
        lifted = homogenize(factor, total_degree(factor), ring)
        while True:
            quotients = [exact_divide(p, lifted) if p else p for p in polys]
            if any(q is symbolic.INDIVISIBLE for q in quotients):
                break
            polys = quotients
            degree -= total_degree(factor)

    exact = gcd_probe([p for p in polys if p], trials=trials, seed=seed) == 0
    if not exact:
        logger.warning(
            "gcd probe found a joint common factor of {}; degree {} is an upper bound".format(
                f, degree
            )
        )
    return ProjectiveForm(polys, degree, exact)


def degree_sequence_rational(f, Nmax, term_budget=DEFAULT_TERM_BUDGET, trials=5, seed=0):
    """[deg f, deg f^2, ..., deg f^Nmax] from explicit projectivization."""
    if Nmax < 1:
        raise ValueError("Nmax must be at least 1")
    values = []
    flags = []
    for N, g in enumerate(iterates(f, term_budget), 1):
        form = projectivize(g, trials=trials, seed=seed)
        logger.debug("deg f^{} = {}".format(N, form.degree))
        values.append(form.degree)
        flags.append(form.exact)
        if N == Nmax:
            break
    return DegreeSequence(values, flags, source="ratmap.projectivize")


def conjugate(f, phi, phi_inv):
    """phi_inv o f o phi."""
    if not compose(phi, phi_inv).is_identity():
        raise ConjugationError("{} is not inverse to {}".format(phi_inv, phi))
    return compose(phi_inv, compose(f, phi))


def check_laurent(f, Nmax, term_budget=DEFAULT_TERM_BUDGET):
    """For N = 1..Nmax, whether every component of f^N has a monomial denominator."""
    flags = []
    for N, g in enumerate(iterates(f, term_budget), 1):
        flags.append(all(c.is_laurent for c in g.components))
        if N == Nmax:
            break
    return flags


def denominator_monomials(f, Nmax, term_budget=DEFAULT_TERM_BUDGET):
    """Exponent vectors of the monomial denominators of f^N, N = 1..Nmax."""
    rows = []
    for N, g in enumerate(iterates(f, term_budget), 1):
        rows.append(tuple(c.monomial for c in g.components))
        if N == Nmax:
            break
    return rows

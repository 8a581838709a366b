"""Exact rational functions with factored denominators.

A :class:`RationalFn` is ``num / (x^monomial * prod(factor^power))`` where
``num`` and the factors are elements of a sparse ``sympy`` polynomial ring
over ``QQ`` with graded lexicographic order.  Reduction is trial division
of the numerator by the known denominator factors; :func:`gcd_probe` is an
independent randomized check that no common factor was missed.
"""

import functools
import logging
import math
import random
import re
from fractions import Fraction

from sympy import QQ
from sympy.polys.orderings import grlex
from sympy.polys.polyerrors import ExactQuotientFailed
from sympy.polys.rings import PolyRing

from algentropy import expressions
from algentropy.expressions import ExpressionError
from algentropy.utils import AlgEntropyError

logger = logging.getLogger(__name__)

PROBE_RANGE = 99
PROBE_RESAMPLES = 20


class ZeroDenominatorError(AlgEntropyError, ZeroDivisionError):
    """Division by the zero rational function."""


class ProbeError(AlgEntropyError):
    """Random line restrictions kept vanishing identically."""


class TropicalizationError(AlgEntropyError):
    """The rational function is not subtraction-free."""


class _Indivisible(object):
    def __repr__(self):
        return "INDIVISIBLE"

    def __bool__(self):
        return False


INDIVISIBLE = _Indivisible()


@functools.lru_cache(maxsize=None)
def poly_ring(names):
    """The graded-lex polynomial ring over QQ on the variable ``names``."""
    return PolyRing(tuple(names), QQ, grlex)


def ring_names(ring):
    return tuple(str(s) for s in ring.symbols)


def to_fraction(c):
    return Fraction(int(c.numerator), int(c.denominator))


def exact_divide(p, q):
    """p / q if q divides p exactly, else INDIVISIBLE."""
    if not q:
        raise ZeroDenominatorError("Division by the zero polynomial")
    try:
        return p.exquo(q)
    except ExactQuotientFailed:
        return INDIVISIBLE


def total_degree(p):
    if not p:
        return -1
    return max(sum(monom) for monom in p.keys())


def is_homogeneous(p):
    return len({sum(monom) for monom in p.keys()}) <= 1


def monomial_content(p):
    """Largest monomial dividing ``p``, as an exponent vector."""
    monoms = list(p.keys())
    return tuple(min(m[i] for m in monoms) for i in range(p.ring.ngens))


def monomial_poly(ring, exponents):
    return ring.from_dict({tuple(exponents): QQ.one})


def divide_monomial(p, exponents):
    return p.ring.from_dict(
        {tuple(a - e for a, e in zip(monom, exponents)): c for monom, c in p.items()}
    )


def normalize_factor(p):
    """Split ``p`` as ``unit * q``, q primitive with its lex-greatest term positive."""
    numerators = 0
    denominators = 1
    for c in p.values():
        numerators = math.gcd(numerators, int(c.numerator))
        d = int(c.denominator)
        denominators = denominators * d // math.gcd(denominators, d)
    unit = QQ(numerators, denominators)
    if p[max(p.keys())] < 0:
        unit = -unit
    return unit, p.quo_ground(unit)


def factor_key(p):
    return tuple(sorted(p.items()))


_LEADING_NEGATED_POWER = re.compile(r"^-([A-Za-z_]\w*\^\d+)")


def poly_str(p):
    """Text in the parser's grammar; a leading -x^k is written -(x^k)."""
    return _LEADING_NEGATED_POWER.sub(r"-(\1)", str(p).replace("**", "^"))


def evaluate_poly(p, point):
    total = 0
    for monom, c in p.items():
        term = to_fraction(c)
        for x, e in zip(point, monom):
            if e:
                term = term * x ** e
        total = total + term
    return total


def _merge(factor_lists, combine):
    merged = {}
    for factors in factor_lists:
        for factor, power in factors:
            key = factor_key(factor)
            if key in merged:
                merged[key] = (factor, combine(merged[key][1], power))
            else:
                merged[key] = (factor, power)
    return merged


def sorted_factors(merged):
    return tuple(merged[key] for key in sorted(merged))


def common_denominator(fns):
    """Least common multiple of the factored denominators of ``fns``.

    Returns the monomial exponents and a dict of factor key to (factor, power).
    """
    monomial = tuple(max(col) for col in zip(*(f.monomial for f in fns)))
    return monomial, _merge([f.factors for f in fns], max)


def _decompose(poly, basis):
    """poly = unit * x^mono * prod(pieces) * rest, dividing out known factors."""
    mono = monomial_content(poly)
    if any(mono):
        poly = divide_monomial(poly, mono)
    pieces = []
    for factor in basis:
        if total_degree(factor) > total_degree(poly):
            continue
        k = 0
        while True:
            quotient = exact_divide(poly, factor)
            if quotient is INDIVISIBLE:
                break
            poly = quotient
            k += 1
        if k:
            pieces.append((factor, k))
    unit, rest = normalize_factor(poly)
    return unit, mono, pieces, rest


def _reduce(num, factors, monomial):
    """Cancel monomial content and trial-divide ``num`` by every factor."""
    ring = num.ring
    if not num:
        return RationalFn(ring.zero)
    content = monomial_content(num)
    common = tuple(min(c, m) for c, m in zip(content, monomial))
    if any(common):
        num = divide_monomial(num, common)
        monomial = tuple(m - c for m, c in zip(monomial, common))
    kept = {}
    for factor, power in factors:
        while power:
            quotient = exact_divide(num, factor)
            if quotient is INDIVISIBLE:
                break
            num = quotient
            power -= 1
        if power:
            kept[factor_key(factor)] = (factor, power)
    return RationalFn(num, sorted_factors(kept), monomial)


class RationalFn(object):
    """num / (x^monomial * prod(factor^power)) in a fixed polynomial ring.

    The constructor trusts its input; arithmetic always goes through the
    reduction step, so results are canonical.
    """

    def __init__(self, num, factors=(), monomial=None):
        self.ring = num.ring
        self.num = num
        self.factors = tuple(factors)
        if monomial is None:
            monomial = (0,) * self.ring.ngens
        self.monomial = tuple(monomial)

    @classmethod
    def from_poly(cls, p):
        return cls(p)

    @classmethod
    def constant(cls, ring, value):
        return cls(ring.ground_new(QQ(value.numerator, value.denominator)
                                   if isinstance(value, Fraction) else QQ(value)))

    @classmethod
    def variable(cls, ring, name):
        return cls(ring.gens[ring_names(ring).index(name)])

    @property
    def names(self):
        return ring_names(self.ring)

    def _coerce(self, other):
        if isinstance(other, RationalFn):
            if other.ring != self.ring:
                raise ValueError("Rational functions live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return RationalFn.constant(self.ring, other)
        return NotImplemented

    def canonical(self):
        return (
            factor_key(self.num),
            tuple((factor_key(f), e) for f, e in self.factors),
            self.monomial,
        )

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = RationalFn.constant(self.ring, other)
        if not isinstance(other, RationalFn):
            return NotImplemented
        return self.ring == other.ring and self.canonical() == other.canonical()

    def __ne__(self, other):
        result = self.__eq__(other)
        return result if result is NotImplemented else not result

    def __hash__(self):
        return hash(self.canonical())

    def __bool__(self):
        return bool(self.num)

    @property
    def is_laurent(self):
        """True when the denominator is a monomial."""
        return not self.factors

    @property
    def is_polynomial(self):
        return not self.factors and not any(self.monomial)

    def denominator_poly(self):
        den = monomial_poly(self.ring, self.monomial)
        for factor, power in self.factors:
            den = den * factor ** power
        return den

    def max_terms(self):
        return max([len(self.num)] + [len(f) for f, _ in self.factors])

    def cofactor(self, monomial, merged):
        """Denominator ``x^monomial * merged`` divided by this denominator."""
        cofactor = monomial_poly(
            self.ring, [m - own for m, own in zip(monomial, self.monomial)]
        )
        own = {factor_key(f): e for f, e in self.factors}
        for key, (factor, power) in merged.items():
            extra = power - own.get(key, 0)
            if extra:
                cofactor = cofactor * factor ** extra
        return cofactor

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num:
            return other
        if not other.num:
            return self
        monomial, merged = common_denominator([self, other])
        num = self.num * self.cofactor(monomial, merged) + other.num * other.cofactor(
            monomial, merged
        )
        return _reduce(num, sorted_factors(merged), monomial)

    __radd__ = __add__

    def __neg__(self):
        return RationalFn(-self.num, self.factors, self.monomial)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return RationalFn(self.ring.zero)
        monomial = tuple(a + b for a, b in zip(self.monomial, other.monomial))
        merged = _merge([self.factors, other.factors], lambda a, b: a + b)
        return _reduce(self.num * other.num, sorted_factors(merged), monomial)

    __rmul__ = __mul__

    def inverse(self, basis=()):
        """1 / self; the numerator is split against known factors first."""
        if not self.num:
            raise ZeroDenominatorError("Division by the zero rational function")
        known = _merge([self.factors, [(f, 1) for f in basis]], max)
        unit, mono, pieces, rest = _decompose(
            self.num, [factor for factor, _ in sorted_factors(known)]
        )
        num = self.denominator_poly().quo_ground(unit)
        if total_degree(rest) > 0:
            pieces.append((rest, 1))
        merged = _merge([pieces], lambda a, b: a + b)
        return _reduce(num, sorted_factors(merged), mono)

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        basis = [f for f, _ in self.factors]
        return self * other.inverse(basis)

    def __rtruediv__(self, other):
        return self._coerce(other) / self

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return RationalFn(self.ring.one)
        if k == 1:
            return self
        return _reduce(
            self.num ** k,
            tuple((f, e * k) for f, e in self.factors),
            tuple(m * k for m in self.monomial),
        )

    def evaluate(self, point):
        """Value at a point of exact rationals or complex numbers."""
        point = list(point)
        den = evaluate_poly(self.denominator_poly(), point)
        if den == 0:
            raise ZeroDenominatorError("Denominator vanishes at {}".format(point))
        return evaluate_poly(self.num, point) / den

    def substitute(self, args):
        """self(args) for a tuple of rational functions in a common ring."""
        if len(args) != self.ring.ngens:
            raise ValueError(
                "Need {} arguments, got {}".format(self.ring.ngens, len(args))
            )
        result = substitute_poly(self.num, args)
        basis = [f for arg in args for f, _ in arg.factors]
        for arg, m in zip(args, self.monomial):
            if m:
                result = result * arg.inverse(basis) ** m
        for factor, power in self.factors:
            result = result * substitute_poly(factor, args).inverse(basis) ** power
        return result

    def __str__(self):
        num = poly_str(self.num)
        pieces = []
        monomial = monomial_poly(self.ring, self.monomial)
        if any(self.monomial):
            pieces.append(poly_str(monomial))
        for factor, power in self.factors:
            text = "({})".format(poly_str(factor))
            pieces.append(text if power == 1 else "{}^{}".format(text, power))
        if not pieces:
            return num
        if len(self.num) > 1:
            num = "({})".format(num)
        den = "*".join(pieces)
        if len(pieces) > 1 or sum(1 for e in self.monomial if e) > 1:
            den = "({})".format(den)
        return "{}/{}".format(num, den)

    def __repr__(self):
        return "RationalFn({!r})".format(str(self))


def substitute_poly(p, args):
    """p(args) for a polynomial ``p`` and rational-function arguments."""
    target = args[0].ring
    if not p:
        return RationalFn(target.zero)
    delta = [max(monom[i] for monom in p.keys()) for i in range(p.ring.ngens)]
    num_powers = [[target.one] for _ in args]
    den_polys = [arg.denominator_poly() for arg in args]
    den_powers = [[target.one] for _ in args]

    def power(cache, base, k):
        while len(cache) <= k:
            cache.append(cache[-1] * base)
        return cache[k]

    total = target.zero
    for monom, c in p.items():
        term = target.ground_new(c)
        for i, e in enumerate(monom):
            if e:
                term = term * power(num_powers[i], args[i].num, e)
            if delta[i] - e:
                term = term * power(den_powers[i], den_polys[i], delta[i] - e)
        total += term
    factors = _merge(
        [[(f, e * d) for f, e in arg.factors] for arg, d in zip(args, delta) if d],
        lambda a, b: a + b,
    )
    monomial = [0] * target.ngens
    for arg, d in zip(args, delta):
        for j, m in enumerate(arg.monomial):
            monomial[j] += m * d
    return _reduce(total, sorted_factors(factors), monomial)


class _RationalAlgebra(expressions.Algebra):

    name = "rational expression"

    def __init__(self, ring):
        self.ring = ring
        self.names = ring_names(ring)

    def number(self, value):
        return RationalFn.constant(self.ring, value)

    def variable(self, name):
        if name not in self.names:
            raise ExpressionError("Unknown variable {!r}".format(name))
        return RationalFn.variable(self.ring, name)

    def negate(self, value):
        return -value

    def add(self, lhs, rhs):
        return lhs + rhs

    def subtract(self, lhs, rhs):
        return lhs - rhs

    def multiply(self, lhs, rhs):
        return lhs * rhs

    def divide(self, lhs, rhs):
        if not rhs:
            raise ExpressionError("Division by the zero polynomial")
        return lhs / rhs

    def power(self, base, exponent):
        if exponent < 0 and not base:
            raise ExpressionError("Division by the zero polynomial")
        return base ** exponent


def parse(src, variables):
    """Parse ``src`` into a reduced RationalFn over ``variables``."""
    ring = poly_ring(tuple(variables))
    tree = expressions.parse_tree(src)
    return expressions.evaluate(tree, _RationalAlgebra(ring))


def _restrict(p, line, t_ring):
    t = t_ring.gens[0]
    linear = [t_ring.ground_new(QQ(a)) * t + QQ(b) for a, b in line]
    cache = [[t_ring.one] for _ in line]
    total = t_ring.zero
    for monom, c in p.items():
        term = t_ring.ground_new(c)
        for i, e in enumerate(monom):
            if e:
                powers = cache[i]
                while len(powers) <= e:
                    powers.append(powers[-1] * linear[i])
                term = term * powers[e]
        total += term
    return total


def gcd_probe(polys, trials=5, seed=0):
    """Min degree of gcd of restrictions of ``polys`` to random lines."""
    nonzero = [p for p in polys if p]
    if len(nonzero) < 2:
        raise ValueError("gcd_probe needs at least two nonzero polynomials")
    rng = random.Random(seed)
    t_ring = poly_ring(("t",))
    ngens = nonzero[0].ring.ngens
    best = None
    for _ in range(trials):
        for _ in range(PROBE_RESAMPLES):
            line = [
                (
                    rng.choice((-1, 1)) * rng.randint(1, PROBE_RANGE),
                    rng.randint(-PROBE_RANGE, PROBE_RANGE),
                )
                for _ in range(ngens)
            ]
            restricted = [_restrict(p, line, t_ring) for p in nonzero]
            if all(restricted):
                break
        else:
            raise ProbeError(
                "Restrictions vanished identically on {} lines".format(PROBE_RESAMPLES)
            )
        common = restricted[0]
        for r in restricted[1:]:
            common = common.gcd(r)
        degree = max(common.degree(), 0)
        logger.debug("gcd probe line {}: degree {}".format(line, degree))
        best = degree if best is None else min(best, degree)
        if best == 0:
            break
    return best


def tropicalize(f):
    """Replace (*, /, +) by (+, -, max) in a subtraction-free rational function."""
    from algentropy.tropical import AffineForm, TropComponent, TropExpr

    if any(c <= 0 for c in f.num.values()):
        raise TropicalizationError("Numerator {} is not subtraction-free".format(
            poly_str(f.num)))
    for factor, _ in f.factors:
        if any(c <= 0 for c in factor.values()):
            raise TropicalizationError(
                "Denominator factor {} is not subtraction-free".format(poly_str(factor))
            )
    num = TropExpr([AffineForm(monom, 0) for monom in f.num.keys()])
    den = TropExpr([AffineForm(f.monomial, 0)])
    for factor, power in f.factors:
        den = den.product(TropExpr([AffineForm(m, 0) for m in factor.keys()]).scale(power))
    return TropComponent(num, den).canonical()

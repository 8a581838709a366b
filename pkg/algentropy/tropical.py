"""Max-plus piecewise-linear maps.

A component is a quotient ``num - den`` of two upper envelopes of affine
forms.  Redundant forms are removed exactly: sampling certifies the forms
that attain a strict maximum somewhere, and an exact rational linear
program decides every remaining form.
"""

import logging
import random
import string
from collections import OrderedDict, namedtuple
from fractions import Fraction

from cached_property import cached_property
from sympy import Matrix, Rational
from sympy.solvers.simplex import InfeasibleLPError, linprog

from algentropy import expressions
from algentropy.expressions import ExpressionError
from algentropy.utils import BudgetExceeded, ConsistencyError, exact, format_rational

logger = logging.getLogger(__name__)

DEFAULT_FORM_BUDGET = 10000
SAMPLE_POINTS = 32
SAMPLE_RANGE = 20


class FormBudgetExceeded(BudgetExceeded):
    """A max-expression grew past the form budget."""


def _check_forms(count, budget):
    if budget is not None and count > budget:
        raise FormBudgetExceeded(
            "{} affine forms exceed the budget of {}".format(count, budget),
            size=count,
            budget=budget,
        )


class AffineForm(namedtuple("AffineForm", ["coeffs", "const"])):
    """coeffs . p + const, with exact coefficients."""

    __slots__ = ()

    def __new__(cls, coeffs, const=0):
        return super(AffineForm, cls).__new__(
            cls,
            tuple(exact(Fraction(c)) for c in coeffs),
            exact(Fraction(const)),
        )

    @classmethod
    def zero(cls, dim):
        return cls((0,) * dim, 0)

    @property
    def dim(self):
        return len(self.coeffs)

    def __add__(self, other):
        return AffineForm(
            [a + b for a, b in zip(self.coeffs, other.coeffs)], self.const + other.const
        )

    def __neg__(self):
        return AffineForm([-a for a in self.coeffs], -self.const)

    def __sub__(self, other):
        return self + (-other)

    def scale(self, k):
        return AffineForm([k * a for a in self.coeffs], k * self.const)

    def evaluate(self, p):
        return sum(a * x for a, x in zip(self.coeffs, p)) + self.const

    def l1(self):
        return sum(abs(a) for a in self.coeffs)

    def coefficient_sum(self):
        return sum(self.coeffs)

    def is_constant(self):
        return not any(self.coeffs)

    def format(self, names):
        text = ""
        for a, name in zip(self.coeffs, names):
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            magnitude = abs(a)
            body = name if magnitude == 1 else "{}{}".format(format_rational(magnitude), name)
            text += sign + body
        if self.const or not text:
            sign = "-" if self.const < 0 else "+"
            text += sign + format_rational(abs(self.const))
        return text[1:] if text.startswith("+") else text


def _rational(value):
    value = Fraction(value)
    return Rational(value.numerator, value.denominator)


def _dominated(form, others):
    """Whether ``form`` <= max(others) everywhere.

    True iff a convex combination of the other forms has the same
    coefficients and at least the same constant.
    """
    if form in others:
        return True
    m = len(others)
    dim = form.dim
    A_eq = Matrix(
        [[_rational(o.coeffs[j]) for o in others] for j in range(dim)] + [[1] * m]
    )
    b_eq = Matrix([_rational(c) for c in form.coeffs] + [1])
    c = Matrix([[-_rational(o.const) for o in others]])
    try:
        optimum, _ = linprog(c, Matrix([[1] * m]), Matrix([1]), A_eq, b_eq)
    except InfeasibleLPError:
        return False
    return -optimum >= _rational(form.const)


def _dedupe(forms):
    best = {}
    for form in forms:
        if form.coeffs not in best or form.const > best[form.coeffs].const:
            best[form.coeffs] = form
    return sorted(best.values())


def _sample_points(dim):
    rng = random.Random(dim)
    return [
        [rng.randint(-SAMPLE_RANGE, SAMPLE_RANGE) for _ in range(dim)]
        for _ in range(SAMPLE_POINTS)
    ]


def _essential(forms):
    forms = _dedupe(forms)
    if len(forms) <= 1:
        return forms
    certified = set()
    for p in _sample_points(forms[0].dim):
        values = [f.evaluate(p) for f in forms]
        top = max(values)
        winners = [i for i, v in enumerate(values) if v == top]
        if len(winners) == 1:
            certified.add(winners[0])
    kept = []
    lp_calls = 0
    for i, form in enumerate(forms):
        if i in certified:
            kept.append(form)
            continue
        lp_calls += 1
        if not _dominated(form, forms[:i] + forms[i + 1:]):
            kept.append(form)
    if lp_calls:
        logger.debug(
            "{} of {} forms decided by LP, {} essential".format(lp_calls, len(forms), len(kept))
        )
    return kept


class TropExpr(object):
    """Pointwise maximum of a nonempty set of affine forms."""

    def __init__(self, forms):
        forms = _dedupe(forms)
        if not forms:
            raise ValueError("A max-expression needs at least one form")
        if len({f.dim for f in forms}) != 1:
            raise ValueError("All forms must have the same dimension")
        self.forms = tuple(forms)

    @classmethod
    def zero(cls, dim):
        return cls([AffineForm.zero(dim)])

    @classmethod
    def constant(cls, dim, value):
        return cls([AffineForm((0,) * dim, value)])

    @classmethod
    def variable(cls, dim, j):
        return cls([AffineForm([int(i == j) for i in range(dim)], 0)])

    @property
    def dim(self):
        return self.forms[0].dim

    def __len__(self):
        return len(self.forms)

    def __iter__(self):
        return iter(self.forms)

    def __eq__(self, other):
        return isinstance(other, TropExpr) and self.forms == other.forms

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash(self.forms)

    def __repr__(self):
        return "TropExpr({!r})".format(list(self.forms))

    @property
    def single(self):
        return len(self.forms) == 1

    def is_zero(self):
        return self.single and self.forms[0] == AffineForm.zero(self.dim)

    @cached_property
    def essential(self):
        """The same function with every redundant form removed."""
        return TropExpr(_essential(self.forms))

    def union(self, other, budget=None):
        _check_forms(len(self) + len(other), budget)
        return TropExpr(self.forms + other.forms)

    def product(self, other, budget=None):
        """Max-plus product: the max over all pairwise sums."""
        _check_forms(len(self) * len(other), budget)
        return TropExpr([f + g for f in self.forms for g in other.forms])

    def scale(self, k):
        """k * max(...) for k >= 0."""
        if k < 0:
            raise ValueError("Only nonnegative multiples of a max are max-expressions")
        return TropExpr([f.scale(k) for f in self.forms])

    def shift(self, form):
        return TropExpr([f + form for f in self.forms])

    def evaluate(self, p):
        return max(f.evaluate(p) for f in self.forms)

    def format(self, names):
        parts = [f.format(names) for f in self.forms]
        if len(parts) == 1:
            return parts[0]
        return "max({})".format(", ".join(parts))


def essential_forms(e):
    return e.essential


def equivalent(e1, e2):
    """Whether two max-expressions define the same function."""
    if e1.dim != e2.dim:
        raise ValueError("Expressions have different dimensions")
    return set(e1.essential.forms) == set(e2.essential.forms)


def _max_of_quotients(quotients, budget=None):
    """max_i (P_i - Q_i) over a common max-plus denominator."""
    groups = OrderedDict()
    for P, Q in quotients:
        if Q.forms in groups:
            groups[Q.forms] = (groups[Q.forms][0].union(P, budget), Q)
        else:
            groups[Q.forms] = (P, Q)
    groups = list(groups.values())
    if len(groups) == 1:
        return groups[0]
    num = None
    den = None
    for i, (P, Q) in enumerate(groups):
        term = P
        for j, (_, other) in enumerate(groups):
            if j != i:
                term = term.product(other, budget)
        num = term if num is None else num.union(term, budget)
        den = Q if den is None else den.product(Q, budget)
    return num, den


def _quotient(num, den, budget=None):
    """Exact max-plus quotient Q with max(Q + den) == num, or None."""
    allowed = set(num.forms)
    points = _sample_points(num.dim)
    tops = [num.evaluate(p) for p in points]
    candidates = []
    for n in num.forms:
        for d in den.forms:
            q = n - d
            if q in candidates:
                continue
            shifted = [q + e for e in den.forms]
            if any(s.evaluate(p) > top for s in shifted for p, top in zip(points, tops)):
                continue
            if all(s in allowed or _dominated(s, list(num.forms)) for s in shifted):
                candidates.append(q)
    if not candidates:
        return None
    quotient = TropExpr(candidates).essential
    if set(quotient.product(den, budget).essential.forms) != allowed:
        return None
    return quotient


class TropComponent(object):
    """The max-plus quotient num - den."""

    def __init__(self, num, den):
        if num.dim != den.dim:
            raise ValueError("Numerator and denominator have different dimensions")
        self.num = num
        self.den = den

    @classmethod
    def of(cls, expr):
        return cls(expr, TropExpr.zero(expr.dim))

    @property
    def dim(self):
        return self.num.dim

    def canonical(self, budget=None):
        """Essential forms only; the denominator divided out when it can be."""
        num = self.num.essential
        den = self.den.essential
        if den.single:
            if not den.is_zero():
                num = num.shift(-den.forms[0])
                den = TropExpr.zero(num.dim)
        else:
            quotient = _quotient(num, den, budget)
            if quotient is not None:
                num, den = quotient, TropExpr.zero(num.dim)
        return TropComponent(num, den)

    def __eq__(self, other):
        return (
            isinstance(other, TropComponent) and self.num == other.num and self.den == other.den
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        return "TropComponent({!r}, {!r})".format(self.num, self.den)

    def equivalent(self, other):
        """num1 - den1 == num2 - den2 as functions."""
        return equivalent(self.num.product(other.den), other.num.product(self.den))

    def evaluate(self, p):
        return self.num.evaluate(p) - self.den.evaluate(p)

    def negate(self):
        return TropComponent(self.den, self.num)

    def add(self, other, budget=None):
        return TropComponent(
            self.num.product(other.num, budget), self.den.product(other.den, budget)
        )

    def subtract(self, other, budget=None):
        return self.add(other.negate(), budget)

    def scale(self, k):
        if k < 0:
            return TropComponent(self.den.scale(-k), self.num.scale(-k))
        return TropComponent(self.num.scale(k), self.den.scale(k))

    def as_constant(self):
        """The integer value of a constant component, else None."""
        if (
            self.num.single
            and self.den.single
            and self.num.forms[0].is_constant()
            and self.den.forms[0].is_constant()
        ):
            return self.num.forms[0].const - self.den.forms[0].const
        return None

    def lipschitz_bound(self):
        return max(f.l1() for f in self.num.essential) + max(
            f.l1() for f in self.den.essential
        )

    def format(self, names):
        text = self.num.format(names)
        if self.den.is_zero():
            return text
        den = self.den.format(names)
        if not (self.den.single and den in names):
            den = "({})".format(den)
        return "{} - {}".format(text, den)


def maximum(components, budget=None):
    """max of several quotients as one quotient."""
    return TropComponent(
        *_max_of_quotients([(c.num, c.den) for c in components], budget)
    )


def substitute_form(form, args, budget=None):
    """form(args) for a single affine form and quotient arguments."""
    num = TropExpr.constant(form.dim if not args else args[0].dim, form.const)
    den = TropExpr.zero(num.dim)
    for a, arg in zip(form.coeffs, args):
        if a > 0:
            num = num.product(arg.num.scale(a), budget)
            den = den.product(arg.den.scale(a), budget)
        elif a < 0:
            num = num.product(arg.den.scale(-a), budget)
            den = den.product(arg.num.scale(-a), budget)
    if den.single:
        num = num.shift(-den.forms[0])
        den = TropExpr.zero(num.dim)
    return num, den


def substitute_expr(expr, args, budget=None):
    return _max_of_quotients([substitute_form(f, args, budget) for f in expr.forms], budget)


class TropMap(object):
    """A self-map of Q^n whose components are max-plus quotients."""

    def __init__(self, variables, components):
        self.vars = tuple(variables)
        self.components = tuple(components)
        if len(self.components) != len(self.vars):
            raise ValueError(
                "A self-map of {} variables needs {} components".format(
                    len(self.vars), len(self.vars)
                )
            )
        if any(c.dim != len(self.vars) for c in self.components):
            raise ValueError("Component dimension does not match {}".format(self.vars))

    @classmethod
    def identity(cls, variables):
        n = len(variables)
        return cls(variables, [TropComponent.of(TropExpr.variable(n, j)) for j in range(n)])

    @classmethod
    def parse(cls, variables, sources, budget=DEFAULT_FORM_BUDGET):
        return cls(variables, [parse(src, variables, budget) for src in sources])

    @property
    def dim(self):
        return len(self.vars)

    def __eq__(self, other):
        return (
            isinstance(other, TropMap)
            and self.vars == other.vars
            and self.components == other.components
        )

    def __ne__(self, other):
        return not self == other

    def __hash__(self):
        return hash((self.vars, self.components))

    def __str__(self):
        return "({}) -> ({})".format(
            ", ".join(self.vars), ", ".join(c.format(self.vars) for c in self.components)
        )

    def __repr__(self):
        return "TropMap({!r}, {!r})".format(
            list(self.vars), [c.format(self.vars) for c in self.components]
        )

    def form_count(self):
        return max(len(c.num) + len(c.den) for c in self.components)

    def evaluate(self, p):
        p = [Fraction(x) for x in p]
        if len(p) != self.dim:
            raise ValueError("Point has {} coordinates, need {}".format(len(p), self.dim))
        return tuple(exact(c.evaluate(p)) for c in self.components)

    def canonical(self, budget=None):
        return TropMap(self.vars, [c.canonical(budget) for c in self.components])

    def compose(self, other, budget=DEFAULT_FORM_BUDGET):
        return compose(self, other, budget)

    def iterate(self, N, budget=DEFAULT_FORM_BUDGET):
        return iterate(self, N, budget)

    def orbit(self, p, N):
        """[p, f(p), ..., f^N(p)]."""
        points = [tuple(exact(Fraction(x)) for x in p)]
        for _ in range(N):
            points.append(self.evaluate(points[-1]))
        return points

    def equivalent(self, other):
        return self.vars == other.vars and all(
            a.equivalent(b) for a, b in zip(self.components, other.components)
        )

    def is_identity(self):
        return self.equivalent(TropMap.identity(self.vars))

    def lipschitz_bound(self):
        return lipschitz_bound(self)

    def homogeneity(self):
        return homogeneity(self)


def compose(f, g, budget=DEFAULT_FORM_BUDGET):
    """f o g, canonicalized."""
    if f.dim != g.dim:
        raise ValueError("Cannot compose maps of dimensions {} and {}".format(f.dim, g.dim))
    components = []
    for c in f.components:
        num, num_den = substitute_expr(c.num, g.components, budget)
        den, den_den = substitute_expr(c.den, g.components, budget)
        component = TropComponent(
            num.product(den_den, budget), num_den.product(den, budget)
        )
        components.append(component.canonical(budget))
    return TropMap(f.vars, components)


def iterates(f, budget=DEFAULT_FORM_BUDGET):
    """Yield f, f^2, ... as canonical maps."""
    current = f.canonical(budget)
    N = 1
    while True:
        yield current
        N += 1
        try:
            current = compose(current, f, budget)
        except FormBudgetExceeded as e:
            e.reached = N
            logger.warning("Form budget exceeded at N={}".format(N))
            raise
        logger.debug("trop f^{}: {} forms".format(N, current.form_count()))


def iterate(f, N, budget=DEFAULT_FORM_BUDGET):
    if N < 1:
        raise ValueError("N must be at least 1")
    for k, g in enumerate(iterates(f, budget), 1):
        if k == N:
            return g


def lipschitz_bound(m):
    """Upper bound on the sup-norm Lipschitz constant."""
    return max(c.lipschitz_bound() for c in m.components)


def lipschitz_growth(m, Nmax, budget=DEFAULT_FORM_BUDGET):
    """[(N, L_N, L_N / L_(N-1))] for the iterates of ``m``."""
    rows = []
    previous = None
    for N, g in enumerate(iterates(m, budget), 1):
        bound = lipschitz_bound(g)
        ratio = None if previous is None else Fraction(bound) / previous
        rows.append((N, bound, ratio))
        previous = bound
        if N == Nmax:
            break
    return rows


def homogeneity(m):
    """The common degree of homogeneity of every component, or None."""
    degrees = set()
    for c in m.components:
        num = {f.coefficient_sum() for f in c.num.essential}
        den = {f.coefficient_sum() for f in c.den.essential}
        if len(num) != 1 or len(den) != 1:
            return None
        degrees.add(num.pop() - den.pop())
    if len(degrees) != 1:
        return None
    return degrees.pop()


def quotient_evaluate(m, p):
    """f(p) modulo the diagonal, normalized to first coordinate 0."""
    degree = homogeneity(m)
    if degree is None:
        raise ValueError("{} is not homogeneous".format(m))
    p = [Fraction(x) for x in p]
    image = m.evaluate(p)
    shifted = m.evaluate([x + 1 for x in p])
    if any(b - a != degree for a, b in zip(image, shifted)):
        raise ConsistencyError("f(p + 1) != f(p) + {} at {}".format(degree, p))
    return tuple(exact(Fraction(x) - image[0]) for x in image)


def default_names(n):
    return tuple(string.ascii_lowercase[:n]) if n <= 26 else tuple(
        "a{}".format(i + 1) for i in range(n)
    )


def tropicalize_map(f, variables=None):
    """Componentwise tropicalization of a subtraction-free rational map."""
    from algentropy.symbolic import tropicalize

    names = tuple(variables) if variables else default_names(f.n)
    return TropMap(names, [tropicalize(c) for c in f.components])


class _TropAlgebra(expressions.Algebra):

    name = "max-plus expression"

    def __init__(self, variables, budget):
        self.variables = tuple(variables)
        self.budget = budget

    @property
    def dim(self):
        return len(self.variables)

    def number(self, value):
        return TropComponent.of(TropExpr.constant(self.dim, value))

    def variable(self, name):
        if name not in self.variables:
            raise ExpressionError("Unknown variable {!r}".format(name))
        return TropComponent.of(TropExpr.variable(self.dim, self.variables.index(name)))

    def negate(self, value):
        return value.negate()

    def add(self, lhs, rhs):
        return lhs.add(rhs, self.budget)

    def subtract(self, lhs, rhs):
        return lhs.subtract(rhs, self.budget)

    def multiply(self, lhs, rhs):
        k, other = lhs.as_constant(), rhs
        if k is None:
            k, other = rhs.as_constant(), lhs
        if k is None:
            raise ExpressionError("Products must have an integer factor")
        return other.scale(k)

    def call(self, name, args):
        if name == "min":
            return maximum([a.negate() for a in args], self.budget).negate()
        return maximum(args, self.budget)


def parse(src, variables, budget=DEFAULT_FORM_BUDGET):
    """Parse text such as ``max(2b,2c)-a`` into a canonical component."""
    tree = expressions.parse_tree(src, functions=True, juxtaposition=True)
    component = expressions.evaluate(tree, _TropAlgebra(variables, budget))
    return component.canonical(budget)

"""Linear recurrence detection over the rationals and PL recurrences."""

import logging
import re
from collections import namedtuple
from fractions import Fraction

from algentropy import expressions
from algentropy.expressions import ExpressionError
from algentropy.utils import AlgEntropyError

logger = logging.getLogger(__name__)


class RecurrenceError(AlgEntropyError):
    """A recurrence cannot be applied to the given sequence."""


class Recurrence(namedtuple("Recurrence", ["order", "coefficients"])):
    """s_N = c_1 s_(N-1) + ... + c_L s_(N-L)."""

    __slots__ = ()

    def __new__(cls, order, coefficients):
        coefficients = tuple(Fraction(c) for c in coefficients)
        if len(coefficients) != order:
            raise ValueError("A recurrence of order {} needs {} coefficients".format(order, order))
        return super(Recurrence, cls).__new__(cls, order, coefficients)

    def characteristic_polynomial(self):
        """Coefficients of t^L - c_1 t^(L-1) - ... - c_L, highest degree first."""
        return [Fraction(1)] + [-c for c in self.coefficients]

    def next_term(self, seq):
        return sum(c * seq[-i] for i, c in enumerate(self.coefficients, 1))

    def extend(self, seq, count):
        """Continue ``seq`` by ``count`` further terms."""
        if len(seq) < self.order:
            raise RecurrenceError("Need at least {} initial terms".format(self.order))
        out = [Fraction(s) for s in seq]
        for _ in range(count):
            out.append(self.next_term(out) if self.order else Fraction(0))
        return out


def _massey(seq):
    """Run Berlekamp-Massey, yielding (prefix length, L, connection poly)."""
    s = [Fraction(x) for x in seq]
    current = [Fraction(1)]
    previous = [Fraction(1)]
    L = 0
    shift = 1
    last_discrepancy = Fraction(1)
    for n in range(len(s)):
        discrepancy = s[n] + sum(
            current[i] * s[n - i] for i in range(1, min(L, len(current) - 1) + 1)
        )
        if discrepancy == 0:
            shift += 1
        else:
            scale = discrepancy / last_discrepancy
            saved = list(current)
            needed = len(previous) + shift
            if len(current) < needed:
                current.extend([Fraction(0)] * (needed - len(current)))
            for i, b in enumerate(previous):
                current[i + shift] -= scale * b
            if 2 * L <= n:
                L = n + 1 - L
                previous = saved
                last_discrepancy = discrepancy
                shift = 1
            else:
                shift += 1
        yield n + 1, L, current


def _to_recurrence(L, connection):
    connection = list(connection) + [Fraction(0)] * (L + 1 - len(connection))
    return Recurrence(L, [-c for c in connection[1 : L + 1]])


def minimal_recurrence(seq):
    if not seq:
        raise ValueError("Need at least one term")
    *_, (_, L, connection) = _massey(seq)
    return _to_recurrence(L, connection)


def verify_recurrence(seq, rec):
    if len(seq) <= rec.order:
        raise RecurrenceError(
            "Need more than {} terms to verify an order {} recurrence".format(
                rec.order, rec.order
            )
        )
    s = [Fraction(x) for x in seq]
    return all(
        s[n] == rec.next_term(s[:n]) for n in range(rec.order, len(s))
    )


def recurrence_order_profile(seq):
    """[(prefix length, minimal order)] for prefix lengths 2..len(seq)."""
    return [(length, L) for length, L, _ in _massey(seq) if length >= 2]


def longest_plateau(profile, start=2):
    """Longest run of equal orders among prefixes of length >= ``start``."""
    best = run = 0
    last = None
    for length, order in profile:
        if length < start:
            continue
        run = run + 1 if order == last else 1
        last = order
        best = max(best, run)
    return best


_LAG = re.compile(r"^a([1-9][0-9]*)$")


class _LagAlgebra(expressions.Algebra):

    name = "piecewise-linear recurrence"

    def __init__(self, previous):
        self.previous = previous

    def number(self, value):
        return value

    def variable(self, name):
        return self.previous[-int(_LAG.match(name).group(1))]

    def negate(self, value):
        return -value

    def add(self, lhs, rhs):
        return lhs + rhs

    def subtract(self, lhs, rhs):
        return lhs - rhs

    def multiply(self, lhs, rhs):
        return lhs * rhs

    def call(self, name, args):
        return max(args) if name == "max" else min(args)


def _check_pl_tree(node):
    if isinstance(node, expressions.Power):
        raise ExpressionError("Exponents are not allowed in a PL recurrence", node.loc)
    if isinstance(node, expressions.Operator):
        if node.op == "/":
            raise ExpressionError("Division is not allowed in a PL recurrence", node.loc)
        if node.op == "*" and not (
            isinstance(node.lhs, expressions.Number) or isinstance(node.rhs, expressions.Number)
        ):
            raise ExpressionError(
                "Products must have an integer literal factor", node.loc
            )
        _check_pl_tree(node.lhs)
        _check_pl_tree(node.rhs)
    elif isinstance(node, expressions.Negate):
        _check_pl_tree(node.operand)
    elif isinstance(node, expressions.Call):
        for arg in node.args:
            _check_pl_tree(arg)


class PLRecurrence(object):
    """a_n = F(a_(n-1), ..., a_(n-k)), where lag variable ``aK`` is a_(n-K)."""

    def __init__(self, expression, arity=None):
        self.expression = expression
        self.tree = expressions.parse_tree(expression, functions=True, juxtaposition=True)
        _check_pl_tree(self.tree)
        lags = set()
        for name in expressions.variables(self.tree):
            match = _LAG.match(name)
            if match is None:
                raise ExpressionError(
                    "Unknown variable {!r}; use lag variables a1, a2, ...".format(name)
                )
            lags.add(int(match.group(1)))
        if arity is None:
            arity = max(lags) if lags else 1
        if lags and max(lags) > arity:
            raise ExpressionError(
                "Lag a{} exceeds the arity {}".format(max(lags), arity)
            )
        self.arity = arity

    def __call__(self, previous):
        return expressions.evaluate(self.tree, _LagAlgebra(previous))

    def __repr__(self):
        return "PLRecurrence({!r}, arity={})".format(self.expression, self.arity)


def pl_iterate(rec, init, N):
    """The first N terms, starting with ``init``."""
    if len(init) != rec.arity:
        raise RecurrenceError(
            "Need exactly {} initial terms, got {}".format(rec.arity, len(init))
        )
    terms = [int(a) for a in init]
    while len(terms) < N:
        terms.append(rec(terms))
    return terms[:N]


class PLOrbit(namedtuple("PLOrbit", ["recurrence", "init"])):
    """A PL recurrence together with its initial terms."""

    __slots__ = ()

    def terms(self, N):
        return pl_iterate(self.recurrence, self.init, N)

"""Expression grammar shared by rational maps, max-plus maps and PL recurrences.

    expr   := term (('+'|'-') term)*
    term   := factor (('*'|'/') factor)*
    factor := base ('^' signed-int)?
    base   := '-' base | call | var | int | '(' expr ')'
    call   := ('max'|'min') '(' expr (',' expr)* ')'

Calls are only recognised by the max-plus dialect, which also accepts a
juxtaposed integer coefficient such as ``2b``.  Implicit multiplication is
otherwise rejected.  Unary minus binds tighter than ``^``, so ``-x^2`` is ``(-x)^2``.
"""

import functools
import logging

import pyparsing as pp

from algentropy.utils import AlgEntropyError

logger = logging.getLogger(__name__)


class ExpressionError(AlgEntropyError):
    """Malformed or unsupported expression."""

    def __init__(self, message, position=None):
        self.message = message
        self.position = position
        if position is not None:
            message = "{} (at char {})".format(message, position)
        super(ExpressionError, self).__init__(message)


class Number(object):
    def __init__(self, s, loc, toks):
        self.value = int(toks[0])
        self.loc = loc

    def __repr__(self):
        return "Number({})".format(self.value)


class Variable(object):
    def __init__(self, s, loc, toks):
        self.name = toks[0]
        self.loc = loc

    def __repr__(self):
        return "Variable({})".format(self.name)


class Call(object):
    def __init__(self, s, loc, toks):
        self.name = toks[0]
        self.args = list(toks[1:])
        self.loc = loc

    def __repr__(self):
        return "Call({}, {})".format(self.name, ", ".join(repr(a) for a in self.args))


class Negate(object):
    def __init__(self, s, loc, toks):
        self.operand = toks[0]
        self.loc = loc

    def __repr__(self):
        return "Negate({!r})".format(self.operand)


class Power(object):
    def __init__(self, base, exponent, loc):
        self.base = base
        self.exponent = exponent
        self.loc = loc

    def __repr__(self):
        return "Power({!r}, {})".format(self.base, self.exponent)


class Operator(object):
    def __init__(self, op, lhs, rhs, loc):
        self.op = op
        self.lhs = lhs
        self.rhs = rhs
        self.loc = loc

    def __repr__(self):
        return "Operator({}, {!r}, {!r})".format(self.op, self.lhs, self.rhs)


def _fold(s, loc, toks):
    node = toks[0]
    for i in range(1, len(toks), 2):
        node = Operator(toks[i], node, toks[i + 1], loc)
    return node


def _power(s, loc, toks):
    if len(toks) == 1:
        return toks[0]
    return Power(toks[0], int(toks[1]), loc)


def _scaled(s, loc, toks):
    digits = len(toks[0]) - len(toks[0].lstrip("0123456789"))
    coefficient = Number(s, loc, [toks[0][:digits]])
    variable = Variable(s, loc + digits, [toks[0][digits:]])
    return Operator("*", coefficient, variable, loc)


@functools.lru_cache(maxsize=None)
def make_grammar(functions=False, juxtaposition=False):
    lparen = pp.Suppress("(")
    rparen = pp.Suppress(")")

    expr = pp.Forward()

    number = pp.Regex(r"\d+").setParseAction(Number)
    variable = pp.Regex(r"[A-Za-z_][A-Za-z_0-9]*").setParseAction(Variable)
    alternatives = []
    if functions:
        call = pp.oneOf("max min") + lparen + expr + pp.ZeroOrMore(pp.Suppress(",") + expr)
        alternatives.append((call + rparen).setParseAction(Call))
    if juxtaposition:
        alternatives.append(pp.Regex(r"\d+[A-Za-z_][A-Za-z_0-9]*").setParseAction(_scaled))
    alternatives.extend([number, variable, lparen + expr + rparen])
    base = pp.Forward()
    base <<= (pp.Suppress("-") + base).setParseAction(Negate) | pp.MatchFirst(alternatives)

    factor = (base + pp.Optional(pp.Suppress("^") + pp.Regex(r"[+-]?\d+"))).setParseAction(
        _power
    )
    term = (factor + pp.ZeroOrMore(pp.oneOf("* /") + factor)).setParseAction(_fold)
    expr <<= (term + pp.ZeroOrMore(pp.oneOf("+ -") + term)).setParseAction(_fold)
    return expr


def parse_tree(src, functions=False, juxtaposition=False):
    grammar = make_grammar(functions, juxtaposition)
    try:
        return grammar.parseString(src, parseAll=True)[0]
    except pp.ParseBaseException as e:
        raise ExpressionError("Cannot parse {!r}: {}".format(src, e.msg), e.loc)


class Algebra(object):
    """Interpretation of parse trees; unsupported operations raise."""

    name = "expression"

    def unsupported(self, what):
        raise ExpressionError("{} is not allowed in a {}".format(what, self.name))

    def number(self, value):
        self.unsupported("An integer literal")

    def variable(self, name):
        self.unsupported("A variable")

    def negate(self, value):
        self.unsupported("Negation")

    def add(self, lhs, rhs):
        self.unsupported("Addition")

    def subtract(self, lhs, rhs):
        self.unsupported("Subtraction")

    def multiply(self, lhs, rhs):
        self.unsupported("Multiplication")

    def divide(self, lhs, rhs):
        self.unsupported("Division")

    def power(self, base, exponent):
        self.unsupported("Exponentiation")

    def call(self, name, args):
        self.unsupported("{}()".format(name))


_OPERATORS = {
    "+": "add",
    "-": "subtract",
    "*": "multiply",
    "/": "divide",
}


def evaluate(node, algebra):
    try:
        if isinstance(node, Number):
            return algebra.number(node.value)
        if isinstance(node, Variable):
            return algebra.variable(node.name)
        if isinstance(node, Negate):
            return algebra.negate(evaluate(node.operand, algebra))
        if isinstance(node, Power):
            return algebra.power(evaluate(node.base, algebra), node.exponent)
        if isinstance(node, Operator):
            method = getattr(algebra, _OPERATORS[node.op])
            return method(evaluate(node.lhs, algebra), evaluate(node.rhs, algebra))
        if isinstance(node, Call):
            return algebra.call(node.name, [evaluate(arg, algebra) for arg in node.args])
    except ExpressionError as e:
        if e.position is None:
            raise ExpressionError(e.message, node.loc)
        raise
    raise TypeError("Unknown parse tree node {!r}".format(node))


def variables(node):
    """Names of all variables in a parse tree."""
    if isinstance(node, Variable):
        return {node.name}
    if isinstance(node, Negate):
        return variables(node.operand)
    if isinstance(node, Power):
        return variables(node.base)
    if isinstance(node, Operator):
        return variables(node.lhs) | variables(node.rhs)
    if isinstance(node, Call):
        return set().union(*(variables(arg) for arg in node.args))
    return set()

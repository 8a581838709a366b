import pytest

from algentropy import expressions
from algentropy.expressions import (
    Algebra,
    Call,
    ExpressionError,
    Negate,
    Number,
    Operator,
    Power,
    Variable,
    evaluate,
    parse_tree,
    variables,
)


class IntegerAlgebra(Algebra):
    """Evaluates trees over the integers with fixed variable values."""

    name = "integer expression"

    def __init__(self, **values):
        self.values = values

    def number(self, value):
        return value

    def variable(self, name):
        return self.values[name]

    def negate(self, value):
        return -value

    def add(self, lhs, rhs):
        return lhs + rhs

    def subtract(self, lhs, rhs):
        return lhs - rhs

    def multiply(self, lhs, rhs):
        return lhs * rhs

    def power(self, base, exponent):
        return base ** exponent

    def call(self, name, args):
        return max(args) if name == "max" else min(args)


def value(src, **values):
    return evaluate(
        parse_tree(src, functions=True, juxtaposition=True), IntegerAlgebra(**values)
    )


class TestGrammar(object):
    def test_number(self):
        tree = parse_tree("42")
        assert isinstance(tree, Number)
        assert tree.value == 42

    def test_variable(self):
        assert isinstance(parse_tree("x1"), Variable)

    def test_precedence(self):
        tree = parse_tree("x+y*z")
        assert isinstance(tree, Operator)
        assert tree.op == "+"
        assert isinstance(tree.rhs, Operator) and tree.rhs.op == "*"

    def test_left_associative(self):
        assert value("10-3-2") == 5

    def test_power(self):
        tree = parse_tree("x^-2")
        assert isinstance(tree, Power)
        assert tree.exponent == -2

    def test_unary_minus_binds_tighter_than_power(self):
        tree = parse_tree("-x^2")
        assert isinstance(tree, Power)
        assert isinstance(tree.base, Negate)
        assert value("-x^2", x=3) == 9
        assert value("-(x^2)", x=3) == -9
        assert value("1-x^2", x=3) == -8

    def test_repeated_unary_minus(self):
        assert value("--x", x=4) == 4
        assert value("2*-x", x=4) == -8

    def test_parentheses(self):
        assert value("(x+1)^2", x=2) == 9

    def test_calls_only_with_functions(self):
        assert isinstance(parse_tree("max(a,b)", functions=True), Call)
        with pytest.raises(ExpressionError):
            parse_tree("max(a,b)")

    def test_juxtaposition(self):
        assert value("max(2b,2c)-a", a=1, b=3, c=2) == 5
        with pytest.raises(ExpressionError):
            parse_tree("2b")

    def test_min(self):
        assert value("min(a, b, 0)", a=2, b=-1) == -1

    def test_implicit_multiplication_rejected(self):
        with pytest.raises(ExpressionError):
            parse_tree("x y")

    def test_error_carries_position(self):
        with pytest.raises(ExpressionError) as excinfo:
            parse_tree("x + * y")
        assert excinfo.value.position is not None
        assert "at char" in str(excinfo.value)

    def test_variables(self):
        tree = parse_tree("max(a1, a2) - 2*a3", functions=True)
        assert variables(tree) == {"a1", "a2", "a3"}


class TestAlgebra(object):
    def test_unsupported_operation_reports_location(self):
        tree = parse_tree("x/y")
        with pytest.raises(ExpressionError) as excinfo:
            evaluate(tree, IntegerAlgebra(x=1, y=2))
        assert "Division" in excinfo.value.message
        assert excinfo.value.position == 0

    def test_base_algebra_rejects_everything(self):
        with pytest.raises(ExpressionError):
            evaluate(parse_tree("1"), Algebra())

    def test_grammar_is_cached(self):
        assert expressions.make_grammar(True, True) is expressions.make_grammar(True, True)

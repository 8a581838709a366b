from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from algentropy.expressions import ExpressionError
from algentropy.symbolic import (
    INDIVISIBLE,
    RationalFn,
    TropicalizationError,
    ZeroDenominatorError,
    exact_divide,
    gcd_probe,
    is_homogeneous,
    monomial_content,
    normalize_factor,
    parse,
    poly_ring,
    tropicalize,
)
from algentropy.tropical import AffineForm

SUBTRACTION_FREE = [
    "(y^2+1)/x",
    "x*y+2",
    "(x+y)/(x*y+1)",
    "y/(x^2+x+1)",
    "x^3",
    "1/(x+y)^2",
]

leaves = st.sampled_from(["x", "y", "1", "2", "3"])
divisors = st.sampled_from(["x", "y", "(x+y)", "(x^2+1)"])


def _combine(children):
    pairs = st.tuples(children, children)
    return st.one_of(
        pairs.map(lambda t: "({}+{})".format(*t)),
        pairs.map(lambda t: "({}-{})".format(*t)),
        pairs.map(lambda t: "{}*{}".format(*t)),
        st.tuples(children, divisors).map(lambda t: "{}/{}".format(*t)),
        st.tuples(children, st.integers(1, 2)).map(lambda t: "({})^{}".format(*t)),
        children.map("-({})".format),
    )


sources = st.recursive(leaves, _combine, max_leaves=6)
nonzero = st.fractions(min_value=-9, max_value=9, max_denominator=9).filter(bool)
points = st.tuples(nonzero, nonzero)


def ring(names="xy"):
    return poly_ring(tuple(names))


class TestPolynomialHelpers(object):
    def test_ring_is_cached(self):
        assert poly_ring(("x", "y")) is poly_ring(("x", "y"))

    def test_exact_divide(self):
        R = ring("x")
        x = R.gens[0]
        assert exact_divide(x ** 2 - 1, x - 1) == x + 1
        assert exact_divide(x ** 2 + 1, x - 1) is INDIVISIBLE
        assert not INDIVISIBLE

    def test_divide_by_zero(self):
        R = ring("x")
        with pytest.raises(ZeroDenominatorError):
            exact_divide(R.gens[0], R.zero)

    def test_monomial_content(self):
        x, y = ring().gens
        assert monomial_content(x ** 2 * y + x ** 3 * y ** 2) == (2, 1)

    def test_homogeneous(self):
        x, y = ring().gens
        assert is_homogeneous(x * y + y ** 2)
        assert not is_homogeneous(x * y + y)

    def test_normalize_factor(self):
        x, y = ring().gens
        unit, q = normalize_factor(-2 * x + 4 * y)
        assert unit == -2
        assert q == x - 2 * y


class TestParse(object):
    def test_laurent(self):
        f = parse("(y^2+1)/x", "xy")
        assert f.is_laurent
        assert not f.is_polynomial
        assert f.monomial == (1, 0)

    def test_polynomial(self):
        f = parse("1+y-x^2", "xy")
        assert f.is_polynomial
        assert str(f) == "-(x^2) + y + 1"
        assert parse(str(f), "xy") == f

    def test_cancels_monomials(self):
        assert parse("x/x", "xy") == 1
        assert parse("x^2*y/(x*y^3)", "xy") == parse("x/y^2", "xy")

    def test_cancels_factors(self):
        assert parse("(x^2-1)/(x-1)", "x") == parse("x+1", "x")

    def test_negative_powers(self):
        assert parse("(x+1)^-2*(x+1)^3", "x") == parse("x+1", "x")

    def test_common_factor_with_sign(self):
        assert parse("(1-x)/(x-1)", "x") == -1

    def test_unknown_variable(self):
        with pytest.raises(ExpressionError):
            parse("x+z", "xy")

    def test_division_by_zero(self):
        with pytest.raises(ExpressionError):
            parse("x/(y-y)", "xy")

    def test_str_denominators(self):
        assert str(parse("(y^2+1)/x", "xy")) == "(y^2 + 1)/x"
        assert str(parse("1/(x*y)", "xy")) == "1/(x*y)"
        assert str(parse("x/(x+y)", "xy")) == "x/(x + y)"


class TestArithmetic(object):
    def test_sum_over_common_denominator(self):
        f = parse("1/x", "xy") + parse("1/y", "xy")
        assert f == parse("(x+y)/(x*y)", "xy")

    def test_subtraction_to_zero(self):
        f = parse("(y^2+1)/x", "xy")
        assert not (f - f)

    def test_division_uses_known_factors(self):
        f = parse("1/(x+y)", "xy")
        g = parse("x/(x+y)^2", "xy")
        assert g / f == parse("x/(x+y)", "xy")

    def test_mixed_with_integers(self):
        f = parse("x", "x")
        assert f + 1 == parse("x+1", "x")
        assert 2 * f == parse("2*x", "x")
        assert 1 / f == parse("1/x", "x")
        assert Fraction(1, 2) - f == parse("1/2-x", "x")

    def test_inverse_of_zero(self):
        with pytest.raises(ZeroDenominatorError):
            RationalFn(ring().zero).inverse()

    def test_evaluate(self):
        f = parse("(y^2+1)/x", "xy")
        assert f.evaluate([Fraction(2), Fraction(3)]) == 5
        with pytest.raises(ZeroDenominatorError):
            f.evaluate([0, 1])

    def test_substitute(self):
        # second component of the Musiker map, composed with itself once
        f = parse("(y^2+1)/x", "xy")
        args = (parse("y", "xy"), f)
        assert f.substitute(args) == parse("(((y^2+1)/x)^2+1)/y", "xy")

    def test_musiker_third_iterate(self):
        f = parse("(y^2+1)/x", "xy")
        y = parse("y", "xy")
        second = f.substitute((y, f))
        third = second.substitute((y, f))
        assert third == parse("(y^6+3*y^4+3*y^2+2*x^2*y^2+x^4+2*x^2+1)/(x^3*y^2)", "xy")
        assert third.is_laurent

    def test_substitute_arity(self):
        with pytest.raises(ValueError):
            parse("x", "xy").substitute((parse("x", "xy"),))


class TestGcdProbe(object):
    def test_common_factor_found(self):
        x, = ring("x").gens
        assert gcd_probe([x ** 2 - 1, x - 1]) == 1

    def test_coprime(self):
        x, y = ring().gens
        assert gcd_probe([x, y, x + y]) == 0

    def test_deterministic(self):
        x, y = ring().gens
        polys = [x * y + 1, (x * y + 1) * (x - y)]
        assert gcd_probe(polys, seed=3) == gcd_probe(polys, seed=3) == 2

    def test_needs_two_polynomials(self):
        x, = ring("x").gens
        with pytest.raises(ValueError):
            gcd_probe([x, ring("x").zero])


class TestTropicalize(object):
    def test_scott(self):
        component = tropicalize(parse("(y^2+z^2)/x", "xyz"))
        assert set(component.num.forms) == {
            AffineForm((-1, 2, 0), 0),
            AffineForm((-1, 0, 2), 0),
        }
        assert component.den.is_zero()

    def test_subtraction_rejected(self):
        with pytest.raises(TropicalizationError):
            tropicalize(parse("1+y-x^2", "xy"))

    @pytest.mark.parametrize("f_src", SUBTRACTION_FREE)
    @pytest.mark.parametrize("g_src", SUBTRACTION_FREE)
    def test_product_becomes_sum(self, f_src, g_src):
        f = parse(f_src, "xy")
        g = parse(g_src, "xy")
        assert tropicalize(f * g).equivalent(tropicalize(f).add(tropicalize(g)))


def evaluate_or_skip(f, p):
    try:
        return f.evaluate(p)
    except ZeroDenominatorError:
        assume(False)


class TestRandomExpressions(object):
    @settings(max_examples=200)
    @given(sources)
    def test_printed_form_parses_back(self, src):
        f = parse(src, "xy")
        assert parse(str(f), "xy") == f

    @settings(max_examples=100)
    @given(sources, sources, points)
    def test_arithmetic_agrees_with_evaluation(self, f_src, g_src, p):
        f = parse(f_src, "xy")
        g = parse(g_src, "xy")
        fp = evaluate_or_skip(f, p)
        gp = evaluate_or_skip(g, p)
        assert (f + g).evaluate(p) == fp + gp
        assert (f - g).evaluate(p) == fp - gp
        assert (f * g).evaluate(p) == fp * gp
        if gp != 0:
            assert (f / g).evaluate(p) == fp / gp

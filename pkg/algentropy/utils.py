import logging
from fractions import Fraction

logger = logging.getLogger(__name__)


class AlgEntropyError(Exception):
    """Base class for errors raised by a computation on valid input."""


class ConsistencyError(AlgEntropyError):
    """Two independent routes to the same quantity disagree."""


class BudgetExceeded(AlgEntropyError):
    """A size budget was exceeded while iterating a map."""

    def __init__(self, message, reached=None, size=None, budget=None):
        super(BudgetExceeded, self).__init__(message)
        self.reached = reached
        self.size = size
        self.budget = budget


def check_budget(size, budget, reached, what="terms"):
    """Raise ``BudgetExceeded`` when ``size`` is over ``budget``.

    ``reached`` is the iterate index being computed; it is carried on the
    exception so callers can report how far the computation got.
    """
    if budget is not None and size > budget:
        logger.warning(
            "Budget of {} {} exceeded ({}) at N={}".format(budget, what, size, reached)
        )
        raise BudgetExceeded(
            "{} {} exceed the budget of {} at N={}".format(size, what, budget, reached),
            reached=reached,
            size=size,
            budget=budget,
        )


def format_float(value):
    """Render a float with 12 significant digits."""
    return "{:.12g}".format(value)


def format_rational(value):
    """Render an exact integer or rational as a decimal string."""
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return "{}/{}".format(value.numerator, value.denominator)


def parse_rational(text):
    """Inverse of :func:`format_rational`."""
    return Fraction(str(text).strip())


def exact(value):
    """Collapse an integral ``Fraction`` to ``int``."""
    if isinstance(value, Fraction) and value.denominator == 1:
        return value.numerator
    return value

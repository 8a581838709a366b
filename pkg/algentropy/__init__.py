"""Degree growth and algebraic entropy of monomial, rational and tropical maps."""

from . import (
    catalog,
    command_line,
    config,
    data,
    expressions,
    linalg,
    models,
    monomial,
    ratmap,
    recurrence,
    spectral,
    symbolic,
    tropical,
    utils,
)

import logging
from logging import NullHandler

logger = logging.getLogger(__name__)
logger.addHandler(NullHandler())

__all__ = (
    "catalog",
    "command_line",
    "config",
    "data",
    "expressions",
    "linalg",
    "models",
    "monomial",
    "ratmap",
    "recurrence",
    "spectral",
    "symbolic",
    "tropical",
    "utils",
    "logger",
)

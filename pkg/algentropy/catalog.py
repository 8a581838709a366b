"""Built-in maps, looked up by name."""

import logging
import os
from collections import namedtuple

from algentropy import data
from algentropy.monomial import MonomialMap
from algentropy.ratmap import RationalMap
from algentropy.recurrence import PLOrbit
from algentropy.tropical import TropMap, parse as parse_tropical
from algentropy.utils import ConsistencyError

logger = logging.getLogger(__name__)

KINDS = ("monomial", "rational", "tropical", "pl-recurrence")


class UnknownMapError(LookupError):
    """Neither a catalog name nor a readable map file."""


class CatalogEntry(namedtuple("CatalogEntry", ["name", "kind", "definition", "anchor"])):
    """A named map with its JSON definition."""

    __slots__ = ()

    def load(self):
        return data.decode_map(self.definition)

    @property
    def has_matrix(self):
        return self.kind == "monomial"


def _monomial(name, matrix, anchor):
    return CatalogEntry(name, "monomial", {"type": "monomial", "matrix": matrix}, anchor)


def _rational(name, variables, components, anchor):
    return CatalogEntry(
        name,
        "rational",
        {"type": "rational", "vars": list(variables), "components": list(components)},
        anchor,
    )


def _tropical(name, variables, components, anchor):
    return CatalogEntry(
        name,
        "tropical",
        {"type": "tropical", "vars": list(variables), "components": list(components)},
        anchor,
    )


def _pl(name, expression, init, anchor):
    return CatalogEntry(
        name,
        "pl-recurrence",
        {"type": "pl-recurrence", "expression": expression, "init": [str(a) for a in init]},
        anchor,
    )


ENTRIES = (
    _rational("henon", "xy", ["1+y-x^2", "x"], "Henon map, A = B = 1; degree 2^N"),
    _rational("musiker", "xy", ["y", "(y^2+1)/x"], "Laurent iterates; degree 2N"),
    _rational("gauss5", "xy", ["y", "(y+1)/x"], "map of order 5"),
    _rational(
        "somos4", "wxyz", ["x", "y", "z", "(x*z+y^2)/w"], "Somos-4 recurrence; quadratic growth"
    ),
    _rational(
        "scott", "xyz", ["y", "z", "(y^2+z^2)/x"], "Laurent iterates; degrees 2,4,8,14,24,..."
    ),
    _rational(
        "hone",
        "wxyz",
        ["x", "y", "z", "z*(w*z-x*y)/(w*y-x^2)"],
        "non-Laurent denominators; degree floor((2N^2+6N+9)/5)",
    ),
    _monomial("fibmono", [[0, 1], [1, 1]], "eigentorus example; entropy log golden ratio"),
    _monomial("squaremono", [[2, 0], [0, 3]], "algebraic entropy log 3, toral entropy log 6"),
    _monomial(
        "counterexample",
        [[-1, 1, 0], [-1, 0, 1], [1, 0, 0]],
        "degree sequence without a linear recurrence",
    ),
    _monomial("inv-gap", [[1, 2], [-2, 1]], "rational inverse; entropy of f and f^-1"),
    _tropical("scott-trop", "abc", ["b", "c", "max(2b,2c)-a"], "tropical Scott map"),
    _tropical("musiker-trop", "ab", ["b", "max(2b,0)-a"], "tropical Musiker map"),
    _pl("pl-max2", "max(a1,a2)-2*a3", [1, 1, -1], "PL recurrence of the counterexample"),
    _tropical("gauss5-trop", "ab", ["b", "max(b,0)-a"], "tropical map of order 5"),
    _pl(
        "scott-exponents",
        "max(2*a1,2*a2)-a3",
        [-1, 0, 0],
        "denominator exponents of the Scott map",
    ),
    _rational(
        "conjugated-swap",
        "xy",
        ["x^2-y", "(x^2-y)^2-x"],
        "swap conjugated by (x, x^2-y); degree 4 involution",
    ),
    _rational("badinverse", "xyz", ["y/x", "z/x", "x"], "rational form of the counterexample"),
    _monomial(
        "counterexample-inverse",
        [[0, 0, 1], [1, 0, 1], [0, 1, 1]],
        "inverse of the counterexample; spectral radius squared",
    ),
)

BY_NAME = {}
for entry in ENTRIES:
    if entry.name in BY_NAME:
        raise AssertionError("Duplicate catalog entry {}".format(entry.name))
    BY_NAME[entry.name] = entry


def by_name(name):
    """Return the catalog entry called ``name``, or None."""
    return BY_NAME.get(name)


def names(kind=None):
    return [e.name for e in ENTRIES if kind is None or e.kind == kind]


def load(name):
    entry = by_name(name)
    if entry is None:
        raise UnknownMapError("Unknown map {!r}".format(name))
    return entry.load()


def resolve(spec, form_budget=None):
    """A catalog name or a path to a JSON map file, as (label, map)."""
    entry = by_name(spec)
    if entry is not None:
        return entry.name, entry.load()
    if os.path.isfile(spec):
        kwargs = {} if form_budget is None else {"form_budget": form_budget}
        return os.path.basename(spec), data.load_map(spec, **kwargs)
    raise UnknownMapError(
        "Unknown map {!r}; use a catalog name ({}) or a JSON file".format(
            spec, ", ".join(names())
        )
    )


def _round_trip(entry, m):
    """Print the parsed map and parse it back."""
    if isinstance(m, MonomialMap):
        return data.decode_map(data.encode_map(m)) == m
    if isinstance(m, RationalMap):
        return RationalMap.parse(m.vars, [str(c) for c in m.components]) == m
    if isinstance(m, TropMap):
        again = TropMap(
            m.vars, [parse_tropical(c.format(m.vars), m.vars) for c in m.components]
        )
        return again.equivalent(m)
    if isinstance(m, PLOrbit):
        return data.decode_map(data.encode_map(m)).terms(8) == m.terms(8)
    return False


def self_check(entries=ENTRIES):
    """[(entry, ok, message)] after parsing and round-tripping every entry."""
    results = []
    for entry in entries:
        try:
            m = entry.load()
        except Exception as e:
            logger.warning("Catalog entry {} does not load: {}".format(entry.name, e))
            results.append((entry, False, str(e)))
            continue
        if _round_trip(entry, m):
            results.append((entry, True, "{} map parses and round-trips".format(entry.kind)))
        else:
            logger.warning("Catalog entry {} does not round-trip".format(entry.name))
            results.append((entry, False, "printed form parses to a different map"))
    return results


_checked = None


def startup_check():
    """Run :func:`self_check` once per process; raise if any entry fails."""
    global _checked
    if _checked is None:
        _checked = self_check()
    failed = [entry.name for entry, ok, _ in _checked if not ok]
    if failed:
        raise ConsistencyError("Catalog self-check failed for {}".format(", ".join(failed)))
    return _checked

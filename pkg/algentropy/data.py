"""JSON encoding of maps, sequences and reports.

Exact integers and rationals are written as decimal strings so files are
stable across platforms; floats are written as JSON numbers.
"""

import io
import json
import logging
from fractions import Fraction

from algentropy.expressions import ExpressionError
from algentropy.linalg import DimensionError, IntMatrix
from algentropy.monomial import MonomialMap
from algentropy.ratmap import ProjectiveForm, RationalMap
from algentropy.recurrence import PLOrbit, PLRecurrence, Recurrence
from algentropy.spectral import EntropyReport
from algentropy.tropical import (
    DEFAULT_FORM_BUDGET,
    AffineForm,
    TropComponent,
    TropExpr,
    TropMap,
    parse as parse_tropical,
)
from algentropy.utils import exact, format_rational, parse_rational

logger = logging.getLogger(__name__)

MAP_TYPES = ("monomial", "rational", "tropical", "pl-recurrence")


class MapFormatError(ValueError):
    """A map or sequence payload does not follow the JSON schema."""


def _integer(text):
    value = parse_rational(text)
    if value.denominator != 1:
        raise MapFormatError("Expected an integer, got {!r}".format(text))
    return value.numerator


def encode_matrix(A):
    return [[str(a) for a in row] for row in A.rows]


def decode_matrix(rows):
    try:
        return IntMatrix([[_integer(a) for a in row] for row in rows])
    except (DimensionError, TypeError, ValueError) as e:
        raise MapFormatError("Malformed matrix {!r}: {}".format(rows, e))


def encode_sequence(values):
    return [format_rational(v) for v in values]


def decode_sequence(values):
    try:
        return [exact(parse_rational(v)) for v in values]
    except (TypeError, ValueError, ZeroDivisionError) as e:
        raise MapFormatError("Malformed sequence {!r}: {}".format(values, e))


def encode_recurrence(rec):
    return {"order": rec.order, "coeffs": encode_sequence(rec.coefficients)}


def decode_recurrence(payload):
    return Recurrence(int(payload["order"]), [Fraction(c) for c in payload["coeffs"]])


def encode_report(report):
    if isinstance(report, EntropyReport):
        return report.as_dict()
    raise TypeError("Not an entropy report: {!r}".format(report))


def encode_projective(form):
    if isinstance(form, ProjectiveForm):
        return form.as_dict()
    raise TypeError("Not a projective form: {!r}".format(form))


def _encode_forms(expr):
    return [[format_rational(c) for c in f.coeffs] + [format_rational(f.const)] for f in expr]


def _decode_forms(rows, dim):
    forms = []
    for row in rows:
        if len(row) != dim + 1:
            raise MapFormatError(
                "A form over {} variables needs {} entries, got {!r}".format(dim, dim + 1, row)
            )
        values = [parse_rational(v) for v in row]
        forms.append(AffineForm(values[:-1], values[-1]))
    return TropExpr(forms)


def encode_map(m):
    if isinstance(m, MonomialMap):
        return {"type": "monomial", "matrix": encode_matrix(m.matrix)}
    if isinstance(m, RationalMap):
        return {
            "type": "rational",
            "vars": list(m.vars),
            "components": [str(c) for c in m.components],
        }
    if isinstance(m, TropMap):
        return {
            "type": "tropical",
            "vars": list(m.vars),
            "components": [
                {"num": _encode_forms(c.num), "den": _encode_forms(c.den)}
                for c in m.components
            ],
        }
    if isinstance(m, PLOrbit):
        return {
            "type": "pl-recurrence",
            "expression": m.recurrence.expression,
            "init": encode_sequence(m.init),
        }
    raise TypeError("Cannot encode {!r}".format(m))


def _decode_tropical(payload, form_budget):
    variables = payload["vars"]
    components = []
    for component in payload["components"]:
        if isinstance(component, str):
            components.append(parse_tropical(component, variables, form_budget))
        else:
            components.append(
                TropComponent(
                    _decode_forms(component["num"], len(variables)),
                    _decode_forms(component.get("den", [["0"] * (len(variables) + 1)]),
                                  len(variables)),
                ).canonical(form_budget)
            )
    return TropMap(variables, components)


def decode_map(payload, form_budget=DEFAULT_FORM_BUDGET):
    """Build a map object from a decoded JSON payload."""
    if not isinstance(payload, dict) or payload.get("type") not in MAP_TYPES:
        raise MapFormatError(
            "A map payload needs a \"type\" among {}".format(", ".join(MAP_TYPES))
        )
    kind = payload["type"]
    try:
        if kind == "monomial":
            return MonomialMap(decode_matrix(payload["matrix"]))
        if kind == "rational":
            return RationalMap.parse(payload["vars"], payload["components"])
        if kind == "tropical":
            return _decode_tropical(payload, form_budget)
        recurrence = PLRecurrence(payload["expression"], payload.get("arity"))
        return PLOrbit(recurrence, tuple(decode_sequence(payload["init"])))
    except MapFormatError:
        raise
    except KeyError as e:
        raise MapFormatError("A {} map payload needs the field {}".format(kind, e))
    except (ExpressionError, TypeError, ValueError) as e:
        raise MapFormatError("Malformed {} map: {}".format(kind, e))


def dumps(payload):
    """Deterministic JSON text."""
    return json.dumps(payload, sort_keys=True, ensure_ascii=False)


def loads(text):
    try:
        return json.loads(text)
    except ValueError as e:
        raise MapFormatError("Malformed JSON: {}".format(e))


def load_map(path, form_budget=DEFAULT_FORM_BUDGET):
    logger.debug("Reading map from {}".format(path))
    with io.open(path, encoding="utf-8") as fp:
        return decode_map(loads(fp.read()), form_budget)


def load_sequence(path):
    """A JSON array of decimal strings, or an object with a "sequence" field."""
    with io.open(path, encoding="utf-8") as fp:
        payload = loads(fp.read())
    if isinstance(payload, dict):
        payload = payload.get("sequence")
    if not isinstance(payload, list):
        raise MapFormatError("{} does not hold a sequence".format(path))
    return decode_sequence(payload)

#!/usr/bin/python
# -*- coding: utf-8 -*-

"""The algentropy command-line utility."""

import csv
import io
import logging
import math
import os
import sys
from fractions import Fraction
from functools import wraps

import click
import tabulate

from algentropy import catalog, data
from algentropy.config import get_config
from algentropy.data import MapFormatError
from algentropy.monomial import MonomialMap, agreement_indices, cN_sequence
from algentropy.ratmap import (
    RationalMap,
    check_laurent,
    degree_sequence_rational,
    denominator_monomials,
    iterate as iterate_rational,
)
from algentropy.recurrence import (
    PLOrbit,
    longest_plateau,
    minimal_recurrence,
    recurrence_order_profile,
    verify_recurrence,
)
from algentropy.spectral import entropy_report
from algentropy.tropical import (
    TropMap,
    homogeneity,
    lipschitz_bound,
    lipschitz_growth,
    tropicalize_map,
)
from algentropy.utils import AlgEntropyError, format_float, format_rational
from algentropy.version import __version__

logger = logging.getLogger(__name__)

CONTEXT_SETTINGS = dict(help_option_names=["-h", "--help"])

FORMATS = ("csv", "json")
QUANTITIES = ("degree", "logdegree-over-N", "cn", "lipschitz")


def log(msg, chevrons=True, verbose=True):
    """Log a message to stdout."""
    if verbose:
        if chevrons:
            click.echo("\n❯❯ " + msg)
        else:
            click.echo(msg)


def error(msg, chevrons=True, verbose=True):
    """Log a message to stderr."""
    if verbose:
        if chevrons:
            click.secho("\n❯❯ " + msg, err=True, fg="red")
        else:
            click.secho(msg, err=True, fg="red")


class RunConfig(object):
    """Settings for one analysis run: the loaded configuration plus flags."""

    def __init__(
        self,
        nmax,
        tol,
        seed,
        term_budget,
        form_budget,
        output_format="csv",
        include_zero=False,
        gcd_trials=5,
        gelfand_cap=60,
        root_max_steps=500,
        root_precision=50,
    ):
        if nmax < 1:
            raise click.BadParameter("must be at least 1", param_hint="--nmax")
        if not tol > 0:
            raise click.BadParameter("must be positive", param_hint="--tol")
        if output_format not in FORMATS:
            raise click.BadParameter(
                "must be one of {}".format(", ".join(FORMATS)), param_hint="--format"
            )
        self.nmax = nmax
        self.tol = tol
        self.seed = seed
        self.term_budget = term_budget
        self.form_budget = form_budget
        self.output_format = output_format
        self.include_zero = include_zero
        self.gcd_trials = gcd_trials
        self.gelfand_cap = gelfand_cap
        self.root_max_steps = root_max_steps
        self.root_precision = root_precision

    @classmethod
    def from_config(cls, config, **flags):
        values = config.as_dict()
        settings = {
            "nmax": values["nmax"],
            "tol": values["tol"],
            "seed": values["seed"],
            "term_budget": values["term_budget"],
            "form_budget": values["form_budget"],
            "output_format": values["format"],
            "include_zero": values["include_zero"],
            "gcd_trials": values["gcd_trials"],
            "gelfand_cap": values["gelfand_cap"],
            "root_max_steps": values["root_max_steps"],
            "root_precision": values["root_precision"],
        }
        settings.update({k: v for k, v in flags.items() if v is not None})
        return cls(**settings)

    @property
    def spectral_options(self):
        return dict(
            tol=self.tol,
            gelfand_cap=self.gelfand_cap,
            max_steps=self.root_max_steps,
            precision=self.root_precision,
        )


def loaded_config():
    config = get_config()
    if not config.ready:
        config.load()
    return config


def run_options(f):
    """Add the shared analysis flags and pass a RunConfig as ``run``."""

    @wraps(f)
    def wrapper(nmax, tol, seed, output_format, include_zero, **kwargs):
        run = RunConfig.from_config(
            loaded_config(),
            nmax=nmax,
            tol=tol,
            seed=seed,
            output_format=output_format,
            include_zero=include_zero or None,
        )
        return f(run=run, **kwargs)

    options = [
        click.option("--nmax", type=int, default=None, help="Largest iterate N"),
        click.option("--tol", type=float, default=None, help="Root-finding tolerance"),
        click.option("--seed", type=int, default=None, help="Seed for random probes"),
        click.option(
            "--format",
            "output_format",
            type=click.Choice(FORMATS),
            default=None,
            help="Output format",
        ),
        click.option(
            "--include-zero", is_flag=True, default=False, help="Prepend N=0 (degree 1)"
        ),
    ]
    for option in reversed(options):
        wrapper = option(wrapper)
    return wrapper


def resolve_map(map_spec, run=None):
    try:
        return catalog.resolve(map_spec, run.form_budget if run else None)[1]
    except catalog.UnknownMapError as e:
        raise click.BadParameter(str(e), param_hint="MAP")
    except MapFormatError as e:
        raise click.BadParameter(str(e), param_hint="MAP")


def require_kind(m, kinds, command):
    if not isinstance(m, kinds):
        names = {
            MonomialMap: "monomial",
            RationalMap: "rational",
            TropMap: "tropical",
            PLOrbit: "pl-recurrence",
        }
        raise click.BadParameter(
            "{} needs a {} map".format(
                command, " or ".join(names[k] for k in kinds)
            ),
            param_hint="MAP",
        )


def _cell(value):
    if isinstance(value, bool):
        return "true" if value else "false"
    if value is None:
        return ""
    if isinstance(value, float):
        return format_float(value)
    if isinstance(value, (int, Fraction)):
        return format_rational(value)
    return str(value)


def _json_value(value):
    if isinstance(value, (bool, float)) or value is None:
        return value
    if isinstance(value, (list, tuple)):
        return [_json_value(v) for v in value]
    return _cell(value)


def emit_table(header, rows, output_format):
    """CSV with a header line, or one JSON object per row."""
    if output_format == "json":
        for row in rows:
            click.echo(data.dumps({k: _json_value(v) for k, v in zip(header, row)}))
        return
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_cell(v) for v in row])
    click.echo(buffer.getvalue(), nl=False)


def degrees_of(m, run):
    """The degree sequence of a monomial or rational map."""
    if isinstance(m, MonomialMap):
        sequence = m.degree_sequence(run.nmax)
    else:
        sequence = degree_sequence_rational(
            m, run.nmax, run.term_budget, trials=run.gcd_trials, seed=run.seed
        )
    return sequence.with_zero() if run.include_zero else sequence


def as_tropical(m):
    if isinstance(m, RationalMap):
        return tropicalize_map(m)
    return m


class AnalysisGroup(click.Group):
    """Exit with 1 on usage errors and 2 on domain errors."""

    def main(self, *args, **kwargs):
        kwargs.pop("standalone_mode", None)
        try:
            rv = super(AnalysisGroup, self).main(*args, standalone_mode=False, **kwargs)
        except click.ClickException as e:
            e.show()
            sys.exit(1)
        except click.Abort:
            error("Aborted!", chevrons=False)
            sys.exit(1)
        except AlgEntropyError as e:
            error(str(e), chevrons=False)
            sys.exit(2)
        sys.exit(rv if isinstance(rv, int) else 0)


@click.group(cls=AnalysisGroup, context_settings=CONTEXT_SETTINGS)
@click.version_option(__version__, "--version", "-v", message="%(version)s")
@click.option("--verbose", is_flag=True, flag_value=True, help="Verbose mode")
def algentropy(verbose):
    """Degree growth and algebraic entropy of monomial, rational and tropical maps."""
    from logging.config import fileConfig

    fileConfig(
        os.path.join(os.path.dirname(__file__), "logging.ini"),
        disable_existing_loggers=False,
    )
    config = loaded_config()
    level = "DEBUG" if verbose else config.get("loglevel", "WARNING").upper()
    logging.getLogger().setLevel(level)
    for source in config.sources:
        logger.debug("Configuration read from {}".format(source))


@algentropy.command("catalog")
@click.option(
    "--format", "output_format", type=click.Choice(FORMATS), default=None, help="Output format"
)
def catalog_command(output_format):
    """List the built-in maps."""
    catalog.startup_check()
    output_format = output_format or loaded_config().get("format")
    if output_format == "json":
        for entry in catalog.ENTRIES:
            click.echo(
                data.dumps(
                    {
                        "name": entry.name,
                        "kind": entry.kind,
                        "definition": entry.definition,
                        "anchor": entry.anchor,
                    }
                )
            )
        return
    rows = [[e.name, e.kind, e.anchor] for e in catalog.ENTRIES]
    click.echo(tabulate.tabulate(rows, headers=["name", "kind", "about"], tablefmt="psql"))


@algentropy.command()
@click.argument("map_spec", metavar="MAP")
@run_options
def degseq(map_spec, run):
    """Print the degree sequence deg(f^N)."""
    m = resolve_map(map_spec, run)
    if isinstance(m, PLOrbit):
        terms = m.terms(run.nmax)
        emit_table(["N", "value"], list(enumerate(terms, 1)), run.output_format)
        return
    require_kind(m, (MonomialMap, RationalMap), "degseq")
    sequence = degrees_of(m, run)
    emit_table(["N", "degree", "exact"], list(sequence.items()), run.output_format)


@algentropy.command()
@click.argument("map_spec", metavar="MAP")
@run_options
def entropy(map_spec, run):
    """Print algebraic and toral entropy and the dynamical degrees."""
    m = resolve_map(map_spec, run)
    require_kind(m, (MonomialMap,), "entropy")
    report = entropy_report(m.matrix, **run.spectral_options)
    if run.output_format == "json":
        click.echo(data.dumps(data.encode_report(report)))
        return
    bounds = report.error_bounds
    methods = report.methods
    rows = [
        ["algebraic_entropy", report.algebraic_entropy, bounds["algebraic_entropy"],
         methods["algebraic_entropy"]],
        ["toral_entropy", report.toral_entropy, bounds["toral_entropy"],
         methods["toral_entropy"]],
    ]
    for k, (value, bound, conjectural) in enumerate(
        zip(report.dynamical_degrees, bounds["dynamical_degrees"], report.conjectural), 1
    ):
        method = methods["dynamical_degrees"]
        if conjectural:
            method += " (conjectural)"
        rows.append(["log_dynamical_degree_{}".format(k), value, bound, method])
    rows.append(["ambiguous", report.ambiguous, None, None])
    emit_table(["quantity", "value", "error", "method"], rows, run.output_format)


def _sequence_argument(spec, run):
    """A catalog map, a JSON sequence file or an inline comma-separated list."""
    if catalog.by_name(spec) is not None or (
        os.path.isfile(spec) and _is_map_file(spec)
    ):
        m = resolve_map(spec, run)
        if isinstance(m, PLOrbit):
            return m.terms(run.nmax)
        require_kind(m, (MonomialMap, RationalMap), "recur")
        return list(degrees_of(m, run))
    if os.path.isfile(spec):
        try:
            return data.load_sequence(spec)
        except MapFormatError as e:
            raise click.BadParameter(str(e), param_hint="SEQUENCE")
    try:
        return data.decode_sequence([s for s in spec.split(",") if s.strip()])
    except MapFormatError:
        raise click.BadParameter(
            "{!r} is neither a map, a sequence file nor a comma-separated list".format(spec),
            param_hint="SEQUENCE",
        )


def _is_map_file(path):
    try:
        with io.open(path, encoding="utf-8") as fp:
            payload = data.loads(fp.read())
    except MapFormatError:
        return False
    return isinstance(payload, dict) and "type" in payload


@algentropy.command()
@click.argument("spec", metavar="SEQUENCE")
@run_options
def recur(spec, run):
    """Find the minimal linear recurrence of a sequence or a map's degrees."""
    seq = _sequence_argument(spec, run)
    if not seq:
        raise click.BadParameter("the sequence is empty", param_hint="SEQUENCE")
    rec = minimal_recurrence(seq)
    profile = recurrence_order_profile(seq)
    verified = verify_recurrence(seq, rec) if len(seq) > rec.order else None
    plateau = longest_plateau(profile)
    if run.output_format == "json":
        payload = data.encode_recurrence(rec)
        payload.update(
            {
                "terms": len(seq),
                "verified": verified,
                "longest_plateau": plateau,
                "profile": [[length, order] for length, order in profile],
            }
        )
        click.echo(data.dumps(payload))
        return
    rows = [
        ["terms", len(seq)],
        ["order", rec.order],
        ["coefficients", " ".join(format_rational(c) for c in rec.coefficients)],
        ["verified", verified],
        ["longest_plateau", plateau],
        ["profile", " ".join("{}:{}".format(length, order) for length, order in profile)],
    ]
    emit_table(["key", "value"], rows, run.output_format)


@algentropy.command()
@click.argument("map_spec", metavar="MAP")
@run_options
def signatures(map_spec, run):
    """Follow every zero pattern of homogeneous coordinates."""
    m = resolve_map(map_spec, run)
    require_kind(m, (MonomialMap,), "signatures")
    report = m.signature_analysis()
    rows = [
        [
            "".join(str(bit) for bit in fate.signature),
            "dies" if fate.dies else "periodic",
            fate.dies_at,
            fate.transient,
            fate.period,
        ]
        for fate in report.fates
    ]
    emit_table(
        ["signature", "fate", "dies_at", "transient", "period"], rows, run.output_format
    )


@algentropy.command()
@click.argument("map_spec", metavar="MAP")
@run_options
def chambers(map_spec, run):
    """Print the chamber of A^N with D(A^N) and c_N."""
    m = resolve_map(map_spec, run)
    require_kind(m, (MonomialMap,), "chambers")
    keys = m.chamber_keys(run.nmax)
    degrees = m.degree_sequence(run.nmax)
    cn = cN_sequence(m.matrix, run.nmax)
    agree = set(agreement_indices(m.matrix, run.nmax))
    rows = [
        [N, str(key), d, cn[N], N in agree, key.diagonal_attains_columns()]
        for N, key, d in zip(range(1, run.nmax + 1), keys, degrees)
    ]
    if run.include_zero:
        rows.insert(0, [0, "", 1, cn[0], 0 in agree, None])
    emit_table(
        ["N", "chamber", "degree", "c_N", "agrees", "diagonal_attains"],
        rows,
        run.output_format,
    )


@algentropy.command()
@click.argument("map_spec", metavar="MAP")
@click.option("--n", "N", type=int, default=1, help="Iterate to print")
@run_options
def iterate(map_spec, N, run):
    """Print the N-th iterate of a map."""
    if N < 1:
        raise click.BadParameter("must be at least 1", param_hint="--n")
    m = resolve_map(map_spec, run)
    require_kind(m, (MonomialMap, RationalMap, TropMap), "iterate")
    if isinstance(m, MonomialMap):
        g = m.iterate(N)
        rows = [
            ["row{}".format(i + 1), " ".join(str(a) for a in row)]
            for i, row in enumerate(g.matrix.rows)
        ]
        identity = g.matrix == g.matrix.identity(g.n)
    elif isinstance(m, RationalMap):
        g = iterate_rational(m, N, run.term_budget)
        rows = [[v, str(c)] for v, c in zip(g.vars, g.components)]
        identity = g.is_identity()
    else:
        g = m.iterate(N, run.form_budget)
        rows = [[v, c.format(g.vars)] for v, c in zip(g.vars, g.components)]
        identity = g.is_identity()
    rows.append(["identity", identity])
    emit_table(["component", "expression"], rows, run.output_format)


@algentropy.command()
@click.argument("map_spec", metavar="MAP")
@click.option("--n", "N", type=int, default=1, help="Iterate to print")
@click.option("--orbit", default=None, help="Comma-separated start point to iterate")
@run_options
def trop(map_spec, N, orbit, run):
    """Iterate a max-plus map (tropicalizing a rational map first)."""
    if N < 1:
        raise click.BadParameter("must be at least 1", param_hint="--n")
    m = as_tropical(resolve_map(map_spec, run))
    require_kind(m, (TropMap,), "trop")
    if orbit is not None:
        try:
            point = data.decode_sequence(orbit.split(","))
        except MapFormatError as e:
            raise click.BadParameter(str(e), param_hint="--orbit")
        if len(point) != m.dim:
            raise click.BadParameter(
                "need {} coordinates".format(m.dim), param_hint="--orbit"
            )
        rows = [[k] + list(p) for k, p in enumerate(m.orbit(point, N))]
        emit_table(["N"] + list(m.vars), rows, run.output_format)
        return
    g = m.iterate(N, run.form_budget)
    rows = [[v, c.format(g.vars)] for v, c in zip(g.vars, g.components)]
    rows.append(["lipschitz_bound", lipschitz_bound(g)])
    rows.append(["homogeneity", homogeneity(g)])
    emit_table(["component", "expression"], rows, run.output_format)


@algentropy.command()
@click.argument("map_spec", metavar="MAP")
@run_options
def laurent(map_spec, run):
    """Check whether the iterates have monomial denominators."""
    m = resolve_map(map_spec, run)
    require_kind(m, (RationalMap,), "laurent")
    flags = check_laurent(m, run.nmax, run.term_budget)
    monomials = denominator_monomials(m, run.nmax, run.term_budget)
    rows = [
        [N, flag, ";".join(" ".join(str(e) for e in mono) for mono in row)]
        for N, (flag, row) in enumerate(zip(flags, monomials), 1)
    ]
    emit_table(["N", "laurent", "monomial_denominators"], rows, run.output_format)


@algentropy.command()
@click.argument("map_spec", metavar="MAP")
@click.option(
    "--quantity", type=click.Choice(QUANTITIES), default="degree", help="Quantity to emit"
)
@run_options
def plotdata(map_spec, quantity, run):
    """Emit whitespace-separated N/value pairs for external plotting."""
    m = resolve_map(map_spec, run)
    if quantity == "lipschitz":
        m = as_tropical(m)
        require_kind(m, (TropMap,), "plotdata --quantity lipschitz")
        pairs = [(N, bound) for N, bound, _ in lipschitz_growth(m, run.nmax, run.form_budget)]
    elif quantity == "cn":
        require_kind(m, (MonomialMap,), "plotdata --quantity cn")
        start = 0 if run.include_zero else 1
        pairs = list(enumerate(cN_sequence(m.matrix, run.nmax, start=start), start))
    else:
        require_kind(m, (MonomialMap, RationalMap), "plotdata --quantity " + quantity)
        sequence = degrees_of(m, run)
        if quantity == "degree":
            pairs = [(N, d) for N, d, _ in sequence.items()]
        else:
            pairs = [(N, math.log(d) / N) for N, d, _ in sequence.items() if N > 0]
    for N, value in pairs:
        click.echo("{} {}".format(N, _cell(value)))


@algentropy.command()
@click.option("--verbose", is_flag=True, flag_value=True, help="Verbose mode")
@click.pass_context
def verify(ctx, verbose):
    """Check that every catalog entry parses and round-trips."""
    ok = True
    for entry, passed, message in catalog.self_check():
        mark = "✓" if passed else "✗"
        log("{} {}: {}".format(mark, entry.name, message), chevrons=False, verbose=verbose)
        ok = ok and passed
    if ok:
        log("✓ catalog is consistent", chevrons=False)
        return 0
    error("✗ catalog self-check failed", chevrons=False)
    ctx.exit(2)

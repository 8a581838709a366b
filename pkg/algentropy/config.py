"""Layered, typed settings for the analyses.

Layers are searched newest first. :meth:`Configuration.load` stacks the
packaged defaults, ``~/.algentropyconfig``, ``./algentropy.txt`` and the
environment, in that order; command line flags go on top through
:meth:`Configuration.override`.
"""

from collections import deque, namedtuple
from contextlib import contextmanager
import configparser
import logging
import os

logger = logging.getLogger(__name__)

marker = object()

LOCAL_CONFIG = "algentropy.txt"
GLOBAL_CONFIG = ".algentropyconfig"
DEFAULTS_FILE = os.path.join(os.path.dirname(__file__), "default_configs", "defaults.txt")


class ConfigKey(namedtuple("ConfigKey", ["name", "type", "synonyms", "section"])):
    __slots__ = ()


default_keys = (
    ConfigKey("nmax", int, (), "Iteration"),
    ConfigKey("term_budget", int, ("ALGENTROPY_TERM_BUDGET",), "Iteration"),
    ConfigKey("form_budget", int, ("ALGENTROPY_FORM_BUDGET",), "Iteration"),
    ConfigKey("tol", float, (), "Numerics"),
    ConfigKey("gelfand_cap", int, (), "Numerics"),
    ConfigKey("root_max_steps", int, (), "Numerics"),
    ConfigKey("root_precision", int, (), "Numerics"),
    ConfigKey("seed", int, (), "Probing"),
    ConfigKey("gcd_trials", int, (), "Probing"),
    ConfigKey("format", str, ("ALGENTROPY_FORMAT",), "Output"),
    ConfigKey("include_zero", bool, (), "Output"),
    ConfigKey("loglevel", str, ("ALGENTROPY_LOGLEVEL",), "Output"),
)

TRUE_STRINGS = ("y", "yes", "t", "true", "on", "1")
FALSE_STRINGS = ("n", "no", "f", "false", "off", "0")


def strtobool(value):
    value = value.strip().lower()
    if value in TRUE_STRINGS:
        return True
    if value in FALSE_STRINGS:
        return False
    raise ValueError("invalid truth value {!r}".format(value))


def config_files():
    """Candidate files in the order they are layered."""
    return [
        DEFAULTS_FILE,
        os.path.expanduser(os.path.join("~", GLOBAL_CONFIG)),
        os.path.join(os.getcwd(), LOCAL_CONFIG),
    ]


class Configuration(object):

    SUPPORTED_TYPES = {str, int, float, bool}

    def __init__(self):
        self.layers = deque()
        self.types = {}
        self.synonyms = {}
        self.sections = {}
        self.sources = []
        self.ready = False

    def register(self, key, type_, synonyms=None, section="Parameters"):
        if key in self.types:
            raise KeyError("Config key {} is already registered".format(key))
        if type_ not in self.SUPPORTED_TYPES:
            raise TypeError("{} is not a supported type".format(type_))
        self.types[key] = type_
        self.sections[key] = section
        for synonym in synonyms or ():
            self.synonyms[synonym] = key

    def _coerce(self, key, value, cast_types):
        expected = self.types[key]
        if cast_types and isinstance(value, str):
            try:
                value = strtobool(value) if expected is bool else expected(value.strip())
            except ValueError:
                pass
        if expected is float and isinstance(value, int) and not isinstance(value, bool):
            value = float(value)
        if not isinstance(value, expected):
            raise TypeError("Got {!r} for {}, expected {}".format(value, key, expected))
        return value

    def extend(self, mapping, cast_types=False, strict=False):
        layer = {}
        for key, value in mapping.items():
            key = self.synonyms.get(key, key)
            if key not in self.types:
                if strict:
                    raise KeyError("{} is not a valid configuration key".format(key))
                continue
            layer[key] = self._coerce(key, value, cast_types)
        self.layers.appendleft(layer)

    @contextmanager
    def override(self, *args, **kwargs):
        self.extend(*args, **kwargs)
        try:
            yield self
        finally:
            self.layers.popleft()

    def get(self, key, default=marker):
        if not self.ready:
            raise RuntimeError("Config not loaded")
        for layer in self.layers:
            if key in layer:
                value = layer[key]
                return value.strip() if isinstance(value, str) else value
        if default is marker:
            raise KeyError(key)
        return default

    def __getitem__(self, key):
        return self.get(key)

    def __setitem__(self, key, value):
        return self.extend({key: value})

    def __getattr__(self, key):
        if key.startswith("_"):
            raise AttributeError(key)
        try:
            return self.get(key)
        except KeyError:
            raise AttributeError(key)

    def as_dict(self):
        values = {}
        for key in self.types:
            value = self.get(key, marker)
            if value is not marker:
                values[key] = value
        return values

    def load_from_file(self, filename):
        parser = configparser.ConfigParser()
        self.sources.extend(parser.read(filename))
        values = {}
        for section in parser.sections():
            values.update(parser.items(section))
        self.extend(values, cast_types=True, strict=True)

    def load_from_environment(self):
        self.extend(os.environ, cast_types=True)

    def write(self, directory=None):
        """Write the resolved values to ``algentropy.txt``, one section per group."""
        parser = configparser.ConfigParser()
        for key, value in sorted(self.as_dict().items()):
            section = self.sections[key]
            if not parser.has_section(section):
                parser.add_section(section)
            text = str(value).lower() if isinstance(value, bool) else str(value)
            parser.set(section, key, text)
        destination = os.path.join(directory or os.getcwd(), LOCAL_CONFIG)
        with open(destination, "w") as fp:
            parser.write(fp)
        return destination

    def load(self):
        for path in config_files():
            if os.path.exists(path):
                logger.debug("Reading configuration from {}".format(path))
                self.load_from_file(path)
        self.load_from_environment()
        self.ready = True


config = None


def get_config():
    global config

    if config is None:
        config = Configuration()
        for key in default_keys:
            config.register(*key)

    return config

import configparser
import os
from tempfile import NamedTemporaryFile

import mock
import pytest

from algentropy import config as config_module
from algentropy.config import Configuration, LOCAL_CONFIG, default_keys, get_config, strtobool


@pytest.fixture
def blank():
    """A Configuration with only nmax and tol registered."""
    config = Configuration()
    config.register("nmax", int)
    config.register("tol", float)
    return config


@pytest.fixture
def full():
    config = Configuration()
    for key in default_keys:
        config.register(*key)
    return config


class TestRegistration(object):
    def test_register_duplicate_raises(self, blank):
        with pytest.raises(KeyError):
            blank.register("nmax", int)

    def test_unsupported_type_raises(self, blank):
        with pytest.raises(TypeError):
            blank.register("shape", list)

    def test_default_section(self, blank):
        assert blank.sections["nmax"] == "Parameters"

    def test_default_keys_have_sections(self, full):
        assert full.sections["term_budget"] == "Iteration"
        assert full.sections["gcd_trials"] == "Probing"

    def test_get_config_registers_defaults(self):
        assert set(get_config().types) == {key.name for key in default_keys}


class TestLayers(object):
    def test_not_ready(self, blank):
        blank.extend({"nmax": 3})
        with pytest.raises(RuntimeError):
            blank.get("nmax")

    def test_newest_layer_wins(self, blank):
        blank.ready = True
        blank.extend({"nmax": 3})
        blank.extend({"nmax": 4})
        assert blank.get("nmax") == 4

    def test_override_is_popped(self, blank):
        blank.ready = True
        blank.extend({"nmax": 3})
        with blank.override({"nmax": 9}) as config:
            assert config.nmax == 9
        assert blank.nmax == 3

    def test_missing_key(self, blank):
        blank.ready = True
        assert blank.get("nmax", None) is None
        with pytest.raises(KeyError):
            blank.get("nmax")
        with pytest.raises(AttributeError):
            blank.nmax

    def test_item_access(self, blank):
        blank.ready = True
        blank["nmax"] = 12
        assert blank["nmax"] == 12

    def test_unknown_keys(self, blank):
        blank.ready = True
        blank.extend({"colour": "red"})
        assert blank.get("colour", None) is None
        with pytest.raises(KeyError):
            blank.extend({"colour": "red"}, strict=True)

    def test_synonyms(self, full):
        full.ready = True
        full.extend({"ALGENTROPY_TERM_BUDGET": 10})
        assert full.term_budget == 10

    def test_as_dict_only_has_set_keys(self, blank):
        blank.ready = True
        blank.extend({"tol": 0.5})
        assert blank.as_dict() == {"tol": 0.5}


class TestTypes(object):
    def test_mismatch(self, blank):
        with pytest.raises(TypeError):
            blank.extend({"nmax": 1.5})

    def test_int_promoted_to_float(self, blank):
        blank.ready = True
        blank.extend({"tol": 0})
        assert isinstance(blank.tol, float)

    def test_cast_failure(self, blank):
        with pytest.raises(TypeError):
            blank.extend({"nmax": "twenty"}, cast_types=True)

    def test_cast_from_strings(self, full):
        full.ready = True
        full.extend({"nmax": " 7 ", "tol": "1e-9", "include_zero": "on"}, cast_types=True)
        assert (full.nmax, full.tol, full.include_zero) == (7, 1e-9, True)

    def test_strings_are_stripped(self, full):
        full.ready = True
        full.extend({"format": " json "})
        assert full.format == "json"


class TestFiles(object):
    def test_sections_are_flattened(self, full):
        contents = "[Output]\nformat = json\ninclude_zero = yes\n[Iteration]\nnmax = 12\n"
        with NamedTemporaryFile(suffix=".txt") as configfile:
            configfile.write(contents.encode("utf-8"))
            configfile.flush()
            full.load_from_file(configfile.name)
            assert full.sources == [configfile.name]
        full.ready = True
        assert (full.format, full.include_zero, full.nmax) == ("json", True, 12)

    def test_unknown_key_in_file(self, full, tempdir):
        path = os.path.join(tempdir, "bad.txt")
        with open(path, "w") as fp:
            fp.write("[Output]\ncolour = red\n")
        with pytest.raises(KeyError):
            full.load_from_file(path)

    def test_environment(self, full):
        with mock.patch.dict(os.environ, {"ALGENTROPY_FORM_BUDGET": "17"}):
            full.load_from_environment()
        full.ready = True
        assert full.form_budget == 17

    def test_write_groups_by_section(self, stub_config, tempdir):
        path = stub_config.write()
        assert os.path.basename(path) == LOCAL_CONFIG
        parser = configparser.ConfigParser()
        parser.read(path)
        assert parser.get("Iteration", "nmax") == "20"
        assert parser.get("Output", "include_zero") == "false"

    def test_write_round_trips(self, stub_config, full, tempdir):
        full.load_from_file(stub_config.write())
        full.ready = True
        assert full.as_dict() == stub_config.as_dict()


class TestLoad(object):
    def test_file_order(self, tempdir):
        with mock.patch.dict(os.environ, {"HOME": tempdir}):
            files = config_module.config_files()
        assert files[0] == config_module.DEFAULTS_FILE
        assert files[1] == os.path.join(tempdir, ".algentropyconfig")
        assert files[2] == os.path.join(os.getcwd(), LOCAL_CONFIG)

    def test_defaults(self, full, tempdir):
        with mock.patch.dict(os.environ, {"HOME": tempdir}):
            full.load()
        assert full.ready
        assert (full.nmax, full.tol, full.format) == (20, 1e-12, "csv")
        assert full.include_zero is False
        assert full.sources == [config_module.DEFAULTS_FILE]

    def test_local_overrides_global(self, full, tempdir):
        home = os.path.join(tempdir, "home")
        os.mkdir(home)
        with open(os.path.join(home, ".algentropyconfig"), "w") as fp:
            fp.write("[Iteration]\nnmax = 5\nterm_budget = 99\n")
        with open(os.path.join(tempdir, LOCAL_CONFIG), "w") as fp:
            fp.write("[Iteration]\nnmax = 7\n")
        with mock.patch.dict(os.environ, {"HOME": home}):
            full.load()
        assert full.nmax == 7
        assert full.term_budget == 99

    def test_environment_overrides_files(self, full, tempdir):
        environ = {"HOME": tempdir, "ALGENTROPY_FORMAT": "json"}
        with mock.patch.dict(os.environ, environ):
            full.load()
        assert full.format == "json"


class TestStrToBool(object):
    @pytest.mark.parametrize("text", ["yes", "True", " on ", "1"])
    def test_true(self, text):
        assert strtobool(text) is True

    @pytest.mark.parametrize("text", ["no", "FALSE", "off", "0"])
    def test_false(self, text):
        assert strtobool(text) is False

    def test_invalid(self):
        with pytest.raises(ValueError):
            strtobool("maybe")

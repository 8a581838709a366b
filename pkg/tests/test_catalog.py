import json
import os

import mock
import pytest

from algentropy import catalog
from algentropy.catalog import CatalogEntry, UnknownMapError
from algentropy.monomial import MonomialMap
from algentropy.ratmap import RationalMap
from algentropy.recurrence import PLOrbit
from algentropy.tropical import TropMap
from algentropy.utils import ConsistencyError

KIND_TYPES = {
    "monomial": MonomialMap,
    "rational": RationalMap,
    "tropical": TropMap,
    "pl-recurrence": PLOrbit,
}


class TestCatalog(object):
    def test_names_are_unique(self):
        names = catalog.names()
        assert len(names) == len(set(names))

    def test_every_kind_present(self):
        assert {entry.kind for entry in catalog.ENTRIES} == set(catalog.KINDS)

    @pytest.mark.parametrize("entry", catalog.ENTRIES, ids=lambda e: e.name)
    def test_entry_loads_as_its_kind(self, entry):
        assert isinstance(entry.load(), KIND_TYPES[entry.kind])

    def test_names_by_kind(self):
        assert "counterexample" in catalog.names("monomial")
        assert "counterexample" not in catalog.names("rational")

    def test_by_name(self):
        assert catalog.by_name("scott").kind == "rational"
        assert catalog.by_name("no-such-map") is None

    def test_load_unknown(self):
        with pytest.raises(UnknownMapError):
            catalog.load("no-such-map")

    def test_has_matrix(self):
        assert catalog.by_name("fibmono").has_matrix
        assert not catalog.by_name("henon").has_matrix

    def test_inverse_entry_inverts_counterexample(self):
        f = catalog.load("counterexample")
        assert f.inverse() == catalog.load("counterexample-inverse")

    def test_badinverse_is_the_counterexample(self):
        f = catalog.load("badinverse")
        assert f == RationalMap.from_matrix(catalog.load("counterexample").matrix)


class TestResolve(object):
    def test_catalog_name(self):
        label, m = catalog.resolve("musiker")
        assert label == "musiker"
        assert isinstance(m, RationalMap)

    def test_file(self, tempdir):
        path = os.path.join(tempdir, "mine.json")
        with open(path, "w") as fp:
            json.dump({"type": "monomial", "matrix": [["2", "0"], ["0", "3"]]}, fp)
        label, m = catalog.resolve(path)
        assert label == "mine.json"
        assert m == MonomialMap([[2, 0], [0, 3]])

    def test_unknown(self):
        with pytest.raises(UnknownMapError) as excinfo:
            catalog.resolve("nowhere.json")
        assert "counterexample" in str(excinfo.value)


class TestSelfCheck(object):
    def test_catalog_is_consistent(self):
        results = catalog.self_check()
        assert len(results) == len(catalog.ENTRIES)
        assert all(ok for _, ok, _ in results)

    def test_broken_entry_reported(self):
        broken = CatalogEntry("broken", "rational", {"type": "rational", "vars": ["x"]}, "")
        [(entry, ok, message)] = catalog.self_check([broken])
        assert entry is broken
        assert not ok
        assert "components" in message


class TestStartupCheck(object):
    def test_runs_once(self):
        with mock.patch.object(catalog, "_checked", None), mock.patch.object(
            catalog, "self_check", wraps=catalog.self_check
        ) as check:
            first = catalog.startup_check()
            assert catalog.startup_check() is first
        assert check.call_count == 1
        assert all(ok for _, ok, _ in first)

    def test_failure_raises(self):
        entry = catalog.ENTRIES[0]
        with mock.patch.object(catalog, "_checked", [(entry, False, "boom")]):
            with pytest.raises(ConsistencyError) as excinfo:
                catalog.startup_check()
        assert entry.name in str(excinfo.value)

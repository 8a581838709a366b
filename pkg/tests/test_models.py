"""Test the classes in models.py."""

import pytest

from algentropy.models import DegreeSequence


class TestDegreeSequence(object):
    def test_defaults(self):
        seq = DegreeSequence([2, 4, 8])
        assert seq.all_exact
        assert list(seq.indices) == [1, 2, 3]
        assert seq[2] == 8
        assert len(seq) == 3

    def test_items(self):
        seq = DegreeSequence([2, 3], exact=[True, False])
        assert list(seq.items()) == [(1, 2, True), (2, 3, False)]
        assert not seq.all_exact

    def test_flags_must_match(self):
        with pytest.raises(ValueError):
            DegreeSequence([1, 2], exact=[True])

    def test_with_zero(self):
        seq = DegreeSequence([3, 9]).with_zero()
        assert seq.start == 0
        assert list(seq) == [1, 3, 9]
        assert seq.with_zero() is seq

    def test_equality_ignores_source(self):
        assert DegreeSequence([1], source="a") == DegreeSequence([1], source="b")
        assert DegreeSequence([1]) != DegreeSequence([1], start=0)

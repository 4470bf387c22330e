"""Tests for the randomized self-verification suites: every suite must come
back clean at its default parameters, deterministically."""

import pytest

from hyshift.errors import DomainError
from hyshift.verify import SUITES, run_suite


class TestSuiteResults:
    def test_registry_names(self):
        assert sorted(SUITES) == ["certtransform", "condn", "polyorbit", "prop44"]

    def test_condn_agrees_everywhere_at_defaults(self):
        rep = run_suite("condn")
        assert rep["ok"] is True
        assert rep["violations"] == 0
        assert rep["failures"] == []
        assert rep["checked"] == rep["count"] == 200
        # every draw is decided on both sides at this seed
        assert rep["decided"] == {"Fails": 112, "Holds": 88}

    def test_prop44_agrees_on_both_legs_at_defaults(self):
        rep = run_suite("prop44")
        assert rep["ok"] is True
        assert rep["violations"] == 0
        assert rep["checked"] == 2 * rep["count"] == 200
        assert rep["decided"]["entire"] == {"Fails": 92, "Holds": 8}
        assert rep["decided"]["rapid"] == {"Fails": 100, "Holds": 0}

    def test_certtransform_holds_to_the_pumped_bound(self):
        rep = run_suite("certtransform")
        assert rep["ok"] is True
        assert rep["violations"] == 0
        assert rep["checked"] == 50
        assert rep["powers_per_case"] == 64
        assert rep["draws"] == 123  # rejection sampling until a block is found

    def test_polyorbit_modes_agree_to_tolerance(self):
        rep = run_suite("polyorbit")
        assert rep["ok"] is True
        assert rep["violations"] == 0
        assert rep["checked"] == 100
        assert rep["worst_relative_gap"] < 1e-9

    @pytest.mark.parametrize("name", sorted(SUITES))
    def test_reports_are_deterministic(self, name):
        assert run_suite(name, seed=11, count=20) == run_suite(name, seed=11, count=20)

    def test_seed_changes_the_draws_not_the_verdict(self):
        a = run_suite("polyorbit", seed=1, count=30)
        b = run_suite("polyorbit", seed=2, count=30)
        assert a["ok"] and b["ok"]
        assert a["worst_relative_gap"] != b["worst_relative_gap"]


class TestSuiteValidation:
    def test_unknown_suite(self):
        with pytest.raises(DomainError, match="nosuch"):
            run_suite("nosuch")

    def test_count_must_be_positive(self):
        with pytest.raises(DomainError, match="count"):
            run_suite("condn", count=0)

    def test_seed_must_be_nonnegative(self):
        with pytest.raises(DomainError, match="seed"):
            run_suite("condn", seed=-1)

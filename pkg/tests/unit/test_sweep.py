"""Tests for prime sweeps and their renderings."""

import csv
import io

import pytest

from nonsmooth_cert import constants
from nonsmooth_cert.exceptions import InputError, InvalidManifoldError
from nonsmooth_cert.models import ManifoldInvariants
from nonsmooth_cert.sweep import (
    parse_prime_range,
    prime_sweep,
    primes_in_range,
    rows_to_csv,
    rows_to_json,
    rows_to_text,
)


class TestPrimeRange:
    """Test "A..B" parsing and prime listing."""

    @pytest.mark.parametrize("text,expected", [
        ("5..199", (5, 199)),
        ("11..11", (11, 11)),
        ("1..20", (1, 20)),
    ])
    def test_parse(self, text, expected):
        assert parse_prime_range(text) == expected

    @pytest.mark.parametrize("text", ["5-199", "5..", "a..b", "20..10", "1..2..3"])
    def test_parse_invalid(self, text):
        with pytest.raises(InputError):
            parse_prime_range(text)

    def test_primes_start_at_five(self):
        assert primes_in_range(1, 20) == [5, 7, 11, 13, 17, 19]

    def test_empty(self):
        assert primes_in_range(24, 28) == []


class TestPrimeSweep:
    """Test sweeps across the strategies."""

    def test_s2xs2_twice(self):
        """Two copies of S2xS2 are certified exactly from p = 7 on."""
        rows = prime_sweep(ManifoldInvariants(2, 2), (5, 100), constants.STRATEGY_THM13, timing=False)

        assert [row.p for row in rows] == primes_in_range(5, 100)
        for row in rows:
            assert row.found == (row.p >= 7)
            assert row.runtime_ms == 0

    def test_k3_above_bound(self, k3):
        """Every prime from 115 on carries a general certificate."""
        rows = prime_sweep(k3, (115, 199), constants.STRATEGY_LEMMA42, timing=False)

        assert rows
        for row in rows:
            assert row.found, row
            assert row.certificate is not None
            assert row.dim >= k3.b2_plus or row.dim <= -k3.b2_minus

    def test_k3_pattern_at_eleven_only(self, k3):
        rows = prime_sweep(k3, (5, 13), constants.STRATEGY_THM14, timing=False)

        assert {row.p: row.found for row in rows} == {5: False, 7: False, 11: True, 13: False}
        assert all(row.family == "thm14" for row in rows)

    def test_excluded_manifold_rows(self):
        rows = prime_sweep(ManifoldInvariants(1, 1), (5, 13), constants.STRATEGY_LEMMA42, timing=False)

        assert all(not row.found for row in rows)
        assert all(row.family == "lemma42-excluded" for row in rows)
        assert all(row.dim is None for row in rows)

    def test_vacuous_rows(self):
        rows = prime_sweep(ManifoldInvariants(2, 18), (5, 13), constants.STRATEGY_LEMMA42, timing=False)

        assert all(row.family == "lemma42-vacuous" for row in rows)

    def test_unknown_strategy(self, k3):
        with pytest.raises(InputError):
            prime_sweep(k3, (5, 13), "magic")

    def test_inapplicable_strategy(self, k3):
        with pytest.raises(InvalidManifoldError):
            prime_sweep(k3, (5, 13), constants.STRATEGY_THM13)

    def test_no_primes(self, k3):
        assert prime_sweep(k3, (24, 28), constants.STRATEGY_LEMMA42) == []

    def test_worker_count_does_not_change_rows(self):
        X = ManifoldInvariants(3, 3)
        single = prime_sweep(X, (5, 61), constants.STRATEGY_LEMMA42, max_workers=1, timing=False)
        many = prime_sweep(X, (5, 61), constants.STRATEGY_LEMMA42, max_workers=8, timing=False)

        assert rows_to_csv(single) == rows_to_csv(many)


class TestRenderings:
    """Test CSV, JSON and text output."""

    @pytest.fixture
    def rows(self):
        return prime_sweep(ManifoldInvariants(2, 2), (5, 13), constants.STRATEGY_THM13, timing=False)

    def test_csv(self, rows):
        text = rows_to_csv(rows)

        assert text.splitlines() == [
            "p,found,dim,family,runtime_ms",
            "5,false,0,thm13,0",
            "7,true,2,thm13,0",
            "11,true,2,thm13,0",
            "13,true,2,thm13,0",
        ]

    def test_csv_parses(self, rows):
        records = list(csv.DictReader(io.StringIO(rows_to_csv(rows))))

        assert [r["p"] for r in records] == ["5", "7", "11", "13"]

    def test_json(self, rows):
        data = rows_to_json(rows)

        assert data[0]["certificate"] is None
        assert data[1]["found"] is True
        assert data[1]["certificate"]["p"] == 7

    def test_text(self, rows):
        lines = rows_to_text(rows).splitlines()

        assert lines[0].split() == list(constants.SWEEP_CSV_HEADER)
        assert lines[2].split() == ["7", "true", "2", "thm13", "0"]
        assert len({len(line) for line in lines}) == 1

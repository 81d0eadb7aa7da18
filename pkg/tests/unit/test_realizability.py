"""Tests for the realizability hypotheses."""

import pytest
from hypothesis import assume, given, settings, strategies

from nonsmooth_cert import constants
from nonsmooth_cert.exceptions import BadMatchingError, InvalidManifoldError, NotPrimeError
from nonsmooth_cert.fixed_points import configuration_fixed_points, max_cancelling_pairs
from nonsmooth_cert.models import ActionConfiguration, FailureLabel, ManifoldInvariants
from nonsmooth_cert.realizability import (
    check_arithmetic,
    check_realizable,
    check_realizable_weights,
    edmonds_baseline,
    residual_count,
    residual_data,
)
from nonsmooth_cert.search import k3_stabilization_config
from tests.helpers.strategies import action_configurations


def manifold_for(cfg: ActionConfiguration, s: int) -> ManifoldInvariants:
    """The (b2+, b2-) that both arithmetic relations force for cfg with s pairs."""
    b2_plus = 2 * cfg.m + cfg.m_prime + cfg.r - s - 1
    b2_minus = cfg.m + 2 * cfg.m_prime + cfg.r - s - 1
    assume(b2_plus >= 0 and b2_minus >= 0)
    return ManifoldInvariants(b2_plus, b2_minus, spin=False)


def with_pairs(cfg: ActionConfiguration, s: int, betas=None) -> ActionConfiguration:
    return ActionConfiguration(
        p=int(cfg.p),
        alphas=cfg.alphas,
        alpha_primes=cfg.alpha_primes,
        betas=cfg.betas if betas is None else betas,
        s=s,
    )


class TestArithmetic:
    """Test the signature and fixed point count relations."""

    def test_k3_pattern(self, k3_config, k3):
        """m - m' = -16 and 3*16 - 2*12 = 24."""
        report = check_arithmetic(k3_config, k3)

        assert report.arithmetic_ok
        assert report.residual_count == 24
        assert report.failures == []

    def test_both_relations_fail(self, k3_config):
        """Wrong signature and wrong Euler characteristic are both reported."""
        report = check_arithmetic(k3_config, ManifoldInvariants(11, 19))

        assert not report.arithmetic_ok
        assert [f.label for f in report.failures] == [
            FailureLabel.SIGNATURE_MISMATCH,
            FailureLabel.EULER_MISMATCH,
        ]

    def test_euler_only(self, k3_config):
        """Same signature, larger manifold."""
        report = check_arithmetic(k3_config, ManifoldInvariants(4, 20))

        assert [f.label for f in report.failures] == [FailureLabel.EULER_MISMATCH]

    def test_residual_count(self):
        """3(m+m') + 2r - 2s."""
        cfg = ActionConfiguration(
            p=7, alphas=[(-1, 0, 1)], alpha_primes=[(-1, 0, 1)], betas=[(1, 2)], s=2
        )

        assert residual_count(cfg) == 4


class TestCheckRealizable:
    """Test the full realizability check."""

    def test_k3_pattern_is_realizable(self, k3_config, k3):
        """Twelve disjoint pairs are available and selected."""
        report = check_realizable(k3_config, k3)

        assert report.realizable
        assert report.available_pairs == 12
        assert len(report.matching) == 12
        assert report.provenance == constants.REALIZABILITY_PROVENANCE

    def test_insufficient_pairs(self):
        """Arithmetic can hold while the pairs are missing."""
        cfg = ActionConfiguration(
            p=constants.K3_PRIME,
            alpha_primes=k3_stabilization_config(0).alpha_primes,
            s=13,
        )
        report = check_realizable(cfg, ManifoldInvariants(2, 18))

        assert report.arithmetic_ok
        assert not report.realizable
        assert report.matching is None
        assert [f.label for f in report.failures] == [FailureLabel.INSUFFICIENT_PAIRS]

    def test_report_to_dict(self, k3_config, k3):
        """Serializable report."""
        data = check_realizable(k3_config, k3).to_dict()

        assert data["realizable"] is True
        assert data["available_pairs"] == 12
        assert len(data["matching"]) == 12

    def test_invalid_weight_becomes_a_failure(self):
        """Raw entries that share a residue mod 7 are reported, not raised."""
        report = check_realizable_weights(7, [(-1, 6, 1)], [(-1, 1, 2)], [], 0, ManifoldInvariants(2, 2))

        assert not report.realizable
        assert report.matching is None
        assert report.residual_count == 6
        assert [f.label for f in report.failures] == [FailureLabel.INVALID_WEIGHT]

    def test_raw_weights_match_configuration(self):
        """Valid raw entries give the same report as a built configuration."""
        X = ManifoldInvariants(2, 2)
        cfg = ActionConfiguration(p=7, alphas=[(-1, 0, 1)], alpha_primes=[(-1, 1, 2)])

        report = check_realizable_weights(7, [(-1, 0, 1)], [(-1, 1, 2)], [], 0, X)

        assert report.realizable
        assert report.to_dict() == check_realizable(cfg, X).to_dict()

    def test_raw_weights_bad_prime(self):
        with pytest.raises(NotPrimeError):
            check_realizable_weights(9, [(-1, 0, 1)], [], [], 0, ManifoldInvariants(1, 0, spin=False))

    @settings(max_examples=100, deadline=None)
    @given(action_configurations(), strategies.data())
    def test_success_is_monotone_in_s(self, cfg, data):
        """Fewer pairs stay realizable once chi is adjusted to match."""
        available = max_cancelling_pairs(configuration_fixed_points(cfg))
        s = data.draw(strategies.integers(0, available))
        fewer = data.draw(strategies.integers(0, s))
        X = manifold_for(cfg, s)

        assert check_realizable(with_pairs(cfg, s), X).realizable
        assert check_realizable(with_pairs(cfg, fewer), manifold_for(cfg, fewer)).realizable

    @settings(max_examples=100, deadline=None)
    @given(action_configurations(), strategies.data())
    def test_dropping_a_sphere_and_a_pair(self, cfg, data):
        """r - 1 spheres and s - 1 pairs keep the same X realizable."""
        assume(cfg.r >= 1)
        available = max_cancelling_pairs(configuration_fixed_points(cfg))
        s = data.draw(strategies.integers(1, available))
        X = manifold_for(cfg, s)
        assert check_realizable(with_pairs(cfg, s), X).realizable

        report = check_realizable(with_pairs(cfg, s - 1, betas=cfg.betas[:-1]), X)

        assert report.realizable
        assert report.residual_count == X.chi


class TestResidualData:
    """Test the fixed point data left after cancellation."""

    def test_k3_leaves_chi_points(self, k3_config, k3):
        """48 points minus 12 pairs leave 24 = chi(K3)."""
        report = check_realizable(k3_config, k3)
        remaining = residual_data(k3_config, k3, report.matching)

        assert len(remaining) == k3.chi

    def test_bad_matching(self, k3_config, k3):
        """A non-cancelling pair is refused."""
        with pytest.raises(BadMatchingError):
            residual_data(k3_config, k3, [(0, 0)])


class TestEdmondsBaseline:
    """Test the (b2+, b2-, 0, b2-1) decomposition."""

    def test_k3(self, k3):
        """Satisfies both arithmetic relations."""
        m, m_prime, r, s = edmonds_baseline(k3)

        assert (m, m_prime, r, s) == (3, 19, 0, 21)
        assert m - m_prime == k3.sigma
        assert 3 * (m + m_prime) + 2 * r - 2 * s == k3.chi

    @settings(max_examples=100, deadline=None)
    @given(strategies.integers(1, 40), strategies.integers(1, 40))
    def test_passes_arithmetic(self, b2_plus, b2_minus):
        """(b2+, b2-, 0, b2-1) satisfies both relations for every X with b2+, b2- >= 1."""
        X = ManifoldInvariants(b2_plus, b2_minus, spin=False)
        m, m_prime, r, s = edmonds_baseline(X)
        cfg = ActionConfiguration(
            p=7,
            alphas=[(-1, 0, 1)] * m,
            alpha_primes=[(-1, 0, 1)] * m_prime,
            betas=[(1, 2)] * r,
            s=s,
        )

        report = check_arithmetic(cfg, X)

        assert report.arithmetic_ok
        assert report.residual_count == X.chi

    def test_sphere_rejected(self):
        """b2 = 0 would need s = -1."""
        with pytest.raises(InvalidManifoldError):
            edmonds_baseline(ManifoldInvariants(0, 0))

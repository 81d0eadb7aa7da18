"""Realizability of fixed point data by a locally linear action.

A configuration of m CP2 models, m' orientation-reversed CP2 models and r S4
models whose fixed points contain s disjoint cancelling pairs yields a
homologically trivial, pseudofree, locally linear Z_p action on X with the
left-over fixed point data, provided that

    m - m' = sigma(X)   and   3(m + m') + 2r - 2s = chi(X).

The second relation is the fixed point count. It is sometimes printed as
3(m + m') + 2(r + s) = chi(X); that form contradicts every worked example
(the K3 pattern has 24 fixed points left, not 72), so the count is used.
"""

from typing import Sequence, Tuple

from nonsmooth_cert.exceptions import InsufficientPairsError, InvalidManifoldError, WeightError
from nonsmooth_cert.fixed_points import (
    FixedPointMultiset,
    check_matching,
    configuration_fixed_points,
    max_cancelling_pairs,
    select_disjoint_pairs,
)
from nonsmooth_cert.logging_config import get_logger
from nonsmooth_cert.models import (
    ActionConfiguration,
    Failure,
    FailureLabel,
    ManifoldInvariants,
    RealizabilityReport,
)
from nonsmooth_cert.weights import OddPrime

logger = get_logger("nonsmooth_cert.realizability")


def residual_count(cfg: ActionConfiguration) -> int:
    """Number of fixed points left after removing s cancelling pairs."""
    return cfg.point_count - 2 * cfg.s


def check_arithmetic(cfg: ActionConfiguration, X: ManifoldInvariants) -> RealizabilityReport:
    """
    Check the signature and fixed point count relations.

    Args:
        cfg: Candidate configuration
        X: Target manifold

    Returns:
        Report without a matching; failures are listed, never raised
    """
    failures = []

    if cfg.m - cfg.m_prime != X.sigma:
        failures.append(Failure(
            FailureLabel.SIGNATURE_MISMATCH,
            f"m - m' = {cfg.m - cfg.m_prime} but sigma(X) = {X.sigma}",
        ))

    count = residual_count(cfg)
    if count != X.chi:
        failures.append(Failure(
            FailureLabel.EULER_MISMATCH,
            f"3(m+m') + 2r - 2s = {count} but chi(X) = {X.chi}",
        ))

    return RealizabilityReport(
        arithmetic_ok=not failures,
        residual_count=count,
        failures=failures,
    )


def check_realizable(cfg: ActionConfiguration, X: ManifoldInvariants) -> RealizabilityReport:
    """
    Check every realizability hypothesis and pick the cancelling pairs.

    Weights are validated when cfg is built, so an InvalidWeight failure
    comes from check_realizable_weights, which starts from raw entries.

    Args:
        cfg: Candidate configuration
        X: Target manifold

    Returns:
        Report carrying a matching of s disjoint cancelling pairs when
        enough exist; failures are listed, never raised
    """
    report = check_arithmetic(cfg, X)
    fps = configuration_fixed_points(cfg)
    report.available_pairs = max_cancelling_pairs(fps)

    try:
        report.matching = select_disjoint_pairs(fps, cfg.s)
    except InsufficientPairsError as e:
        report.failures.append(Failure(FailureLabel.INSUFFICIENT_PAIRS, str(e)))

    if report.failures:
        logger.debug(
            f"Configuration {cfg.summary()} not realizable on {X.label}: "
            f"{', '.join(str(f) for f in report.failures)}"
        )
    return report


def check_realizable_weights(
    p: int,
    alphas: Sequence[Sequence[int]],
    alpha_primes: Sequence[Sequence[int]],
    betas: Sequence[Sequence[int]],
    s: int,
    X: ManifoldInvariants,
) -> RealizabilityReport:
    """
    check_realizable starting from raw component weights.

    A weight that is not valid for p becomes an InvalidWeight failure on a
    non-realizable report instead of an exception.

    Raises:
        NotPrimeError: If p is not a prime >= 5
        InvalidConfigurationError: If s is negative
    """
    OddPrime(p)
    try:
        cfg = ActionConfiguration(p=p, alphas=alphas, alpha_primes=alpha_primes, betas=betas, s=s)
    except WeightError as e:
        logger.debug(f"Invalid weight for p = {p}: {e}")
        return RealizabilityReport(
            arithmetic_ok=False,
            residual_count=3 * (len(alphas) + len(alpha_primes)) + 2 * len(betas) - 2 * s,
            failures=[Failure(FailureLabel.INVALID_WEIGHT, str(e))],
        )
    return check_realizable(cfg, X)


def residual_data(
    cfg: ActionConfiguration,
    X: ManifoldInvariants,
    matching: Sequence[Sequence[int]],
) -> FixedPointMultiset:
    """
    Fixed point data left after removing the matched cancelling pairs.

    Args:
        cfg: Configuration
        X: Target manifold
        matching: Disjoint cancelling index pairs

    Returns:
        Remaining fixed points in enumeration order; chi(X) of them when the
        configuration is realizable

    Raises:
        BadMatchingError: If the matching is not a set of disjoint cancelling pairs
    """
    fps = configuration_fixed_points(cfg)
    check_matching(fps, matching)
    removed = {index for pair in matching for index in pair}
    remaining = tuple(point for index, point in enumerate(fps.points) if index not in removed)
    if len(remaining) != X.chi:
        logger.debug(f"Residual data has {len(remaining)} points, chi(X) = {X.chi}")
    return FixedPointMultiset(fps.p, remaining)


def edmonds_baseline(X: ManifoldInvariants) -> Tuple[int, int, int, int]:
    """
    The decomposition (m, m', r, s) = (b2+, b2-, 0, b2 - 1).

    Raises:
        InvalidManifoldError: If b2 = 0 (s would be negative)
    """
    if X.b2 == 0:
        raise InvalidManifoldError(X.b2_plus, X.b2_minus, "baseline needs b2 >= 1")
    return (X.b2_plus, X.b2_minus, 0, X.b2 - 1)

"""Certificate constructions: fixed families, the general construction and a bounded search."""

from collections import Counter
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterator, List, Optional, Sequence, Tuple

from nonsmooth_cert import constants
from nonsmooth_cert.exceptions import (
    ExcludedManifoldError,
    InvalidManifoldError,
    LimitsTooSmallError,
    NotSpinError,
    OutOfRangeError,
    VacuousByDonaldsonError,
    WeightError,
)
from nonsmooth_cert.fixed_points import (
    RotationClass,
    chain_weights,
    component_fixed_points,
    k3_cycle_weights,
    reverse_class,
)
from nonsmooth_cert.logging_config import get_logger, log_with_context
from nonsmooth_cert.models import (
    ActionConfiguration,
    Lemma42Construction,
    ManifoldInvariants,
    NoObstruction,
    PrimeBound,
    SearchLimits,
    SearchOutcome,
    VerdictKind,
)
from nonsmooth_cert.obstruction import Evaluation, evaluate_oriented, smoothness_window
from nonsmooth_cert.weights import (
    OddPrime,
    WeightCP2,
    lattice_count,
    validate_weight_cp2,
    validate_weight_s4,
)

logger = get_logger("nonsmooth_cert.search")

EXCLUDED_MANIFOLDS = ((0, 0), (1, 1))


def prime_bound(X: ManifoldInvariants) -> PrimeBound:
    """
    Smallest p the general construction is guaranteed to handle.

    12 * floor((max(b2+, b2-) + 1) / 2) - 5; every prime at or above it
    satisfies 2l >= max(b2+, b2-).
    """
    b2max = X.b2_max
    return PrimeBound(b2max=b2max, bound=12 * ((b2max + 1) // 2) - 5)


def _orient(X: ManifoldInvariants) -> Tuple[ManifoldInvariants, bool]:
    if X.sigma > 0:
        return X.reversed(), True
    return X, False


def _require_spin(X: ManifoldInvariants) -> None:
    if not X.spin:
        raise NotSpinError()


def _warn_rokhlin(X: ManifoldInvariants, strategy: str) -> bool:
    if X.sigma % 16 == 0:
        return False
    log_with_context(
        logger, "warning",
        f"sigma = {X.sigma} is not divisible by 16: X has no smooth structure, "
        f"nonsmoothability is vacuous",
        manifold=X.label, strategy=strategy,
    )
    return True


def lemma_4_2_construct(X: ManifoldInvariants, p: int) -> Lemma42Construction:
    """
    The two candidate configurations of the general construction.

    After orienting X so that sigma <= 0, the orientation-reversed CP2
    components carry the chain weights (-1, R(j), R(j)+1), 1 <= j <= -sigma,
    plus one free weight alpha'_0, and a single CP2 component carries the
    free weight alpha_0. The candidates take {alpha_0, alpha'_0} =
    {(-1,0,1), (-1,1,2)} in both orders; their indices differ by 4l.

    Case I (chi >= -3 sigma + 6): r = (3 sigma - 6 + chi) / 2, s = 0.
    Case II: r = 0, s = (-3 sigma + 6 - chi) / 2, which the chain can only
    supply when b2+ >= 3.

    Args:
        X: Spin manifold
        p: Prime >= 5

    Returns:
        Lemma42Construction with two candidates

    Raises:
        NotSpinError: If X is not spin
        ExcludedManifoldError: For (b2+, b2-) in {(0,0), (1,1)}
        VacuousByDonaldsonError: If Case II needs more pairs than the chain has
    """
    p = OddPrime(p)
    _require_spin(X)
    if (X.b2_plus, X.b2_minus) in EXCLUDED_MANIFOLDS:
        raise ExcludedManifoldError(X.b2_plus, X.b2_minus)

    oriented, flipped = _orient(X)
    sigma, chi = oriented.sigma, oriented.chi
    rokhlin = _warn_rokhlin(X, constants.STRATEGY_LEMMA42)

    if chi >= -3 * sigma + 6:
        case = "1"
        r = (3 * sigma - 6 + chi) // 2
        s = 0
    else:
        case = "2"
        r = 0
        s = (-3 * sigma + 6 - chi) // 2
        if s > -sigma - 1:
            raise VacuousByDonaldsonError(oriented.b2_plus, oriented.b2_minus, s, -sigma - 1)

    chain = chain_weights(p, -sigma)
    betas = [constants.DEFAULT_SPHERE_WEIGHT] * r
    free = (constants.FAMILY_ALPHA_0, constants.FAMILY_ALPHA_PRIME_0)

    candidates = tuple(
        ActionConfiguration(
            p=p,
            alphas=(alpha_0,),
            alpha_primes=(alpha_prime_0,) + tuple(chain),
            betas=betas,
            s=s,
        )
        for alpha_0, alpha_prime_0 in (free, free[::-1])
    )

    log_with_context(
        logger, "debug",
        f"Case {case}: m=1, m'={1 - sigma}, r={r}, s={s}",
        p=int(p), manifold=X.label, strategy=constants.STRATEGY_LEMMA42,
    )
    return Lemma42Construction(
        manifold=X,
        orientation_flipped=flipped,
        case=case,
        candidates=candidates,
        rokhlin_vacuous=rokhlin,
    )


def certify_lemma42(X: ManifoldInvariants, p: int) -> Evaluation:
    """
    Evaluate both candidates of the general construction.

    Returns:
        The first certificate (plus candidate before minus), otherwise the
        NoObstruction of the candidate with the larger |dim|
    """
    construction = lemma_4_2_construct(X, p)
    results = []
    for sign, cfg in zip(("plus", "minus"), construction.candidates):
        family = f"{constants.STRATEGY_LEMMA42}-case{construction.case}-{sign}"
        result = evaluate_oriented(cfg, X, construction.orientation_flipped, family)
        if result.found:
            return result
        results.append(result)

    def magnitude(result: NoObstruction) -> int:
        return abs(result.index.dim) if result.index else -1

    best = max(results, key=magnitude)
    best.family = f"{constants.STRATEGY_LEMMA42}-case{construction.case}"
    return best


def theorem_1_3_construct(
    n: int,
    p: int,
    sphere_weight: Sequence[int] = constants.DEFAULT_SPHERE_WEIGHT,
) -> Evaluation:
    """
    Configuration for the connected sum of n copies of S2 x S2.

    m = m' with n + 1 = 3m + r, 0 <= r <= 2 and s = 0; the CP2 weights are
    (-1,0,1) and the reversed ones (-1,1,2), giving dim = 2lm. A certificate
    results exactly when 2lm >= n.

    Raises:
        InvalidManifoldError: If n < 2
    """
    if n < 2:
        raise InvalidManifoldError(n, n, "the connected sum needs n >= 2")

    p = OddPrime(p)
    X = ManifoldInvariants(n, n, spin=True)
    m, r = divmod(n + 1, 3)
    cfg = ActionConfiguration(
        p=p,
        alphas=[constants.FAMILY_ALPHA_0] * m,
        alpha_primes=[constants.FAMILY_ALPHA_PRIME_0] * m,
        betas=[tuple(sphere_weight)] * r,
        s=0,
    )
    return evaluate_oriented(cfg, X, family=constants.STRATEGY_THM13)


def k3_stabilization_config(
    t: int,
    sphere_weight: Sequence[int] = constants.DEFAULT_SPHERE_WEIGHT,
) -> ActionConfiguration:
    """Sixteen reversed CP2 components in the K3 pattern, t spheres, s = 12."""
    return ActionConfiguration(
        p=constants.K3_PRIME,
        alpha_primes=k3_cycle_weights(),
        betas=[tuple(sphere_weight)] * t,
        s=constants.K3_PAIRS,
    )


def _require_stabilization_range(t: int) -> None:
    if t < 0:
        raise OutOfRangeError("t", t, "t must be non-negative")
    if t > constants.K3_MAX_STABILIZATION:
        raise OutOfRangeError(
            "t", t, f"dim 6 lies inside the window once b2+ = {constants.K3_B2_PLUS + t} exceeds 6"
        )


def theorem_1_4_construct(
    t: int,
    sphere_weight: Sequence[int] = constants.DEFAULT_SPHERE_WEIGHT,
) -> Evaluation:
    """
    Certificate at p = 11 for K3 # t(S2 x S2).

    The K3 pattern gives dim = 6, which violates the window only while
    b2+ = 3 + t <= 6.

    Raises:
        OutOfRangeError: If t is outside 0..3
    """
    _require_stabilization_range(t)
    X = ManifoldInvariants(constants.K3_B2_PLUS + t, constants.K3_B2_MINUS + t, spin=True)
    cfg = k3_stabilization_config(t, sphere_weight)
    return evaluate_oriented(cfg, X, family=constants.STRATEGY_THM14)


def k3_stabilization_index(X: ManifoldInvariants) -> Optional[int]:
    """t such that X, in the orientation with sigma <= 0, is K3 # t(S2 x S2)."""
    oriented, _ = _orient(X)
    t = oriented.b2_plus - constants.K3_B2_PLUS
    if t < 0 or oriented.b2_minus - constants.K3_B2_MINUS != t or not X.spin:
        return None
    return t


# =============================================================================
# Bounded search
# =============================================================================

def weight_pool(p: int, limit: int) -> List[WeightCP2]:
    """
    Weights (x, a, a+d) with x in {-1, -2}, 0 <= a <= limit, 1 <= d <= limit.

    Only weights valid for p are kept; sorted lexicographically.
    """
    p = OddPrime(p)
    pool = set()
    for x in (-1, -2):
        for a in range(limit + 1):
            for d in range(1, limit + 1):
                try:
                    pool.add(validate_weight_cp2(p, (x, a, a + d)))
                except WeightError:
                    continue
    return sorted(pool)


def decompositions(X: ManifoldInvariants, max_extra: int) -> Iterator[Tuple[int, int, int, int]]:
    """
    (m, m', r, s) with m - m' = sigma and 3(m+m') + 2r - 2s = chi.

    Ordered by increasing m + m' + r, starting at the smallest total with
    s >= 0 and going max_extra past it; ties by increasing m.
    """
    sigma, chi = X.sigma, X.chi
    start = max(0, -sigma)

    def at_total(total: int) -> List[Tuple[int, int, int, int]]:
        rows = []
        m = max(0, sigma)
        while 2 * m - sigma <= total:
            m_prime = m - sigma
            r = total - m - m_prime
            twice_s = 3 * (m + m_prime) + 2 * r - chi
            if r >= 0 and twice_s >= 0:
                rows.append((m, m_prime, r, twice_s // 2))
            m += 1
        return rows

    total = start
    while not at_total(total):
        total += 1
    for extra in range(max_extra + 1):
        yield from at_total(total + extra)


def _period_shapes(m: int, m_prime: int, max_period: int) -> List[Tuple[int, int]]:
    budget = max(max_period, int(m > 0) + int(m_prime > 0))
    k1s = [0] if m == 0 else range(1, min(m, max_period) + 1)
    k2s = [0] if m_prime == 0 else range(1, min(m_prime, max_period) + 1)
    shapes = [(k1, k2) for k1 in k1s for k2 in k2s if k1 + k2 <= budget]
    return sorted(shapes, key=lambda shape: (shape[0] + shape[1], shape[0]))


@lru_cache(maxsize=None)
def _component_classes(p: int, kind: str, entries: Tuple[int, ...]) -> Tuple[RotationClass, ...]:
    return tuple(pt.rotation_class for pt in component_fixed_points(p, kind, entries))


def _pair_count(counts: Counter) -> int:
    total = 0
    for kappa, count in counts.items():
        partner = reverse_class(kappa)
        if kappa < partner:
            total += min(count, counts.get(partner, 0))
    return total


def _cyclic(pattern: Tuple[WeightCP2, ...], length: int) -> List[WeightCP2]:
    if not pattern:
        return []
    return [pattern[i % len(pattern)] for i in range(length)]


def bounded_search(
    X: ManifoldInvariants,
    p: int,
    limits: Optional[SearchLimits] = None,
) -> SearchOutcome:
    """
    Deterministic search for a certificate over periodic weight patterns.

    Decompositions are visited in the order of decompositions(); for each,
    CP2 and reversed CP2 weights are periodic patterns, multisets from
    weight_pool() of sizes k1 and k2 with k1 + k2 <= max_period, repeated
    cyclically. Candidates are screened by their index first and the
    cancelling pairs are only counted for those outside the window. The
    first certificate wins.

    Args:
        X: Spin manifold
        p: Prime >= 5
        limits: Search bounds; defaults when None

    Returns:
        SearchOutcome with the certificate or NoObstruction, the number of
        candidates examined and the range of dims seen

    Raises:
        NotSpinError: If X is not spin
        LimitsTooSmallError: If the limits leave no candidate
    """
    p = OddPrime(p)
    limits = limits or SearchLimits()
    _require_spin(X)
    oriented, flipped = _orient(X)
    _warn_rokhlin(X, constants.STRATEGY_BOUNDED)

    pool = weight_pool(p, limits.pool_limit)
    if not pool:
        raise LimitsTooSmallError(f"no weight with entries up to {limits.pool_limit} is valid for p={p}")
    sphere = validate_weight_s4(p, limits.sphere_weight)

    counts_of = {w: lattice_count(p, w) for w in pool}
    sigma_term = oriented.sigma * p // 8
    cp2_classes = {w: _component_classes(int(p), constants.KIND_CP2, w.entries) for w in pool}
    bar_classes = {w: _component_classes(int(p), constants.KIND_CP2BAR, w.entries) for w in pool}
    sphere_classes = _component_classes(int(p), constants.KIND_S4, sphere.entries)

    outcome = SearchOutcome(result=None)
    window_applies = smoothness_window(0, oriented).kind != VerdictKind.INAPPLICABLE

    for m, m_prime, r, s in decompositions(oriented, limits.max_extra_components):
        shapes = _period_shapes(m, m_prime, limits.max_period)
        if not shapes:
            continue
        for k1, k2 in shapes:
            for pattern_1 in combinations_with_replacement(pool, k1):
                for pattern_2 in combinations_with_replacement(pool, k2):
                    alphas = _cyclic(pattern_1, m)
                    alpha_primes = _cyclic(pattern_2, m_prime)
                    dim = (
                        sum(counts_of[w] for w in alphas)
                        - sum(counts_of[w] for w in alpha_primes)
                        - sigma_term
                    )
                    outcome.candidates_examined += 1
                    outcome.max_dim = dim if outcome.max_dim is None else max(outcome.max_dim, dim)
                    outcome.min_dim = dim if outcome.min_dim is None else min(outcome.min_dim, dim)

                    if not window_applies or not smoothness_window(dim, oriented).kind.violates:
                        continue

                    if s:
                        counts = Counter()
                        for w in alphas:
                            counts.update(cp2_classes[w])
                        for w in alpha_primes:
                            counts.update(bar_classes[w])
                        for _ in range(r):
                            counts.update(sphere_classes)
                        if _pair_count(counts) < s:
                            continue

                    cfg = ActionConfiguration(
                        p=p, alphas=alphas, alpha_primes=alpha_primes,
                        betas=[sphere] * r, s=s,
                    )
                    result = evaluate_oriented(cfg, X, flipped, constants.STRATEGY_BOUNDED)
                    if result.found:
                        log_with_context(
                            logger, "info",
                            f"Bounded search hit after {outcome.candidates_examined} candidates",
                            p=int(p), manifold=X.label, strategy=constants.STRATEGY_BOUNDED,
                            details={"m": m, "m_prime": m_prime, "r": r, "s": s},
                        )
                        outcome.result = result
                        return outcome

    if outcome.candidates_examined == 0:
        raise LimitsTooSmallError(
            f"limits {limits} leave no candidate for {X.label} at p={p}"
        )

    outcome.result = NoObstruction(
        manifold=X,
        reason=(
            f"no certificate among {outcome.candidates_examined} candidates "
            f"(dims {outcome.min_dim}..{outcome.max_dim})"
        ),
        orientation_flipped=flipped,
        family=constants.STRATEGY_BOUNDED,
    )
    return outcome


def check_strategy_applicable(X: ManifoldInvariants, strategy: str) -> None:
    """
    Reject manifolds a fixed family cannot describe.

    Raises:
        InvalidManifoldError: If X is not of the shape the family needs
        ValueError: For an unknown strategy
    """
    if strategy not in constants.STRATEGIES:
        raise ValueError(f"Unknown strategy: {strategy}")
    if strategy == constants.STRATEGY_THM13:
        if X.b2_plus != X.b2_minus or X.b2_plus < 2 or not X.spin:
            raise InvalidManifoldError(
                X.b2_plus, X.b2_minus, "thm13 applies to a connected sum of n >= 2 copies of S2xS2"
            )
    if strategy == constants.STRATEGY_THM14 and k3_stabilization_index(X) is None:
        raise InvalidManifoldError(X.b2_plus, X.b2_minus, "thm14 applies to K3 # t(S2xS2)")


def run_strategy(
    X: ManifoldInvariants,
    p: int,
    strategy: str,
    limits: Optional[SearchLimits] = None,
) -> Evaluation:
    """
    Produce a certificate for X at p with the named strategy.

    Raises:
        InvalidManifoldError: If X is not of the shape a fixed family needs
        RefusalError: If the construction declines
    """
    p = OddPrime(p)
    limits = limits or SearchLimits()
    check_strategy_applicable(X, strategy)

    if strategy == constants.STRATEGY_LEMMA42:
        return certify_lemma42(X, p)

    if strategy == constants.STRATEGY_THM13:
        return theorem_1_3_construct(X.b2_plus, p, limits.sphere_weight)

    if strategy == constants.STRATEGY_THM14:
        t = k3_stabilization_index(X)
        if p != constants.K3_PRIME:
            return NoObstruction(
                manifold=X,
                reason=f"the K3 pattern is defined at p={constants.K3_PRIME} only",
                family=constants.STRATEGY_THM14,
            )
        _require_stabilization_range(t)
        _, flipped = _orient(X)
        cfg = k3_stabilization_config(t, limits.sphere_weight)
        return evaluate_oriented(cfg, X, flipped, constants.STRATEGY_THM14)

    return bounded_search(X, p, limits).result

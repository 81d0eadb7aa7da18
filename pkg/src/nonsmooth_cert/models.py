"""Data models for manifolds, configurations, reports and certificates."""

from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

from nonsmooth_cert import constants
from nonsmooth_cert.exceptions import InvalidConfigurationError, InvalidManifoldError
from nonsmooth_cert.weights import (
    OddPrime,
    WeightCP2,
    WeightS4,
    validate_weight_cp2,
    validate_weight_s4,
)

MatchingPairs = Tuple[Tuple[int, int], ...]


class FailureLabel(Enum):
    """Labels for conditions that fail a realizability check or verification."""
    SIGNATURE_MISMATCH = "SignatureMismatch"
    EULER_MISMATCH = "EulerMismatch"
    INSUFFICIENT_PAIRS = "InsufficientPairs"
    INVALID_WEIGHT = "InvalidWeight"
    BAD_MATCHING = "BadMatching"
    INDEX_MISMATCH = "IndexMismatch"
    VERDICT_MISMATCH = "VerdictMismatch"
    WINDOW_NOT_VIOLATED = "WindowNotViolated"
    ORIENTATION_MISMATCH = "OrientationMismatch"
    NOT_SPIN = "NotSpin"
    INVALID_MANIFOLD = "InvalidManifold"
    NOT_PRIME = "NotPrime"
    LENGTH_MISMATCH = "LengthMismatch"


class VerdictKind(Enum):
    """Position of the invariant index relative to the window (-b2-, b2+)."""
    INSIDE_WINDOW = "InsideWindow"
    VIOLATES_UPPER = "ViolatesUpper"
    VIOLATES_LOWER = "ViolatesLower"
    INAPPLICABLE = "Inapplicable"

    @property
    def violates(self) -> bool:
        return self in (VerdictKind.VIOLATES_UPPER, VerdictKind.VIOLATES_LOWER)


@dataclass(frozen=True)
class Failure:
    """One labelled failed condition."""
    label: FailureLabel
    message: str

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {"label": self.label.value, "message": self.message}

    def __str__(self) -> str:
        return f"{self.label.value}: {self.message}"


@dataclass(frozen=True)
class ManifoldInvariants:
    """Numerical invariants of a closed, simply connected, oriented 4-manifold."""
    b2_plus: int
    b2_minus: int
    spin: bool = True

    def __post_init__(self):
        for value in (self.b2_plus, self.b2_minus):
            if isinstance(value, bool) or not isinstance(value, int) or value < 0:
                raise InvalidManifoldError(
                    self.b2_plus, self.b2_minus, "Betti numbers must be non-negative integers"
                )
        if self.spin and self.sigma % 8:
            raise InvalidManifoldError(
                self.b2_plus, self.b2_minus,
                f"a spin manifold needs signature divisible by 8, got {self.sigma}"
            )

    @property
    def sigma(self) -> int:
        return self.b2_plus - self.b2_minus

    @property
    def chi(self) -> int:
        return 2 + self.b2_plus + self.b2_minus

    @property
    def b2(self) -> int:
        return self.b2_plus + self.b2_minus

    @property
    def b2_max(self) -> int:
        return max(self.b2_plus, self.b2_minus)

    @property
    def label(self) -> str:
        return f"({self.b2_plus},{self.b2_minus})"

    def reversed(self) -> "ManifoldInvariants":
        """The same manifold with the opposite orientation."""
        return ManifoldInvariants(self.b2_minus, self.b2_plus, self.spin)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {"b2_plus": self.b2_plus, "b2_minus": self.b2_minus, "spin": self.spin}


@dataclass(frozen=True)
class ActionConfiguration:
    """
    Candidate disjoint union of linear models.

    m CP2 components with weights alphas, m' orientation-reversed CP2
    components with weights alpha_primes, r S4 components with weights
    betas, and the number s of cancelling pairs to remove. Weights are
    validated for p on construction.
    """
    p: int
    alphas: Tuple[WeightCP2, ...] = ()
    alpha_primes: Tuple[WeightCP2, ...] = ()
    betas: Tuple[WeightS4, ...] = ()
    s: int = 0

    def __post_init__(self):
        p = OddPrime(self.p)
        object.__setattr__(self, "p", p)
        object.__setattr__(
            self, "alphas", tuple(validate_weight_cp2(p, a) for a in self.alphas)
        )
        object.__setattr__(
            self, "alpha_primes", tuple(validate_weight_cp2(p, a) for a in self.alpha_primes)
        )
        object.__setattr__(
            self, "betas", tuple(validate_weight_s4(p, b) for b in self.betas)
        )
        if isinstance(self.s, bool) or not isinstance(self.s, int) or self.s < 0:
            raise InvalidConfigurationError(f"s must be a non-negative integer, got {self.s!r}")

    @property
    def m(self) -> int:
        return len(self.alphas)

    @property
    def m_prime(self) -> int:
        return len(self.alpha_primes)

    @property
    def r(self) -> int:
        return len(self.betas)

    @property
    def point_count(self) -> int:
        return 3 * (self.m + self.m_prime) + 2 * self.r

    def reversed(self) -> "ActionConfiguration":
        """
        The configuration realizing the same data on the reversed manifold.

        CP2 and orientation-reversed CP2 components trade places; S4
        components admit an orientation-reversing equivariant map, so the
        sphere weights and s stay as they are.
        """
        return ActionConfiguration(
            p=self.p,
            alphas=self.alpha_primes,
            alpha_primes=self.alphas,
            betas=self.betas,
            s=self.s,
        )

    def summary(self) -> Dict[str, int]:
        return {"m": self.m, "m_prime": self.m_prime, "r": self.r, "s": self.s}


@dataclass
class RealizabilityReport:
    """Outcome of checking the realizability hypotheses for a configuration."""
    arithmetic_ok: bool
    residual_count: int
    matching: Optional[MatchingPairs] = None
    available_pairs: Optional[int] = None
    failures: List[Failure] = field(default_factory=list)
    provenance: str = constants.REALIZABILITY_PROVENANCE

    @property
    def realizable(self) -> bool:
        return self.arithmetic_ok and self.matching is not None and not self.failures

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "arithmetic_ok": self.arithmetic_ok,
            "realizable": self.realizable,
            "residual_count": self.residual_count,
            "available_pairs": self.available_pairs,
            "matching": [list(pair) for pair in self.matching] if self.matching is not None else None,
            "failures": [f.to_dict() for f in self.failures],
            "provenance": self.provenance,
        }


@dataclass(frozen=True)
class IndexValue:
    """Dimension of the invariant part of the Z_p-index of the Dirac operator."""
    dim: int
    sum_alpha: int
    sum_alpha_prime: int
    sigma_term: int

    def to_dict(self) -> Dict[str, int]:
        """Convert to dictionary."""
        return {
            "dim": self.dim,
            "sum_alpha": self.sum_alpha,
            "sum_alpha_prime": self.sum_alpha_prime,
        }


@dataclass(frozen=True)
class Verdict:
    """Classification of an index against the open window (lower, upper)."""
    kind: VerdictKind
    lower: int
    upper: int

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {"kind": self.kind.value, "window": [self.lower, self.upper]}


@dataclass(frozen=True)
class NonsmoothabilityCertificate:
    """
    Self-contained record that a locally linear action cannot be smooth.

    manifold is the manifold as given. config, matching, index and verdict
    refer to the orientation with signature <= 0, which is the reversed
    manifold exactly when orientation_flipped is set.
    """
    manifold: ManifoldInvariants
    config: ActionConfiguration
    matching: MatchingPairs
    index: IndexValue
    verdict: Verdict
    orientation_flipped: bool = False
    family: str = ""

    found = True

    @property
    def p(self) -> int:
        return self.config.p

    @property
    def oriented_manifold(self) -> ManifoldInvariants:
        return self.manifold.reversed() if self.orientation_flipped else self.manifold


@dataclass
class NoObstruction:
    """A candidate that was examined and yields no certificate."""
    manifold: ManifoldInvariants
    reason: str
    config: Optional[ActionConfiguration] = None
    report: Optional[RealizabilityReport] = None
    index: Optional[IndexValue] = None
    verdict: Optional[Verdict] = None
    orientation_flipped: bool = False
    family: str = ""

    found = False

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "found": False,
            "manifold": self.manifold.to_dict(),
            "reason": self.reason,
            "family": self.family,
            "config": self.config.summary() if self.config else None,
            "index": self.index.to_dict() if self.index else None,
            "verdict": self.verdict.to_dict() if self.verdict else None,
            "failures": [f.to_dict() for f in self.report.failures] if self.report else [],
            "orientation_flipped": self.orientation_flipped,
        }


@dataclass
class VerificationResult:
    """Outcome of independently re-checking a certificate."""
    accepted: bool
    diagnostics: List[Failure] = field(default_factory=list)

    @property
    def labels(self) -> List[FailureLabel]:
        return [d.label for d in self.diagnostics]

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "accepted": self.accepted,
            "diagnostics": [d.to_dict() for d in self.diagnostics],
        }


@dataclass(frozen=True)
class PrimeBound:
    """Threshold 12 * floor((b2max + 1) / 2) - 5 on the prime."""
    b2max: int
    bound: int


@dataclass(frozen=True)
class Lemma42Construction:
    """The two candidate configurations of the general construction."""
    manifold: ManifoldInvariants
    orientation_flipped: bool
    case: str
    candidates: Tuple[ActionConfiguration, ActionConfiguration]
    rokhlin_vacuous: bool = False

    @property
    def oriented_manifold(self) -> ManifoldInvariants:
        return self.manifold.reversed() if self.orientation_flipped else self.manifold


@dataclass(frozen=True)
class SearchLimits:
    """Bounds for the bounded generic search."""
    pool_limit: int = constants.DEFAULT_POOL_LIMIT
    max_period: int = constants.DEFAULT_MAX_PERIOD
    max_extra_components: int = constants.DEFAULT_MAX_EXTRA_COMPONENTS
    sphere_weight: Sequence[int] = constants.DEFAULT_SPHERE_WEIGHT


@dataclass
class SearchOutcome:
    """Result of the bounded search."""
    result: Any
    candidates_examined: int = 0
    max_dim: Optional[int] = None
    min_dim: Optional[int] = None

    @property
    def found(self) -> bool:
        return bool(getattr(self.result, "found", False))


@dataclass
class SweepRow:
    """One prime of a prime sweep."""
    p: int
    found: bool
    dim: Optional[int]
    family: str
    runtime_ms: int
    certificate: Optional[NonsmoothabilityCertificate] = None

    def csv_fields(self) -> List[str]:
        return [
            str(self.p),
            "true" if self.found else "false",
            "" if self.dim is None else str(self.dim),
            self.family,
            str(self.runtime_ms),
        ]

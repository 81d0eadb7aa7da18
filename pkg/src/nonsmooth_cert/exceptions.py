"""Custom exceptions for nonsmooth-cert."""

from typing import Sequence


class NonsmoothCertError(Exception):
    """Base exception for all nonsmooth-cert errors."""
    pass


# =============================================================================
# Malformed input (CLI exit code 2)
# =============================================================================

class InputError(NonsmoothCertError):
    """Base exception for malformed or invalid input data."""
    pass


class NotPrimeError(InputError):
    """Exception raised when a modulus is not an odd prime >= 5."""

    def __init__(self, value: int):
        """
        Initialize not-prime error.

        Args:
            value: Offending modulus
        """
        self.value = value
        super().__init__(f"{value} is not a prime number >= 5")


class WeightError(InputError):
    """Base exception for invalid representation weights."""

    def __init__(self, p: int, weight: Sequence[int], reason: str):
        """
        Initialize weight error.

        Args:
            p: Prime the weight was checked against
            weight: Offending integer weight
            reason: Human readable reason
        """
        self.p = p
        self.weight = tuple(weight)
        self.reason = reason
        super().__init__(f"Invalid weight {self.weight} for p={p}: {reason}")


class CongruentEntriesError(WeightError):
    """Exception raised when two CP2 weight entries agree modulo p."""

    def __init__(self, p: int, weight: Sequence[int], i: int, j: int):
        """
        Initialize congruent entries error.

        Args:
            p: Prime
            weight: Offending weight
            i: Index of the first congruent entry
            j: Index of the second congruent entry
        """
        self.i = i
        self.j = j
        super().__init__(p, weight, f"entries {i} and {j} are congruent mod {p}")


class OddTotalError(WeightError):
    """Exception raised when a CP2 weight has an odd entry sum."""

    def __init__(self, p: int, weight: Sequence[int]):
        """
        Initialize odd total error.

        Args:
            p: Prime
            weight: Offending weight
        """
        super().__init__(p, weight, f"entry sum {sum(weight)} is odd")


class ZeroEntryError(WeightError):
    """Exception raised when an S4 weight entry vanishes modulo p."""

    def __init__(self, p: int, weight: Sequence[int], i: int):
        """
        Initialize zero entry error.

        Args:
            p: Prime
            weight: Offending weight
            i: Index of the vanishing entry
        """
        self.i = i
        super().__init__(p, weight, f"entry {i} is congruent to 0 mod {p}")


class InvalidManifoldError(InputError):
    """Exception raised when numerical invariants cannot describe the manifold."""

    def __init__(self, b2_plus: int, b2_minus: int, reason: str):
        """
        Initialize invalid manifold error.

        Args:
            b2_plus: Positive second Betti number
            b2_minus: Negative second Betti number
            reason: Why the invariants are rejected
        """
        self.b2_plus = b2_plus
        self.b2_minus = b2_minus
        self.reason = reason
        super().__init__(f"Invalid manifold (b2+={b2_plus}, b2-={b2_minus}): {reason}")


class ConfigurationError(InputError):
    """Exception raised for configuration errors."""
    pass


class CertificateFormatError(InputError):
    """Exception raised when a certificate document is structurally malformed."""
    pass


class InvalidConfigurationError(InputError):
    """Exception raised when an action configuration is malformed."""

    def __init__(self, reason: str):
        """
        Initialize invalid configuration error.

        Args:
            reason: What is wrong with the configuration
        """
        self.reason = reason
        super().__init__(f"Invalid configuration: {reason}")


# =============================================================================
# Computation errors
# =============================================================================

class ComputationError(NonsmoothCertError):
    """Base exception for failed computations on well-formed input."""
    pass


class UnsupportedFamilyError(ComputationError):
    """Exception raised when no closed form is known for a weight."""

    def __init__(self, weight: Sequence[int]):
        """
        Initialize unsupported family error.

        Args:
            weight: Weight without a closed form
        """
        self.weight = tuple(weight)
        super().__init__(f"No closed form for weight family {self.weight}")


class InsufficientPairsError(ComputationError):
    """Exception raised when fewer disjoint cancelling pairs exist than requested."""

    def __init__(self, requested: int, available: int):
        """
        Initialize insufficient pairs error.

        Args:
            requested: Number of pairs requested
            available: Maximum number of disjoint cancelling pairs
        """
        self.requested = requested
        self.available = available
        super().__init__(
            f"Requested {requested} disjoint cancelling pairs, only {available} exist"
        )


class BadMatchingError(ComputationError):
    """Exception raised when a matching is not a set of disjoint cancelling pairs."""

    def __init__(self, reason: str):
        """
        Initialize bad matching error.

        Args:
            reason: What is wrong with the matching
        """
        self.reason = reason
        super().__init__(f"Bad matching: {reason}")


class NotSpinError(ComputationError):
    """Exception raised when the Dirac index is requested on a non-spin manifold."""

    def __init__(self):
        super().__init__("The Dirac operator index requires a spin manifold")


class SignatureNotDivisibleBy8Error(ComputationError):
    """Exception raised when the signature is not divisible by 8."""

    def __init__(self, sigma: int):
        """
        Initialize signature error.

        Args:
            sigma: Offending signature
        """
        self.sigma = sigma
        super().__init__(f"Signature {sigma} is not divisible by 8")


class LimitsTooSmallError(ComputationError):
    """Exception raised when search limits leave no candidate to examine."""
    pass


# =============================================================================
# Refusals (the construction declines; CLI exit code 1)
# =============================================================================

class RefusalError(NonsmoothCertError):
    """Base exception for constructions that decline to produce a candidate."""
    pass


class ExcludedManifoldError(RefusalError):
    """Exception raised for manifolds the construction excludes (S4, S2xS2)."""

    def __init__(self, b2_plus: int, b2_minus: int):
        """
        Initialize excluded manifold error.

        Args:
            b2_plus: Positive second Betti number
            b2_minus: Negative second Betti number
        """
        self.b2_plus = b2_plus
        self.b2_minus = b2_minus
        super().__init__(
            f"Manifold with (b2+, b2-) = ({b2_plus}, {b2_minus}) is excluded "
            f"(homeomorphic to S4 or S2xS2)"
        )


class VacuousByDonaldsonError(RefusalError):
    """Exception raised when too few cancelling pairs are available and X admits no smooth structure."""

    def __init__(self, b2_plus: int, b2_minus: int, s: int, limit: int):
        """
        Initialize vacuous-by-Donaldson error.

        Args:
            b2_plus: Positive second Betti number (oriented so sigma <= 0)
            b2_minus: Negative second Betti number (oriented so sigma <= 0)
            s: Cancelling pairs the second case would need
            limit: Cancelling pairs the chain can provide
        """
        self.b2_plus = b2_plus
        self.b2_minus = b2_minus
        self.s = s
        self.limit = limit
        super().__init__(
            f"Case II needs s={s} pairs but only {limit} are available; "
            f"b2+={b2_plus} < 3 with sigma != 0 admits no smooth structure"
        )


class OutOfRangeError(RefusalError):
    """Exception raised when a fixed family cannot violate the window."""

    def __init__(self, parameter: str, value: int, reason: str):
        """
        Initialize out of range error.

        Args:
            parameter: Name of the parameter
            value: Offending value
            reason: Why no violation occurs
        """
        self.parameter = parameter
        self.value = value
        self.reason = reason
        super().__init__(f"{parameter}={value} is out of range: {reason}")

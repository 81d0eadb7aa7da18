"""Residue arithmetic for weights and the lattice-point count N(p, alpha).

N(p, alpha) counts the ordered triplets (n0, n1, n2) of non-negative integers
with n0 + n1 + n2 = (p - 3) / 2 and a0*n0 + a1*n1 + a2*n2 + |alpha|/2 = 0
mod p. It is the number of degree (p - 3) / 2 monomials in three variables
whose weighted exponent sum hits the residue -|alpha|/2, and equals the
contribution of one CP2 model to the invariant Dirac index.
"""

from dataclasses import dataclass
from functools import lru_cache
from typing import List, Sequence, Tuple, Union

from sympy import isprime

from nonsmooth_cert import constants
from nonsmooth_cert.exceptions import (
    CongruentEntriesError,
    NotPrimeError,
    OddTotalError,
    UnsupportedFamilyError,
    WeightError,
    ZeroEntryError,
)


class OddPrime(int):
    """An integer modulus verified to be a prime >= 5 at construction."""

    def __new__(cls, value: int) -> "OddPrime":
        if isinstance(value, bool) or not isinstance(value, int):
            raise NotPrimeError(value)
        if value < 5 or not isprime(value):
            raise NotPrimeError(value)
        return super().__new__(cls, value)

    @property
    def half_degree(self) -> int:
        """Degree (p - 3) / 2 of the counted monomials."""
        return (self - 3) // 2

    @property
    def triplet_count(self) -> int:
        """Number of triplets of that degree, (p^2 - 1) / 8."""
        return (self * self - 1) // 8


@dataclass(frozen=True, order=True)
class WeightCP2:
    """Integer weight (a0, a1, a2) of a linear action on CP2.

    The integer lift is authoritative: |alpha| / 2 depends on it, so entries
    are never reduced mod p.
    """
    a0: int
    a1: int
    a2: int

    @property
    def entries(self) -> Tuple[int, int, int]:
        return (self.a0, self.a1, self.a2)

    @property
    def total(self) -> int:
        return self.a0 + self.a1 + self.a2

    def to_list(self) -> List[int]:
        return list(self.entries)

    def __str__(self) -> str:
        return f"({self.a0},{self.a1},{self.a2})"


@dataclass(frozen=True, order=True)
class WeightS4:
    """Integer weight (b1, b2) of a linear action on S4."""
    b1: int
    b2: int

    @property
    def entries(self) -> Tuple[int, int]:
        return (self.b1, self.b2)

    def to_list(self) -> List[int]:
        return list(self.entries)

    def __str__(self) -> str:
        return f"({self.b1},{self.b2})"


CP2Like = Union[WeightCP2, Sequence[int]]
S4Like = Union[WeightS4, Sequence[int]]


def _entries(weight, size: int, p: int) -> Tuple[int, ...]:
    if isinstance(weight, (WeightCP2, WeightS4)):
        entries = weight.entries
    else:
        entries = tuple(weight)
    if len(entries) != size or not all(
        isinstance(e, int) and not isinstance(e, bool) for e in entries
    ):
        raise WeightError(p, entries, f"expected {size} integer entries")
    return entries


def validate_weight_cp2(p: int, a: CP2Like) -> WeightCP2:
    """
    Validate a CP2 weight against a prime.

    Args:
        p: Prime >= 5
        a: Three integer entries

    Returns:
        The weight with its integer lift unchanged

    Raises:
        NotPrimeError: If p is not a prime >= 5
        CongruentEntriesError: If two entries agree mod p
        OddTotalError: If a0 + a1 + a2 is odd
    """
    p = OddPrime(p)
    entries = _entries(a, 3, p)
    for i in range(3):
        for j in range(i + 1, 3):
            if (entries[i] - entries[j]) % p == 0:
                raise CongruentEntriesError(p, entries, i, j)
    if sum(entries) % 2:
        raise OddTotalError(p, entries)
    return WeightCP2(*entries)


def validate_weight_s4(p: int, b: S4Like) -> WeightS4:
    """
    Validate an S4 weight against a prime.

    Args:
        p: Prime >= 5
        b: Two integer entries

    Returns:
        The validated weight

    Raises:
        NotPrimeError: If p is not a prime >= 5
        ZeroEntryError: If an entry is divisible by p
    """
    p = OddPrime(p)
    entries = _entries(b, 2, p)
    for i, entry in enumerate(entries):
        if entry % p == 0:
            raise ZeroEntryError(p, entries, i)
    return WeightS4(*entries)


@lru_cache(maxsize=None)
def _spectrum(p: int, r0: int, r1: int, r2: int, shift: int) -> Tuple[int, ...]:
    # Lexicographic in (n0, n1); n2 is determined by the degree
    h = (p - 3) // 2
    counts = [0] * p
    for n0 in range(h + 1):
        for n1 in range(h - n0 + 1):
            n2 = h - n0 - n1
            counts[(r0 * n0 + r1 * n1 + r2 * n2 + shift) % p] += 1
    return tuple(counts)


def residue_spectrum(p: int, alpha: CP2Like) -> List[int]:
    """
    Distribution of a0*n0 + a1*n1 + a2*n2 + |alpha|/2 over residues mod p.

    Entry t counts the triplets landing on residue t. Entry 0 is
    N(p, alpha) and the entries sum to (p^2 - 1) / 8.

    Args:
        p: Prime >= 5
        alpha: CP2 weight valid for p

    Returns:
        List of p non-negative integers
    """
    weight = validate_weight_cp2(p, alpha)
    return list(_spectrum(
        int(p),
        weight.a0 % p,
        weight.a1 % p,
        weight.a2 % p,
        (weight.total // 2) % p,
    ))


def lattice_count(p: int, alpha: CP2Like) -> int:
    """
    Count N(p, alpha) by exhaustive enumeration of the (p^2 - 1) / 8 triplets.

    Args:
        p: Prime >= 5
        alpha: CP2 weight valid for p

    Returns:
        N(p, alpha)
    """
    return residue_spectrum(p, alpha)[0]


def split_twelve(p: int) -> Tuple[int, int]:
    """
    Write p = 12*l + q with q in {-5, -1, 1, 5}.

    Args:
        p: Prime >= 5

    Returns:
        Tuple (l, q)
    """
    p = OddPrime(p)
    l = (p + 5) // 12
    return l, p - 12 * l


def two_l(p: int) -> int:
    """Gap N(p, (-1,0,1)) - N(p, (-1,1,2)) = 2l for p = 12l + q."""
    return 2 * split_twelve(p)[0]


def closed_form_count(p: int, family: CP2Like) -> int:
    """
    N(p, alpha) for the two families with a closed form.

    N(p, (-1,0,1)) = k for p = 4k +- 1, and N(p, (-1,1,2)) is l - 1, l or
    l + 1 for p = 12l - 5, 12l +- 1 or 12l + 5.

    Args:
        p: Prime >= 5
        family: Either (-1, 0, 1) or (-1, 1, 2), as an exact integer lift

    Returns:
        N(p, family)

    Raises:
        UnsupportedFamilyError: For any other weight
    """
    p = OddPrime(p)
    key = family.entries if isinstance(family, WeightCP2) else tuple(family)

    if key == constants.FAMILY_ALPHA_0:
        return (p + 1) // 4

    if key == constants.FAMILY_ALPHA_PRIME_0:
        l, q = split_twelve(p)
        return {-5: l - 1, -1: l, 1: l, 5: l + 1}[q]

    raise UnsupportedFamilyError(key)


def translate_weight(alpha: WeightCP2, c: int) -> WeightCP2:
    """
    Shift every entry by an even integer.

    The action on CP2 only sees entry differences; an even shift also keeps
    the total even, so N(p, alpha) and the fixed point data are unchanged.
    """
    if c % 2:
        raise ValueError(f"translation {c} must be even")
    return WeightCP2(alpha.a0 + c, alpha.a1 + c, alpha.a2 + c)


def negate_weight(alpha: WeightCP2) -> WeightCP2:
    """Negate every entry (the complex conjugate representation)."""
    return WeightCP2(-alpha.a0, -alpha.a1, -alpha.a2)


def scale_weight(p: int, alpha: WeightCP2, u: int) -> WeightCP2:
    """
    Multiply every entry by a unit mod p.

    Args:
        p: Prime >= 5
        alpha: CP2 weight
        u: Integer not divisible by p

    Returns:
        Scaled weight (replaces the generator of Z_p by its u-th power)
    """
    p = OddPrime(p)
    if u % p == 0:
        raise ValueError(f"scale {u} is not a unit mod {p}")
    return validate_weight_cp2(p, (u * alpha.a0, u * alpha.a1, u * alpha.a2))

"""Fixed point data of the linear models and cancelling-pair matching."""

from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from nonsmooth_cert import constants
from nonsmooth_cert.exceptions import (
    BadMatchingError,
    InsufficientPairsError,
    WeightError,
)
from nonsmooth_cert.models import ActionConfiguration, MatchingPairs
from nonsmooth_cert.weights import (
    OddPrime,
    WeightCP2,
    WeightS4,
    validate_weight_cp2,
    validate_weight_s4,
)


def canonical_pair(p: int, c: int, d: int) -> Tuple[int, int]:
    """Lexicographic minimum of {(c,d), (d,c), (p-c,p-d), (p-d,p-c)} mod p."""
    c %= p
    d %= p
    return min((c, d), (d, c), ((p - c) % p, (p - d) % p), ((p - d) % p, (p - c) % p))


@dataclass(frozen=True, order=True)
class RotationClass:
    """
    Isomorphism class of the tangent representation C_c + C_d at a fixed point.

    Stored in canonical form; use RotationClass.of to build one.
    """
    p: int
    c: int
    d: int

    @classmethod
    def of(cls, p: int, c: int, d: int) -> "RotationClass":
        """
        Build the class of the rotation pair (c, d).

        Raises:
            WeightError: If c or d vanishes mod p (the point would not be isolated)
        """
        p = int(p)
        if c % p == 0 or d % p == 0:
            raise WeightError(p, (c, d), "rotation numbers must be non-zero mod p")
        cc, dd = canonical_pair(p, c, d)
        # 2x = 0 mod p has no non-zero solution for odd p
        assert canonical_pair(p, cc, p - dd) != (cc, dd)
        return cls(p, cc, dd)

    def to_list(self) -> List[int]:
        return [self.c, self.d]

    def __str__(self) -> str:
        return f"[{self.c},{self.d}]"


def reverse_class(kappa: RotationClass) -> RotationClass:
    """Class of the same representation with the opposite orientation."""
    return RotationClass.of(kappa.p, kappa.c, kappa.p - kappa.d)


@dataclass(frozen=True, order=True)
class OrientedFixedPoint:
    """A fixed point of a component, recorded in the standard orientation."""
    rotation_class: RotationClass
    kind: str
    component: int
    label: str

    @property
    def source(self) -> str:
        return f"{self.kind}#{self.component}{self.label}"


@dataclass(frozen=True)
class FixedPointMultiset:
    """Fixed points of a disjoint union, in enumeration order."""
    p: int
    points: Tuple[OrientedFixedPoint, ...]

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self) -> Iterator[OrientedFixedPoint]:
        return iter(self.points)

    def __getitem__(self, index: int) -> OrientedFixedPoint:
        return self.points[index]

    def class_counts(self) -> Counter:
        return Counter(point.rotation_class for point in self.points)


def component_fixed_points(
    p: int,
    kind: str,
    weight: Sequence[int],
    component: int = 0,
) -> List[OrientedFixedPoint]:
    """
    Fixed points of one linear model.

    CP2 with weight (a0, a1, a2) has rotation pairs (a1-a0, a2-a0),
    (a0-a1, a2-a1) and (a0-a2, a1-a2) at [1,0,0], [0,1,0] and [0,0,1]. The
    orientation-reversed copy flips the sign of the second rotation number.
    S4 with weight (b1, b2) has the classes of (b1, b2) and (b1, -b2) at its
    north and south poles.

    Args:
        p: Prime >= 5
        kind: One of "cp2", "cp2bar", "s4"
        weight: Weight valid for p and kind
        component: Index of the component within its kind

    Returns:
        List of fixed points in label order
    """
    p = OddPrime(p)

    if kind == constants.KIND_S4:
        b1, b2 = validate_weight_s4(p, weight).entries
        pairs = [(b1, b2), (b1, -b2)]
        labels = constants.S4_POINT_LABELS
    elif kind in (constants.KIND_CP2, constants.KIND_CP2BAR):
        a0, a1, a2 = validate_weight_cp2(p, weight).entries
        pairs = [(a1 - a0, a2 - a0), (a0 - a1, a2 - a1), (a0 - a2, a1 - a2)]
        if kind == constants.KIND_CP2BAR:
            pairs = [(c, -d) for c, d in pairs]
        labels = constants.CP2_POINT_LABELS
    else:
        raise ValueError(f"Unknown component kind: {kind}")

    return [
        OrientedFixedPoint(RotationClass.of(p, c, d), kind, component, label)
        for (c, d), label in zip(pairs, labels)
    ]


def configuration_fixed_points(cfg: ActionConfiguration) -> FixedPointMultiset:
    """
    Enumerate the fixed points of the disjoint union a configuration describes.

    Order: CP2 components, then orientation-reversed CP2, then S4; within a
    component, [1,0,0], [0,1,0], [0,0,1] or north, south. Matchings index
    into this order.
    """
    points: List[OrientedFixedPoint] = []
    groups = (
        (constants.KIND_CP2, cfg.alphas),
        (constants.KIND_CP2BAR, cfg.alpha_primes),
        (constants.KIND_S4, cfg.betas),
    )
    for kind, weights in groups:
        for index, weight in enumerate(weights):
            points.extend(component_fixed_points(cfg.p, kind, weight.entries, index))
    return FixedPointMultiset(cfg.p, tuple(points))


def is_cancelling_pair(x: OrientedFixedPoint, y: OrientedFixedPoint) -> Optional[WeightS4]:
    """
    Decide whether two fixed points form a cancelling pair.

    Returns:
        The lexicographically smaller of the two classes as a sphere weight
        beta, whose S4 model carries exactly the data of the pair; None if
        the classes are not reverses of each other
    """
    a, b = x.rotation_class, y.rotation_class
    if a.p != b.p or b != reverse_class(a):
        return None
    smaller = min(a, b)
    return WeightS4(smaller.c, smaller.d)


def weights_equivalent_s4(p: int, beta: Sequence[int], gamma: Sequence[int]) -> bool:
    """Whether two sphere weights give the same fixed point data."""
    first = sorted(pt.rotation_class for pt in component_fixed_points(p, constants.KIND_S4, beta))
    second = sorted(pt.rotation_class for pt in component_fixed_points(p, constants.KIND_S4, gamma))
    return first == second


def _class_pairs(counts: Counter) -> Iterator[Tuple[RotationClass, RotationClass]]:
    for kappa in sorted(counts):
        partner = reverse_class(kappa)
        if kappa < partner and partner in counts:
            yield kappa, partner


def max_cancelling_pairs(fps: FixedPointMultiset) -> int:
    """
    Maximum number of pairwise disjoint cancelling pairs.

    Cancellation only links a class to its reverse and no class is its own
    reverse, so the maximum is the sum of min(mult(k), mult(reverse(k))).
    """
    counts = fps.class_counts()
    return sum(min(counts[a], counts[b]) for a, b in _class_pairs(counts))


def select_disjoint_pairs(fps: FixedPointMultiset, s: int) -> MatchingPairs:
    """
    Choose s disjoint cancelling pairs deterministically.

    Class pairs are visited in class order; within one, points are paired
    greedily in enumeration order.

    Args:
        fps: Enumerated fixed points
        s: Number of pairs required

    Returns:
        Tuple of s index pairs (i, j) with i < j

    Raises:
        InsufficientPairsError: If fewer than s disjoint pairs exist
    """
    if s < 0:
        raise ValueError(f"s must be non-negative, got {s}")

    available = max_cancelling_pairs(fps)
    if s > available:
        raise InsufficientPairsError(s, available)

    positions: Dict[RotationClass, List[int]] = defaultdict(list)
    for index, point in enumerate(fps.points):
        positions[point.rotation_class].append(index)

    matching: List[Tuple[int, int]] = []
    for a, b in _class_pairs(Counter(positions.keys())):
        for i, j in zip(positions[a], positions[b]):
            if len(matching) == s:
                return tuple(matching)
            matching.append((min(i, j), max(i, j)))
    return tuple(matching[:s])


def check_matching(fps: FixedPointMultiset, matching: Iterable[Sequence[int]]) -> None:
    """
    Check that index pairs are disjoint cancelling pairs of fps.

    Raises:
        BadMatchingError: Describing the first problem found
    """
    used = set()
    for pair in matching:
        if len(pair) != 2:
            raise BadMatchingError(f"{list(pair)} is not an index pair")
        i, j = pair
        for index in (i, j):
            if not 0 <= index < len(fps):
                raise BadMatchingError(f"index {index} outside 0..{len(fps) - 1}")
        if i == j:
            raise BadMatchingError(f"pair ({i}, {j}) repeats a point")
        if i in used or j in used:
            raise BadMatchingError(f"pair ({i}, {j}) reuses a matched point")
        if is_cancelling_pair(fps[i], fps[j]) is None:
            raise BadMatchingError(
                f"points {i} {fps[i].rotation_class} and {j} {fps[j].rotation_class} "
                f"do not cancel"
            )
        used.update((i, j))


@dataclass(frozen=True)
class ExamplePair:
    """Two CP2 components and the labels of a cancelling pair between them."""
    first: WeightCP2
    second: WeightCP2
    first_label: str
    second_label: str

    def points(self, p: int) -> Tuple[OrientedFixedPoint, OrientedFixedPoint]:
        x = _point_with_label(p, self.first, self.first_label, 0)
        y = _point_with_label(p, self.second, self.second_label, 1)
        return x, y


def _point_with_label(p: int, weight: WeightCP2, label: str, component: int) -> OrientedFixedPoint:
    for point in component_fixed_points(p, constants.KIND_CP2, weight.entries, component):
        if point.label == label:
            return point
    raise ValueError(f"Unknown point label: {label}")


def example_pair_general(p: int, a: int, b: int, c: int) -> ExamplePair:
    """
    [0,0,1] on CP2_(a,b,b+c) cancels [0,1,0] on CP2_(a,b+c,b+2c).

    Requires a-b, a-b-c, a-b-2c and c non-zero mod p, and a = c mod 2.
    """
    p = OddPrime(p)
    for value, name in ((a - b, "a-b"), (a - b - c, "a-b-c"), (a - b - 2 * c, "a-b-2c"), (c, "c")):
        if value % p == 0:
            raise WeightError(p, (a, b, c), f"{name} is divisible by {p}")
    if (a - c) % 2:
        raise WeightError(p, (a, b, c), "a and c must have the same parity")
    return ExamplePair(
        first=validate_weight_cp2(p, (a, b, b + c)),
        second=validate_weight_cp2(p, (a, b + c, b + 2 * c)),
        first_label=constants.CP2_POINT_LABELS[2],
        second_label=constants.CP2_POINT_LABELS[1],
    )


def example_pair_consecutive(p: int, i: int) -> ExamplePair:
    """[0,0,1] on CP2_(-1,i,i+1) cancels [0,1,0] on CP2_(-1,i+1,i+2)."""
    p = OddPrime(p)
    if i % p in ((-1) % p, (-2) % p, (-3) % p):
        raise WeightError(p, (-1, i, i + 1), f"i must avoid -1, -2, -3 mod {p}")
    return example_pair_general(p, -1, i, 1)


def example_pair_wrap(p: int) -> ExamplePair:
    """[0,0,1] on CP2_(-1,p-4,p-3) cancels [1,0,0] on CP2_(-1,0,1)."""
    p = OddPrime(p)
    return ExamplePair(
        first=validate_weight_cp2(p, (-1, p - 4, p - 3)),
        second=validate_weight_cp2(p, constants.FAMILY_ALPHA_0),
        first_label=constants.CP2_POINT_LABELS[2],
        second_label=constants.CP2_POINT_LABELS[0],
    )


def chain_weights(p: int, n: int, start: int = 1) -> List[WeightCP2]:
    """
    Weights (-1, R(i), R(i)+1) for start <= i < start + n, R(i) = i mod (p-3).

    Consecutive components of the chain cancel in pairs, wrapping from
    R = p-4 back to R = 0, so n components carry at least n-1 disjoint
    cancelling pairs.
    """
    p = OddPrime(p)
    weights = []
    for i in range(start, start + n):
        residue = i % (p - 3)
        weights.append(validate_weight_cp2(p, (-1, residue, residue + 1)))
    return weights


def k3_cycle_weights(count: int = constants.K3_COMPONENTS) -> List[WeightCP2]:
    """The four K3 pattern weights at p = 11, repeated cyclically."""
    cycle = [validate_weight_cp2(constants.K3_PRIME, w) for w in constants.K3_CYCLE]
    return [cycle[j % len(cycle)] for j in range(count)]

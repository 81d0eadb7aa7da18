"""Invariant Dirac index, the smoothness window, and certificates.

If a homologically trivial pseudofree Z_p action on a spin manifold X with
b2+ and b2- positive were smooth, the dimension of the Z_p-invariant part of
the Z_p-index of the Dirac operator would satisfy

    -b2-(X) < dim < b2+(X).

For an action built from a configuration that dimension is

    sum_i N(p, alpha_i) - sum_j N(p, alpha'_j) - sigma(X) * p / 8,

so a configuration that is realizable and lands outside the window
certifies that the action is not smooth for any smooth structure on X.
"""

from pathlib import Path
from typing import Any, Dict, List, Tuple, Union

from nonsmooth_cert.exceptions import (
    BadMatchingError,
    CertificateFormatError,
    InvalidConfigurationError,
    InvalidManifoldError,
    NotPrimeError,
    NotSpinError,
    SignatureNotDivisibleBy8Error,
    WeightError,
)
from nonsmooth_cert.fixed_points import check_matching, configuration_fixed_points
from nonsmooth_cert.logging_config import get_logger, log_with_context
from nonsmooth_cert.models import (
    ActionConfiguration,
    Failure,
    FailureLabel,
    IndexValue,
    ManifoldInvariants,
    NoObstruction,
    NonsmoothabilityCertificate,
    Verdict,
    VerdictKind,
    VerificationResult,
)
from nonsmooth_cert.realizability import check_arithmetic, check_realizable
from nonsmooth_cert.utils.file_ops import atomic_write_json, read_json
from nonsmooth_cert.weights import (
    OddPrime,
    lattice_count,
    validate_weight_cp2,
    validate_weight_s4,
)

logger = get_logger("nonsmooth_cert.obstruction")

Evaluation = Union[NonsmoothabilityCertificate, NoObstruction]


def invariant_index_dim(cfg: ActionConfiguration, X: ManifoldInvariants) -> IndexValue:
    """
    Dimension of the invariant part of the equivariant Dirac index.

    Args:
        cfg: Configuration (weights already valid for cfg.p)
        X: Spin manifold

    Returns:
        IndexValue with the audit terms

    Raises:
        NotSpinError: If X is not spin
        SignatureNotDivisibleBy8Error: If sigma(X) is not divisible by 8
    """
    if not X.spin:
        raise NotSpinError()
    if X.sigma % 8:
        raise SignatureNotDivisibleBy8Error(X.sigma)

    sum_alpha = sum(lattice_count(cfg.p, alpha) for alpha in cfg.alphas)
    sum_alpha_prime = sum(lattice_count(cfg.p, alpha) for alpha in cfg.alpha_primes)
    sigma_term = X.sigma * cfg.p // 8

    return IndexValue(
        dim=sum_alpha - sum_alpha_prime - sigma_term,
        sum_alpha=sum_alpha,
        sum_alpha_prime=sum_alpha_prime,
        sigma_term=sigma_term,
    )


def smoothness_window(dim: int, X: ManifoldInvariants) -> Verdict:
    """
    Classify an index against the open window (-b2-, b2+).

    The bound only constrains smooth actions on spin manifolds with both
    b2+ and b2- positive; anything else is Inapplicable. The window is
    open, so dim = b2+ or dim = -b2- already violates it.
    """
    lower, upper = -X.b2_minus, X.b2_plus

    if not X.spin or X.b2_plus == 0 or X.b2_minus == 0:
        kind = VerdictKind.INAPPLICABLE
    elif dim >= upper:
        kind = VerdictKind.VIOLATES_UPPER
    elif dim <= lower:
        kind = VerdictKind.VIOLATES_LOWER
    else:
        kind = VerdictKind.INSIDE_WINDOW

    return Verdict(kind=kind, lower=lower, upper=upper)


def evaluate_oriented(
    cfg: ActionConfiguration,
    X: ManifoldInvariants,
    orientation_flipped: bool = False,
    family: str = "",
) -> Evaluation:
    """
    Evaluate a configuration given for X, or for its reverse when flipped.

    Args:
        cfg: Configuration for the manifold with signature <= 0
        X: Manifold as given by the caller
        orientation_flipped: Whether cfg refers to X with reversed orientation
        family: Label recorded on the result

    Returns:
        A certificate when cfg is realizable and violates the window,
        otherwise NoObstruction
    """
    oriented = X.reversed() if orientation_flipped else X
    report = check_realizable(cfg, oriented)

    if not report.realizable:
        return NoObstruction(
            manifold=X,
            reason="not realizable: " + "; ".join(str(f) for f in report.failures),
            config=cfg,
            report=report,
            orientation_flipped=orientation_flipped,
            family=family,
        )

    index = invariant_index_dim(cfg, oriented)
    verdict = smoothness_window(index.dim, oriented)

    if not verdict.kind.violates:
        return NoObstruction(
            manifold=X,
            reason=f"dim {index.dim} is {verdict.kind.value} for window ({verdict.lower}, {verdict.upper})",
            config=cfg,
            report=report,
            index=index,
            verdict=verdict,
            orientation_flipped=orientation_flipped,
            family=family,
        )

    log_with_context(
        logger, "info",
        f"Certificate: dim {index.dim} against window ({verdict.lower}, {verdict.upper})",
        p=int(cfg.p), manifold=X.label, family=family or None,
    )
    return NonsmoothabilityCertificate(
        manifold=X,
        config=cfg,
        matching=report.matching,
        index=index,
        verdict=verdict,
        orientation_flipped=orientation_flipped,
        family=family,
    )


def evaluate(cfg: ActionConfiguration, X: ManifoldInvariants, family: str = "") -> Evaluation:
    """
    Realizability, invariant index and window for a configuration on X.

    Inputs with sigma(X) > 0 are normalized to the reversed orientation so
    every certificate is stated for signature <= 0.

    Args:
        cfg: Configuration for X as given
        X: Target manifold
        family: Label recorded on the result

    Returns:
        NonsmoothabilityCertificate or NoObstruction
    """
    if X.sigma > 0:
        return evaluate_oriented(cfg.reversed(), X, orientation_flipped=True, family=family)
    return evaluate_oriented(cfg, X, family=family)


def verify_certificate(cert: NonsmoothabilityCertificate) -> VerificationResult:
    """
    Re-derive every claim of a certificate from its raw fields.

    Weights are re-validated, the matching is re-checked pair by pair, the
    index is recomputed by lattice counting and the window re-evaluated.

    Returns:
        VerificationResult, accepted iff no diagnostic was raised
    """
    diagnostics: List[Failure] = []
    X = cert.manifold
    cfg = cert.config

    if cert.orientation_flipped != (X.sigma > 0):
        diagnostics.append(Failure(
            FailureLabel.ORIENTATION_MISMATCH,
            f"orientation_flipped={cert.orientation_flipped} but sigma(X) = {X.sigma}",
        ))
    oriented = cert.oriented_manifold

    if not X.spin:
        diagnostics.append(Failure(FailureLabel.NOT_SPIN, "manifold is not spin"))
        return VerificationResult(accepted=False, diagnostics=diagnostics)

    try:
        for alpha in cfg.alphas + cfg.alpha_primes:
            validate_weight_cp2(cfg.p, alpha)
        for beta in cfg.betas:
            validate_weight_s4(cfg.p, beta)
    except WeightError as e:
        diagnostics.append(Failure(FailureLabel.INVALID_WEIGHT, str(e)))
        return VerificationResult(accepted=False, diagnostics=diagnostics)

    diagnostics.extend(check_arithmetic(cfg, oriented).failures)

    if len(cert.matching) != cfg.s:
        diagnostics.append(Failure(
            FailureLabel.BAD_MATCHING,
            f"matching has {len(cert.matching)} pairs but s = {cfg.s}",
        ))
    try:
        check_matching(configuration_fixed_points(cfg), cert.matching)
    except BadMatchingError as e:
        diagnostics.append(Failure(FailureLabel.BAD_MATCHING, e.reason))

    index = invariant_index_dim(cfg, oriented)
    if index.to_dict() != cert.index.to_dict() or index.sigma_term != cert.index.sigma_term:
        diagnostics.append(Failure(
            FailureLabel.INDEX_MISMATCH,
            f"recomputed {index.to_dict()} but certificate states {cert.index.to_dict()}",
        ))

    verdict = smoothness_window(index.dim, oriented)
    if verdict.kind != cert.verdict.kind:
        diagnostics.append(Failure(
            FailureLabel.VERDICT_MISMATCH,
            f"recomputed {verdict.kind.value} but certificate states {cert.verdict.kind.value}",
        ))
    if not verdict.kind.violates:
        diagnostics.append(Failure(
            FailureLabel.WINDOW_NOT_VIOLATED,
            f"dim {index.dim} lies in the window ({verdict.lower}, {verdict.upper})",
        ))

    return VerificationResult(accepted=not diagnostics, diagnostics=diagnostics)


# =============================================================================
# Certificate documents
# =============================================================================

def certificate_to_dict(cert: NonsmoothabilityCertificate) -> Dict[str, Any]:
    """
    Serialize a certificate to its JSON document.

    Matching indices refer to the fixed point enumeration: CP2 components,
    orientation-reversed CP2 components, then S4 components; within one,
    [1,0,0], [0,1,0], [0,0,1] or north, south.
    """
    cfg = cert.config
    return {
        "p": int(cfg.p),
        "manifold": cert.manifold.to_dict(),
        "config": cfg.summary(),
        "cp2_weights": [w.to_list() for w in cfg.alphas],
        "cp2bar_weights": [w.to_list() for w in cfg.alpha_primes],
        "s4_weights": [w.to_list() for w in cfg.betas],
        "matching": [list(pair) for pair in cert.matching],
        "index": cert.index.to_dict(),
        "verdict": cert.verdict.kind.value,
        "orientation_flipped": cert.orientation_flipped,
    }


def _require(doc: Dict[str, Any], key: str, kind, where: str = "certificate"):
    if not isinstance(doc, dict) or key not in doc:
        raise CertificateFormatError(f"{where} is missing field '{key}'")
    value = doc[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise CertificateFormatError(f"{where}.{key} must be an integer")
    if kind is not int and not isinstance(value, kind):
        raise CertificateFormatError(f"{where}.{key} must be {kind.__name__}")
    return value


def _int_rows(doc: Dict[str, Any], key: str, width: int) -> List[Tuple[int, ...]]:
    rows = _require(doc, key, list)
    parsed = []
    for row in rows:
        if (
            not isinstance(row, list)
            or len(row) != width
            or not all(isinstance(v, int) and not isinstance(v, bool) for v in row)
        ):
            raise CertificateFormatError(f"certificate.{key} entries must be {width} integers")
        parsed.append(tuple(row))
    return parsed


def _parse_document(doc: Any) -> Dict[str, Any]:
    if not isinstance(doc, dict):
        raise CertificateFormatError("certificate must be a JSON object")

    manifold = _require(doc, "manifold", dict)
    config = _require(doc, "config", dict)
    index = _require(doc, "index", dict)

    fields = {
        "p": _require(doc, "p", int),
        "b2_plus": _require(manifold, "b2_plus", int, "manifold"),
        "b2_minus": _require(manifold, "b2_minus", int, "manifold"),
        "spin": _require(manifold, "spin", bool, "manifold"),
        "m": _require(config, "m", int, "config"),
        "m_prime": _require(config, "m_prime", int, "config"),
        "r": _require(config, "r", int, "config"),
        "s": _require(config, "s", int, "config"),
        "cp2_weights": _int_rows(doc, "cp2_weights", 3),
        "cp2bar_weights": _int_rows(doc, "cp2bar_weights", 3),
        "s4_weights": _int_rows(doc, "s4_weights", 2),
        "matching": _int_rows(doc, "matching", 2),
        "dim": _require(index, "dim", int, "index"),
        "sum_alpha": _require(index, "sum_alpha", int, "index"),
        "sum_alpha_prime": _require(index, "sum_alpha_prime", int, "index"),
        "verdict": _require(doc, "verdict", str),
        "orientation_flipped": _require(doc, "orientation_flipped", bool),
    }

    for key in ("b2_plus", "b2_minus", "m", "m_prime", "r", "s"):
        if fields[key] < 0:
            raise CertificateFormatError(f"{key} must be non-negative")

    try:
        fields["verdict"] = VerdictKind(fields["verdict"])
    except ValueError:
        raise CertificateFormatError(f"unknown verdict '{fields['verdict']}'")

    return fields


def _build_certificate(fields: Dict[str, Any]) -> NonsmoothabilityCertificate:
    p = OddPrime(fields["p"])
    X = ManifoldInvariants(fields["b2_plus"], fields["b2_minus"], fields["spin"])

    for key, rows in (("m", "cp2_weights"), ("m_prime", "cp2bar_weights"), ("r", "s4_weights")):
        if fields[key] != len(fields[rows]):
            raise InvalidConfigurationError(
                f"config.{key} = {fields[key]} but {rows} has {len(fields[rows])} entries"
            )

    cfg = ActionConfiguration(
        p=p,
        alphas=fields["cp2_weights"],
        alpha_primes=fields["cp2bar_weights"],
        betas=fields["s4_weights"],
        s=fields["s"],
    )
    oriented = X.reversed() if fields["orientation_flipped"] else X
    sigma_term = oriented.sigma * p // 8
    index = IndexValue(
        dim=fields["dim"],
        sum_alpha=fields["sum_alpha"],
        sum_alpha_prime=fields["sum_alpha_prime"],
        sigma_term=sigma_term,
    )
    return NonsmoothabilityCertificate(
        manifold=X,
        config=cfg,
        matching=tuple(fields["matching"]),
        index=index,
        verdict=Verdict(fields["verdict"], -oriented.b2_minus, oriented.b2_plus),
        orientation_flipped=fields["orientation_flipped"],
    )


def certificate_from_dict(doc: Any) -> NonsmoothabilityCertificate:
    """
    Rebuild a certificate from its JSON document.

    Raises:
        CertificateFormatError: If fields are missing or mistyped
        InputError: If p, the manifold, the configuration shape or a weight
            is invalid
    """
    return _build_certificate(_parse_document(doc))


def verify_document(doc: Any) -> VerificationResult:
    """
    Judge a raw, possibly tampered, certificate document.

    Structural damage (missing or mistyped fields) raises; every semantic
    problem becomes a diagnostic on a rejected result.

    Raises:
        CertificateFormatError: If the document is structurally malformed
    """
    fields = _parse_document(doc)

    try:
        cert = _build_certificate(fields)
    except NotPrimeError as e:
        return _reject(FailureLabel.NOT_PRIME, str(e))
    except InvalidManifoldError as e:
        return _reject(FailureLabel.INVALID_MANIFOLD, str(e))
    except InvalidConfigurationError as e:
        return _reject(FailureLabel.LENGTH_MISMATCH, str(e))
    except WeightError as e:
        return _reject(FailureLabel.INVALID_WEIGHT, str(e))

    return verify_certificate(cert)


def _reject(label: FailureLabel, message: str) -> VerificationResult:
    return VerificationResult(accepted=False, diagnostics=[Failure(label, message)])


def save_certificate(cert: NonsmoothabilityCertificate, path: Path) -> None:
    """Write a certificate document atomically."""
    atomic_write_json(path, certificate_to_dict(cert))
    logger.debug(f"Saved certificate to {path}")


def load_certificate(path: Path) -> NonsmoothabilityCertificate:
    """
    Read a certificate document.

    Raises:
        CertificateFormatError: If the file is not valid JSON or is malformed
    """
    try:
        doc = read_json(path)
    except ValueError as e:
        raise CertificateFormatError(f"{path} is not valid JSON: {e}")
    return certificate_from_dict(doc)

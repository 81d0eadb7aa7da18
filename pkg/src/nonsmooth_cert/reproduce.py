"""Reproduction report: recompute every published claim from the target table.

Blocks are declared in data/reproduction.yaml. Each block names a runner
and its parameters; a runner recomputes the claim with the library
pipeline and lists every mismatch. A block passes when it has none.
"""

from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import yaml

from nonsmooth_cert import constants
from nonsmooth_cert.exceptions import ConfigurationError, OutOfRangeError, RefusalError
from nonsmooth_cert.logging_config import get_logger
from nonsmooth_cert.models import ManifoldInvariants, VerdictKind
from nonsmooth_cert.obstruction import invariant_index_dim, smoothness_window, verify_certificate
from nonsmooth_cert.realizability import check_realizable
from nonsmooth_cert.search import (
    EXCLUDED_MANIFOLDS,
    certify_lemma42,
    lemma_4_2_construct,
    prime_bound,
    theorem_1_3_construct,
    theorem_1_4_construct,
)
from nonsmooth_cert.sweep import prime_sweep, primes_in_range
from nonsmooth_cert.weights import closed_form_count, lattice_count, two_l

logger = get_logger("nonsmooth_cert.reproduce")


@dataclass
class BlockResult:
    """Outcome of one reproduction block."""
    block_id: str
    title: str
    checks: int = 0
    failures: List[str] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "id": self.block_id,
            "title": self.title,
            "passed": self.passed,
            "checks": self.checks,
            "failures": self.failures,
            "notes": self.notes,
        }


@dataclass
class ReproductionReport:
    """All block results, in table order."""
    blocks: List[BlockResult] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(block.passed for block in self.blocks)

    def to_dict(self) -> Dict[str, Any]:
        """Convert to dictionary."""
        return {
            "passed": self.passed,
            "blocks": [block.to_dict() for block in self.blocks],
        }


def load_table(table_path: Optional[Path] = None) -> List[Dict[str, Any]]:
    """
    Load the reproduction blocks.

    Args:
        table_path: YAML file; the packaged table when None

    Returns:
        List of block dictionaries

    Raises:
        ConfigurationError: If the file is unreadable or malformed
    """
    path = Path(table_path) if table_path else constants.REPRODUCTION_TABLE
    try:
        with open(path, "r") as f:
            table = yaml.safe_load(f)
    except (OSError, yaml.YAMLError) as e:
        raise ConfigurationError(f"Cannot load reproduction table {path}: {e}")

    blocks = table.get("blocks") if isinstance(table, dict) else None
    if not isinstance(blocks, list):
        raise ConfigurationError(f"{path} must contain a 'blocks' list")

    for block in blocks:
        if not isinstance(block, dict) or "id" not in block or "kind" not in block:
            raise ConfigurationError(f"every block in {path} needs an id and a kind")
        if block["kind"] not in RUNNERS:
            raise ConfigurationError(f"block '{block['id']}' has unknown kind '{block['kind']}'")
    return blocks


def _span(block: Dict[str, Any], key: str) -> range:
    try:
        low, high = block[key]
    except (KeyError, TypeError, ValueError):
        raise ConfigurationError(f"block '{block['id']}' needs {key}: [low, high]")
    return range(int(low), int(high) + 1)


def _bounds(span: range) -> Tuple[int, int]:
    return span.start, span.stop - 1


def _spin_pairs(b2_range: range, modulus: int) -> List[ManifoldInvariants]:
    return [
        ManifoldInvariants(b2_plus, b2_minus, spin=True)
        for b2_plus in b2_range
        for b2_minus in b2_range
        if (b2_plus - b2_minus) % modulus == 0
    ]


# =============================================================================
# Block runners
# =============================================================================

def run_closed_forms(block: Dict[str, Any], result: BlockResult, workers: int) -> None:
    span = _span(block, "primes")
    for p in primes_in_range(*_bounds(span)):
        result.checks += 1
        counts = []
        for family in constants.CLOSED_FORM_FAMILIES:
            counted = lattice_count(p, family)
            closed = closed_form_count(p, family)
            counts.append(counted)
            if counted != closed:
                result.failures.append(
                    f"p={p}: N{family} counted {counted}, closed form {closed}"
                )
        if counts[0] - counts[1] != two_l(p):
            result.failures.append(
                f"p={p}: difference {counts[0] - counts[1]}, expected 2l = {two_l(p)}"
            )


def run_sweep(block: Dict[str, Any], result: BlockResult, workers: int) -> None:
    span = _span(block, "primes")
    X = ManifoldInvariants(*block["manifold"], spin=True)
    found_from = int(block["found_from"])
    exact = bool(block.get("exact", False))

    rows = prime_sweep(X, _bounds(span), block["strategy"], max_workers=workers, timing=False)
    below = []
    for row in rows:
        result.checks += 1
        if row.family.endswith("-unverified"):
            result.failures.append(f"p={row.p}: emitted certificate failed verification")
        if row.p >= found_from and not row.found:
            result.failures.append(f"p={row.p}: expected a certificate, none found ({row.family})")
        if row.p < found_from and row.found:
            if exact:
                result.failures.append(f"p={row.p}: unexpected certificate below {found_from}")
            else:
                below.append(row.p)

    found_at = {row.p for row in rows if row.found}
    for p in block.get("expect_not_found", []):
        if p in found_at:
            result.failures.append(f"p={p}: expected no certificate")

    result.notes.append(f"{len(found_at)}/{len(rows)} primes certified")
    if not exact:
        if below:
            result.notes.append(f"also certified below {found_from}: {', '.join(map(str, below))}")
        else:
            result.notes.append(f"no certificate below {found_from}")


def run_connected_sums(block: Dict[str, Any], result: BlockResult, workers: int) -> None:
    primes = primes_in_range(*_bounds(_span(block, "primes")))
    for n in _span(block, "n"):
        for p in primes:
            result.checks += 1
            outcome = theorem_1_3_construct(n, p)
            if not outcome.found:
                result.failures.append(f"n={n}, p={p}: {outcome.reason}")
            elif not verify_certificate(outcome).accepted:
                result.failures.append(f"n={n}, p={p}: certificate failed verification")


def run_k3_stabilizations(block: Dict[str, Any], result: BlockResult, workers: int) -> None:
    expected = int(block["expect_dim"])
    for t in _span(block, "t"):
        result.checks += 1
        outcome = theorem_1_4_construct(t)
        if not outcome.found:
            result.failures.append(f"t={t}: {outcome.reason}")
            continue
        if outcome.index.dim != expected:
            result.failures.append(f"t={t}: dim {outcome.index.dim}, expected {expected}")
        if not verify_certificate(outcome).accepted:
            result.failures.append(f"t={t}: certificate failed verification")

    if "out_of_range_t" in block:
        t = int(block["out_of_range_t"])
        result.checks += 1
        try:
            theorem_1_4_construct(t)
            result.failures.append(f"t={t}: expected OutOfRange")
        except OutOfRangeError as e:
            result.notes.append(f"t={t}: {e.reason}")


def run_bound_grid(block: Dict[str, Any], result: BlockResult, workers: int) -> None:
    prime_max = int(block["prime_max"])
    manifolds = _spin_pairs(_span(block, "b2"), int(block.get("signature_modulus", 16)))
    for X in manifolds:
        bound = prime_bound(X).bound
        for p in primes_in_range(bound, prime_max):
            result.checks += 1
            try:
                outcome = certify_lemma42(X, p)
            except RefusalError as e:
                result.failures.append(f"{X.label}, p={p}: refused ({e})")
                continue
            if not outcome.found:
                result.failures.append(f"{X.label}, p={p}: {outcome.reason}")
            elif not verify_certificate(outcome).accepted:
                result.failures.append(f"{X.label}, p={p}: certificate failed verification")
    result.notes.append(f"{len(manifolds)} manifolds")


def run_p5_degeneracy(block: Dict[str, Any], result: BlockResult, workers: int) -> None:
    p = 5
    realizable = 0
    for X in _spin_pairs(_span(block, "b2"), 8):
        if (X.b2_plus, X.b2_minus) in EXCLUDED_MANIFOLDS:
            continue
        try:
            construction = lemma_4_2_construct(X, p)
        except RefusalError:
            continue
        oriented = construction.oriented_manifold
        for cfg in construction.candidates:
            if not check_realizable(cfg, oriented).realizable:
                continue
            realizable += 1
            result.checks += 1
            dim = invariant_index_dim(cfg, oriented).dim
            if dim != 3 * oriented.sigma // 8:
                result.failures.append(f"{X.label}: dim {dim}, expected {3 * oriented.sigma // 8}")
            if smoothness_window(dim, oriented).kind != VerdictKind.INSIDE_WINDOW:
                result.failures.append(f"{X.label}: dim {dim} leaves the window")

    for n in _span(block, "b2"):
        if n < 2:
            continue
        result.checks += 1
        if theorem_1_3_construct(n, p).found:
            result.failures.append(f"#{n}(S2xS2): unexpected certificate at p=5")
    result.notes.append(f"{realizable} realizable configurations checked")


RUNNERS: Dict[str, Callable[[Dict[str, Any], BlockResult, int], None]] = {
    "closed_forms": run_closed_forms,
    "sweep": run_sweep,
    "connected_sums": run_connected_sums,
    "k3_stabilizations": run_k3_stabilizations,
    "bound_grid": run_bound_grid,
    "p5_degeneracy": run_p5_degeneracy,
}


def reproduce_paper(
    table_path: Optional[Path] = None,
    block_ids: Optional[Sequence[str]] = None,
    workers: int = constants.DEFAULT_SWEEP_WORKERS,
) -> ReproductionReport:
    """
    Recompute every block of the reproduction table.

    Args:
        table_path: YAML table; the packaged one when None
        block_ids: Restrict to these block ids
        workers: Worker threads for sweep blocks

    Returns:
        ReproductionReport with one result per block
    """
    report = ReproductionReport()
    for block in load_table(table_path):
        if block_ids and block["id"] not in block_ids:
            continue
        result = BlockResult(block_id=block["id"], title=block.get("title", block["id"]))
        logger.info(f"Reproducing block {result.block_id}")
        RUNNERS[block["kind"]](block, result, workers)
        status = "PASS" if result.passed else "FAIL"
        logger.info(f"Block {result.block_id}: {status} ({result.checks} checks)")
        report.blocks.append(result)
    return report


def render_report(report: ReproductionReport) -> str:
    """Render the report as text, one PASS/FAIL line per block."""
    lines = []
    for block in report.blocks:
        status = "PASS" if block.passed else "FAIL"
        lines.append(f"[{status}] {block.block_id}: {block.title} ({block.checks} checks)")
        for note in block.notes:
            lines.append(f"       {note}")
        for failure in block.failures:
            lines.append(f"       - {failure}")
    passed = sum(1 for block in report.blocks if block.passed)
    lines.append(f"Summary: {passed}/{len(report.blocks)} blocks passed")
    return "\n".join(lines) + "\n"

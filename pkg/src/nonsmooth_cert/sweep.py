"""Prime sweeps and their CSV, JSON and text renderings."""

import csv
import io
import time
from concurrent.futures import ThreadPoolExecutor, as_completed
from typing import Any, Dict, List, Optional, Tuple

from sympy import primerange

from nonsmooth_cert import constants
from nonsmooth_cert.exceptions import (
    ExcludedManifoldError,
    InputError,
    OutOfRangeError,
    RefusalError,
    VacuousByDonaldsonError,
)
from nonsmooth_cert.logging_config import get_logger, log_with_context
from nonsmooth_cert.models import ManifoldInvariants, SearchLimits, SweepRow
from nonsmooth_cert.obstruction import certificate_to_dict, verify_certificate
from nonsmooth_cert.search import check_strategy_applicable, run_strategy

logger = get_logger("nonsmooth_cert.sweep")

REFUSAL_LABELS = {
    ExcludedManifoldError: "excluded",
    VacuousByDonaldsonError: "vacuous",
    OutOfRangeError: "out-of-range",
}


def parse_prime_range(text: str) -> Tuple[int, int]:
    """
    Parse "A..B" into an inclusive integer range.

    Raises:
        InputError: If the text is not of that form or A > B
    """
    parts = text.split("..")
    if len(parts) != 2:
        raise InputError(f"prime range must look like A..B, got '{text}'")
    try:
        low, high = int(parts[0]), int(parts[1])
    except ValueError:
        raise InputError(f"prime range bounds must be integers, got '{text}'")
    if low > high:
        raise InputError(f"empty prime range '{text}'")
    return low, high


def primes_in_range(low: int, high: int) -> List[int]:
    """Primes p >= 5 with low <= p <= high, ascending."""
    return [int(p) for p in primerange(max(low, 5), high + 1)]


def _refusal_label(strategy: str, error: RefusalError) -> str:
    for error_type, label in REFUSAL_LABELS.items():
        if isinstance(error, error_type):
            return f"{strategy}-{label}"
    return f"{strategy}-refused"


def sweep_row(
    X: ManifoldInvariants,
    p: int,
    strategy: str,
    limits: Optional[SearchLimits] = None,
    timing: bool = True,
) -> SweepRow:
    """
    Run one strategy at one prime and re-verify any certificate it emits.

    Returns:
        SweepRow; found only when the certificate verifies
    """
    started = time.perf_counter()
    certificate = None
    dim = None

    try:
        result = run_strategy(X, p, strategy, limits)
        family = result.family or strategy
        if result.found:
            verification = verify_certificate(result)
            if verification.accepted:
                certificate = result
            else:
                family = f"{family}-unverified"
                log_with_context(
                    logger, "error",
                    "Emitted certificate failed verification",
                    p=p, manifold=X.label, strategy=strategy,
                    details=verification.to_dict(),
                )
            dim = result.index.dim
        elif result.index is not None:
            dim = result.index.dim
    except RefusalError as e:
        family = _refusal_label(strategy, e)
        log_with_context(logger, "debug", str(e), p=p, manifold=X.label, strategy=strategy)

    runtime_ms = int((time.perf_counter() - started) * 1000) if timing else 0
    return SweepRow(
        p=p,
        found=certificate is not None,
        dim=dim,
        family=family,
        runtime_ms=runtime_ms,
        certificate=certificate,
    )


def prime_sweep(
    X: ManifoldInvariants,
    prime_range: Tuple[int, int],
    strategy: str,
    limits: Optional[SearchLimits] = None,
    max_workers: int = constants.DEFAULT_SWEEP_WORKERS,
    timing: bool = True,
) -> List[SweepRow]:
    """
    One row per prime in the inclusive range, in ascending prime order.

    Rows are independent and computed on a thread pool; the output does not
    depend on completion order.

    Args:
        X: Target manifold
        prime_range: Inclusive (low, high)
        strategy: One of lemma42, thm13, thm14, bounded
        limits: Bounded search limits
        max_workers: Worker threads
        timing: Record runtime_ms; zero when False

    Returns:
        Rows sorted by p
    """
    if strategy not in constants.STRATEGIES:
        raise InputError(f"unknown strategy '{strategy}'")
    check_strategy_applicable(X, strategy)

    primes = primes_in_range(*prime_range)
    log_with_context(
        logger, "info",
        f"Sweeping {len(primes)} primes in {prime_range[0]}..{prime_range[1]} (workers: {max_workers})",
        manifold=X.label, strategy=strategy,
    )

    rows: List[SweepRow] = []
    if not primes:
        return rows

    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        future_to_prime = {
            executor.submit(sweep_row, X, p, strategy, limits, timing): p
            for p in primes
        }
        for future in as_completed(future_to_prime):
            rows.append(future.result())

    rows.sort(key=lambda row: row.p)
    found = sum(1 for row in rows if row.found)
    logger.info(f"Sweep complete: {found}/{len(rows)} primes certified")
    return rows


def rows_to_csv(rows: List[SweepRow]) -> str:
    """Render rows as CSV with header p,found,dim,family,runtime_ms."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(constants.SWEEP_CSV_HEADER)
    for row in rows:
        writer.writerow(row.csv_fields())
    return buffer.getvalue()


def rows_to_json(rows: List[SweepRow]) -> List[Dict[str, Any]]:
    """Rows as JSON-ready dictionaries with embedded certificates."""
    return [
        {
            "p": row.p,
            "found": row.found,
            "dim": row.dim,
            "family": row.family,
            "runtime_ms": row.runtime_ms,
            "certificate": certificate_to_dict(row.certificate) if row.certificate else None,
        }
        for row in rows
    ]


def rows_to_text(rows: List[SweepRow]) -> str:
    """Render rows as an aligned text table."""
    header = constants.SWEEP_CSV_HEADER
    body = [row.csv_fields() for row in rows]
    widths = [
        max(len(str(cell)) for cell in column)
        for column in zip(header, *body)
    ]
    lines = []
    for cells in [header] + body:
        lines.append("  ".join(str(cell).rjust(width) for cell, width in zip(cells, widths)).rstrip())
    return "\n".join(lines) + "\n"

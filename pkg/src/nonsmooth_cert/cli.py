"""CLI interface for nonsmoothability certificates."""

import functools
import sys
from pathlib import Path
from typing import List, Optional, Sequence, Tuple

import click

from nonsmooth_cert import __version__, constants
from nonsmooth_cert.config import get_config, reset_config
from nonsmooth_cert.config_resolver import resolve_config_file
from nonsmooth_cert.exceptions import (
    CertificateFormatError,
    ComputationError,
    InputError,
    RefusalError,
)
from nonsmooth_cert.fixed_points import component_fixed_points
from nonsmooth_cert.logging_config import get_logger, setup_logging
from nonsmooth_cert.models import ActionConfiguration, ManifoldInvariants, SearchLimits
from nonsmooth_cert.obstruction import (
    certificate_to_dict,
    evaluate,
    save_certificate,
    verify_certificate,
    verify_document,
)
from nonsmooth_cert.realizability import check_realizable_weights
from nonsmooth_cert.reproduce import render_report, reproduce_paper
from nonsmooth_cert.search import run_strategy
from nonsmooth_cert.sweep import parse_prime_range, prime_sweep, rows_to_csv, rows_to_json, rows_to_text
from nonsmooth_cert.utils.file_ops import atomic_write_text, dumps_json, read_json
from nonsmooth_cert.weights import lattice_count

logger = get_logger("nonsmooth_cert.cli")


def _parse_ints(text: str, width: int, name: str) -> Tuple[int, ...]:
    try:
        values = tuple(int(part) for part in text.split(","))
    except ValueError:
        raise click.BadParameter(f"'{text}' is not a comma-separated list of integers", param_hint=name)
    if len(values) != width:
        raise click.BadParameter(f"'{text}' needs exactly {width} integers", param_hint=name)
    return values


def _weight_option(width: int):
    def callback(ctx, param, value):
        if value is None:
            return None
        if isinstance(value, tuple):
            return [_parse_ints(v, width, f"--{param.name}") for v in value]
        return _parse_ints(value, width, f"--{param.name}")
    return callback


def _echo_json(data) -> None:
    click.echo(dumps_json(data), nl=False)


def handle_errors(func):
    """Map library exceptions onto exit codes: InputError 2, everything else 1."""
    @functools.wraps(func)
    def wrapper(*args, **kwargs):
        try:
            return func(*args, **kwargs)
        except InputError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(constants.EXIT_MALFORMED)
        except RefusalError as e:
            click.echo(f"Refused: {e}", err=True)
            sys.exit(constants.EXIT_NOT_FOUND)
        except ComputationError as e:
            click.echo(f"Error: {e}", err=True)
            sys.exit(constants.EXIT_NOT_FOUND)
    return wrapper


def _manifold(b2plus: int, b2minus: int, spin: bool) -> ManifoldInvariants:
    return ManifoldInvariants(b2plus, b2minus, spin=spin)


def _limits(config, pool_limit: Optional[int]) -> SearchLimits:
    return SearchLimits(
        pool_limit=pool_limit if pool_limit is not None else config.pool_limit,
        max_period=config.max_period,
        max_extra_components=config.max_extra_components,
        sphere_weight=config.sphere_weight,
    )


def _explicit_configuration(
    p: int,
    cp2: Sequence[Tuple[int, ...]],
    cp2bar: Sequence[Tuple[int, ...]],
    s4: Sequence[Tuple[int, ...]],
    s: int,
) -> ActionConfiguration:
    return ActionConfiguration(p=p, alphas=cp2, alpha_primes=cp2bar, betas=s4, s=s)


def manifold_options(func):
    """--b2plus, --b2minus and --spin/--no-spin."""
    func = click.option('--spin/--no-spin', default=True, show_default=True,
                        help='Whether X is spin')(func)
    func = click.option('--b2minus', type=int, required=True, help='b2-(X)')(func)
    func = click.option('--b2plus', type=int, required=True, help='b2+(X)')(func)
    return func


def configuration_options(func):
    """Repeatable component weights and the number of cancelling pairs."""
    func = click.option('--s', 's', type=int, default=0, show_default=True,
                        help='Cancelling pairs to remove')(func)
    func = click.option('--s4', multiple=True, callback=_weight_option(2),
                        help='S4 weight b1,b2 (repeatable)')(func)
    func = click.option('--cp2bar', multiple=True, callback=_weight_option(3),
                        help='Reversed CP2 weight a0,a1,a2 (repeatable, use --cp2bar=)')(func)
    func = click.option('--cp2', multiple=True, callback=_weight_option(3),
                        help='CP2 weight a0,a1,a2 (repeatable, use --cp2=)')(func)
    return func


@click.group()
@click.version_option(version=__version__)
@click.option('--config', 'config_path', type=click.Path(),
              help=f'Config file. Priority: CLI flag > {constants.CONFIG_ENV_VAR} env var > '
                   f'~/{constants.USER_CONFIG_FILE_NAME} > built-in defaults')
@click.option('--log-level', type=click.Choice(constants.LOG_LEVELS, case_sensitive=False),
              help='Log level (overrides config)')
@click.option('--log-dir', type=click.Path(), help='Also write JSON and text logs here')
@click.pass_context
def main(ctx, config_path, log_level, log_dir):
    """Nonsmoothability certificates for locally linear Z_p actions on spin 4-manifolds."""
    ctx.ensure_object(dict)

    resolution = resolve_config_file(cli_config=config_path)

    reset_config()
    try:
        config = get_config(resolution.path)
        level = log_level or config.log_level
        directory = Path(log_dir) if log_dir else config.log_dir
        log_format = config.log_format
    except InputError as e:
        click.echo(f"Error: {e}", err=True)
        sys.exit(constants.EXIT_MALFORMED)

    ctx.obj['config'] = config
    ctx.obj['config_resolution'] = resolution
    ctx.obj['logger'] = setup_logging(level, directory, log_format)

    logger.info(resolution.log_message())


# ============================================================================
# Counting and fixed points
# ============================================================================

@main.command('count-n')
@click.option('--p', 'p', type=int, required=True, help='Prime p >= 5')
@click.option('--weight', required=True, callback=_weight_option(3),
              help='CP2 weight a0,a1,a2 (use --weight= for negative entries)')
@handle_errors
def count_n(p, weight):
    """Print N(p, alpha).

    Example:

        nonsmooth-cert count-n --p 11 --weight=-1,1,2
    """
    click.echo(lattice_count(p, weight))


@main.command('fixed-points')
@click.option('--p', 'p', type=int, required=True, help='Prime p >= 5')
@click.option('--kind', type=click.Choice(constants.COMPONENT_KINDS), default=constants.KIND_CP2,
              show_default=True, help='Linear model')
@click.option('--weight', required=True, help='Weight, comma separated (use --weight=)')
@click.option('--format', 'output_format', type=click.Choice([constants.FORMAT_TEXT, constants.FORMAT_JSON]),
              default=constants.FORMAT_TEXT, show_default=True)
@handle_errors
def fixed_points(p, kind, weight, output_format):
    """List the fixed points of one linear model with their rotation classes."""
    width = 2 if kind == constants.KIND_S4 else 3
    entries = _parse_ints(weight, width, "--weight")
    points = component_fixed_points(p, kind, entries)

    if output_format == constants.FORMAT_JSON:
        _echo_json([
            {"label": point.label, "class": point.rotation_class.to_list()}
            for point in points
        ])
        return

    for point in points:
        click.echo(f"{point.label:<8} {point.rotation_class}")


# ============================================================================
# Realizability and certificates
# ============================================================================

@main.command('realize-check')
@click.option('--p', 'p', type=int, required=True, help='Prime p >= 5')
@manifold_options
@configuration_options
@handle_errors
def realize_check(p, b2plus, b2minus, spin, cp2, cp2bar, s4, s):
    """Check whether a configuration is realizable on X.

    Weights that are invalid for p are reported as InvalidWeight failures.

    Example:

        nonsmooth-cert realize-check --p 11 --b2plus 3 --b2minus 19 \\
            --cp2bar=-1,1,2 --cp2bar=-1,2,3 ... --s 12
    """
    X = _manifold(b2plus, b2minus, spin)
    report = check_realizable_weights(p, cp2, cp2bar, s4, s, X)
    _echo_json(report.to_dict())
    if not report.realizable:
        sys.exit(constants.EXIT_NOT_FOUND)


@main.command()
@click.option('--p', 'p', type=int, required=True, help='Prime p >= 5')
@manifold_options
@click.option('--strategy', type=click.Choice(constants.STRATEGIES), default=constants.STRATEGY_LEMMA42,
              show_default=True, help='Construction to use')
@click.option('--pool-limit', type=int, help='Weight pool bound for the bounded search')
@click.option('--out', type=click.Path(), help='Write the certificate here instead of stdout')
@configuration_options
@click.pass_context
@handle_errors
def certify(ctx, p, b2plus, b2minus, spin, strategy, pool_limit, out, cp2, cp2bar, s4, s):
    """Produce a verified nonsmoothability certificate.

    With --cp2/--cp2bar/--s4 the given configuration is evaluated instead
    of running a strategy; --s is only accepted together with them.

    Examples:

        nonsmooth-cert certify --b2plus 3 --b2minus 19 --p 11 --strategy thm14 --out cert.json

        nonsmooth-cert certify --b2plus 2 --b2minus 2 --p 7 --cp2=-1,0,1 --cp2bar=-1,1,2
    """
    config = ctx.obj['config']
    explicit = bool(cp2 or cp2bar or s4)
    if s and not explicit:
        raise click.UsageError("--s only applies to an explicit configuration (--cp2, --cp2bar or --s4)")
    X = _manifold(b2plus, b2minus, spin)

    if explicit:
        result = evaluate(_explicit_configuration(p, cp2, cp2bar, s4, s), X, family="explicit")
    else:
        result = run_strategy(X, p, strategy, _limits(config, pool_limit))

    if not result.found:
        _echo_json(result.to_dict())
        sys.exit(constants.EXIT_NOT_FOUND)

    verification = verify_certificate(result)
    if not verification.accepted:
        click.echo("Error: emitted certificate failed verification", err=True)
        _echo_json(verification.to_dict())
        sys.exit(constants.EXIT_NOT_FOUND)

    if out:
        save_certificate(result, Path(out))
        click.echo(f"Certificate written to {out} (dim {result.index.dim}, {result.verdict.kind.value})")
    else:
        _echo_json(certificate_to_dict(result))


@main.command()
@click.argument('certificate_file', type=click.Path(exists=True, dir_okay=False))
@handle_errors
def verify(certificate_file):
    """Independently re-check a certificate file."""
    try:
        doc = read_json(Path(certificate_file))
    except ValueError as e:
        raise CertificateFormatError(f"{certificate_file} is not valid JSON: {e}")

    verification = verify_document(doc)
    if verification.accepted:
        click.echo("ACCEPTED")
        return

    click.echo("REJECTED")
    for diagnostic in verification.diagnostics:
        click.echo(f"  {diagnostic}")
    sys.exit(constants.EXIT_NOT_FOUND)


# ============================================================================
# Sweeps and reproduction
# ============================================================================

@main.command()
@manifold_options
@click.option('--primes', help='Inclusive prime range A..B (default from config)')
@click.option('--strategy', type=click.Choice(constants.STRATEGIES), default=constants.STRATEGY_LEMMA42,
              show_default=True)
@click.option('--pool-limit', type=int, help='Weight pool bound for the bounded search')
@click.option('--format', 'output_format', type=click.Choice(constants.OUTPUT_FORMATS),
              default=constants.FORMAT_CSV, show_default=True)
@click.option('--out', type=click.Path(), help='Write the table here instead of stdout')
@click.option('--no-timing', is_flag=True, help='Write runtime_ms = 0 for reproducible output')
@click.pass_context
@handle_errors
def sweep(ctx, b2plus, b2minus, spin, primes, strategy, pool_limit, output_format, out, no_timing):
    """Run one strategy over a range of primes.

    Example:

        nonsmooth-cert sweep --b2plus 3 --b2minus 19 --primes 100..199 --no-timing
    """
    config = ctx.obj['config']
    X = _manifold(b2plus, b2minus, spin)
    prime_range = parse_prime_range(primes) if primes else (config.prime_min, config.prime_max)

    rows = prime_sweep(
        X,
        prime_range,
        strategy,
        limits=_limits(config, pool_limit),
        max_workers=config.sweep_workers,
        timing=not no_timing,
    )

    if output_format == constants.FORMAT_JSON:
        text = dumps_json(rows_to_json(rows))
    elif output_format == constants.FORMAT_TEXT:
        text = rows_to_text(rows)
    else:
        text = rows_to_csv(rows)

    if out:
        atomic_write_text(Path(out), text)
        found = sum(1 for row in rows if row.found)
        click.echo(f"Wrote {len(rows)} rows to {out} ({found} certified)")
    else:
        click.echo(text, nl=False)


@main.command()
@click.option('--format', 'output_format', type=click.Choice([constants.FORMAT_TEXT, constants.FORMAT_JSON]),
              default=constants.FORMAT_TEXT, show_default=True)
@click.option('--block', 'blocks', multiple=True, help='Only run these block ids (repeatable)')
@click.option('--table', type=click.Path(exists=True, dir_okay=False), help='Alternative target table')
@click.pass_context
@handle_errors
def reproduce(ctx, output_format, blocks, table):
    """Recompute every published claim and mark each block PASS or FAIL."""
    config = ctx.obj['config']
    report = reproduce_paper(
        table_path=Path(table) if table else None,
        block_ids=list(blocks) or None,
        workers=config.sweep_workers,
    )

    if output_format == constants.FORMAT_JSON:
        _echo_json(report.to_dict())
    else:
        click.echo(render_report(report), nl=False)

    if not report.passed:
        sys.exit(constants.EXIT_NOT_FOUND)


def run(argv: Optional[List[str]] = None) -> int:
    """
    Run the CLI and return its exit code instead of exiting.

    Args:
        argv: Arguments without the program name; sys.argv when None

    Returns:
        0 on success, 1 when nothing was found or a certificate is invalid,
        2 on malformed input
    """
    try:
        main.main(args=argv, prog_name="nonsmooth-cert", standalone_mode=True)
    except SystemExit as e:
        if e.code is None:
            return constants.EXIT_OK
        return e.code if isinstance(e.code, int) else constants.EXIT_NOT_FOUND
    return constants.EXIT_OK


if __name__ == '__main__':
    main()

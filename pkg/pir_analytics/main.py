"""
PIR Analytics command line
"""

import functools
import io
from contextlib import redirect_stderr, redirect_stdout
from pathlib import Path
from typing import Callable, List, Optional, Sequence, Tuple

import click
import structlog
from pydantic import ValidationError

from . import __version__
from .analysis import compute_indices, summarize, trajectory
from .charts import write_svg
from .config import LOG_LEVELS, Settings, get_settings
from .errors import ConfigError, PIRError
from .ingest import fixture_path, load_dataset, validate_dataset
from .logging_config import configure_logging
from .models import (
    IndexKind,
    OutlierMethod,
    OutlierPolicy,
    OutputFormat,
    Phase,
    PhaseFilter,
    RunConfig,
    Scope,
    StatLine,
    WeightProfile,
)
from .outliers import apply_policy, curated_exclusions, load_exclusions
from .reporting import format_exclusions, format_results, format_summary, format_trajectory, format_validation

logger = structlog.get_logger()

REPORT_KINDS = {
    "pir": IndexKind.PIR,
    "pir-rescaled": IndexKind.PIR_RESCALED,
    "rescaled-pir": IndexKind.PIR_RESCALED,
    "rees": IndexKind.PIR_REES,
    "pond": IndexKind.PIR_POND,
}


def _validation_message(e: ValidationError) -> str:
    err = e.errors()[0]
    msg = err["msg"].removeprefix("Value error, ")
    where = ".".join(str(p) for p in err["loc"])
    return f"{where}: {msg}" if where else msg


def parse_weights(value: Optional[str]) -> WeightProfile:
    """Inline '1,1,...' list or a path to a file holding one"""
    if value is None:
        return WeightProfile.unit()
    path = Path(value)
    text = path.read_text(encoding="utf-8") if path.is_file() else value
    try:
        return WeightProfile.from_string(text)
    except ValidationError as e:
        raise ConfigError(_validation_message(e), "weights") from None
    except ValueError as e:
        raise ConfigError(str(e), "weights") from None


def build_config(command: str, **options) -> RunConfig:
    try:
        return RunConfig(command=command, **options)
    except ValidationError as e:
        raise ConfigError(_validation_message(e)) from None


def resolve_policy(config: RunConfig) -> OutlierPolicy:
    if config.outliers is OutlierMethod.MANUAL:
        return load_exclusions(config.exclusions).for_phases(config.phase.phases)
    if config.outliers is OutlierMethod.CURATED:
        return curated_exclusions().for_phases(config.phase.phases)
    if config.outliers is OutlierMethod.IQR:
        return OutlierPolicy.iqr(config.iqr_multiplier)
    return OutlierPolicy.none()


def load_records(config: RunConfig) -> List[StatLine]:
    records = load_dataset(config.dataset or fixture_path())
    wanted = set(config.phase.phases)
    selected = [s for s in records if s.phase in wanted]
    if not selected:
        raise PIRError(f"no records for phase {config.phase.value}")
    return selected


def data_options(f: Callable) -> Callable:
    """Options shared by every command that reads a dataset"""
    options = [
        click.option("--data", "dataset", type=click.Path(dir_okay=False, path_type=Path), default=None,
                     help="Dataset CSV (default: shipped four-player fixture)"),
        click.option("--outliers", type=click.Choice([m.value for m in OutlierMethod]), default="none",
                     show_default=True, help="Exclusion method"),
        click.option("--iqr-multiplier", type=float, default=None, help="IQR fence multiplier"),
        click.option("--exclusions", type=click.Path(dir_okay=False, path_type=Path), default=None,
                     help="CSV of player,season,phase to exclude (with --outliers manual)"),
        click.option("--weights", default=None, help="11 comma separated weights, or a file holding them"),
        click.option("--format", "output_format", type=click.Choice([f.value for f in OutputFormat]),
                     default="table", show_default=True),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def guarded(f: Callable[..., str]) -> Callable:
    """Buffer command output; on failure print one error line and exit 1"""

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        ctx = click.get_current_context()
        try:
            output = f(*args, **kwargs)
        except (PIRError, OSError) as e:
            logger.debug("Command failed", command=ctx.info_name, error=str(e))
            click.echo(f"error: {e}", err=True)
            ctx.exit(1)
        if output:
            click.echo(output, nl=False)

    return wrapper


def _common(ctx_settings: Settings, command: str, dataset, outliers, iqr_multiplier, exclusions, weights,
            output_format, **extra) -> RunConfig:
    return build_config(
        command,
        dataset=dataset,
        outliers=outliers,
        iqr_multiplier=iqr_multiplier if iqr_multiplier is not None else ctx_settings.iqr_multiplier,
        exclusions=exclusions,
        weights=parse_weights(weights),
        output_format=output_format,
        **extra,
    )


@click.group()
@click.version_option(__version__, prog_name="pir-analytics")
@click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False), default=None,
              help="Log level (default from PIR_LOG_LEVEL or WARNING)")
@click.option("--log-json", is_flag=True, default=False, help="Log as JSON lines")
@click.pass_context
def cli(ctx: click.Context, log_level: Optional[str], log_json: bool):
    """Basketball performance indices: PIR, PIR_REES and PIR_POND"""
    try:
        settings = get_settings()
        if log_level:
            settings = Settings.model_validate({**settings.model_dump(), "log_level": log_level})
    except ValidationError as e:
        raise click.UsageError(_validation_message(e)) from None
    configure_logging(settings.log_level, json_output=log_json or settings.log_json, colors=settings.color_enabled)
    ctx.obj = settings


@cli.command()
@click.option("--data", "dataset", type=click.Path(dir_okay=False, path_type=Path), default=None)
@click.pass_context
def validate(ctx: click.Context, dataset: Optional[Path]):
    """Check a dataset and list every problem found"""
    report = validate_dataset(dataset or fixture_path())
    click.echo("\n".join(format_validation(report)))
    if not report.ok:
        click.echo(f"error: {len(report.diagnostics)} problem(s) in {report.path}", err=True)
        ctx.exit(1)


def _index_command(name: str, kind: IndexKind, help_text: str):
    @cli.command(name=name, help=help_text)
    @click.option("--scope", type=click.Choice([s.value for s in Scope]), default="joint", show_default=True)
    @click.option("--phase", type=click.Choice([p.value for p in PhaseFilter]), default="both", show_default=True)
    @data_options
    @click.pass_obj
    @guarded
    def command(settings: Settings, scope: str, phase: str, **options) -> str:
        config = _common(settings, name, kind=kind, scope=Scope(scope), phase=PhaseFilter(phase), **options)
        records = load_records(config)
        results = compute_indices(records, kind, config.scope, resolve_policy(config), config.weights, settings)
        return format_results(results, config.output_format, settings.table_decimals)

    return command


pir = _index_command("pir", IndexKind.PIR, "Classic PIR of every record")
rescale = _index_command("rescale", IndexKind.PIR_RESCALED,
                         "PIR rescaled onto [0, 1] (individual or joint context)")
rees = _index_command("rees", IndexKind.PIR_REES, "Weighted sum of rescaled variables")
pond = _index_command("pond", IndexKind.PIR_POND, "PIR weighted by rescaled variables")


@cli.command()
@click.option("--phase", type=click.Choice([p.value for p in PhaseFilter]), default="both", show_default=True)
@data_options
@click.pass_obj
@guarded
def outliers(settings: Settings, phase: str, **options) -> str:
    """List the records the chosen method excludes"""
    config = _common(settings, "outliers", phase=PhaseFilter(phase), **options)
    records = load_records(config)
    policy = resolve_policy(config)
    partitions = [apply_policy([s for s in records if s.phase is p], policy.for_phases([p]))
                  for p in config.phase.phases if any(s.phase is p for s in records)]
    return format_exclusions(partitions, config.output_format, settings.table_decimals)


@cli.command()
@click.option("--kind", type=click.Choice(list(REPORT_KINDS)), default="pir-rescaled", show_default=True)
@click.option("--scope", type=click.Choice(["individual", "joint", "both"]), default="both", show_default=True)
@click.option("--phase", type=click.Choice([p.value for p in PhaseFilter]), default="both", show_default=True)
@data_options
@click.pass_obj
@guarded
def report(settings: Settings, kind: str, scope: str, phase: str, **options) -> str:
    """Per player means by phase and scope, with and without exclusions"""
    index = REPORT_KINDS[kind]
    config = _common(settings, "report", kind=index, phase=PhaseFilter(phase), **options)
    scopes = [Scope.INDIVIDUAL, Scope.JOINT] if scope == "both" else [Scope(scope)]
    table = summarize(load_records(config), index, scopes, resolve_policy(config), config.weights, settings)
    return format_summary(table, config.output_format, settings.table_decimals)


@cli.command(name="trajectory")
@click.option("--player", required=True, help="Player id as written in the dataset")
@click.option("--kind", type=click.Choice(list(REPORT_KINDS)), default="pir-rescaled", show_default=True)
@click.option("--scope", type=click.Choice([s.value for s in Scope]), default="individual", show_default=True)
@click.option("--phase", type=click.Choice([p.value for p in Phase]), default="regular", show_default=True)
@click.option("--plot", type=click.Path(dir_okay=False, path_type=Path), default=None,
              help="Write an SVG line chart to this path")
@data_options
@click.pass_obj
@guarded
def trajectory_command(settings: Settings, player: str, kind: str, scope: str, phase: str,
                       plot: Optional[Path], **options) -> str:
    """Season by season values of one player"""
    index = REPORT_KINDS[kind]
    config = _common(settings, "trajectory", kind=index, scope=Scope(scope), phase=PhaseFilter(phase),
                     plot=plot, **options)
    series = trajectory(load_records(config), player, Phase(phase), index, config.scope,
                        resolve_policy(config), config.weights, settings)
    if config.plot is not None:
        write_svg(series, config.plot)
    return format_trajectory(series, config.output_format, settings.table_decimals)


def run(argv: Sequence[str]) -> Tuple[int, str, str]:
    """Run the CLI in-process and return (exit_code, stdout, stderr)"""
    out, err = io.StringIO(), io.StringIO()
    with redirect_stdout(out), redirect_stderr(err):
        try:
            code = cli.main(args=list(argv), prog_name="pir-analytics", standalone_mode=False)
        except click.ClickException as e:
            e.show(file=err)
            code = e.exit_code
        except click.Abort:
            code = 1
    return int(code or 0), out.getvalue(), err.getvalue()


if __name__ == "__main__":
    cli()

import logging
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import NoReturn

import typer

from .algebra import Bidegree
from .catalog import Catalog, bundled_catalog, load_catalog
from .checks import CHECKS, CheckContext
from .checks.lifts import classical_monomial, classify_family
from .config import OutputFormat, Settings, load_run_config
from .models import CheckReport
from .pieces import graded_piece, poincare_table
from .render import (
    element_text,
    piece_text,
    reports_csv,
    reports_json,
    reports_markdown,
    reports_text,
    table_csv,
    table_json,
    table_markdown,
    table_text,
)

logger = logging.getLogger(__name__)

app = typer.Typer(
    name="mrv",
    help="Exact verification of the cohomology rings of BSO(4).",
    no_args_is_help=True,
    add_completion=False,
)

CatalogOption = typer.Option(None, "--catalog", help="Ring catalog JSON replacing bundled rings.")
OutOption = typer.Option(None, "--out", help="Write the output to this file instead of stdout.")


@app.callback()
def _setup():
    logging.getLogger().setLevel(Settings().log_level.upper())


def _usage_error(message: str) -> NoReturn:
    typer.echo(f"error: {message}", err=True)
    raise typer.Exit(code=2)


def _catalog(path: Path | None) -> Catalog:
    if path is None:
        return bundled_catalog()
    try:
        return load_catalog(path)
    except (OSError, ValueError) as e:
        _usage_error(f"cannot read catalog {path}: {e}")


def _emit(text: str, out: Path | None):
    if out is None:
        typer.echo(text, nl=False)
        return
    out.write_text(text, encoding="utf-8")
    logger.info(f"wrote {out}")


@app.command()
def piece(
    ring: str = typer.Option(..., "--ring", help="Ring name, e.g. motivic-z2."),
    deg: str = typer.Option(..., "--deg", help="Degree 'p' or bidegree 'p,q'."),
    catalog: Path | None = CatalogOption,
):
    """Print one graded piece: group structure and basis."""
    try:
        presentation = _catalog(catalog).ring(ring)
        computed = graded_piece(presentation, Bidegree.parse(deg))
    except ValueError as e:
        _usage_error(str(e))
    typer.echo(piece_text(presentation, computed))


@app.command()
def table(
    ring: str = typer.Option(..., "--ring"),
    pmax: int = typer.Option(6, "--pmax", min=0),
    qmax: int = typer.Option(0, "--qmax", min=0),
    fmt: OutputFormat = typer.Option(OutputFormat.TEXT, "--format"),
    out: Path | None = OutOption,
    jobs: int | None = typer.Option(None, "--jobs", min=1),
    catalog: Path | None = CatalogOption,
):
    """Print the table of groups, rows p and columns q."""
    try:
        presentation = _catalog(catalog).ring(ring)
    except ValueError as e:
        _usage_error(str(e))
    if presentation.bigraded:
        degrees = [Bidegree(p, q) for p in range(pmax + 1) for q in range(qmax + 1)]
    else:
        degrees = [Bidegree(p) for p in range(pmax + 1)]
    with ThreadPoolExecutor(max_workers=jobs or Settings().jobs) as pool:
        list(pool.map(lambda d: graded_piece(presentation, d), degrees))
    result = poincare_table(presentation, pmax, qmax)
    renderers = {
        OutputFormat.JSON: table_json,
        OutputFormat.CSV: table_csv,
        OutputFormat.MD: table_markdown,
        OutputFormat.TEXT: table_text,
    }
    _emit(renderers[fmt](result), out)


def _render_reports(reports: list[CheckReport], fmt: OutputFormat) -> str:
    match fmt:
        case OutputFormat.JSON:
            return reports_json(reports)
        case OutputFormat.CSV:
            return reports_csv(reports)
        case OutputFormat.MD:
            return reports_markdown(reports)
        case _:
            return reports_text(reports)


@app.command()
def verify(
    config: Path | None = typer.Option(None, "--config", envvar="MRV_CONFIG", help="Run config JSON."),
    pmax: int | None = typer.Option(None, "--pmax"),
    qmax: int | None = typer.Option(None, "--qmax"),
    mmax: int | None = typer.Option(None, "--mmax"),
    checks: str | None = typer.Option(None, "--checks", help="Comma separated check names."),
    rings: str | None = typer.Option(None, "--rings", help="Comma separated ring names."),
    fmt: OutputFormat | None = typer.Option(None, "--format"),
    out: Path | None = OutOption,
    jobs: int | None = typer.Option(None, "--jobs"),
    catalog: Path | None = CatalogOption,
):
    """Run the selected checks; exit 1 when any pass/fail check fails."""
    settings = Settings()
    try:
        run = load_run_config(
            config or settings.config,
            p_max=pmax,
            q_max=qmax,
            m_max=mmax,
            checks=checks,
            rings=rings,
            format=fmt,
            out=out,
            jobs=jobs if jobs is not None else (settings.jobs if settings.jobs > 1 else None),
        )
    except (ValueError, OSError) as e:
        _usage_error(str(e))
    ctx = CheckContext(
        catalog=_catalog(catalog),
        box=run.box,
        rings=tuple(run.rings),
        square_root_cap=settings.square_root_cap,
    )
    logger.info(f"running {len(run.checks)} checks on {run.box} with {run.jobs} workers")
    try:
        with ThreadPoolExecutor(max_workers=run.jobs) as pool:
            reports = list(pool.map(lambda name: CHECKS[name](ctx), run.checks))
    except ValueError as e:
        _usage_error(str(e))
    for report in reports:
        logger.info(f"{report.check}: {report.status.value} with {len(report.findings)} findings")
    _emit(_render_reports(reports, run.format), run.out)
    if any(report.failed for report in reports):
        raise typer.Exit(code=1)


@app.command()
def export(
    out: Path | None = OutOption,
    catalog: Path | None = CatalogOption,
):
    """Write the ring and map catalog as JSON."""
    _emit(_catalog(catalog).to_json(), out)


@app.command()
def classify(
    coefficient: int = typer.Option(1, "--lambda", help="Coefficient λ."),
    k: int = typer.Option(0, "--k", min=0, help="Exponent of p1."),
    j: int = typer.Option(0, "--j", min=0, help="Exponent of √p2."),
    l: int = typer.Option(0, "--l", min=0, help="Exponent of β̃w2."),
):
    """Classify λ·p1^k·√p2^j·(β̃w2)^l into its lift family."""
    current = bundled_catalog()
    try:
        found = classify_family(current, coefficient, k, j, l)
    except ValueError as e:
        _usage_error(str(e))
    target = classical_monomial(current, found.coefficient, k, j, l)
    classical = element_text(current.ring("classical-z"), target)
    if found.lift is None:
        typer.echo(f"{classical}: family {found.family}, no lift")
        return
    lift = element_text(current.ring("motivic-z"), found.lift)
    typer.echo(f"{classical}: family {found.family}, lift {lift}")


def main():
    app()


if __name__ == "__main__":
    main()

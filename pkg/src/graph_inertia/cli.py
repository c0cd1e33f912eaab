"""
Main CLI interface for graph-inertia.

Results go to standard output (graph6, lines or JSON); progress, tables and errors go to
standard error.
"""

import sys
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Callable, Optional

import click
from rich.console import Console
from rich.progress import Progress, SpinnerColumn, TextColumn
from rich.table import Table

from .canon import canonical_relabel
from .census import ClassLabel, classify_order, compute_dstar, run_oracle
from .census_store import CensusStore
from .config import Settings, default_home, load_settings
from .constants import (
    APP_NAME,
    APP_VERSION,
    CLASSIFY_MIN_K,
    DEFAULT_TOLERANCE,
    ETA_MAX_MAX_ORDER,
    LEMMA412_ORDERS,
    LOG_DIR_NAME,
    LOG_FILE_NAME,
    ORACLE_MAX_ORDER,
    SMITH_MAX_ORDER,
)
from .errors import GraphError, OracleLimitError
from .families import build_bk, build_gn, canonical_graph, parse_bk
from .graph import Graph, complete_multipartite, from_graph6, to_graph6
from .logging_config import get_logger, setup_logging
from .spectral import eigenvalues, inertia
from .transforms import finding_lines, find_all, reduction_chain
from .utils import dump_json, format_elapsed, format_float
from .verify import (
    Report,
    verify_census_shapes,
    verify_disconnected,
    verify_eta_max,
    verify_fig3,
    verify_gn,
    verify_lemma_4_9,
    verify_lemma_4_12,
    verify_smith,
    verify_table1,
    verify_table2,
    verify_transforms,
)

logger = get_logger(__name__)

console = Console(stderr=True)


def _settings(ctx: click.Context) -> Settings:
    settings: Settings = ctx.obj
    return settings


def _jobs(ctx: click.Context, jobs: Optional[int]) -> int:
    return jobs if jobs is not None else _settings(ctx).jobs


def _store(ctx: click.Context) -> Optional[CensusStore]:
    settings = _settings(ctx)
    if not settings.use_cache:
        return None
    return CensusStore(settings.cache_path)


def _parse_graph(text: str) -> Graph:
    """Decode a graph6 argument, turning decode errors into usage errors."""
    try:
        return from_graph6(text)
    except GraphError as e:
        raise click.BadParameter(str(e), param_hint="GRAPH6") from None


@contextmanager
def _spinner(description: str) -> Iterator[None]:
    with Progress(
        SpinnerColumn(),
        TextColumn("[progress.description]{task.description}"),
        console=console,
        transient=True,
    ) as progress:
        progress.add_task(description=description, total=None)
        yield


jobs_option = click.option(
    "--jobs", "-j", type=click.IntRange(min=1), default=None, help="Worker processes"
)


@click.group()
@click.version_option(version=APP_VERSION, prog_name=APP_NAME)
@click.option("--cache/--no-cache", "use_cache", default=None, help="Use the census cache")
@click.option(
    "--cache-path", type=click.Path(dir_okay=False, path_type=Path), help="Census cache file"
)
@click.pass_context
def cli(ctx: click.Context, use_cache: Optional[bool], cache_path: Optional[Path]) -> None:
    """Graph Inertia - exact inertia, congruent-vertex reductions and graph censuses."""
    settings = ctx.obj if isinstance(ctx.obj, Settings) else load_settings()
    ctx.obj = settings.with_overrides(use_cache=use_cache, cache_path=cache_path)


@cli.command("inertia")
@click.argument("graph6")
def inertia_command(graph6: str) -> None:
    """Print the exact inertia (p, n, eta) of a graph."""
    g = _parse_graph(graph6)
    click.echo(dump_json(inertia(g).as_dict()))


@cli.command()
@click.argument("graph6")
@click.option(
    "--tol", type=float, default=None, help=f"Jacobi tolerance (default {DEFAULT_TOLERANCE})"
)
@click.pass_context
def spectrum(ctx: click.Context, graph6: str, tol: Optional[float]) -> None:
    """Print the adjacency eigenvalues, largest first."""
    g = _parse_graph(graph6)
    tolerance = tol if tol is not None else _settings(ctx).tolerance
    if tolerance <= 0:
        raise click.BadParameter("tolerance must be positive", param_hint="--tol")
    for value in eigenvalues(g, tolerance).values:
        click.echo(format_float(value))


@cli.group()
def construct() -> None:
    """Build a graph and print its graph6."""


def _emit_built(builder: Callable[[], Graph], hint: str) -> None:
    try:
        g = builder()
    except GraphError as e:
        raise click.BadParameter(str(e), param_hint=hint) from None
    click.echo(to_graph6(g))


@construct.command("gn")
@click.argument("n", type=int)
def construct_gn(n: int) -> None:
    """G_n: two cliques joined by a staircase."""
    _emit_built(lambda: build_gn(n), "N")


@construct.command("bk")
@click.argument("name")
def construct_bk(name: str) -> None:
    """B_k from a name such as "B6(4,3,3;2,1,1)"."""
    _emit_built(lambda: build_bk(parse_bk(name)), "NAME")


@construct.command("km")
@click.argument("parts", type=int, nargs=-1, required=True)
def construct_km(parts: tuple[int, ...]) -> None:
    """Complete multipartite graph with the given part sizes."""
    _emit_built(lambda: complete_multipartite(parts), "PARTS")


@cli.command()
@click.argument("graph6")
@click.option("--relabel", is_flag=True, help="Print the canonically relabelled graph instead")
def canon(graph6: str, relabel: bool) -> None:
    """Print the canonical (quotient) graph and the clique multiplicities."""
    g = _parse_graph(graph6)
    if relabel:
        click.echo(to_graph6(canonical_relabel(g)))
        return
    decomp = canonical_graph(g)
    multiplicities = " ".join(str(m) for m in decomp.multiplicities)
    click.echo(f"{to_graph6(decomp.quotient)} {multiplicities}")


@cli.command()
@click.argument("graph6")
def transforms(graph6: str) -> None:
    """List every congruent-vertex finding."""
    g = _parse_graph(graph6)
    for line in finding_lines(find_all(g)):
        click.echo(line)


@cli.command()
@click.argument("graph6")
def reduce(graph6: str) -> None:
    """Delete congruent vertices until the nullity is zero or no rule applies."""
    g = _parse_graph(graph6)
    for line in reduction_chain(g).to_lines():
        click.echo(line)


@cli.command()
@click.option("--n", "n", type=click.IntRange(min=CLASSIFY_MIN_K), help="Order to classify")
@click.option("--n-max", type=click.IntRange(min=CLASSIFY_MIN_K), help="Classify orders 4..N-MAX")
@click.option("--table", "as_table", is_flag=True, help="Render a table on stderr as well")
@jobs_option
@click.pass_context
def classify(
    ctx: click.Context,
    n: Optional[int],
    n_max: Optional[int],
    as_table: bool,
    jobs: Optional[int],
) -> None:
    """Count B_k(parts) by the sign class of lambda_3, per order and k."""
    if (n is None) == (n_max is None):
        raise click.UsageError("give exactly one of --n and --n-max")
    if n is not None:
        orders = [n]
    else:
        assert n_max is not None
        orders = list(range(CLASSIFY_MIN_K, n_max + 1))

    table = Table(title="B_k classification")
    table.add_column("n", style="cyan")
    table.add_column("k", style="magenta")
    for label in ClassLabel:
        table.add_column(label.value, justify="right")

    for order in orders:
        with _spinner(f"Classifying compositions of {order}..."):
            result = classify_order(order, _jobs(ctx, jobs))
        for k, counts in result.counts.items():
            click.echo(dump_json({"n": order, "k": k, **counts}))
            table.add_row(str(order), str(k), *(str(counts[label.value]) for label in ClassLabel))

    if as_table:
        console.print(table)


@cli.command()
@click.option(
    "--emit",
    type=click.Choice(["names", "graph6"]),
    default="names",
    show_default=True,
    help="Print B_k names or graph6",
)
@jobs_option
@click.pass_context
def dstar(ctx: click.Context, emit: str, jobs: Optional[int]) -> None:
    """Print the catalog of reduced X-complete graphs with lambda_3 = lambda_4 = 0."""
    with _spinner("Searching B_k compositions of order <= 14..."):
        catalog = compute_dstar(_jobs(ctx, jobs))
    for entry in catalog.entries:
        click.echo(entry.name if emit == "names" else to_graph6(entry.form.to_graph()))
    console.print(f"[green]{len(catalog)} graphs[/green] from {catalog.examined} compositions")


@cli.command()
@click.option("--n", "n", type=int, required=True, help=f"Order, at most {ORACLE_MAX_ORDER}")
@click.option("--connected-only", is_flag=True, help="Skip disconnected classes")
@click.option("--eta", type=click.IntRange(min=0), help="Only classes with this nullity")
@jobs_option
@click.pass_context
def oracle(
    ctx: click.Context,
    n: int,
    connected_only: bool,
    eta: Optional[int],
    jobs: Optional[int],
) -> None:
    """Stream every class of n-vertex graphs with p = 2 as JSON lines."""
    try:
        with _spinner(f"Enumerating labelled graphs on {n} vertices..."):
            result = run_oracle(n, _jobs(ctx, jobs), _store(ctx))
    except OracleLimitError as e:
        raise click.BadParameter(str(e), param_hint="--n") from None

    for record in result.records:
        if connected_only and not record.connected:
            continue
        if eta is not None and record.eta != eta:
            continue
        click.echo(dump_json(record.to_dict()))


@cli.group()
@click.option("--no-elapsed", is_flag=True, help="Omit timing so reports are byte-identical")
@click.pass_context
def verify(ctx: click.Context, no_elapsed: bool) -> None:
    """Run a verification suite and print its JSON report; exit 1 on violations."""
    ctx.meta["no_elapsed"] = no_elapsed


def _run_report(ctx: click.Context, description: str, run: Callable[[], Report]) -> None:
    try:
        with _spinner(description):
            report = run()
    except OracleLimitError as e:
        raise click.UsageError(str(e)) from None

    click.echo(dump_json(report.to_dict(include_elapsed=not ctx.meta.get("no_elapsed", False))))
    if report.ok:
        console.print(f"[green]{report.check}: ok[/green] ({format_elapsed(report.elapsed)})")
        return
    console.print(f"[red]{report.check}: {report.violations} violations[/red]")
    sys.exit(1)


@verify.command("table1")
@jobs_option
@click.pass_context
def verify_table1_command(ctx: click.Context, jobs: Optional[int]) -> None:
    """The computed D* catalog against the transcribed table."""
    _run_report(ctx, "Building the D* catalog...", lambda: verify_table1(_jobs(ctx, jobs)))


@verify.command("lemma49")
@jobs_option
@click.pass_context
def verify_lemma49_command(ctx: click.Context, jobs: Optional[int]) -> None:
    """No B_k of order 15 with p = 2 and positive nullity."""
    _run_report(ctx, "Classifying order 15...", lambda: verify_lemma_4_9(_jobs(ctx, jobs)))


@verify.command("lemma412")
@click.option("--n", "ns", type=int, multiple=True, help="Orders (repeatable, default 16 and 17)")
@jobs_option
@click.pass_context
def verify_lemma412_command(ctx: click.Context, ns: tuple[int, ...], jobs: Optional[int]) -> None:
    """No DoubleZero B_k at the given orders."""
    orders = ns or LEMMA412_ORDERS
    _run_report(ctx, "Classifying...", lambda: verify_lemma_4_12(orders, _jobs(ctx, jobs)))


@verify.command("table2")
@click.option("--oracle-n", type=int, default=6, show_default=True, help="Largest order to census")
@jobs_option
@click.pass_context
def verify_table2_command(ctx: click.Context, oracle_n: int, jobs: Optional[int]) -> None:
    """Census counts for n = 4..ORACLE-N against the goldens."""
    _run_report(
        ctx,
        "Running the census...",
        lambda: verify_table2(oracle_n, _jobs(ctx, jobs), _store(ctx)),
    )


@verify.command("smith")
@click.option("--n", "n", type=click.IntRange(1, SMITH_MAX_ORDER), default=6, show_default=True)
@jobs_option
@click.pass_context
def verify_smith_command(ctx: click.Context, n: int, jobs: Optional[int]) -> None:
    """One positive eigenvalue exactly for complete multipartite graphs plus isolated vertices."""
    _run_report(ctx, "Checking all labelled graphs...", lambda: verify_smith(n, _jobs(ctx, jobs)))


@verify.command("etamax")
@click.option("--n", "n", type=click.IntRange(3, ETA_MAX_MAX_ORDER), default=6, show_default=True)
@jobs_option
@click.pass_context
def verify_etamax_command(ctx: click.Context, n: int, jobs: Optional[int]) -> None:
    """Graphs of nullity n - 3 are complete tripartite plus isolated vertices."""
    _run_report(ctx, "Checking all labelled graphs...", lambda: verify_eta_max(n, _jobs(ctx, jobs)))


@verify.command("transforms")
@click.option("--n", "n", type=click.IntRange(1, ORACLE_MAX_ORDER), default=6, show_default=True)
@jobs_option
@click.pass_context
def verify_transforms_command(ctx: click.Context, n: int, jobs: Optional[int]) -> None:
    """Inertia law, existence and structural cases over the census."""
    _run_report(
        ctx,
        "Checking transformations...",
        lambda: verify_transforms(n, _jobs(ctx, jobs), _store(ctx)),
    )


@verify.command("fig3")
@click.pass_context
def verify_fig3_command(ctx: click.Context) -> None:
    """Third eigenvalues of the forbidden subgraph catalog."""
    _run_report(ctx, "Building the forbidden catalog...", verify_fig3)


@verify.command("disconnected")
@click.option("--n", "n", type=int, default=6, show_default=True)
@jobs_option
@click.pass_context
def verify_disconnected_command(ctx: click.Context, n: int, jobs: Optional[int]) -> None:
    """Disconnected census classes against the generated sums."""
    _run_report(
        ctx,
        "Comparing disconnected classes...",
        lambda: verify_disconnected(n, _jobs(ctx, jobs), _store(ctx)),
    )


@verify.command("shapes")
@click.option("--n", "n", type=click.IntRange(1, ORACLE_MAX_ORDER), default=6, show_default=True)
@jobs_option
@click.pass_context
def verify_shapes_command(ctx: click.Context, n: int, jobs: Optional[int]) -> None:
    """Neighbourhood shape, B_s recognition and forbidden-subgraph freedom."""
    _run_report(
        ctx,
        "Checking census shapes...",
        lambda: verify_census_shapes(n, _jobs(ctx, jobs), _store(ctx)),
    )


@verify.command("gn")
@click.option("--max-n", type=click.IntRange(min=2), default=16, show_default=True)
@click.pass_context
def verify_gn_command(ctx: click.Context, max_n: int) -> None:
    """G_n is an induced subgraph of G_{n+1}."""
    _run_report(ctx, "Checking G_n...", lambda: verify_gn(max_n))


@cli.group()
def census() -> None:
    """Inspect and move the census cache."""


def _cache(ctx: click.Context) -> CensusStore:
    return CensusStore(_settings(ctx).cache_path)


@census.command()
@click.pass_context
def stats(ctx: click.Context) -> None:
    """Show what the cache holds."""
    statistics = _cache(ctx).get_statistics()
    if not statistics["runs"]:
        console.print("[yellow]The census cache is empty[/yellow]")
        return

    table = Table(title="Census cache")
    table.add_column("n", style="cyan")
    table.add_column("labelled graphs", justify="right")
    table.add_column("classes by eta", style="magenta")
    table.add_column("completed", style="dim")
    for run in statistics["runs"]:
        by_eta = statistics["by_eta"].get(run["order"], {})
        table.add_row(
            str(run["order"]),
            str(run["examined"]),
            ", ".join(f"{eta}: {count}" for eta, count in sorted(by_eta.items())),
            str(run["completed_at"]),
        )
    console.print(table)
    click.echo(dump_json({"total": statistics["total"], "orders": statistics["orders"]}))


@census.command()
@click.argument("output", type=click.Path(dir_okay=False, path_type=Path))
@click.pass_context
def export(ctx: click.Context, output: Path) -> None:
    """Write every cached census to a JSON file."""
    if not _cache(ctx).export_records(output):
        console.print(f"[red]Failed to export the census cache to {output}[/red]")
        sys.exit(1)
    console.print(f"[green]Exported the census cache to {output}[/green]")


@census.command("import")
@click.argument("source", type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.pass_context
def import_command(ctx: click.Context, source: Path) -> None:
    """Load censuses from a JSON file written by export."""
    imported = _cache(ctx).import_records(source)
    console.print(f"[green]Imported {imported} census records[/green]")


def main() -> None:
    """Main entry point for the CLI."""
    settings = load_settings()
    log_file = settings.log_file or default_home() / LOG_DIR_NAME / LOG_FILE_NAME
    setup_logging(level=settings.log_level, log_file=log_file)

    # Outside standalone mode click re-raises usage errors and aborts instead of exiting.
    try:
        logger.debug(f"Starting {APP_NAME} CLI")
        code = cli.main(obj=settings, standalone_mode=False)
    except click.ClickException as e:
        e.show()
        sys.exit(e.exit_code)
    except (click.Abort, KeyboardInterrupt):
        logger.info("User interrupted the operation")
        console.print("\n[yellow]Operation cancelled by user[/yellow]")
        sys.exit(0)
    except Exception as e:
        logger.exception(f"Unexpected error in CLI: {e}")
        console.print(f"[red]Error: {e}[/red]")
        console.print(f"[dim]Check {log_file} for details[/dim]")
        sys.exit(1)
    sys.exit(code if isinstance(code, int) else 0)


if __name__ == "__main__":
    main()

"""secrecy-toolkit CLI application - Main entry point."""

import math
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, Optional

import click
from rich.console import Console
from rich.table import Table

from secrecy_toolkit import __version__
from secrecy_toolkit.channel.broadcast import (
    ORDERED_CHAINS,
    BroadcastChannel,
    Output,
    check_degradedness,
    is_deterministic,
    output_map,
    require_family,
    theorem_family,
)
from secrecy_toolkit.io.exports import write_fm_trace, write_region_csv, write_report, write_system
from secrecy_toolkit.io.specfiles import load_cascade, load_channel, load_simulation_config
from secrecy_toolkit.regions.capacity import (
    SUBREGIONS,
    EntropyProfile,
    capacity_region_thm2,
    capacity_region_thm3,
    px_grid,
    subregion_from_profile,
)
from secrecy_toolkit.regions.geometry import (
    RateRegion2D,
    RegionUnion,
    hausdorff_distance,
    region_contains,
    union_regions,
)
from secrecy_toolkit.regions.search import search_inner_bound
from secrecy_toolkit.regions.theorem1 import compute_terms, derive_region_fm, theorem1_region
from secrecy_toolkit.sim.trials import histogram_feasible, run_trials
from secrecy_toolkit.utils import config
from secrecy_toolkit.utils.exceptions import (
    ChannelPreconditionError,
    InequalityParseError,
    SecrecyToolkitError,
    SimulationConfigError,
    SpecFileError,
)
from secrecy_toolkit.utils.logging import get_logger, setup_logging
from secrecy_toolkit.utils.settings import settings

console = Console()
logger = get_logger("cli")

REGION_MODES = ("thm1-single-cascade", "thm1-search", "thm2", "thm3", "subregions")

# Hausdorff agreement required between the FM route and the closed form
FM_AGREEMENT = 1e-6


def exit_code_for(error: BaseException) -> int:
    """2 for input errors, 1 for everything a computation rejects."""
    if isinstance(error, (SpecFileError, InequalityParseError)):
        return 2
    return 1


@contextmanager
def _handle_errors(action: str) -> Iterator[None]:
    try:
        yield
    except SecrecyToolkitError as e:
        # Print without markup so bracketed field names survive
        console.print("\n[bold red]✗ Error:[/bold red]")
        console.print(str(e), style="red", markup=False)
        console.print()
        logger.error(f"{action} failed: {e}", exc_info=True)
        sys.exit(exit_code_for(e))


def _parse_sizes(ctx: click.Context, param: click.Parameter, value: Optional[str]) -> Optional[tuple[int, ...]]:
    if value is None:
        return None
    try:
        sizes = tuple(int(s) for s in value.split(","))
    except ValueError:
        raise click.BadParameter("expected four integers u,v,v1,v2") from None
    if len(sizes) != 4 or any(s < 1 for s in sizes):
        raise click.BadParameter("expected four positive integers u,v,v1,v2")
    return sizes


def _out_dir(out: Optional[str]) -> Path:
    return config.init_output_dir(Path(out) if out else None)


def _region_table(title: str, region: RateRegion2D | RegionUnion) -> Table:
    table = Table(title=title, show_header=True, header_style="bold magenta")
    table.add_column("R1", style="cyan", justify="right")
    table.add_column("R2", style="green", justify="right")
    vertices = region.vertices if isinstance(region, RegionUnion) else list(region.vertices)
    for x, y in vertices:
        table.add_row(f"{x:.6g}", f"{y:.6g}")
    return table


def _verdict(ok: bool) -> str:
    return "[green]PASS[/green]" if ok else "[red]FAIL[/red]"


def _yes_no(ok: bool) -> str:
    return "[green]yes[/green]" if ok else "[red]no[/red]"


@click.group()
@click.version_option(version=__version__, prog_name="secrecy-toolkit")
@click.option("--log-level", default=None, help="DEBUG, INFO, WARNING, ERROR or CRITICAL")
def cli(log_level: Optional[str]) -> None:
    """
    secrecy-toolkit - Secrecy rate regions for broadcast channels.

    Compute inner bounds and capacity regions for two-receiver broadcast
    channels with an eavesdropper and one-sided message side information,
    derive them by Fourier-Motzkin elimination, and simulate the layered
    random code at small blocklengths.
    """
    if log_level:
        setup_logging(log_level=log_level)


@cli.command("channel-check")
@click.argument("spec", type=click.Path(dir_okay=False))
def channel_check(spec: str) -> None:
    """
    Report determinism and degradedness of a channel.

    Example: secrecy-toolkit channel-check samples/thm2_channel.toml
    """
    with _handle_errors("Channel check"):
        ch = load_channel(spec)

        det_table = Table(title="Outputs", show_header=True, header_style="bold magenta")
        det_table.add_column("Output", style="cyan")
        det_table.add_column("Alphabet", justify="right")
        det_table.add_column("Deterministic")
        det_table.add_column("Map x -> output")
        for out, card in zip(Output, ch.output_sizes):
            deterministic = is_deterministic(ch, out)
            mapping = str(output_map(ch, out).tolist()) if deterministic else "-"
            det_table.add_row(out.value, str(card), _yes_no(deterministic), mapping)

        order_table = Table(title="Degradedness", show_header=True, header_style="bold magenta")
        order_table.add_column("Order", style="cyan")
        order_table.add_column("Holds")
        for order in ORDERED_CHAINS:
            order_table.add_row(f"X -> {' -> '.join(o.value for o in order.chain)}", _yes_no(check_degradedness(ch, order)))

        console.print()
        console.print(det_table)
        console.print(order_table)
        family = theorem_family(ch)
        label = {"thm2": "thm2 (Y2 ahead of Y1)", "thm3": "thm3 (Y1 ahead of Y2)"}.get(family, "none")
        console.print(f"\n[bold]Capacity family:[/bold] {label}\n")


def _capacity(ch: BroadcastChannel, family: str, grid: list) -> RegionUnion:
    return capacity_region_thm2(ch, grid) if family == "thm2" else capacity_region_thm3(ch, grid)


@cli.command()
@click.argument("spec", type=click.Path(dir_okay=False))
@click.option("--mode", type=click.Choice(REGION_MODES), required=True, help="Which region to compute")
@click.option("--cascade", "cascade_path", type=click.Path(dir_okay=False), help="Cascade file (thm1-single-cascade)")
@click.option("--grid", type=click.IntRange(min=1), default=None, help="Number of p(x) grid points")
@click.option("--seed", type=click.IntRange(min=0, max=2**64 - 1), default=None, help="Random seed")
@click.option("--budget", type=click.IntRange(min=1), default=None, help="Random cascades for thm1-search")
@click.option("--sizes", callback=_parse_sizes, default=None, help="Auxiliary alphabet sizes u,v,v1,v2")
@click.option("--convexify/--no-convexify", default=False, help="Report the convex hull of the union")
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Output directory")
def region(
    spec: str,
    mode: str,
    cascade_path: Optional[str],
    grid: Optional[int],
    seed: Optional[int],
    budget: Optional[int],
    sizes: Optional[tuple[int, ...]],
    convexify: bool,
    out: Optional[str],
) -> None:
    """
    Compute a rate region and write its vertices as CSV.

    Examples:
        secrecy-toolkit region samples/thm2_channel.toml --mode thm2
        secrecy-toolkit region ch.toml --mode thm1-single-cascade --cascade aux.toml
        secrecy-toolkit region ch.toml --mode thm1-search --budget 500 --sizes 2,2,2,2
    """
    with _handle_errors("Region computation"):
        ch = load_channel(spec)
        out_dir = _out_dir(out)
        seed = settings.seed if seed is None else seed
        written: list[Path] = []

        if mode == "thm1-single-cascade":
            if not cascade_path:
                raise click.UsageError("--cascade is required for thm1-single-cascade")
            aux = load_cascade(cascade_path, ch)
            terms = compute_terms(aux.joint(ch))
            result: RateRegion2D | RegionUnion = theorem1_region(terms)
            if not terms.conditions_hold():
                console.print("[yellow]⚠ Side conditions fail for this cascade; region is the origin[/yellow]")
            written += write_region_csv(result, out_dir / "thm1_single.csv")

        elif mode == "thm1-search":
            with console.status("[yellow]Searching auxiliary cascades...[/yellow]", spinner="dots"):
                found = search_inner_bound(ch, budget=budget, sizes=sizes, seed=seed)
            console.print(
                f"[green]✓[/green] Evaluated {found.evaluated} cascades "
                f"({found.structured} structured), {found.nontrivial} nontrivial"
            )
            result = found.region.convex_hull() if convexify else found.region
            written += write_region_csv(result, out_dir / "thm1_search.csv")

        elif mode in ("thm2", "thm3"):
            require_family(ch, mode)
            points = px_grid(ch.card_x, grid, seed)
            with console.status(f"[yellow]Evaluating {len(points)} input distributions...[/yellow]", spinner="dots"):
                union = _capacity(ch, mode, points)
            result = union.convex_hull() if convexify else union
            written += write_region_csv(result, out_dir / f"{mode}_capacity.csv")

        else:
            family = theorem_family(ch)
            if family is None:
                raise ChannelPreconditionError(
                    "subregions", "channel is in neither the thm2 nor the thm3 family"
                )
            points = px_grid(ch.card_x, grid, seed)
            with console.status(f"[yellow]Evaluating {len(points)} input distributions...[/yellow]", spinner="dots"):
                profiles = [EntropyProfile.of(ch, p) for p in points]
                parts = {
                    name: union_regions(subregion_from_profile(p, name).region for p in profiles)
                    for name in SUBREGIONS[family]
                }
                union = union_regions(parts.values())
                capacity = _capacity(ch, family, points)
            for name, part in parts.items():
                written += write_region_csv(part, out_dir / f"subregion_{name}.csv")
            result = union.convex_hull() if convexify else union
            written += write_region_csv(result, out_dir / "subregions_union.csv")
            written += write_region_csv(capacity, out_dir / f"{family}_capacity.csv")

            tol = settings.union_containment_tolerance
            inner_ok = region_contains(capacity, union, tol=FM_AGREEMENT)
            outer_ok = region_contains(union, capacity, tol=tol)
            console.print(f"\nunion ⊆ capacity: {_verdict(inner_ok)}, capacity ⊆ union (within {tol:g}): {_verdict(outer_ok)}")
            console.print(f"Hausdorff distance: {hausdorff_distance(union, capacity):.3g}")

        console.print()
        console.print(_region_table(f"Region ({mode})", result))
        console.print("\n[bold]Output Files:[/bold]")
        for path in written:
            console.print(f"  [green]✓[/green] {path}")
        console.print()


@cli.command("fm-derive")
@click.argument("spec", type=click.Path(dir_okay=False))
@click.argument("cascade", type=click.Path(dir_okay=False))
@click.option("--include-redundant", is_flag=True, help="Also add the two redundant secrecy rows")
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Output directory")
def fm_derive(spec: str, cascade: str, include_redundant: bool, out: Optional[str]) -> None:
    """
    Derive the inner bound of one cascade by Fourier-Motzkin elimination.

    Writes the rate-splitting system, the elimination trace and the
    projected region, and compares it with the closed-form bounds.
    """
    with _handle_errors("FM derivation"):
        ch = load_channel(spec)
        aux = load_cascade(cascade, ch)
        out_dir = _out_dir(out)
        terms = compute_terms(aux.joint(ch))

        with console.status("[yellow]Eliminating rate variables...[/yellow]", spinner="dots"):
            derivation = derive_region_fm(terms, include_redundant=include_redundant)
        written = [
            write_system(derivation.system, out_dir / "fm_system.txt", "rate-splitting system"),
            write_system(derivation.reduced, out_dir / "fm_reduced.txt", "after elimination"),
            write_fm_trace(derivation.system, derivation.steps, out_dir / "fm_trace.txt"),
        ]
        written += write_region_csv(derivation.region, out_dir / "fm_region.csv")

        summary = Table(title="FM derivation", show_header=True, header_style="bold magenta")
        summary.add_column("Property", style="cyan", width=32)
        summary.add_column("Value", style="green")
        summary.add_row("Initial rows", str(len(derivation.system.ineqs)))
        summary.add_row("Elimination steps", str(len(derivation.steps)))
        summary.add_row("Final rows", str(len(derivation.reduced.ineqs)))
        summary.add_row("Final variables", ", ".join(derivation.reduced.vars))
        summary.add_row("Side conditions hold", _yes_no(terms.conditions_hold()))

        if terms.conditions_hold():
            distance = hausdorff_distance(derivation.region, theorem1_region(terms))
            summary.add_row("Distance to closed form", f"{distance:.3g} {_verdict(distance <= FM_AGREEMENT)}")
        if include_redundant:
            baseline = derive_region_fm(terms, include_redundant=False)
            unchanged = baseline.region.exact_vertices == derivation.region.exact_vertices
            summary.add_row("Region unchanged", "true" if unchanged else "false")

        console.print()
        console.print(summary)
        console.print(_region_table("Derived region", derivation.region))
        console.print("\n[bold]Output Files:[/bold]")
        for path in written:
            console.print(f"  [green]✓[/green] {path}")
        console.print()


@cli.command()
@click.argument("spec", type=click.Path(dir_okay=False))
@click.argument("cascade", type=click.Path(dir_okay=False))
@click.option("--config", "config_path", type=click.Path(dir_okay=False), default=None, help="Simulation config file")
@click.option("--n", "n", type=click.IntRange(min=1), default=None, help="Blocklength")
@click.option("--trials", type=click.IntRange(min=1), default=None, help="Number of trials")
@click.option("--eps", type=float, default=None, help="Decoder typicality slack")
@click.option("--eps-prime", type=float, default=None, help="Encoder typicality slack")
@click.option("--seed", type=click.IntRange(min=0, max=2**64 - 1), default=None, help="Random seed")
@click.option("--regen-every", type=click.IntRange(min=0), default=None, help="Trials per codebook (0 = one codebook)")
@click.option("--workers", type=click.IntRange(min=1), default=None, help="Worker threads")
@click.option("--out", type=click.Path(file_okay=False), default=None, help="Output directory")
def simulate(
    spec: str,
    cascade: str,
    config_path: Optional[str],
    n: Optional[int],
    trials: Optional[int],
    eps: Optional[float],
    eps_prime: Optional[float],
    seed: Optional[int],
    regen_every: Optional[int],
    workers: Optional[int],
    out: Optional[str],
) -> None:
    """
    Monte-Carlo run of the layered secrecy code.

    Example:
        secrecy-toolkit simulate ch.toml aux.toml --config samples/sim.toml --trials 1000
    """
    with _handle_errors("Simulation"):
        ch = load_channel(spec)
        aux = load_cascade(cascade, ch)
        sim = load_simulation_config(config_path).with_overrides(
            n=n, trials=trials, eps=eps, eps_prime=eps_prime, seed=seed, regen_every=regen_every
        )
        params = sim.code_params(aux, ch)
        if not histogram_feasible(params):
            bits = params.n * math.log2(ch.card_z)
            raise SimulationConfigError(
                f"n*log2|Z| <= {settings.histogram_bits_limit}",
                f"n*log2|Z| = {bits:.2f}; shorten the blocklength to estimate leakage",
            )
        out_dir = _out_dir(out)

        with console.status(f"[yellow]Running {sim.trials} trials at n={sim.n}...[/yellow]", spinner="dots"):
            report = run_trials(params, sim.trials, sim.seed, sim.regen_every, workers)
        written = write_report(report, out_dir)

        table = Table(title="Simulation", show_header=True, header_style="bold magenta")
        table.add_column("Property", style="cyan", width=25)
        table.add_column("Value", style="green")
        table.add_row("Rates (R1, R2)", f"({report.R1:.4g}, {report.R2:.4g})")
        table.add_row("Inside design region", _yes_no(report.design_point_inside))
        table.add_row("Error rate, receiver 1", f"{report.err1:.4g}")
        table.add_row("Error rate, receiver 2", f"{report.err2:.4g}")
        table.add_row("Leakage I(M1;Z^n)", f"{report.leak1:.4g} bits")
        table.add_row("Leakage I(M2;Z^n)", f"{report.leak2:.4g} bits")
        table.add_row("Encoder fallbacks", str(report.encoder_fallbacks))
        for name, count in report.event_counts.items():
            table.add_row(f"Event {name}", str(count))

        console.print()
        console.print(table)
        console.print("\n[bold]Output Files:[/bold]")
        for path in written:
            console.print(f"  [green]✓[/green] {path}")
        console.print()


@cli.command("check-config")
def check_config() -> None:
    """
    Show the effective configuration.
    """
    console.print("\n[bold cyan]Configuration Check[/bold cyan]\n")

    env_table = Table(title="Environment", show_header=True, header_style="bold magenta")
    env_table.add_column("Setting", style="cyan", width=28)
    env_table.add_column("Value", style="green")
    env_table.add_row(config.THREADS_ENV_VAR, str(config.worker_count()))
    env_table.add_row("Output directory", str(config.OUTPUT_DIR))
    env_table.add_row("Log level", config.LOG_LEVEL)
    env_table.add_row("Log file", str(config.LOG_FILE) if config.LOG_TO_FILE else "off")
    console.print(env_table)

    num_table = Table(title="Numerical defaults", show_header=True, header_style="bold magenta")
    num_table.add_column("Setting", style="cyan", width=28)
    num_table.add_column("Value", style="green")
    num_table.add_column("Description")
    for name, info in type(settings).model_fields.items():
        num_table.add_row(name, str(getattr(settings, name)), info.description or "")
    console.print(num_table)

    warnings_list = config.validate_config()
    if warnings_list:
        console.print("\n[yellow]⚠ Configuration warnings:[/yellow]")
        for w in warnings_list:
            console.print(f"  {w}")
    else:
        console.print("\n[green]✓[/green] No configuration warnings")
    console.print()


def main() -> None:
    """Main entry point for the CLI."""
    try:
        cli(standalone_mode=False)
    except click.exceptions.Abort:
        console.print("\n\n[yellow]Interrupted by user[/yellow]")
        sys.exit(130)
    except click.ClickException as e:
        e.show()
        sys.exit(e.exit_code)
    except KeyboardInterrupt:
        console.print("\n\n[yellow]Interrupted by user[/yellow]")
        sys.exit(130)
    except Exception as e:
        console.print("\n[red]Fatal error:[/red]")
        console.print(str(e), style="red", markup=False)
        logger.error(f"Fatal error: {e}", exc_info=True)
        sys.exit(1)


if __name__ == "__main__":
    main()

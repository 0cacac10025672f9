"""CLI interface for bosoncast."""

import json
import logging
import sys
from collections.abc import Iterator
from contextlib import contextmanager
from pathlib import Path
from typing import Any

import numpy as np
import typer
from rich import print
from rich.console import Console
from rich.logging import RichHandler
from rich.table import Table

from bosoncast import __version__
from bosoncast.capacity_regions import (
    BOUNDARIES,
    ChannelParams,
    RegionCurve,
    Scheme,
    beta_grid,
    mac_coherent_envelope,
    region_dominates,
)
from bosoncast.config import RunConfig, thread_count
from bosoncast.entropy_core import Base, g, g_inv, g_scaling_inequality_check
from bosoncast.errors import BosoncastError, DomainError, NumericError, ValidationError
from bosoncast.fock_sim import (
    FOCK_FAMILIES,
    LOCAL_FAMILIES,
    HusimiGrid,
    QuadratureConfig,
    attenuate,
    coherent_region_quadrature,
    conjecture1_local_check,
    conjecture2_search,
    make_fock_thermal,
    wehrl_entropy_numeric,
    wehrl_scaling_check,
)
from bosoncast.gaussian_states import (
    GAUSSIAN_FAMILIES,
    GaussianSearchConfig,
    GaussianState,
    min_output_entropy_gaussian,
    min_wehrl_output_entropy,
    wehrl_entropy_gaussian_thermal,
    williamson,
)
from bosoncast.plotting import RegionPlot
from bosoncast.utils import dump_json, render_csv, save_json, save_text

app = typer.Typer(
    name="bosoncast",
    help="Capacity regions and output-entropy checks for bosonic broadcast channels",
    add_completion=False,
)
entropy_app = typer.Typer(help="The thermal entropy function g and its properties")
wehrl_app = typer.Typer(help="Wehrl entropies, closed form and numeric")
conjecture_app = typer.Typer(help="Numerical checks of the minimum output entropy conjectures")
app.add_typer(entropy_app, name="entropy")
app.add_typer(wehrl_app, name="wehrl")
app.add_typer(conjecture_app, name="conjecture")

# data products go to stdout or files; messages to stderr
console = Console(stderr=True)

FIGURE_ETA = 0.8
FIG3_NBARS = (1.0, 5.0, 15.0)
FIG4_NBAR = 15.0

REGION_DEFAULTS = {
    "scheme": Scheme.OPTIMUM.value,
    "eta": FIGURE_ETA,
    "nbar": FIG4_NBAR,
    "eta_c": None,
    "nbar_b": None,
    "points": 257,
}
FIGURE_DEFAULTS = {"points": 257}
G_DEFAULTS = {"x": 0.0, "base": Base.BITS.value}
G_INV_DEFAULTS = {"y": 0.0, "base": Base.BITS.value}
SCALING_DEFAULTS = {"xs": [], "eta": 0.5, "trials": 0, "size": 5, "x_max": 20.0, "seed": 0}
WILLIAMSON_DEFAULTS = {"input_path": None}
WEHRL_THERMAL_DEFAULTS = {"n": 1, "k": 1.0, "eta": None}
WEHRL_NUMERIC_DEFAULTS = {
    "k": 1.0,
    "eta": None,
    "dim": 60,
    "radial_nodes": 200,
    "angular_nodes": 128,
    "scale": None,
}
SEARCH_DEFAULTS = {
    "eta": 0.7,
    "k": 1.0,
    "dim": 40,
    "budget": 2000,
    "seed": 0,
    "families": list(FOCK_FAMILIES),
    "tolerance": 1e-9,
}
LOCAL_DEFAULTS = {
    "eta": 0.7,
    "k": 1.0,
    "dim": 40,
    "magnitudes": [0.05, 0.1, 0.2, 0.5],
    "seed": 0,
    "families": list(LOCAL_FAMILIES),
}
GAUSS_SEARCH_DEFAULTS = {
    "eta": 0.7,
    "k": 1.0,
    "n": 2,
    "budget": 200,
    "seed": 0,
    "families": list(GAUSSIAN_FAMILIES),
    "max_squeeze": 1.5,
}
QUADRATURE_DEFAULTS = {
    "eta": 0.8,
    "nbar": 2.0,
    "eta_c": None,
    "betas": [0.0, 0.5, 1.0],
    "dim": 50,
    "outer_nodes": 8,
    "tolerance": 1e-3,
}

CONFIG_OPTION = typer.Option(None, "--config", "-c", help="JSON file with option values")
OUT_OPTION = typer.Option(None, "--out", "-o", help="Output file (stdout if omitted)")


@contextmanager
def handle_errors() -> Iterator[None]:
    """Report library errors on stderr and exit with the matching code."""
    try:
        yield
    except ValidationError as e:
        console.print(f"[bold red]Error:[/bold red] {e}")
        raise typer.Exit(e.exit_code) from e
    except NumericError as e:
        console.print(f"[bold red]Numerical failure:[/bold red] {e}")
        raise typer.Exit(e.exit_code) from e
    except (BosoncastError, OSError) as e:
        console.print(f"[bold red]Error:[/bold red] {e}")
        raise typer.Exit(1) from e


def _float_list(value: Any, name: str) -> list[float]:
    """Comma separated text or a JSON list of numbers."""
    if value is None:
        return []
    if isinstance(value, str):
        parts = [p for p in value.replace(" ", "").split(",") if p]
    else:
        parts = list(value)
    try:
        return [float(p) for p in parts]
    except (TypeError, ValueError) as e:
        raise DomainError(f"{name} must be a list of numbers, got {value!r}") from e


def _str_list(value: Any) -> list[str]:
    if value is None:
        return []
    if isinstance(value, str):
        return [p for p in value.replace(" ", "").split(",") if p]
    return [str(p) for p in value]


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
        return
    save_text(text, out)
    _wrote(out)


def _wrote(path: Path) -> None:
    console.print(f"[bold green]✓[/bold green] Wrote {path}")


def _emit_json(data: dict[str, Any], config: RunConfig, out: Path | None) -> None:
    data = {**data, "config": config.as_dict()}
    if out is None:
        _emit(dump_json(data), None)
        return
    save_json(data, out)
    _wrote(out)


def _build_region(config: RunConfig) -> RegionCurve:
    try:
        scheme = Scheme(config["scheme"])
    except ValueError as e:
        choices = ", ".join(s.value for s in Scheme)
        raise DomainError(f"scheme must be one of {choices}, got {config['scheme']!r}") from e
    grid = beta_grid(int(config["points"]))
    if scheme is Scheme.MAC_ENVELOPE:
        nbar_b = config["nbar_b"] if config["nbar_b"] is not None else config["nbar"]
        return mac_coherent_envelope(float(config["eta"]), float(config["nbar"]), float(nbar_b), grid)
    params = ChannelParams(
        eta=float(config["eta"]),
        nbar=float(config["nbar"]),
        eta_c=None if config["eta_c"] is None else float(config["eta_c"]),
    )
    return BOUNDARIES[scheme](params, grid)


@app.command()
def region(
    scheme: Scheme | None = typer.Option(None, "--scheme", "-s", help="Receiver family"),
    eta: float | None = typer.Option(None, "--eta", help="Beam-splitter transmissivity"),
    nbar: float | None = typer.Option(None, "--nbar", help="Mean photon budget"),
    eta_c: float | None = typer.Option(None, "--eta-c", help="Coupling to Charlie (lossy coupler)"),
    nbar_b: float | None = typer.Option(None, "--nbar-b", help="Second transmitter budget (MAC)"),
    points: int | None = typer.Option(None, "--points", "-n", help="Number of beta samples"),
    out: Path | None = OUT_OPTION,
    svg: Path | None = typer.Option(None, "--svg", help="Also write an SVG plot"),
    config_path: Path | None = CONFIG_OPTION,
):
    """Write the rate-region boundary of one receiver scheme as CSV."""
    with handle_errors():
        config = RunConfig.resolve(
            "region",
            REGION_DEFAULTS,
            {
                "scheme": scheme.value if scheme else None,
                "eta": eta,
                "nbar": nbar,
                "eta_c": eta_c,
                "nbar_b": nbar_b,
                "points": points,
            },
            config_path,
        )
        curve = _build_region(config)
        _emit(curve.to_csv(config.as_dict()), out)
        if svg is not None:
            RegionPlot().write([curve], svg, title=f"{curve.scheme.value} region")
            _wrote(svg)


@app.command()
def figure(
    which: str = typer.Argument(..., help="fig3 or fig4"),
    out_dir: Path = typer.Option(Path("."), "--out-dir", "-d", help="Directory for the CSV set"),
    points: int | None = typer.Option(None, "--points", "-n", help="Number of beta samples"),
    svg: bool = typer.Option(False, "--svg", help="Also write SVG plots"),
    config_path: Path | None = CONFIG_OPTION,
):
    """Reproduce the figure data sets at eta = 0.8.

    Examples:
        bosoncast figure fig3 --out-dir results
        bosoncast figure fig4 --out-dir results --svg
    """
    with handle_errors():
        if which not in ("fig3", "fig4"):
            raise DomainError(f"figure must be fig3 or fig4, got {which!r}")
        config = RunConfig.resolve("figure", FIGURE_DEFAULTS, {"points": points}, config_path)
        grid = beta_grid(int(config["points"]))
        echo = {**config.as_dict(), "figure": which}
        plot = RegionPlot()

        if which == "fig3":
            for nbar in FIG3_NBARS:
                params = ChannelParams(eta=FIGURE_ETA, nbar=nbar)
                curves = [
                    BOUNDARIES[scheme](params, grid)
                    for scheme in (Scheme.OPTIMUM, Scheme.HOMODYNE, Scheme.HETERODYNE)
                ]
                for curve in curves:
                    path = out_dir / f"fig3_{curve.scheme.value}_nbar{nbar:g}.csv"
                    _emit(curve.to_csv(echo), path)
                if svg:
                    plot.write(curves, out_dir / f"fig3_nbar{nbar:g}.svg", f"nbar={nbar:g}")
            return

        params = ChannelParams(eta=FIGURE_ETA, nbar=FIG4_NBAR)
        broadcast = BOUNDARIES[Scheme.OPTIMUM](params, grid)
        envelope = mac_coherent_envelope(FIGURE_ETA, FIG4_NBAR, FIG4_NBAR, grid)
        _emit(broadcast.to_csv(echo), out_dir / "fig4_broadcast.csv")
        _emit(envelope.to_csv(echo), out_dir / "fig4_mac_envelope.csv")
        verdict = str(region_dominates(envelope, broadcast)).lower()
        line = f"MAC envelope dominates broadcast boundary: {verdict}\n"
        save_text(line, out_dir / "fig4_verdict.txt")
        if svg:
            plot.write([broadcast, envelope], out_dir / "fig4.svg", "broadcast vs MAC")
        sys.stdout.write(line)


@entropy_app.command("g")
def entropy_g(
    x: float | None = typer.Option(None, "--x", help="Mean photon number"),
    base: Base | None = typer.Option(None, "--base", help="bits or nats"),
    out: Path | None = OUT_OPTION,
    config_path: Path | None = CONFIG_OPTION,
):
    """Evaluate g(x)."""
    with handle_errors():
        config = RunConfig.resolve(
            "entropy g", G_DEFAULTS, {"x": x, "base": base.value if base else None}, config_path
        )
        value = g(float(config["x"]), Base(config["base"]))
        _emit_json({"g": value.value, "base": value.base.value, "x": config["x"]}, config, out)


@entropy_app.command("g-inv")
def entropy_g_inv(
    y: float | None = typer.Option(None, "--y", help="Entropy value"),
    base: Base | None = typer.Option(None, "--base", help="bits or nats"),
    out: Path | None = OUT_OPTION,
    config_path: Path | None = CONFIG_OPTION,
):
    """Invert g: the mean photon number of a thermal state with entropy y."""
    with handle_errors():
        config = RunConfig.resolve(
            "entropy g-inv", G_INV_DEFAULTS, {"y": y, "base": base.value if base else None}, config_path
        )
        x = g_inv(float(config["y"]), Base(config["base"]))
        _emit_json({"x": x, "y": config["y"], "base": config["base"]}, config, out)


@entropy_app.command("scaling")
def entropy_scaling(
    xs: str | None = typer.Option(None, "--xs", help="Comma separated photon numbers"),
    eta: float | None = typer.Option(None, "--eta", help="Scale factor in [0, 1]"),
    trials: int | None = typer.Option(None, "--trials", help="Random instances to test"),
    size: int | None = typer.Option(None, "--size", help="Photon numbers per random instance"),
    x_max: float | None = typer.Option(None, "--x-max", help="Upper bound of random photon numbers"),
    seed: int | None = typer.Option(None, "--seed", help="Seed for random instances"),
    out: Path | None = OUT_OPTION,
    config_path: Path | None = CONFIG_OPTION,
):
    """Check mean g(eta x_k) >= g(eta x0) where g(x0) = mean g(x_k)."""
    with handle_errors():
        config = RunConfig.resolve(
            "entropy scaling",
            SCALING_DEFAULTS,
            {
                "xs": _float_list(xs, "xs") if xs is not None else None,
                "eta": eta,
                "trials": trials,
                "size": size,
                "x_max": x_max,
                "seed": seed,
            },
            config_path,
        )
        result: dict[str, Any] = {}
        values = _float_list(config["xs"], "xs")
        if values:
            result["check"] = g_scaling_inequality_check(values, float(config["eta"])).to_dict()
        if int(config["trials"]) > 0:
            rng = np.random.default_rng(int(config["seed"]))
            violations = 0
            worst = float("inf")
            for _ in range(int(config["trials"])):
                sample = rng.uniform(0.0, float(config["x_max"]), int(config["size"]))
                report = g_scaling_inequality_check(sample, rng.uniform(0.0, 1.0))
                worst = min(worst, report.lhs - report.rhs)
                violations += not report.holds
            result["suite"] = {
                "trials": int(config["trials"]),
                "violations": violations,
                "min_margin": worst,
            }
        if not result:
            raise DomainError("give --xs or a positive --trials")
        _emit_json(result, config, out)


@app.command("williamson")
def williamson_command(
    input_path: Path | None = typer.Option(None, "--in", "-i", help="Gaussian state JSON"),
    out: Path | None = OUT_OPTION,
    config_path: Path | None = CONFIG_OPTION,
):
    """Symplectic (Williamson) decomposition of a Gaussian state."""
    with handle_errors():
        config = RunConfig.resolve(
            "williamson", WILLIAMSON_DEFAULTS, {"input_path": input_path}, config_path
        )
        if config["input_path"] is None:
            raise DomainError("missing --in state file")
        path = Path(config["input_path"])
        try:
            document = json.loads(path.read_text())
        except FileNotFoundError as e:
            raise DomainError(f"state file '{path}' does not exist") from e
        except json.JSONDecodeError as e:
            raise DomainError(f"state file '{path}' is not valid JSON: {e}") from e
        state = GaussianState.from_dict(document)
        decomposition = williamson(state)
        _emit_json(decomposition.to_dict(state), config, out)


@wehrl_app.command("thermal")
def wehrl_thermal(
    n: int | None = typer.Option(None, "--n", help="Number of modes"),
    k: float | None = typer.Option(None, "--k", help="Thermal photon number"),
    eta: float | None = typer.Option(None, "--eta", help="Also report the minimum output entropy"),
    out: Path | None = OUT_OPTION,
    config_path: Path | None = CONFIG_OPTION,
):
    """Closed-form Wehrl entropies of thermal products, in nats."""
    with handle_errors():
        config = RunConfig.resolve(
            "wehrl thermal", WEHRL_THERMAL_DEFAULTS, {"n": n, "k": k, "eta": eta}, config_path
        )
        n_modes, k_val = int(config["n"]), float(config["k"])
        result = {"wehrl_nats": wehrl_entropy_gaussian_thermal(n_modes, k_val).value}
        if config["eta"] is not None:
            result["min_output_wehrl_nats"] = min_wehrl_output_entropy(
                n_modes, k_val, float(config["eta"])
            ).value
        _emit_json(result, config, out)


@wehrl_app.command("numeric")
def wehrl_numeric(
    k: float | None = typer.Option(None, "--k", help="Thermal photon number"),
    eta: float | None = typer.Option(None, "--eta", help="Send through the beam splitter with vacuum"),
    dim: int | None = typer.Option(None, "--dim", help="Fock truncation"),
    radial_nodes: int | None = typer.Option(None, "--radial-nodes", help="Gauss-Legendre radius nodes"),
    angular_nodes: int | None = typer.Option(None, "--angular-nodes", help="Uniform angle nodes"),
    scale: float | None = typer.Option(None, "--scale", help="Also check the Husimi scaling identity"),
    out: Path | None = OUT_OPTION,
    config_path: Path | None = CONFIG_OPTION,
):
    """Integrate the Wehrl entropy of a thermal state (optionally attenuated) on a grid."""
    with handle_errors():
        config = RunConfig.resolve(
            "wehrl numeric",
            WEHRL_NUMERIC_DEFAULTS,
            {
                "k": k,
                "eta": eta,
                "dim": dim,
                "radial_nodes": radial_nodes,
                "angular_nodes": angular_nodes,
                "scale": scale,
            },
            config_path,
        )
        k_val = float(config["k"])
        rho = make_fock_thermal(k_val, int(config["dim"]))
        if config["eta"] is not None:
            # c arm of vacuum (x) rho
            rho = attenuate(rho, 1.0 - float(config["eta"]))
            k_val *= 1.0 - float(config["eta"])
        grid = HusimiGrid(int(config["radial_nodes"]), int(config["angular_nodes"]))
        result: dict[str, Any] = {
            "wehrl_nats": wehrl_entropy_numeric(rho, grid).value,
            "closed_form_nats": wehrl_entropy_gaussian_thermal(1, k_val).value,
            "tail_mass": rho.tail_mass,
        }
        if config["scale"] is not None:
            scaled, shifted = wehrl_scaling_check(rho, float(config["scale"]), grid)
            result["scaling"] = {"scaled_nats": scaled, "shifted_nats": shifted}
        _emit_json(result, config, out)


def _print_search_summary(data: dict[str, Any]) -> None:
    table = Table(title="Output-entropy search")
    table.add_column("Quantity", style="cyan")
    table.add_column("Value", style="green")
    for key in ("candidates_evaluated", "candidates_skipped", "best_entropy_bits", "target_entropy_bits", "gap"):
        table.add_row(key, str(data[key]))
    console.print(table)


@conjecture_app.command("search")
def conjecture_search(
    eta: float | None = typer.Option(None, "--eta", help="Transmissivity"),
    k: float | None = typer.Option(None, "--k", help="Input entropy is g(k)"),
    dim: int | None = typer.Option(None, "--dim", help="Fock truncation"),
    budget: int | None = typer.Option(None, "--budget", help="Random candidates"),
    seed: int | None = typer.Option(None, "--seed", help="Generator seed"),
    families: str | None = typer.Option(None, "--families", help="Comma separated families"),
    out: Path | None = OUT_OPTION,
    config_path: Path | None = CONFIG_OPTION,
):
    """Random search for a single-mode input beating the thermal output entropy."""
    with handle_errors():
        config = RunConfig.resolve(
            "conjecture search",
            SEARCH_DEFAULTS,
            {
                "eta": eta,
                "k": k,
                "dim": dim,
                "budget": budget,
                "seed": seed,
                "families": _str_list(families) if families is not None else None,
            },
            config_path,
        )
        report = conjecture2_search(
            float(config["eta"]),
            float(config["k"]),
            int(config["dim"]),
            families=_str_list(config["families"]),
            budget=int(config["budget"]),
            seed=int(config["seed"]),
            threads=thread_count(),
            tolerance=float(config["tolerance"]),
        )
        _print_search_summary(report.to_dict())
        if out is None:
            _emit_json(report.to_dict(), config, None)
        else:
            report.save(out, config.as_dict())
            _wrote(out)


@conjecture_app.command("local")
def conjecture_local(
    eta: float | None = typer.Option(None, "--eta", help="Transmissivity"),
    k: float | None = typer.Option(None, "--k", help="Thermal photon number on port b"),
    dim: int | None = typer.Option(None, "--dim", help="Fock truncation"),
    magnitudes: str | None = typer.Option(None, "--magnitudes", help="Comma separated perturbation sizes"),
    seed: int | None = typer.Option(None, "--seed", help="Generator seed"),
    families: str | None = typer.Option(None, "--families", help="Comma separated families"),
    out: Path | None = OUT_OPTION,
    config_path: Path | None = CONFIG_OPTION,
):
    """Perturb the vacuum on port a and compare output entropies."""
    with handle_errors():
        config = RunConfig.resolve(
            "conjecture local",
            LOCAL_DEFAULTS,
            {
                "eta": eta,
                "k": k,
                "dim": dim,
                "magnitudes": _float_list(magnitudes, "magnitudes") if magnitudes is not None else None,
                "seed": seed,
                "families": _str_list(families) if families is not None else None,
            },
            config_path,
        )
        report = conjecture1_local_check(
            float(config["eta"]),
            float(config["k"]),
            int(config["dim"]),
            perturbation_magnitudes=_float_list(config["magnitudes"], "magnitudes"),
            seed=int(config["seed"]),
            families=_str_list(config["families"]),
        )
        if not report.holds:
            console.print("[bold yellow]⚠[/bold yellow] a perturbation lowered the output entropy")
        _emit_json(report.to_dict(), config, out)


@app.command("gauss-search")
def gauss_search(
    eta: float | None = typer.Option(None, "--eta", help="Transmissivity"),
    k: float | None = typer.Option(None, "--k", help="Per-mode thermal photon number"),
    n: int | None = typer.Option(None, "--n", help="Number of modes"),
    budget: int | None = typer.Option(None, "--budget", help="Random candidates"),
    seed: int | None = typer.Option(None, "--seed", help="Generator seed"),
    families: str | None = typer.Option(None, "--families", help="Comma separated families"),
    max_squeeze: float | None = typer.Option(None, "--max-squeeze", help="Largest squeezing parameter"),
    out: Path | None = OUT_OPTION,
    config_path: Path | None = CONFIG_OPTION,
):
    """Search Gaussian inputs for the smallest output entropy."""
    with handle_errors():
        config = RunConfig.resolve(
            "gauss-search",
            GAUSS_SEARCH_DEFAULTS,
            {
                "eta": eta,
                "k": k,
                "n": n,
                "budget": budget,
                "seed": seed,
                "families": _str_list(families) if families is not None else None,
                "max_squeeze": max_squeeze,
            },
            config_path,
        )
        search_config = GaussianSearchConfig(
            budget=int(config["budget"]),
            seed=int(config["seed"]),
            families=tuple(_str_list(config["families"])),
            max_squeeze=float(config["max_squeeze"]),
            threads=thread_count(),
        )
        report = min_output_entropy_gaussian(
            float(config["eta"]), float(config["k"]), int(config["n"]), search_config
        )
        data = report.to_dict()
        _print_search_summary(data)
        _emit_json(data, config, out)


@app.command()
def quadrature(
    eta: float | None = typer.Option(None, "--eta", help="Transmissivity"),
    nbar: float | None = typer.Option(None, "--nbar", help="Mean photon budget"),
    eta_c: float | None = typer.Option(None, "--eta-c", help="Coupling to Charlie"),
    betas: str | None = typer.Option(None, "--betas", help="Comma separated power splits"),
    dim: int | None = typer.Option(None, "--dim", help="Fock truncation"),
    outer_nodes: int | None = typer.Option(None, "--outer-nodes", help="Gauss-Hermite nodes per axis"),
    tolerance: float | None = typer.Option(None, "--tolerance", help="Convergence tolerance in bits"),
    out: Path | None = OUT_OPTION,
    config_path: Path | None = CONFIG_OPTION,
):
    """Compare Fock-space numerical rates of the coherent-state code with the closed forms."""
    with handle_errors():
        config = RunConfig.resolve(
            "quadrature",
            QUADRATURE_DEFAULTS,
            {
                "eta": eta,
                "nbar": nbar,
                "eta_c": eta_c,
                "betas": _float_list(betas, "betas") if betas is not None else None,
                "dim": dim,
                "outer_nodes": outer_nodes,
                "tolerance": tolerance,
            },
            config_path,
        )
        params = ChannelParams(
            eta=float(config["eta"]),
            nbar=float(config["nbar"]),
            eta_c=None if config["eta_c"] is None else float(config["eta_c"]),
        )
        grid_config = QuadratureConfig(
            dim=int(config["dim"]),
            outer_nodes=int(config["outer_nodes"]),
            tolerance=float(config["tolerance"]),
            threads=thread_count(),
        )
        rows = []
        for beta in _float_list(config["betas"], "betas"):
            result = coherent_region_quadrature(params, beta, grid_config)
            rows.append((beta, result.r_b, result.r_c, result.r_b_closed, result.r_c_closed))
        header = ("beta", "r_b_numeric", "r_c_numeric", "r_b_closed_form", "r_c_closed_form")
        _emit(render_csv(header, rows, comments=config.as_dict()), out)


@app.command()
def version():
    """Show the version of bosoncast."""
    print(__version__)


def _configure_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.INFO if verbose else logging.WARNING,
        format="%(message)s",
        handlers=[RichHandler(console=console, show_path=False)],
        force=True,
    )


@app.callback(invoke_without_command=True)
def main(
    ctx: typer.Context,
    version: bool = typer.Option(
        False,
        "--version",
        "-v",
        help="Show version information",
    ),
    verbose: bool = typer.Option(
        False,
        "--verbose",
        "-V",
        help="Show progress logs on stderr",
    ),
):
    """bosoncast - capacity regions and minimum output entropy checks for bosonic broadcast channels."""
    if version:
        print(__version__)
        raise typer.Exit()

    _configure_logging(verbose)

    if ctx.invoked_subcommand is None:
        console.print("bosoncast - bosonic broadcast channel toolkit")
        console.print(f"Version: {__version__}\n")
        console.print("Usage: bosoncast [COMMAND]")
        console.print("\nCommands:")
        console.print("  region        Rate-region boundary of one receiver scheme")
        console.print("  figure        Reproduce the fig3 / fig4 data sets")
        console.print("  entropy       g, g-inv and the g-scaling inequality")
        console.print("  williamson    Symplectic decomposition of a Gaussian state")
        console.print("  wehrl         Wehrl entropies")
        console.print("  conjecture    Output-entropy conjecture checks in Fock space")
        console.print("  gauss-search  Gaussian output-entropy search")
        console.print("  quadrature    Numerical check of the coherent-state rates")
        console.print("  version       Show version information")
        console.print("\nExamples:")
        console.print("  bosoncast region --scheme optimum --eta 0.8 --nbar 15")
        console.print("  bosoncast figure fig4 --out-dir results")
        console.print("  bosoncast entropy g --x 1")
        console.print("  bosoncast conjecture search --eta 0.7 --k 1 --dim 40 --seed 7")
        console.print("\nRun 'bosoncast [COMMAND] --help' for more information on a command.")


if __name__ == "__main__":
    app()

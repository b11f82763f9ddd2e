import warnings
from enum import Enum
from pathlib import Path
from typing import Any, Callable, Dict, List, NoReturn, Optional

import typer
from pydantic import BaseModel, Field, ValidationError
from rich.console import Console
from rich.panel import Panel
from rich.progress import BarColumn, Progress, SpinnerColumn, TextColumn

from . import __version__
from .codelength import (
    DEFAULT_MAX_LEN,
    brute_force_min_codelength,
    campbell_code,
    ideal_codelength,
    weighted_codelength,
)
from .core.errors import IndeterminateForm, InvalidInput, KraftWarning, NonConvergence
from .core.io import load_channel, load_distribution
from .core.types import Order, uniform
from .hyptest import (
    DecisionRule,
    RuleKind,
    achievable_exponent,
    equality_report,
    exact_errors,
    exponent_curve,
    exponent_trend,
    false_alarm_bound,
    load_scenario,
    monte_carlo_errors,
    renyi_lower_bound,
)
from .measures import (
    c_alpha,
    capacity,
    entropy,
    i_alpha,
    k_alpha,
    k_alpha_closed_form,
    kl_divergence,
    mutual_information,
    renyi_divergence,
    renyi_entropy,
)
from .method_of_types import lemma_table
from .optim import DEFAULT_SOLVER_CONFIG
from .reports import records_table, render_json, render_table, verify_table
from .variational import (
    j_variational,
    optimal_q_entropy,
    variational_divergence,
    variational_entropy,
    variational_i_alpha,
    variational_k_alpha,
)
from .verify import VerifyConfig, run_suite

app = typer.Typer(help="Renyi Lab - Renyi information measures, their variational forms and tests")
console = Console()
err_console = Console(stderr=True, soft_wrap=True)

# Exit codes for validation errors and solver failures
EXIT_INVALID = 2
EXIT_NONCONVERGENCE = 3


class Command(str, Enum):
    MEASURE = "measure"
    VARIATIONAL = "variational"
    CHANNEL = "channel"
    TYPES = "types"
    CODELENGTH = "codelength"
    HYPTEST = "hyptest"
    VERIFY = "verify"


class OutputFormat(str, Enum):
    JSON = "json"
    TEXT = "text"


class VariationalForm(str, Enum):
    ENTROPY = "entropy"
    DIVERGENCE = "divergence"
    I_ALPHA = "i_alpha"
    K_ALPHA = "k_alpha"
    J = "j"


class Method(str, Enum):
    EXACT = "exact"
    MC = "mc"


class RunConfig(BaseModel):
    """Validated flags of one command invocation."""

    command: Command
    output_format: OutputFormat = Field(default=OutputFormat.JSON)
    inputs: Dict[str, Path] = Field(default_factory=dict, description="Input files by role")
    alpha: Optional[str] = Field(default=None, description="Order: a number or 'inf'")
    lam: Optional[float] = Field(default=None, ge=0, description="Sampling ratio or codelength parameter")
    tol: float = Field(default=1e-10, gt=0)
    seed: int = Field(default=0, ge=0)
    n: Optional[int] = Field(default=None, ge=1)
    trials: Optional[int] = Field(default=None, ge=1)

    @property
    def order(self) -> Order:
        return Order.parse(self.alpha if self.alpha is not None else "1")


def _fail(exc: Exception, code: int) -> NoReturn:
    module = getattr(exc, "module", "cli")
    err_console.print(f"[red]Error ({module}): {type(exc).__name__}: {exc}[/red]")
    raise typer.Exit(code)


def _run(
    title: str,
    build: Callable[[], RunConfig],
    action: Callable[[RunConfig], Any],
    render: Optional[Callable[[Any], None]] = None,
) -> None:
    """Validate flags, run the action and print its document; map errors to exit codes.

    Text mode prints a Metric / Value table unless a custom render is given.
    """
    try:
        config = build()
    except ValidationError as exc:
        first = exc.errors()[0]
        where = ".".join(str(part) for part in first.get("loc", ()))
        _fail(InvalidInput(f"{where}: {first['msg']}", "cli"), EXIT_INVALID)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", KraftWarning)
            doc = action(config)
    except NonConvergence as exc:
        _fail(exc, EXIT_NONCONVERGENCE)
    except (InvalidInput, IndeterminateForm) as exc:
        _fail(exc, EXIT_INVALID)
    for warning in caught:
        err_console.print(f"[yellow]{warning.category.__name__}: {warning.message}[/yellow]")
    if config.output_format is OutputFormat.JSON:
        typer.echo(render_json(doc))
    elif render is not None:
        render(doc)
    else:
        console.print(render_table(title, doc))


def _floats(text: Optional[str], name: str) -> Optional[List[float]]:
    if text is None:
        return None
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError as exc:
        raise InvalidInput(f"--{name} must be a comma separated list of numbers", "cli") from exc


def _ints(text: Optional[str], name: str) -> Optional[List[int]]:
    values = _floats(text, name)
    if values is None:
        return None
    if any(v != int(v) for v in values):
        raise InvalidInput(f"--{name} must list integers", "cli")
    return [int(v) for v in values]


def _inputs(**paths: Optional[Path]) -> Dict[str, Path]:
    return {role: path for role, path in paths.items() if path is not None}


@app.command()
def version():
    """Show version."""
    console.print(f"[bold green]renyi-lab[/bold green] version {__version__}")


@app.command()
def measure(
    dist: Path = typer.Option(..., "--dist", "-d", help="Distribution JSON file"),
    dist2: Optional[Path] = typer.Option(None, "--dist2", help="Second distribution for the divergence"),
    alpha: str = typer.Option("2", "--alpha", "-a", help="Order: 0, 1, inf or any positive number"),
    output_format: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="json or text"),
):
    """
    Compute the Renyi entropy of a distribution and, with --dist2, the Renyi divergence.
    """

    def action(cfg: RunConfig) -> Dict[str, Any]:
        P = load_distribution(cfg.inputs["dist"])
        order = cfg.order
        doc: Dict[str, Any] = {"alpha": order.to_json(), "H_alpha": renyi_entropy(P, order), "H": entropy(P)}
        if "dist2" in cfg.inputs:
            P2 = load_distribution(cfg.inputs["dist2"])
            doc["D_alpha"] = renyi_divergence(P, P2, order)
            doc["D"] = kl_divergence(P, P2)
        return doc

    _run(
        "Renyi measures",
        lambda: RunConfig(
            command=Command.MEASURE, output_format=output_format, inputs=_inputs(dist=dist, dist2=dist2),
            alpha=alpha,
        ),
        action,
    )


@app.command()
def variational(
    form: VariationalForm = typer.Option(VariationalForm.ENTROPY, "--form", help="Which variational form"),
    dist: Path = typer.Option(..., "--dist", "-d", help="Distribution JSON file (P or P1)"),
    dist2: Optional[Path] = typer.Option(None, "--dist2", help="Second distribution (divergence, j)"),
    channel: Optional[Path] = typer.Option(None, "--channel", "-w", help="Channel file (i_alpha, k_alpha)"),
    alpha: str = typer.Option("2", "--alpha", "-a", help="Finite order, or J's first exponent"),
    beta: float = typer.Option(1.0, "--beta", help="Second exponent of the J functional"),
    tol: float = typer.Option(1e-10, "--tol", help="Solver tolerance"),
    seed: int = typer.Option(0, "--seed", help="Seed of the solver start points"),
    output_format: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="json or text"),
):
    """
    Compare a measure with the optimum of its variational characterization.
    """

    def action(cfg: RunConfig) -> Dict[str, Any]:
        solver = DEFAULT_SOLVER_CONFIG.model_copy(update={"tol": cfg.tol, "seed": cfg.seed})
        P = load_distribution(cfg.inputs["dist"])
        a = cfg.order.alpha if form is VariationalForm.J else cfg.order.require_finite("cli")

        def need(role: str) -> Path:
            if role not in cfg.inputs:
                raise InvalidInput(f"--form {form.value} needs --{role}", "cli")
            return cfg.inputs[role]

        if form is VariationalForm.ENTROPY:
            report = variational_entropy(P, a, config=solver)
        elif form is VariationalForm.DIVERGENCE:
            report = variational_divergence(P, load_distribution(need("dist2")), a, config=solver)
        elif form is VariationalForm.J:
            report = j_variational(P, load_distribution(need("dist2")), a, beta, config=solver)
        elif form is VariationalForm.I_ALPHA:
            report = variational_i_alpha(P, load_channel(need("channel")), a, config=solver)
        else:
            report = variational_k_alpha(P, load_channel(need("channel")), a, config=solver)
        doc: Dict[str, Any] = {"form": form.value, "alpha": a}
        if form is VariationalForm.J:
            doc["beta"] = beta
        doc.update(report.to_dict())
        return doc

    _run(
        "Variational characterization",
        lambda: RunConfig(
            command=Command.VARIATIONAL, output_format=output_format,
            inputs=_inputs(dist=dist, dist2=dist2, channel=channel), alpha=alpha, tol=tol, seed=seed,
        ),
        action,
    )


@app.command("channel")
def channel_command(
    channel: Path = typer.Option(..., "--channel", "-w", help="Channel JSON file"),
    dist: Optional[Path] = typer.Option(None, "--dist", "-d", help="Input distribution (default uniform)"),
    alpha: str = typer.Option("2", "--alpha", "-a", help="Finite order or 1"),
    with_capacity: bool = typer.Option(True, "--capacity/--no-capacity", help="Also compute C and C_alpha"),
    tol: float = typer.Option(1e-10, "--tol", help="Solver tolerance"),
    seed: int = typer.Option(0, "--seed", help="Seed of the solver start points"),
    output_format: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="json or text"),
):
    """
    Mutual information, the two order-alpha mutual informations and the capacities of a channel.
    """

    def action(cfg: RunConfig) -> Dict[str, Any]:
        solver = DEFAULT_SOLVER_CONFIG.model_copy(update={"tol": cfg.tol, "seed": cfg.seed})
        W = load_channel(cfg.inputs["channel"])
        P = load_distribution(cfg.inputs["dist"]) if "dist" in cfg.inputs else uniform(W.input_size)
        order = cfg.order
        i_opt = i_alpha(P, W, order, config=solver)
        k_opt = k_alpha(P, W, order, config=solver)
        doc: Dict[str, Any] = {
            "alpha": order.to_json(),
            "input": P,
            "I": mutual_information(P, W),
            "I_alpha": {"value": i_opt.value, "argmin": i_opt.point},
            "K_alpha": {
                "value": k_opt.value,
                "argmin": k_opt.point,
                "closed_form": k_alpha_closed_form(P, W, order).value,
            },
        }
        if with_capacity:
            shannon = capacity(W)
            alpha_capacity = c_alpha(W, order, config=solver)
            doc["capacity"] = {
                "value": shannon.value,
                "upper_bound": shannon.upper_bound,
                "argmax": shannon.argmax,
                "iterations": shannon.iterations,
            }
            doc["C_alpha"] = {
                "value": alpha_capacity.value,
                "argmax": alpha_capacity.argmax,
                "k_value": alpha_capacity.k_value,
            }
        return doc

    _run(
        "Channel measures",
        lambda: RunConfig(
            command=Command.CHANNEL, output_format=output_format, inputs=_inputs(channel=channel, dist=dist),
            alpha=alpha, tol=tol, seed=seed,
        ),
        action,
    )


@app.command()
def types(
    dist: Path = typer.Option(..., "--dist", "-d", help="Distribution JSON file"),
    n: int = typer.Option(..., "--n", "-n", help="Block length"),
    delta: float = typer.Option(0.1, "--delta", help="Deviation threshold in bits"),
    output_format: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="json or text"),
):
    """
    Enumerate the types of length n and check the type-class facts against a distribution.
    """

    def render(table: Dict[str, Any]) -> None:
        console.print(records_table(f"Types of length {n}", table["types"]))
        console.print(render_table("Summary", table["summary"]))

    _run(
        "Method of types",
        lambda: RunConfig(command=Command.TYPES, output_format=output_format, inputs=_inputs(dist=dist), n=n),
        lambda cfg: lemma_table(load_distribution(cfg.inputs["dist"]), cfg.n, delta),
        render,
    )


@app.command()
def codelength(
    dist: Path = typer.Option(..., "--dist", "-d", help="Source distribution JSON file"),
    lam: float = typer.Option(1.0, "--lambda", "-l", help="Exponential weight lambda > 0"),
    max_len: int = typer.Option(DEFAULT_MAX_LEN, "--max-len", help="Longest codeword considered"),
    brute_force: bool = typer.Option(True, "--brute-force/--no-brute-force", help="Exhaustive optimum"),
    lengths: Optional[str] = typer.Option(None, "--lengths", help="Comma separated lengths to evaluate"),
    output_format: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="json or text"),
):
    """
    Campbell's exponentially weighted codelength next to the Renyi entropy of order 1/(1+lambda).
    """

    def action(cfg: RunConfig) -> Dict[str, Any]:
        P = load_distribution(cfg.inputs["dist"])
        weight = float(cfg.lam)
        order = 1.0 / (1.0 + weight) if weight > 0 else 1.0
        code = campbell_code(P, weight, max_len)
        doc: Dict[str, Any] = {
            "lambda": weight,
            "order": order,
            "H_order": renyi_entropy(P, order),
            "ideal": ideal_codelength(P, optimal_q_entropy(P, order), weight),
            "campbell": {
                "lengths": list(code.lengths),
                "value": weighted_codelength(P, code, weight),
                "kraft_sum": code.kraft_sum,
            },
        }
        if brute_force:
            best = brute_force_min_codelength(P, weight, max_len)
            doc["brute_force"] = {
                "lengths": list(best.best.lengths),
                "value": best.value,
                "kraft_sum": best.best.kraft_sum,
            }
        custom = _ints(lengths, "lengths")
        if custom is not None:
            doc["custom"] = {"lengths": custom, "value": weighted_codelength(P, custom, weight)}
        return doc

    _run(
        "Weighted codelength",
        lambda: RunConfig(
            command=Command.CODELENGTH, output_format=output_format, inputs=_inputs(dist=dist), lam=lam,
        ),
        action,
    )


@app.command()
def hyptest(
    scenario_path: Path = typer.Option(..., "--scenario", "-s", help="Scenario JSON file"),
    rule: RuleKind = typer.Option(RuleKind.MODIFIED, "--rule", "-r", help="Decision rule"),
    method: Method = typer.Option(Method.EXACT, "--method", "-m", help="exact or mc"),
    trials: int = typer.Option(10_000, "--trials", help="Monte Carlo trials"),
    seed: int = typer.Option(0, "--seed", help="Monte Carlo seed"),
    threshold_scale: float = typer.Option(1.0, "--threshold-scale", help="Multiplier of delta_n"),
    n_list: Optional[str] = typer.Option(None, "--n-list", help="Sensor 1 block lengths for the trend"),
    alpha_grid: Optional[str] = typer.Option(None, "--alpha-grid", help="Orders for the E(alpha) curve"),
    eq_tol: float = typer.Option(1e-9, "--eq-tol", help="Tolerance of the equality condition"),
    output_format: OutputFormat = typer.Option(OutputFormat.JSON, "--format", "-f", help="json or text"),
):
    """
    Error probabilities and exponents of a two-sensor composite test.
    """

    def action(cfg: RunConfig) -> Dict[str, Any]:
        scenario = load_scenario(cfg.inputs["scenario"])
        decision = DecisionRule(rule, threshold_scale)
        if method is Method.EXACT:
            errors = exact_errors(scenario, decision)
        else:
            errors = monte_carlo_errors(scenario, decision, cfg.trials, cfg.seed)
        doc: Dict[str, Any] = {
            "scenario": {
                "alphabet_size": scenario.alphabet_size,
                "lambda": scenario.lam,
                "realized_lambda": scenario.realized_lambda,
                "n1": scenario.n1,
                "n2": scenario.n2,
            },
            "rule": rule.value,
            "errors": errors,
            "worst_p_md": errors.worst_p_md,
            "worst_p_fa": errors.worst_p_fa,
            "achievable": achievable_exponent(scenario),
        }
        if scenario.n2 > 0:
            report = equality_report(scenario, eq_tol)
            doc["renyi_lower_bound"] = renyi_lower_bound(scenario)
            doc["equality"] = {
                "distance": report.distance,
                "gap": report.gap,
                "in_closure": report.in_closure,
                "exponents_equal": report.exponents_equal,
                "consistent": report.consistent,
            }
        else:
            doc["renyi_lower_bound"] = None
            doc["equality"] = None
        if rule is RuleKind.MODIFIED:
            doc["false_alarm_bound"] = false_alarm_bound(scenario)
        curve = exponent_curve(scenario, _floats(alpha_grid, "alpha-grid"))
        doc["exponent_alpha_curve"] = [{"alpha": a, "value": value} for a, value in curve]
        block_lengths = _ints(n_list, "n-list")
        if block_lengths is not None:
            doc["trend"] = exponent_trend(scenario, decision, block_lengths)
        return doc

    _run(
        "Composite hypothesis test",
        lambda: RunConfig(
            command=Command.HYPTEST, output_format=output_format, inputs=_inputs(scenario=scenario_path),
            seed=seed, trials=trials,
        ),
        action,
    )


@app.command()
def verify(
    tol: float = typer.Option(1e-8, "--tol", help="Allowed gap between optimized and direct values"),
    seed: int = typer.Option(0, "--seed", help="Root seed of the property streams"),
    instances: int = typer.Option(1000, "--instances", help="Instances per closed-form property"),
    solver_instances: int = typer.Option(20, "--solver-instances", help="Instances per solver property"),
    only: Optional[List[str]] = typer.Option(None, "--only", help="Property name prefix (repeatable)"),
    output_format: OutputFormat = typer.Option(OutputFormat.TEXT, "--format", "-f", help="json or text"),
):
    """
    Run the property suite and print one pass/fail row per property.
    """
    try:
        run_config = RunConfig(command=Command.VERIFY, output_format=output_format, tol=tol, seed=seed)
        config = VerifyConfig(
            seed=run_config.seed,
            tol=run_config.tol,
            instances=instances,
            solver_instances=solver_instances,
            exhaustive_instances=min(instances, 100),
            only=only or None,
        )
    except ValidationError as exc:
        first = exc.errors()[0]
        _fail(InvalidInput(f"{first.get('loc', ())}: {first['msg']}", "cli"), EXIT_INVALID)

    if output_format is OutputFormat.TEXT:
        console.print(Panel.fit(
            f"[bold blue]Property suite[/bold blue]\n"
            f"Seed: {config.seed}\n"
            f"Tolerance: {config.tol}\n"
            f"Instances: {config.instances} (solver {config.solver_instances})",
            title="Configuration",
        ))
        with Progress(
            SpinnerColumn(),
            TextColumn("[progress.description]{task.description}"),
            BarColumn(),
            console=err_console,
        ) as progress:
            task = progress.add_task("Checking properties...", total=None)

            def advance(result) -> None:
                progress.update(task, advance=1, description=f"{result.name}")

            results = run_suite(config, on_result=advance)
            progress.update(task, description="Properties checked")
        console.print(verify_table(results))
    else:
        results = run_suite(config)
        typer.echo(render_json({
            "seed": config.seed,
            "tol": config.tol,
            "passed": all(r.passed for r in results),
            "properties": results,
        }))

    failed = [r for r in results if not r.passed]
    if failed:
        for result in failed:
            err_console.print(f"[red]{result.name}: {result.detail}[/red]")
        raise typer.Exit(1)


def main():
    app()


if __name__ == "__main__":
    main()

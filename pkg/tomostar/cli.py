"""
Command-line front end.

Every command writes data to ``--out`` (stdout by default) and logs to stderr.
Exit codes: 0 success, 1 verification or accuracy failure, 2 usage or
configuration error, 3 domain error.
"""

import io
import logging
import math
import sys

import click
import numpy as np
import orjson
import pandas as pd
from pydantic import ValidationError

from tomostar.config import RunConfig, conf
from tomostar.errors import AccuracyError, ConfigError, DomainError
from tomostar.kernels import (
    KERNEL_IDS,
    KernelArgs,
    classical_kernel,
    first_order_coefficient,
    k_deformed_kernel,
    quadratic_kernel,
    singular_kernel_h1,
)
from tomostar.log import setup_logging
from tomostar.phase_space import gaussian, planewave, product_symbol, wigner
from tomostar.report import dumps, report_payload
from tomostar.specfun import LAGUERRE_MAX_ORDER
from tomostar.tomo_transform import MeasureConvention, forward_values
from tomostar.types import SymbolFn, TomoPoint
from tomostar.verify import SUITES, run_suites


logger = logging.getLogger(__name__)

MAX_GRID = 100_000


class TomostarGroup(click.Group):
    """Maps library errors onto the documented exit codes."""

    def invoke(self, ctx: click.Context):
        try:
            return super().invoke(ctx)
        except ConfigError as e:
            click.echo(f"error: {e}", err=True)
            ctx.exit(2)
        except DomainError as e:
            click.echo(f"domain error: {e}", err=True)
            ctx.exit(3)
        except AccuracyError as e:
            click.echo(f"accuracy error: {e}", err=True)
            ctx.exit(1)


def common_options(f):
    options = [
        click.option("--hbar", type=float, default=None, help="Deformation parameter."),
        click.option("--convention", type=click.Choice([c.value for c in MeasureConvention]), default=None),
        click.option("--seed", type=click.IntRange(0, 2**64 - 1), default=None, help="Defaults to $TOMOSTAR_SEED."),
        click.option("--nodes", "node_count", type=int, default=None, help="Quadrature node count."),
        click.option("--damping", type=float, default=None),
        click.option("--cutoff", "upper_cutoff", type=float, default=None),
        click.option("--samples", "sample_count", type=int, default=None),
        click.option("--out", "output_path", type=click.Path(dir_okay=False, writable=True), default=None),
        click.option("--format", "format_", type=click.Choice(["csv", "json"]), default=None),
        click.option("--experimental", is_flag=True, default=False, help="Enable the slow Monte Carlo kernel route."),
    ]
    for option in reversed(options):
        f = option(f)
    return f


def run_config(command: str, format_: str | None = None, **values) -> RunConfig:
    """RunConfig from the given flags; unset flags fall back to the environment and the config file."""
    given = {k: v for k, v in values.items() if v is not None}
    if format_ is not None:
        given["format"] = format_
    try:
        return RunConfig(command=command, **given)
    except ValidationError as e:
        raise ConfigError(f"invalid options: {e}") from e


def emit(data: str | bytes, cfg: RunConfig):
    if isinstance(data, str):
        data = data.encode("utf-8")
    if cfg.output_path:
        with open(cfg.output_path, "wb") as f:
            f.write(data)
        logger.info(f"wrote {cfg.output_path}")
    else:
        click.get_binary_stream("stdout").write(data)


def to_csv(df: pd.DataFrame, cfg: RunConfig) -> str:
    buf = io.StringIO()
    buf.write(f"# convention={cfg.convention} hbar={cfg.hbar!r} seed={cfg.seed}\n")
    df.to_csv(buf, index=False, float_format="%.17g", lineterminator="\n")
    return buf.getvalue()


def to_json(df: pd.DataFrame, cfg: RunConfig) -> bytes:
    payload = {"convention": cfg.convention, "hbar": cfg.hbar, "seed": cfg.seed, "rows": df.to_dict(orient="records")}
    return dumps(payload)


def emit_table(df: pd.DataFrame, cfg: RunConfig):
    emit(to_json(df, cfg) if cfg.format == "json" else to_csv(df, cfg), cfg)


def parse_floats(text: str, count: int, what: str) -> list[float]:
    try:
        values = [float(i) for i in text.split(",")]
    except ValueError:
        raise ConfigError(f"{what}: expected {count} comma-separated numbers, got {text!r}")
    if len(values) != count:
        raise ConfigError(f"{what}: expected {count} comma-separated numbers, got {len(values)}")
    return values


def parse_state(text: str, hbar: float) -> SymbolFn:
    """``fock:N`` | ``gaussian:SIGMA,Q0,P0`` | ``planewave:A,B``"""
    kind, _, rest = text.partition(":")
    if kind == "fock":
        try:
            n = int(rest)
        except ValueError:
            raise ConfigError(f"fock state needs an integer level, got {rest!r}")
        if not 0 <= n <= LAGUERRE_MAX_ORDER:
            raise ConfigError(f"fock level must be in [0, {LAGUERRE_MAX_ORDER}], got {n}")
        return wigner(n, hbar)
    if kind == "gaussian":
        sigma, q0, p0 = parse_floats(rest, 3, "gaussian state")
        if sigma <= 0:
            raise ConfigError(f"gaussian width must be positive, got {sigma}")
        return gaussian((q0, p0), sigma, 1 / (math.pi * sigma**2))
    if kind == "planewave":
        a, b = parse_floats(rest, 2, "planewave state")
        return planewave(a, b)
    raise ConfigError(f"unknown state {text!r}; use fock:N, gaussian:SIGMA,Q0,P0 or planewave:A,B")


def x_grid(x_min: float, x_max: float, count: int) -> np.ndarray:
    if not (1 <= count <= MAX_GRID):
        raise ConfigError(f"grid count must be in [1, {MAX_GRID}], got {count}")
    if x_min < 0 or x_max < x_min:
        raise ConfigError(f"invalid X grid [{x_min}, {x_max}]")
    return np.linspace(x_min, x_max, count)


@click.group(cls=TomostarGroup)
@click.option("--log-level", default=None, help="Logging level (default from config).")
def cli(log_level: str | None):
    """Star-product calculus of quadratic tomography."""
    setup_logging(log_level or conf["logging"]["level"])


@cli.command()
@click.option("--state", required=True, help="fock:N | gaussian:SIGMA,Q0,P0 | planewave:A,B")
@click.option("--mu", type=float, default=0.0)
@click.option("--nu", type=float, default=0.0)
@click.option("--x-min", type=float, default=0.0)
@click.option("--x-max", type=float, default=5.0)
@click.option("--count", type=int, default=51)
@common_options
def tomogram(state, mu, nu, x_min, x_max, count, **flags):
    """Circle tomogram w(X, μ, ν) of a state on an X grid."""
    cfg = run_config("tomogram", **flags)
    f = parse_state(state, cfg.hbar)
    X = x_grid(x_min, x_max, count)
    w = forward_values(f, X, mu, nu, MeasureConvention(cfg.convention), cfg.quadrature())
    emit_table(pd.DataFrame({"X": X, "w_re": w.real, "w_im": w.imag}), cfg)


@cli.command("star-classical")
@click.option("--state1", required=True)
@click.option("--state2", required=True)
@click.option("--mu", type=float, default=0.0)
@click.option("--nu", type=float, default=0.0)
@click.option("--x-min", type=float, default=0.0)
@click.option("--x-max", type=float, default=5.0)
@click.option("--count", type=int, default=51)
@common_options
def star_classical(state1, state2, mu, nu, x_min, x_max, count, **flags):
    """𝔥 = 0 product of two tomographic symbols: the tomogram of the pointwise product."""
    cfg = run_config("star-classical", **flags)
    f = product_symbol(parse_state(state1, cfg.hbar), parse_state(state2, cfg.hbar))
    X = x_grid(x_min, x_max, count)
    w = forward_values(f, X, mu, nu, MeasureConvention(cfg.convention), cfg.quadrature())
    emit_table(pd.DataFrame({"X": X, "w_re": w.real, "w_im": w.imag}), cfg)


def load_points(path: str) -> list[list[float]]:
    try:
        with open(path, "rb") as f:
            raw = f.read()
    except OSError as e:
        raise ConfigError(f"cannot read points file: {e}")
    try:
        points = orjson.loads(raw)
    except orjson.JSONDecodeError as e:
        raise ConfigError(f"malformed JSON at line {e.lineno}, column {e.colno}: {e.msg}")
    if not isinstance(points, list):
        raise ConfigError("points file must hold a JSON array of 9-tuples")
    for i, p in enumerate(points):
        if not (isinstance(p, list) and len(p) == 9 and all(isinstance(v, (int, float)) and not isinstance(v, bool) for v in p)):
            raise ConfigError(f"point {i} is not a 9-tuple of numbers")
    return points


@cli.command()
@click.argument("points_file", type=click.Path(dir_okay=False))
@click.option("--kernel", "kernel_id", type=click.Choice(KERNEL_IDS), default="quantum")
@common_options
def kernel(points_file, kernel_id, **flags):
    """Evaluate a closed-form kernel at the 9-tuples of a JSON file."""
    cfg = run_config("kernel", **flags)
    if kernel_id == "quantum" and not -1 < cfg.hbar < 1:
        raise ConfigError(f"the quantum kernel needs |hbar| < 1, got {cfg.hbar}; pass --hbar")
    points = load_points(points_file)
    results = []
    for i, p in enumerate(points):
        try:
            x1, x2, x3 = TomoPoint.from_flat(p)
            if kernel_id == "h1-singular":
                k = singular_kernel_h1(x1, x2, x3)
                results.append({"point": p, "amp_re": k.amplitude.real, "amp_im": k.amplitude.imag, "delta_arg": k.delta_argument})
                continue
            value = {
                "quantum": lambda: quadratic_kernel(KernelArgs(x1, x2, x3, cfg.hbar)),
                "classical": lambda: classical_kernel(x1, x2, x3),
                "first-order": lambda: first_order_coefficient(x1, x2, x3),
                "k-deformed": lambda: k_deformed_kernel(x1, x2, x3),
            }[kernel_id]()
        except DomainError as e:
            raise DomainError(f"point {i}: {e}") from e
        results.append({"point": p, "re": value.real, "im": value.imag})
    emit(dumps(results), cfg)


@cli.command("sweep-hbar")
@click.option("--triple", required=True, help="X1,mu1,nu1,X2,mu2,nu2,X3,mu3,nu3")
@click.option("--h-min", type=float, default=-0.9)
@click.option("--h-max", type=float, default=0.9)
@click.option("--count", type=int, default=37)
@common_options
def sweep_hbar(triple, h_min, h_max, count, **flags):
    """K(x₁, x₂, x₃; 𝔥) and the swapped K(x₂, x₁, x₃; 𝔥) across an 𝔥 grid."""
    cfg = run_config("sweep-hbar", **flags)
    x1, x2, x3 = TomoPoint.from_flat(parse_floats(triple, 9, "triple"))
    if not (1 <= count <= MAX_GRID):
        raise ConfigError(f"grid count must be in [1, {MAX_GRID}], got {count}")
    if not (-1 < h_min <= h_max < 1):
        raise DomainError(f"hbar grid [{h_min}, {h_max}] must lie inside (-1, 1)")
    grid = np.linspace(h_min, h_max, count)
    K = np.array([quadratic_kernel(KernelArgs(x1, x2, x3, float(h))) for h in grid])
    Ks = np.array([quadratic_kernel(KernelArgs(x2, x1, x3, float(h))) for h in grid])
    df = pd.DataFrame({"hbar": grid, "K_re": K.real, "K_im": K.imag, "Kswap_re": Ks.real, "Kswap_im": Ks.imag})
    emit_table(df, cfg)


@cli.command()
@click.option("--suite", "suites", multiple=True, help=f"Suites to run (default all of {', '.join(SUITES)}).")
@click.option("--timings", is_flag=True, default=False, help="Include elapsed seconds in the report.")
@common_options
@click.pass_context
def verify(ctx, suites, timings, **flags):
    """Run the verification suites and write a JSON report."""
    cfg = run_config("verify", **flags)
    reports = run_suites(list(suites) or list(SUITES), cfg)
    payload = report_payload(reports, cfg.convention, cfg.seed, timings)
    emit(dumps(payload), cfg)
    if not payload["all_passed"]:
        failed = [f"{r.suite_name}/{c.name}" for r in reports for c in r.cases if not c.passed and not c.experimental]
        logger.error(f"verification failed: {', '.join(failed)}")
        ctx.exit(1)


def main():
    sys.exit(cli(prog_name="tomostar"))


if __name__ == "__main__":
    main()

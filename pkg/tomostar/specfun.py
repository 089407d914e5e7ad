"""
Special functions and quadrature engines.

All integrands are numpy-vectorized callables: they receive arrays of nodes and
return arrays of values. Every rule here is deterministic for a given
``QuadratureSpec``.
"""

import logging
import math
from typing import Callable, NamedTuple, Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate, special

from tomostar.config import QuadratureSpec
from tomostar.errors import AccuracyError, DomainError


logger = logging.getLogger(__name__)

LAGUERRE_MAX_ORDER = 64
MC_CHUNK = 1 << 16
MC_MAX_DIM = 8


def _check_finite(x, what: str):
    if not np.all(np.isfinite(x)):
        raise DomainError(f"{what} must be finite")


def on_nodes(values, shape: tuple[int, ...]) -> np.ndarray:
    """Integrand values as an array of ``shape`` plus any trailing axes.

    A constant integrand may return a scalar; it is spread over every node.

    Raises:
        DomainError: If the values do not broadcast against the nodes
    """
    values = np.asarray(values, dtype=complex)
    shape = tuple(shape)
    target = shape + values.shape[len(shape):]
    try:
        return np.broadcast_to(values, target)
    except ValueError:
        raise DomainError(f"integrand returned shape {values.shape}, expected {shape} (+ trailing axes)")


def bessel_j0(x):
    """Bessel function J₀ of real argument (scalar or array).

    Raises:
        DomainError: If any input is not finite
    """
    _check_finite(x, "bessel_j0 argument")
    ans = special.j0(x)
    return float(ans) if np.ndim(ans) == 0 else ans


def laguerre(n: int, x):
    """Laguerre polynomial Lₙ(x) for 0 <= n <= 64 (three-term recurrence in scipy)."""
    if int(n) != n or not (0 <= n <= LAGUERRE_MAX_ORDER):
        raise DomainError(f"Laguerre order must be an integer in [0, {LAGUERRE_MAX_ORDER}], got {n}")
    _check_finite(x, "laguerre argument")
    ans = special.eval_laguerre(int(n), x)
    return float(ans) if np.ndim(ans) == 0 else ans


def laplace_j0(c, s):
    """∫₀^∞ e^{−sX} J₀(c√X) dX = e^{−c²/(4s)}/s, for Re s >= 0, s != 0."""
    s = np.asarray(s, dtype=complex)
    if np.any(s == 0) or np.any(s.real < 0):
        raise DomainError("laplace_j0 needs Re s >= 0 and s != 0")
    ans = np.exp(-np.asarray(c) ** 2 / (4 * s)) / s
    return complex(ans) if np.ndim(ans) == 0 else ans


# --------------------------
# Periodic rule
# --------------------------
def periodic_nodes(node_count: int) -> np.ndarray:
    return 2 * np.pi * np.arange(node_count) / node_count


def periodic_integral(f: Callable[[np.ndarray], np.ndarray], spec: QuadratureSpec):
    """Trapezoidal rule for ∮ f(φ) dφ over [0, 2π).

    ``f`` receives the node array of shape (node_count,) and may return extra
    trailing axes as (node_count, ...); the result then keeps those axes.
    """
    phi = periodic_nodes(spec.node_count)
    values = on_nodes(f(phi), phi.shape)
    if not np.all(np.isfinite(values)):
        raise DomainError("periodic integrand returned non-finite values")
    ans = values.sum(axis=0) * (2 * np.pi / spec.node_count)
    return complex(ans) if np.ndim(ans) == 0 else ans


# --------------------------
# Semi-infinite rules
# --------------------------
def legendre_panels(cutoff: float, order: int, panel_width: float = np.pi) -> tuple[np.ndarray, np.ndarray]:
    """Composite Gauss–Legendre nodes and weights on [0, cutoff]."""
    panels = max(1, math.ceil(cutoff / panel_width))
    width = cutoff / panels
    x, w = leggauss(order)
    left = np.arange(panels)[:, None] * width
    nodes = left + (x[None, :] + 1) * (width / 2)
    weights = np.broadcast_to(w[None, :] * (width / 2), nodes.shape)
    return nodes.ravel(), weights.ravel().copy()


def damped_semiinfinite_integral(f: Callable[[float], complex], spec: QuadratureSpec, panel_width: float = 10.0) -> complex:
    """Adaptive ∫₀^cutoff f(X) e^{−εX} dX with ε = ``spec.damping``.

    The range is split into panels so the oscillatory tail never starves the
    adaptive subdivision. The ε → 0 limit is the caller's business
    (see ``richardson_limit``).

    Raises:
        AccuracyError: If scipy's adaptive rule reports non-convergence
    """
    eps = spec.damping
    cutoff = spec.upper_cutoff
    panels = max(1, math.ceil(cutoff / panel_width))
    edges = np.linspace(0.0, cutoff, panels + 1)

    def part(component):
        def g(x):
            return component(complex(f(x)) * math.exp(-eps * x))
        return g

    total = 0j
    failures = []
    for lo, hi in zip(edges[:-1], edges[1:]):
        for comp, unit in ((lambda z: z.real, 1.0), (lambda z: z.imag, 1j)):
            res = integrate.quad(part(comp), lo, hi, limit=200, epsabs=1e-14, epsrel=1e-12, full_output=1)
            total += unit * res[0]
            if len(res) > 3:
                failures.append((lo, hi, res[3]))
    if failures:
        lo, hi, msg = failures[0]
        raise AccuracyError(f"adaptive quadrature failed on [{lo:g}, {hi:g}]: {msg}", estimate=total)
    return total


def richardson_limit(evaluate: Callable[[float], complex | np.ndarray], damping: float, tol: float = 1e-6):
    """ε → 0 limit from the ladder {ε, ε/2, ε/4, ε/8} with two Richardson levels.

    The estimate is the second-level extrapolate of the three finest rungs;
    the second-level extrapolate of the three coarsest rungs gives its error
    bar. Both are exact when the value is a quadratic in ε.

    With ``damping == 0`` the integrand is taken as absolutely convergent and
    evaluated once.

    Raises:
        AccuracyError: If the two second-level extrapolates differ by more
            than ``tol`` (relative to max(1, |limit|))
    """
    if damping == 0:
        return evaluate(0.0)
    ladder = [evaluate(damping / k) for k in (1, 2, 4, 8)]
    first = [2 * b - a for a, b in zip(ladder, ladder[1:])]
    coarse, limit = ((4 * b - a) / 3 for a, b in zip(first, first[1:]))
    residual = float(np.max(np.abs(limit - coarse)))
    scale = max(1.0, float(np.max(np.abs(limit))))
    logger.debug(f"richardson ladder eps={damping}: {ladder!r} -> {limit!r}, residual {residual:.3e}")
    if residual > tol * scale:
        raise AccuracyError("epsilon extrapolation did not settle", estimate=limit, residual=residual)
    return limit


# --------------------------
# Monte Carlo
# --------------------------
class MonteCarloResult(NamedTuple):
    estimate: complex
    std_error: float


def _chunk_generator(seed: int, index: int) -> np.random.Generator:
    # Counter-based stream keyed by (seed, chunk index): chunks can be drawn in any order.
    return np.random.Generator(np.random.Philox(np.random.SeedSequence([seed, index])))


def _accumulate(spec: QuadratureSpec, dim: int, draw, f) -> tuple[complex, float]:
    if spec.sample_count <= 0:
        raise DomainError("Monte Carlo needs a positive sample_count")
    if not (1 <= dim <= MC_MAX_DIM):
        raise DomainError(f"Monte Carlo dimension must be in [1, {MC_MAX_DIM}], got {dim}")
    total = 0j
    total_sq = 0.0
    n = spec.sample_count
    for index, start in enumerate(range(0, n, MC_CHUNK)):
        size = min(MC_CHUNK, n - start)
        x = draw(_chunk_generator(spec.seed, index), size)
        values = on_nodes(f(x), (size,))
        if values.ndim != 1:
            raise DomainError(f"Monte Carlo integrand must return one value per sample, got shape {values.shape}")
        if not np.all(np.isfinite(values)):
            raise DomainError("Monte Carlo integrand returned non-finite values")
        total += values.sum()
        total_sq += float(np.sum(values.real ** 2 + values.imag ** 2))
    mean = total / n
    var = max(total_sq / n - abs(mean) ** 2, 0.0)
    std_error = math.sqrt(var / (n - 1)) if n > 1 else 0.0
    return mean, std_error


def monte_carlo_integral(
    f: Callable[[np.ndarray], np.ndarray],
    dim: int,
    box: Sequence[tuple[float, float]],
    spec: QuadratureSpec,
) -> MonteCarloResult:
    """Uniform Monte Carlo over a finite box.

    Args:
        f: Integrand taking an array of shape (n, dim)
        dim: Number of dimensions (<= 8)
        box: Per-axis (lower, upper) bounds
        spec: Supplies ``seed`` and ``sample_count``

    Returns:
        Estimate of the integral and its standard error
    """
    bounds = np.asarray(box, dtype=float).reshape(-1, 2)
    if bounds.shape[0] != dim:
        raise DomainError(f"box has {bounds.shape[0]} axes, expected {dim}")
    _check_finite(bounds, "Monte Carlo box")
    lo, hi = bounds[:, 0], bounds[:, 1]
    volume = float(np.prod(hi - lo))

    def draw(rng, size):
        return lo + (hi - lo) * rng.random((size, dim))

    mean, std_error = _accumulate(spec, dim, draw, f)
    return MonteCarloResult(mean * volume, std_error * abs(volume))


def gaussian_monte_carlo_integral(
    f: Callable[[np.ndarray], np.ndarray],
    dim: int,
    spec: QuadratureSpec,
) -> MonteCarloResult:
    """Importance-sampled ∫_{ℝ^dim} f(y) dy with draws from the density π^{−dim/2} e^{−|y|²}."""
    norm = math.pi ** (dim / 2)

    def draw(rng, size):
        return rng.standard_normal((size, dim)) / math.sqrt(2.0)

    def weighted(y):
        return f(y) * norm * np.exp(np.sum(y * y, axis=1))

    mean, std_error = _accumulate(spec, dim, draw, weighted)
    return MonteCarloResult(mean, std_error)

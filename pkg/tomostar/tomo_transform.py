"""
Tomographic transforms.

Quadratic tomography integrates a phase-space symbol over circles of squared
radius X centred at (μ, ν); symplectic tomography integrates it over the lines
μq + νp = X.
"""

import logging
import math
try:
    from enum import StrEnum
except ImportError:  # Python < 3.11: same str()/format() behaviour as enum.StrEnum
    from enum import Enum

    class StrEnum(str, Enum):
        __str__ = str.__str__
        __format__ = str.__format__

import numpy as np
from scipy import integrate

from tomostar.config import QuadratureSpec
from tomostar.errors import AccuracyError, ChartError, DegenerateLineError, DomainError
from tomostar.specfun import laguerre, legendre_panels, on_nodes, periodic_integral, periodic_nodes, richardson_limit
from tomostar.types import Deformation, PhasePoint, SingularKernel, SymbolFn, TomoPoint, TomoSymbolFn, hbar_of


logger = logging.getLogger(__name__)

# extra reach of the X rule beyond the centre range in quadratic_inverse, in units of √X
RADIAL_MARGIN = 6.0


class MeasureConvention(StrEnum):
    """Normalization of the circle-delta reduction.

    ``standard`` uses the polar Jacobian, ∫δ(X − r²) r dr dφ = (1/2)∫dφ;
    ``paper`` replaces it with (1/(2π))∫dφ. The two differ by a factor π.
    """

    STANDARD = "standard"
    PAPER = "paper"

    @property
    def circle_factor(self) -> float:
        return 0.5 if self is MeasureConvention.STANDARD else 1 / (2 * math.pi)

    @property
    def point_factor(self) -> float:
        """Value of the circle factor times 2π: what a degenerate X = 0 circle returns per unit f."""
        return math.pi if self is MeasureConvention.STANDARD else 1.0

    @property
    def inverse_scale(self) -> float:
        # χ = (1/π)e^{i(...)} inverts the ``paper`` convention exactly
        return 1 / math.pi if self is MeasureConvention.STANDARD else 1.0


# --------------------------
# Quadratic (circle) tomography
# --------------------------
def quadratic_forward(f: SymbolFn, x: TomoPoint, conv: MeasureConvention, spec: QuadratureSpec) -> complex:
    """Circle tomogram w(X, μ, ν) of the symbol ``f``.

    Raises:
        DomainError: If X < 0
    """
    X, mu, nu = TomoPoint.checked(*map(float, x))
    conv = MeasureConvention(conv)
    if X == 0:
        return complex(conv.point_factor * f(mu, nu))
    r = math.sqrt(X)
    ans = periodic_integral(lambda phi: f(mu + r * np.cos(phi), nu + r * np.sin(phi)), spec)
    return complex(conv.circle_factor * ans)


def forward_values(f: SymbolFn, X, mu, nu, conv: MeasureConvention, spec: QuadratureSpec) -> np.ndarray:
    """Vectorized ``quadratic_forward`` over broadcast arrays X, μ, ν."""
    X, mu, nu = np.broadcast_arrays(*(np.asarray(i, dtype=float) for i in (X, mu, nu)))
    if np.any(X < 0):
        raise DomainError("squared radius must be non-negative")
    conv = MeasureConvention(conv)
    phi = periodic_nodes(spec.node_count)
    r = np.sqrt(X)[..., None]
    values = on_nodes(f(mu[..., None] + r * np.cos(phi), nu[..., None] + r * np.sin(phi)), X.shape + phi.shape)
    circle = values.sum(axis=-1) * (2 * math.pi / spec.node_count) * conv.circle_factor
    point = conv.point_factor * on_nodes(f(mu, nu), X.shape)
    return np.where(X == 0, point, circle)


def forward_symbol(f: SymbolFn, conv: MeasureConvention, spec: QuadratureSpec) -> TomoSymbolFn:
    """The tomographic symbol of ``f`` as a vectorized callable w(X, μ, ν)."""

    def w(X, mu, nu):
        return forward_values(f, X, mu, nu, conv, spec)

    return w


def tomogram_fock(n: int, h: Deformation | float, X, conv: MeasureConvention):
    """Closed-form central-circle tomogram of the n-th oscillator state:
    c·(−1)ⁿ/(π𝔥) e^{−X/𝔥} Lₙ(2X/𝔥), with c = π (standard) or 1 (paper).
    """
    hbar = hbar_of(h)
    if hbar <= 0:
        raise DomainError(f"oscillator tomograms need hbar > 0, got {hbar}")
    X = np.asarray(X, dtype=float)
    if np.any(X < 0):
        raise DomainError("squared radius must be non-negative")
    sign = -1.0 if n % 2 else 1.0
    ans = MeasureConvention(conv).point_factor * sign / (math.pi * hbar) * np.exp(-X / hbar) * laguerre(n, 2 * X / hbar)
    return float(ans) if np.ndim(ans) == 0 else ans


def quadratic_transition(q, p, x: TomoPoint):
    """χ(q, p, x) = (1/π) e^{i(X − (q−μ)² − (p−ν)²)}"""
    X, mu, nu = x
    return np.exp(1j * (X - (q - mu) ** 2 - (p - nu) ** 2)) / math.pi


def quadratic_inverse(
    w: TomoSymbolFn,
    pt: PhasePoint,
    conv: MeasureConvention,
    spec: QuadratureSpec,
    tol: float = 1e-2,
) -> complex:
    """Phase-space symbol at ``pt`` from its circle tomogram ``w``.

    Evaluates ∫ w(X, μ, ν) χ(q, p, X, μ, ν) dX dμ dν. The centre is written as
    c = pt + √t e_θ, so d²c = (1/2) dt dθ and the integrand becomes
    e^{−it} e^{iX} w(X, c): both semi-infinite directions run on composite
    Gauss–Legendre panels with e^{−ε(X+t)} damping, θ on the periodic rule.
    t stops at ``spec.upper_cutoff``; X runs on to (√cutoff + |pt| + RADIAL_MARGIN)²
    so every circle centred inside the t range keeps its whole radial profile.
    Under the standard convention the result is scaled by 1/π so that
    inverse∘forward is the identity.

    Raises:
        AccuracyError: If the ε-extrapolation does not settle within ``tol``
    """
    conv = MeasureConvention(conv)
    zq, zp = float(pt[0]), float(pt[1])
    x_cutoff = (math.sqrt(spec.upper_cutoff) + math.hypot(zq, zp) + RADIAL_MARGIN) ** 2
    x_nodes, x_weights = legendre_panels(x_cutoff, spec.radial_nodes)
    t_nodes, t_weights = legendre_panels(spec.upper_cutoff, spec.radial_nodes)
    theta = periodic_nodes(spec.node_count)
    cos_t, sin_t = np.cos(theta), np.sin(theta)

    # angular averages M[t, X] = ∮ w(X, pt + √t e_θ) dθ do not depend on ε
    M = np.empty((t_nodes.size, x_nodes.size), dtype=complex)
    for i, t in enumerate(t_nodes):
        r = math.sqrt(t)
        values = on_nodes(
            w(x_nodes[None, :], (zq + r * cos_t)[:, None], (zp + r * sin_t)[:, None]),
            (theta.size, x_nodes.size),
        )
        M[i] = values.sum(axis=0) * (2 * math.pi / spec.node_count)
    if not np.all(np.isfinite(M)):
        raise DomainError("tomographic symbol returned non-finite values")

    def evaluate(eps: float) -> complex:
        inner = M @ (x_weights * np.exp((1j - eps) * x_nodes))
        outer = np.sum(t_weights * np.exp((-1j - eps) * t_nodes) * inner)
        return complex(0.5 * outer / math.pi)

    ans = richardson_limit(evaluate, spec.damping, tol)
    return complex(conv.inverse_scale * ans)


# --------------------------
# Symplectic (line) tomography
# --------------------------
def symplectic_forward(f: SymbolFn, X: float, mu: float, nu: float, spec: QuadratureSpec) -> complex:
    """∫ f(q, p) δ(X − μq − νp) dq dp, integrated along the line by adaptive quadrature.

    Raises:
        DegenerateLineError: If μ = ν = 0
    """
    norm = math.hypot(mu, nu)
    if norm == 0:
        raise DegenerateLineError("mu = nu = 0 does not define a line")
    # foot of the perpendicular from the origin and unit direction along the line
    q0, p0 = X * mu / norm**2, X * nu / norm**2
    dq, dp = -nu / norm, mu / norm

    def line(tau):
        return complex(f(q0 + tau * dq, p0 + tau * dp))

    parts = []
    for comp in (lambda z: z.real, lambda z: z.imag):
        res = integrate.quad(lambda tau: comp(line(tau)), -np.inf, np.inf, epsabs=1e-14, epsrel=1e-12, limit=200, full_output=1)
        if len(res) > 3:
            raise AccuracyError(f"line integral failed: {res[3]}", estimate=res[0])
        parts.append(res[0])
    return complex(parts[0], parts[1]) / norm


def symplectic_transition(q, p, x: TomoPoint):
    """χ(q, p, x) = (1/(4π²)) e^{i(X − μq − νp)}, the quantizer side of the line scheme."""
    X, mu, nu = x
    return np.exp(1j * (X - mu * q - nu * p)) / (4 * math.pi**2)


def symplectic_kernel(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint, h: Deformation | float) -> SingularKernel:
    """Star-product kernel of symplectic tomography, written in the chart ν₃ ≠ 0.

    Raises:
        ChartError: If ν₃ = 0
    """
    hbar = hbar_of(h)
    X1, mu1, nu1 = x1
    X2, mu2, nu2 = x2
    X3, mu3, nu3 = x3
    if nu3 == 0:
        raise ChartError("symplectic kernel is written for nu3 != 0; use another chart")
    phase = (X1 + X2) - ((nu1 + nu2) / nu3) * X3 + (hbar / 2) * (nu1 * mu2 - nu2 * mu1)
    amplitude = complex(np.exp(1j * phase)) / (4 * math.pi**2)
    return SingularKernel(amplitude, float(nu3 * (mu1 + mu2) - mu3 * (nu1 + nu2)))

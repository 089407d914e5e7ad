"""
Star-product kernels of quadratic tomography and their quadrature oracles.

Closed forms are written exactly as derived; constants that depend on the
measure convention are never folded in and show up instead as ratios between
a closed form and its oracle. Every closed form broadcasts over numpy arrays
held in the TomoPoint fields.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy import integrate, special
from scipy.interpolate import CubicSpline

from tomostar.config import QuadratureSpec
from tomostar.errors import AccuracyError, DomainError
from tomostar.specfun import MonteCarloResult, gaussian_monte_carlo_integral, laplace_j0, periodic_integral, periodic_nodes
from tomostar.tomo_transform import MeasureConvention
from tomostar.types import SingularKernel, TomoPoint, hbar_of


logger = logging.getLogger(__name__)

KERNEL_IDS = ("quantum", "classical", "first-order", "h1-singular", "k-deformed")
FD_STEP = 1e-4
# trapezoid nodes per axis for the (μ₃, ν₃) integrals of smeared actions
SMEAR_GRID = 121
SINGULAR_GRID = 201


@dataclass(frozen=True)
class KernelArgs:
    x1: TomoPoint
    x2: TomoPoint
    x3: TomoPoint
    h: float = 0.0

    def swapped(self) -> "KernelArgs":
        return KernelArgs(self.x2, self.x1, self.x3, self.h)

    def with_hbar(self, h: float) -> "KernelArgs":
        return KernelArgs(self.x1, self.x2, self.x3, h)


def _out(value):
    return complex(value) if np.ndim(value) == 0 else value


def _check_radii(*points: TomoPoint):
    for x in points:
        if np.any(np.asarray(x[0]) < 0):
            raise DomainError(f"squared radius must be non-negative, got X={x[0]}")


def _shifted_centre(x1: TomoPoint, x2: TomoPoint, h: float):
    """m = (A, B), the 𝔥-rotated sum of the first two centres."""
    _, mu1, nu1 = x1
    _, mu2, nu2 = x2
    A = (mu1 + mu2) + h * (nu2 - nu1)
    B = (nu1 + nu2) + h * (mu1 - mu2)
    return A, B


def _centre_norms(x1: TomoPoint, x2: TomoPoint):
    _, mu1, nu1 = x1
    _, mu2, nu2 = x2
    return (mu1**2 + nu1**2) + (mu2**2 + nu2**2)


# --------------------------
# Regular kernels
# --------------------------
def quadratic_kernel(args: KernelArgs):
    """Closed-form kernel at |𝔥| < 1:

    e^{i(X₁+X₂)}/((1−𝔥²)π⁴) · exp(−i[2X₃ + S + 2μ₃² + 2ν₃² − 2Aμ₃ − 2Bν₃]/(1−𝔥²))
    · J₀(2√X₃ |(A, B) − 2(μ₃, ν₃)|/(1−𝔥²))

    with A = μ₁−𝔥ν₁+μ₂+𝔥ν₂, B = 𝔥μ₁+ν₁−𝔥μ₂+ν₂ and S = μ₁²+ν₁²+μ₂²+ν₂².

    Raises:
        DomainError: If |𝔥| >= 1 (use ``singular_kernel_h1``) or any X < 0
    """
    h = float(args.h)
    if not abs(h) < 1:
        raise DomainError(f"quadratic_kernel needs |hbar| < 1, got {h}; use singular_kernel_h1 at hbar = 1")
    x1, x2, x3 = args.x1, args.x2, args.x3
    _check_radii(x1, x2, x3)
    X1, X2, (X3, mu3, nu3) = x1[0], x2[0], x3
    d = 1 - h * h
    A, B = _shifted_centre(x1, x2, h)
    bracket = 2 * X3 + (_centre_norms(x1, x2) + 2 * mu3**2 + 2 * nu3**2) - 2 * A * mu3 - 2 * B * nu3
    rho = np.sqrt((A - 2 * mu3) ** 2 + (B - 2 * nu3) ** 2)
    ans = (
        np.exp(1j * (X1 + X2))
        / (d * math.pi**4)
        * np.exp(-1j * bracket / d)
        * special.j0(2 * np.sqrt(X3) / d * rho)
    )
    return _out(ans)


def quadratic_kernel_bound(h: float) -> float:
    """|quadratic_kernel| never exceeds 1/((1−𝔥²)π⁴)."""
    return 1 / ((1 - h * h) * math.pi**4)


def k3_phase_term(args: KernelArgs):
    """exp(−2i𝔥(μ₁ν₂ − μ₂ν₁)/(1−𝔥²)): the factor by which the two-variable
    integral form of the kernel differs from ``quadratic_kernel``."""
    h = float(args.h)
    _, mu1, nu1 = args.x1
    _, mu2, nu2 = args.x2
    return _out(np.exp(-2j * h * (mu1 * nu2 - mu2 * nu1) / (1 - h * h)))


def quadratic_kernel_oracle(args: KernelArgs, conv: MeasureConvention, spec: QuadratureSpec) -> complex:
    """The kernel from its integral over the third phase-space point.

    The delta δ(X₃ − (q₃−μ₃)² − (p₃−ν₃)²) fixes the radius, so the remaining
    angle runs on the periodic rule with the convention's radial factor. The
    integrand is taken as written before the Fresnel steps, including its
    2𝔥(μ₁ν₂ − μ₂ν₁) phase term, so
    ``oracle = c · quadratic_kernel · k3_phase_term`` with c = π (standard)
    or 1 (paper).
    """
    h = float(args.h)
    if not abs(h) < 1:
        raise DomainError(f"quadratic_kernel_oracle needs |hbar| < 1, got {h}")
    conv = MeasureConvention(conv)
    x1, x2, x3 = args.x1, args.x2, args.x3
    _check_radii(x1, x2, x3)
    X1, mu1, nu1 = x1
    X2, mu2, nu2 = x2
    X3, mu3, nu3 = x3
    d = 1 - h * h
    A, B = _shifted_centre(x1, x2, h)
    S = _centre_norms(x1, x2)
    omega = mu1 * nu2 - mu2 * nu1
    pref = np.exp(1j * (X1 + X2)) / (d * math.pi**4)

    def integrand(q3, p3):
        bracket = 2 * (q3 - A / 2) ** 2 + 2 * (p3 - B / 2) ** 2 - A**2 / 2 - B**2 / 2 + S + 2 * h * omega
        return pref * np.exp(-1j * bracket / d)

    if X3 == 0:
        return complex(conv.point_factor * integrand(mu3, nu3))
    r = math.sqrt(X3)
    ans = periodic_integral(lambda phi: integrand(mu3 + r * np.cos(phi), nu3 + r * np.sin(phi)), spec)
    return complex(conv.circle_factor * ans)


def classical_kernel(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint):
    """Zero-order kernel K|𝔥=0: symmetric under x₁ ↔ x₂."""
    _check_radii(x1, x2, x3)
    X1, mu1, nu1 = x1
    X2, mu2, nu2 = x2
    X3, mu3, nu3 = x3
    A = mu1 + mu2
    B = nu1 + nu2
    bracket = 2 * X3 + (_centre_norms(x1, x2) + 2 * mu3**2 + 2 * nu3**2) - 2 * A * mu3 - 2 * B * nu3
    rho = np.sqrt((A - 2 * mu3) ** 2 + (B - 2 * nu3) ** 2)
    ans = np.exp(1j * (X1 + X2)) / math.pi**4 * np.exp(-1j * bracket) * special.j0(2 * np.sqrt(X3) * rho)
    return _out(ans)


def first_order_coefficient(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint):
    """Coefficient of 𝔥 in the expansion K = K₀ + 𝔥K₁ + …, as printed:
    K₀ · 2i((μ₁−μ₂)ν₃ − (ν₁−ν₂)μ₃). The J₀-argument shift is not included."""
    _, mu1, nu1 = x1
    _, mu2, nu2 = x2
    _, mu3, nu3 = x3
    return _out(classical_kernel(x1, x2, x3) * 2j * ((mu1 - mu2) * nu3 - (nu1 - nu2) * mu3))


def hbar_derivative_fd(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint, step: float = FD_STEP) -> complex:
    """Central difference (K(𝔥=+s) − K(𝔥=−s))/(2s) of the closed form at 𝔥 = 0."""
    if not (0 < step <= 1e-3):
        raise DomainError(f"finite-difference step must lie in (0, 1e-3], got {step}")
    args = KernelArgs(x1, x2, x3, step)
    return _out((quadratic_kernel(args) - quadratic_kernel(args.with_hbar(-step))) / (2 * step))


def hbar_derivative_richardson(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint, step: float = FD_STEP) -> complex:
    """Richardson combination of the central differences at ``step`` and ``step/2``."""
    coarse = hbar_derivative_fd(x1, x2, x3, step)
    fine = hbar_derivative_fd(x1, x2, x3, step / 2)
    return _out((4 * fine - coarse) / 3)


def j0_argument_slope(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint):
    """(μ₁+μ₂−2μ₃)(ν₂−ν₁) + (ν₁+ν₂−2ν₃)(μ₁−μ₂): proportional to ∂𝔥 of the
    J₀ argument at 𝔥 = 0. Where it vanishes the printed K₁ is the full derivative."""
    _, mu1, nu1 = x1
    _, mu2, nu2 = x2
    _, mu3, nu3 = x3
    return (mu1 + mu2 - 2 * mu3) * (nu2 - nu1) + (nu1 + nu2 - 2 * nu3) * (mu1 - mu2)


# --------------------------
# Singular kernel at 𝔥 = 1
# --------------------------
def _h1_parts(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint):
    X1, mu1, nu1 = x1
    X2, mu2, nu2 = x2
    X3, mu3, nu3 = x3
    amplitude = (
        2 / (1j * math.pi**3)
        * np.exp(1j * (X1 + X2))
        * np.exp(-1j * ((mu1 - mu2) ** 2 + (nu1 - nu2) ** 2) / 2)
    )
    delta_argument = 4 * X3 - (mu1 - nu1 + mu2 + nu2 - 2 * mu3) ** 2 - (mu1 + nu1 - mu2 + nu2 - 2 * nu3) ** 2
    return amplitude, delta_argument


def singular_kernel_h1(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint) -> SingularKernel:
    """Kernel at 𝔥 = 1, a multiple of δ(4X₃ − |(A, B) − 2(μ₃, ν₃)|²)."""
    amplitude, delta_argument = _h1_parts(x1, x2, x3)
    return SingularKernel(complex(amplitude), float(delta_argument))


# --------------------------
# k-deformed kernel
# --------------------------
def k_deformed_kernel(x1: TomoPoint, x2: TomoPoint, x3: TomoPoint):
    """Kernel of f₁ ⋆ k ⋆ f₂ at 𝔥 = 1 with k = δ(Y)δ(α)δ(β). Not symmetric under x₁ ↔ x₂."""
    _check_radii(x1, x2, x3)
    X1, mu1, nu1 = x1
    X2, mu2, nu2 = x2
    X3, mu3, nu3 = x3
    phase = (
        mu3**2 + nu3**2 - mu1 * mu2 - nu1 * nu2
        + (mu1 * nu2 - mu2 * nu1)
        - 2 * (mu1 * nu3 - mu3 * nu1)
        + 2 * (mu2 * nu3 - mu3 * nu2)
    )
    rho = np.sqrt((mu1 - mu2 - nu3) ** 2 + (mu3 + nu1 - nu2) ** 2)
    ans = (
        -1 / (2 * math.pi**5)
        * np.exp(1j * (X1 + X2 + X3))
        * np.exp(1j * phase)
        * special.j0(2 * np.sqrt(X3) * rho)
    )
    return _out(ans)


def k_deformed_oracle(
    x1: TomoPoint,
    x2: TomoPoint,
    x3: TomoPoint,
    spec: QuadratureSpec,
    conv: MeasureConvention = MeasureConvention.STANDARD,
) -> complex:
    """∫ K(x₁, z, x₃) K(y, x₂, z) k(y) dy dz from two 𝔥 = 1 singular kernels.

    k collapses y to the origin, the second kernel's delta fixes Z with
    co-area factor 1/4, and the first kernel's delta confines (γ, ζ) to the
    circle (γ+ζ+a)² + (ζ−γ+b)² = 4X₃. In u = γ+ζ, v = ζ−γ the Jacobian is 1/2
    and the angle runs on the periodic rule. Matches ``k_deformed_kernel``
    times 1 (standard) or 1/π (paper).
    """
    conv = MeasureConvention(conv)
    _check_radii(x1, x2, x3)
    X1, mu1, nu1 = x1
    X3, mu3, nu3 = x3
    a = mu1 - nu1 - 2 * mu3
    b = mu1 + nu1 - 2 * nu3
    origin = TomoPoint(0.0, 0.0, 0.0)

    def composed(u, v):
        gamma, zeta = (u - v) / 2, (u + v) / 2
        zero = np.zeros_like(gamma)
        # Z where the second kernel's delta vanishes
        _, delta_at_zero = _h1_parts(origin, x2, TomoPoint(zero, gamma, zeta))
        Z = -delta_at_zero / 4
        amp_first, _ = _h1_parts(x1, TomoPoint(Z, gamma, zeta), x3)
        amp_second, _ = _h1_parts(origin, x2, TomoPoint(Z, gamma, zeta))
        return amp_first * amp_second / 8

    if X3 == 0:
        return complex(conv.point_factor * composed(-a, -b))
    r = 2 * math.sqrt(X3)
    ans = periodic_integral(lambda th: composed(-a + r * np.cos(th), -b + r * np.sin(th)), spec)
    return complex(conv.circle_factor * ans)


# --------------------------
# Smeared actions
# --------------------------
@dataclass(frozen=True)
class TomoGaussian:
    """Test function amplitude · e^{−((X−X₀)² + (μ−μ₀)² + (ν−ν₀)²)/σ²} on (X₃, μ₃, ν₃)."""

    center: TomoPoint
    width: float = 1.0
    amplitude: complex = 1.0

    def __post_init__(self):
        if not self.width > 0:
            raise DomainError(f"test width must be positive, got {self.width}")

    def __call__(self, X, mu, nu):
        X0, mu0, nu0 = self.center
        return self.amplitude * np.exp(-((X - X0) ** 2 + (mu - mu0) ** 2 + (nu - nu0) ** 2) / self.width**2)


def _centre_grid(test: TomoGaussian, n: int):
    _, mu0, nu0 = test.center
    half = 6 * test.width
    mu = np.linspace(mu0 - half, mu0 + half, n)
    nu = np.linspace(nu0 - half, nu0 + half, n)
    w = np.full(n, mu[1] - mu[0])
    w[[0, -1]] /= 2
    Mu, Nu = (i.ravel() for i in np.meshgrid(mu, nu, indexing="ij"))
    return Mu, Nu, np.outer(w, w).ravel()


def _singular_action(x1: TomoPoint, x2: TomoPoint, test: TomoGaussian) -> complex:
    # ∫dX₃ δ(4X₃ − R) = 1/4 at X₃ = R/4
    if test.amplitude == 0:
        return 0j
    mu3, nu3, weights = _centre_grid(test, SINGULAR_GRID)
    amplitude, delta_at_zero = _h1_parts(x1, x2, TomoPoint(np.zeros_like(mu3), mu3, nu3))
    X3 = -delta_at_zero / 4
    return complex(np.sum(weights * amplitude * test(X3, mu3, nu3)) / 4)


def _reduced_action(x1: TomoPoint, x2: TomoPoint, h: float, test: TomoGaussian, spec: QuadratureSpec) -> complex:
    """Regular-kernel action through the stationary-point reduction.

    With w = c₃ + √X₃ e_φ the kernel is an angular average of
    e^{−i[2|w − m/2|² − |m|²/2 + S]/(1−𝔥²)}, so the action equals
    (pref/π) ∫ d²w e^{...} G(w), G(w) = ∫ d²c₃ test(|w−c₃|², c₃). Around
    w₀ = m/2 with t = |w − w₀|² the oscillation is e^{−2it/(1−𝔥²)} and the
    t-integral runs on scipy's Fourier-weighted rule over a spline of the
    angular average of G.
    """
    if test.amplitude == 0:
        return 0j
    X1, X2 = x1[0], x2[0]
    d = 1 - h * h
    A, B = _shifted_centre(x1, x2, h)
    S = _centre_norms(x1, x2)
    pref = np.exp(1j * (X1 + X2)) / (d * math.pi**4)
    const = np.exp(-1j * (S - (A**2 + B**2) / 2) / d)

    mu3, nu3, weights = _centre_grid(test, SMEAR_GRID)
    X0, mu0, nu0 = test.center
    reach = math.hypot(A / 2 - mu0, B / 2 - nu0) + 6 * math.sqrt(2) * test.width
    reach += math.sqrt(max(X0 + 6 * test.width, 0.0))
    T = reach**2
    theta = periodic_nodes(spec.node_count)
    cos_t, sin_t = np.cos(theta), np.sin(theta)
    # uniform in radius: dense in t near the stationary point
    t_grid = np.linspace(0.0, reach, 4 * spec.node_count) ** 2
    g_bar = np.empty(t_grid.size, dtype=complex)
    for i, t in enumerate(t_grid):
        r = math.sqrt(t)
        wq = (A / 2 + r * cos_t)[:, None]
        wp = (B / 2 + r * sin_t)[:, None]
        X = (wq - mu3) ** 2 + (wp - nu3) ** 2
        G = np.sum(weights * test(X, mu3, nu3), axis=1)
        g_bar[i] = np.sum(G) * (2 * math.pi / spec.node_count)

    omega = 2 / d
    parts = {}
    for name, comp in (("re", g_bar.real), ("im", g_bar.imag)):
        spline = CubicSpline(t_grid, comp)
        c, *_ = integrate.quad(spline, 0.0, T, weight="cos", wvar=omega, limit=1000)
        s, *_ = integrate.quad(spline, 0.0, T, weight="sin", wvar=omega, limit=1000)
        parts[name] = c - 1j * s
    oscillatory = parts["re"] + 1j * parts["im"]
    return complex(pref / math.pi * const * 0.5 * oscillatory)


def _direct_action(kernel, test: TomoGaussian, n: int) -> complex:
    """Product Gauss–Legendre cube around the test centre (X₃ clipped at 0)."""
    X0, mu0, nu0 = test.center
    half = 6 * test.width
    x, w = leggauss(n)

    def axis(lo, hi):
        return (hi + lo) / 2 + (hi - lo) / 2 * x, (hi - lo) / 2 * w

    lo_X = max(0.0, X0 - half)
    if X0 + half <= lo_X:
        return 0j
    Xs, wX = axis(lo_X, X0 + half)
    Ms, wM = axis(mu0 - half, mu0 + half)
    Ns, wN = axis(nu0 - half, nu0 + half)
    X3, M3, N3 = np.meshgrid(Xs, Ms, Ns, indexing="ij")
    W = wX[:, None, None] * wM[None, :, None] * wN[None, None, :]
    values = kernel(TomoPoint(X3, M3, N3)) * test(X3, M3, N3)
    return complex(np.sum(W * values))


def smeared_kernel_action(
    kernel_id: str,
    x1: TomoPoint,
    x2: TomoPoint,
    test: TomoGaussian,
    spec: QuadratureSpec,
    h: float | None = None,
    method: str = "reduced",
) -> complex:
    """∫ kernel(x₁, x₂, x₃) test(x₃) dX₃ dμ₃ dν₃.

    Args:
        kernel_id: One of ``KERNEL_IDS``
        x1: First argument of the kernel
        x2: Second argument of the kernel
        test: Gaussian test function on the third argument
        spec: ``node_count`` sets the angular rule (reduced) or the nodes per
            axis (direct)
        h: Deformation for ``quantum``
        method: ``reduced`` (quantum and classical only) or ``direct``

    Returns:
        The smeared action. The h1-singular kernel always goes through the
        co-area reduction.
    """
    if kernel_id not in KERNEL_IDS:
        raise DomainError(f"unknown kernel {kernel_id!r}, expected one of {KERNEL_IDS}")
    _check_radii(x1, x2)
    if kernel_id == "h1-singular":
        return _singular_action(x1, x2, test)
    if kernel_id == "quantum":
        if h is None:
            raise DomainError("the quantum kernel needs hbar")
        hbar = hbar_of(h)
        if not abs(hbar) < 1:
            raise DomainError(f"quantum kernel needs |hbar| < 1, got {hbar}; use h1-singular")
    else:
        hbar = 0.0

    if method == "reduced":
        if kernel_id not in ("quantum", "classical"):
            raise DomainError(f"no reduced action for {kernel_id!r}; use method='direct'")
        return _reduced_action(x1, x2, hbar, test, spec)
    if method != "direct":
        raise DomainError(f"unknown method {method!r}")
    kernel = {
        "quantum": lambda x3: quadratic_kernel(KernelArgs(x1, x2, x3, hbar)),
        "classical": lambda x3: classical_kernel(x1, x2, x3),
        "first-order": lambda x3: first_order_coefficient(x1, x2, x3),
        "k-deformed": lambda x3: k_deformed_kernel(x1, x2, x3),
    }[kernel_id]
    return _direct_action(kernel, test, spec.node_count)


# --------------------------
# Classical product through the kernel
# --------------------------
def classical_route_mc(k1: tuple[float, float], k2: tuple[float, float], x3: TomoPoint, spec: QuadratureSpec) -> MonteCarloResult:
    """∫∫ classical_kernel(x₁, x₂, x₃) A₁(x₁) A₂(x₂) dx₁ dx₂ for two plane waves.

    Aⱼ = π e^{ikⱼ·cⱼ} J₀(|kⱼ|√Xⱼ) are the standard-convention tomograms. Both
    X-integrals are Laplace transforms at s = −i. The remaining Fresnel
    integral over the centres is rotated onto cⱼ = c₃ + e^{−iπ/4} yⱼ, which
    turns it into a Gaussian average sampled by Monte Carlo. The value equals
    the standard-convention tomogram of the pointwise product times 1/π.

    Raises:
        AccuracyError: If the sampled integrand is not finite
    """
    X3, mu3, nu3 = TomoPoint.checked(*map(float, x3))
    k1 = np.asarray(k1, dtype=float)
    k2 = np.asarray(k2, dtype=float)
    L1 = math.pi * laplace_j0(float(np.hypot(*k1)), -1j)
    L2 = math.pi * laplace_j0(float(np.hypot(*k2)), -1j)
    rot = np.exp(-0.25j * math.pi)

    def integrand(y):
        y1, y2 = y[:, :2], y[:, 2:]
        s = y1 + y2
        bessel = special.jv(0, 2 * math.sqrt(X3) * rot * np.sqrt(np.sum(s * s, axis=1)))
        waves = np.exp(1j * rot * (y1 @ k1 + y2 @ k2))
        return np.exp(-np.sum(y * y, axis=1)) * bessel * waves

    mc = gaussian_monte_carlo_integral(integrand, 4, spec)
    # two 2-D Jacobians (e^{−iπ/4})² = −i each
    factor = -(L1 * L2) / math.pi**4 * np.exp(-2j * X3) * np.exp(1j * (k1 @ (mu3, nu3) + k2 @ (mu3, nu3)))
    estimate = complex(factor * mc.estimate)
    if not np.isfinite(estimate):
        raise AccuracyError("kernel-route integrand overflowed", estimate=estimate)
    return MonteCarloResult(estimate, float(abs(factor) * mc.std_error))

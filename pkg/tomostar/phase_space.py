"""
Phase-space symbols and the Moyal product.

Symbols are plain callables ``f(q, p)`` that broadcast over numpy arrays; the
heavy integrals pick their own nodes and sample them on demand.
"""

import logging
import math
from dataclasses import dataclass

import numpy as np

from tomostar.config import QuadratureSpec
from tomostar.errors import DomainError, SingularLimitError
from tomostar.specfun import laguerre, on_nodes, richardson_limit
from tomostar.types import Deformation, PhasePoint, SymbolFn, hbar_of


logger = logging.getLogger(__name__)

__all__ = [
    "Deformation",
    "GaussianSymbol",
    "PhasePoint",
    "PlaneWaveSymbol",
    "WignerSymbol",
    "gaussian",
    "groenewold_kernel",
    "moyal_gaussian_closed_form",
    "moyal_gaussian_synthesis",
    "moyal_phase",
    "moyal_planewave_product",
    "moyal_star_numeric",
    "planewave",
    "product_symbol",
    "wigner",
    "wigner_fock",
]


# --------------------------
# Symbol families
# --------------------------
@dataclass(frozen=True)
class PlaneWaveSymbol:
    """f(q, p) = e^{i(aq + bp)}"""

    a: float
    b: float

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError(f"plane wave coefficients must be finite, got ({self.a}, {self.b})")

    def __call__(self, q, p):
        return np.exp(1j * (self.a * np.asarray(q) + self.b * np.asarray(p)))


@dataclass(frozen=True)
class GaussianSymbol:
    """f(q, p) = amplitude · e^{−((q−q₀)² + (p−p₀)²)/σ²}"""

    center: PhasePoint = PhasePoint(0.0, 0.0)
    width: float = 1.0
    amplitude: complex = 1.0

    def __post_init__(self):
        if not (self.width > 0 and math.isfinite(self.width)):
            raise DomainError(f"Gaussian width must be positive, got {self.width}")

    def __call__(self, q, p):
        q0, p0 = self.center
        r2 = (np.asarray(q) - q0) ** 2 + (np.asarray(p) - p0) ** 2
        return self.amplitude * np.exp(-r2 / self.width**2)


@dataclass(frozen=True)
class WignerSymbol:
    """Wigner function of the n-th oscillator eigenstate, see ``wigner_fock``."""

    n: int
    hbar: float

    def __post_init__(self):
        if self.hbar <= 0:
            raise DomainError(f"Wigner functions need hbar > 0, got {self.hbar}")

    def __call__(self, q, p):
        H = (np.asarray(q) ** 2 + np.asarray(p) ** 2) / 2
        sign = -1.0 if self.n % 2 else 1.0
        return sign / (math.pi * self.hbar) * np.exp(-2 * H / self.hbar) * laguerre(self.n, 4 * H / self.hbar)


def planewave(a: float, b: float) -> PlaneWaveSymbol:
    return PlaneWaveSymbol(float(a), float(b))


def gaussian(center=(0.0, 0.0), width: float = 1.0, amplitude: complex = 1.0) -> GaussianSymbol:
    return GaussianSymbol(PhasePoint(*map(float, center)), float(width), amplitude)


def wigner(n: int, h: Deformation | float) -> WignerSymbol:
    return WignerSymbol(int(n), hbar_of(h))


def product_symbol(f1: SymbolFn, f2: SymbolFn) -> SymbolFn:
    """Pointwise (commutative) product f₁·f₂."""

    def f(q, p):
        return f1(q, p) * f2(q, p)

    return f


def wigner_fock(n: int, h: Deformation | float, pt: PhasePoint) -> float:
    """Wigner function fₙ(q,p) = (−1)ⁿ/(π𝔥) e^{−2H/𝔥} Lₙ(4H/𝔥), H = (q² + p²)/2.

    Raises:
        DomainError: If 𝔥 <= 0 or n is outside the Laguerre range
    """
    ans = wigner(n, h)(pt[0], pt[1])
    return float(ans) if np.ndim(ans) == 0 else ans


# --------------------------
# Groenewold kernel and Moyal product
# --------------------------
def groenewold_kernel(p1: PhasePoint, p2: PhasePoint, p3: PhasePoint, h: Deformation | float) -> complex:
    """(1/(π²𝔥²)) exp((2i/𝔥)[(q₁p₂−q₂p₁) + (q₃p₁−q₁p₃) + (q₂p₃−q₃p₂)])

    Raises:
        SingularLimitError: At 𝔥 = 0, where the kernel is only a distribution
    """
    hbar = hbar_of(h)
    if hbar == 0:
        raise SingularLimitError("the Groenewold kernel has no pointwise value at hbar = 0")
    (q1, p1_), (q2, p2_), (q3, p3_) = p1, p2, p3
    area = (q1 * p2_ - q2 * p1_) + (q3 * p1_ - q1 * p3_) + (q2 * p3_ - q3 * p2_)
    return complex(np.exp(2j * area / hbar) / (math.pi**2 * hbar**2))


def moyal_phase(a1, b1, a2, b2, hbar: float):
    """Phase of e^{i(a₁q+b₁p)} ⋆ e^{i(a₂q+b₂p)} relative to the pointwise product."""
    return np.exp(-0.5j * hbar * (a1 * b2 - a2 * b1))


def moyal_planewave_product(
    w1: PlaneWaveSymbol, w2: PlaneWaveSymbol, h: Deformation | float
) -> tuple[PlaneWaveSymbol, complex]:
    """Exact Moyal product of two plane waves.

    Returns:
        The plane wave with summed coefficients and the unit phase
        exp(−(i𝔥/2)(a₁b₂ − a₂b₁)) multiplying it
    """
    hbar = hbar_of(h)
    result = PlaneWaveSymbol(w1.a + w2.a, w1.b + w2.b)
    return result, complex(moyal_phase(w1.a, w1.b, w2.a, w2.b, hbar))


def moyal_star_numeric(
    f1: SymbolFn,
    f2: SymbolFn,
    pt: PhasePoint,
    h: Deformation | float,
    spec: QuadratureSpec,
    tol: float = 1e-6,
) -> complex:
    """Numeric Moyal product (f₁⋆f₂)(pt) from the Groenewold integral.

    With w₁ = z+u, w₂ = z+v the integral reads
    (1/(π²𝔥²)) ∫ e^{(2i/𝔥)(u_q v_p − u_p v_q)} f₁(z+u) f₂(z+v) d²u d²v.
    The v-integral is a 2-D FFT of f₂ on a box of side ``spec.box`` with
    ``spec.node_count`` nodes per axis; the u-sum runs on the matching
    reciprocal grid. Non-decaying symbols need ``spec.damping > 0``: both
    factors then carry e^{−ε|·|²} and the ε-ladder removes it.

    Raises:
        SingularLimitError: At 𝔥 = 0
        AccuracyError: If the ε-extrapolation does not settle within ``tol``
    """
    hbar = hbar_of(h)
    if hbar == 0:
        raise SingularLimitError("the Moyal integral needs hbar != 0")
    zq, zp = float(pt[0]), float(pt[1])
    L = spec.box
    N = spec.node_count + spec.node_count % 2

    m = np.fft.fftfreq(N, d=1.0 / N)
    v = (np.arange(N) - N // 2) * (L / N)
    Vq, Vp = np.meshgrid(v, v, indexing="ij")
    Mq, Mp = np.meshgrid(m, m, indexing="ij")
    shift = np.where((Mq + Mp) % 2 == 0, 1.0, -1.0)
    Uq = hbar * math.pi * Mp / L
    Up = -hbar * math.pi * Mq / L
    f2_grid = on_nodes(f2(zq + Vq, zp + Vp), Vq.shape)
    f1_grid = on_nodes(f1(zq + Uq, zp + Up), Uq.shape)
    weight = (math.pi * abs(hbar) / L) ** 2 / (math.pi**2 * hbar**2)

    def evaluate(eps: float) -> complex:
        damped = f2_grid * np.exp(-eps * (Vq**2 + Vp**2)) if eps else f2_grid
        F2 = np.fft.ifft2(damped) * (N * N) * shift * (L / N) ** 2
        f1_damped = f1_grid * np.exp(-eps * (Uq**2 + Up**2)) if eps else f1_grid
        return complex(np.sum(f1_damped * F2) * weight)

    ans = richardson_limit(evaluate, spec.damping, tol)
    logger.debug(f"moyal product at ({zq}, {zp}), hbar={hbar}: {ans!r}")
    return complex(ans)


# --------------------------
# Gaussian oracles
# --------------------------
def _fourier_modes(g: GaussianSymbol, modes: int):
    # g(w) = Σ_k c(k) e^{ik·w} on a centred k-grid covering the Gaussian's spectrum
    K = 8.0 / g.width
    dk = 2 * K / modes
    k = (np.arange(modes) - (modes - 1) / 2) * dk
    a, b = (i.ravel() for i in np.meshgrid(k, k, indexing="ij"))
    q0, p0 = g.center
    c = (
        g.amplitude
        * g.width**2
        / (4 * math.pi)
        * np.exp(-(g.width**2) * (a**2 + b**2) / 4)
        * np.exp(-1j * (a * q0 + b * p0))
        * dk**2
    )
    return a, b, c


def moyal_gaussian_synthesis(
    g1: GaussianSymbol,
    g2: GaussianSymbol,
    pt: PhasePoint,
    h: Deformation | float,
    modes: int = 64,
    chunk: int = 256,
) -> complex:
    """(g₁⋆g₂)(pt) by expanding both Gaussians over ``modes``² plane waves
    and multiplying the modes with ``moyal_planewave_product``'s phase."""
    hbar = hbar_of(h)
    zq, zp = float(pt[0]), float(pt[1])
    a1, b1, c1 = _fourier_modes(g1, modes)
    a2, b2, c2 = _fourier_modes(g2, modes)
    c1 = c1 * np.exp(1j * (a1 * zq + b1 * zp))
    c2 = c2 * np.exp(1j * (a2 * zq + b2 * zp))
    total = 0j
    for start in range(0, a1.size, chunk):
        s = slice(start, start + chunk)
        phase = moyal_phase(a1[s, None], b1[s, None], a2[None, :], b2[None, :], hbar)
        total += np.sum(c1[s] * (phase @ c2))
    return complex(total)


def moyal_gaussian_closed_form(g1: GaussianSymbol, g2: GaussianSymbol, pt: PhasePoint, h: Deformation | float) -> complex:
    """Exact product of two Gaussians centred at the origin:
    A₁A₂/(1 + 𝔥²/(σ₁²σ₂²)) · exp(−|z|²(σ₁²+σ₂²)/(σ₁²σ₂² + 𝔥²)).
    """
    if any(g.center != (0.0, 0.0) for g in (g1, g2)):
        raise DomainError("closed form is only available for origin-centred Gaussians")
    hbar = hbar_of(h)
    s1, s2 = g1.width**2, g2.width**2
    r2 = float(pt[0]) ** 2 + float(pt[1]) ** 2
    amp = g1.amplitude * g2.amplitude / (1 + hbar**2 / (s1 * s2))
    return complex(amp * math.exp(-r2 * (s1 + s2) / (s1 * s2 + hbar**2)))

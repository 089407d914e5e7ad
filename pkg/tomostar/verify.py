"""
Verification suites: each claim of the tomographic star-product calculus as a
runnable set of cases with a declared tolerance.

A suite never aborts: a case that raises is recorded as failed and the suite
moves on. Random draws come from ``numpy.random.default_rng(seed)`` so reports
are reproducible.
"""

import logging
import math
import time
from typing import Callable

import numpy as np
from scipy import optimize, special

from tomostar.config import QuadratureSpec, RunConfig, make_spec, tolerances
from tomostar.errors import ConfigError, DomainError
from tomostar.kernels import (
    KernelArgs,
    TomoGaussian,
    classical_kernel,
    classical_route_mc,
    first_order_coefficient,
    hbar_derivative_fd,
    hbar_derivative_richardson,
    k3_phase_term,
    k_deformed_kernel,
    k_deformed_oracle,
    quadratic_kernel,
    quadratic_kernel_bound,
    quadratic_kernel_oracle,
    singular_kernel_h1,
    smeared_kernel_action,
)
from tomostar.phase_space import gaussian, planewave, product_symbol, wigner
from tomostar.report import SuiteReport, aggregate
from tomostar.specfun import damped_semiinfinite_integral, periodic_integral
from tomostar.tomo_transform import MeasureConvention, forward_symbol, quadratic_forward, quadratic_inverse, tomogram_fock
from tomostar.types import Deformation, TomoPoint, hbar_of


logger = logging.getLogger(__name__)

__all__ = [
    "SUITES",
    "aggregate",
    "run_suites",
    "suite_classical_limit",
    "suite_h1_limit",
    "suite_kernel_oracles",
    "suite_round_trip",
    "suite_tomogram_claims",
]

KERNEL_DRAWS = 100
K_DEFORMED_DRAWS = 50
ORACLE_NODES = 512
H1_SEQUENCE = (0.9, 0.95, 0.99, 0.995)
K_DEFORMED_BOUND = 1 / (2 * math.pi**5)
# oracle/closed ratios are only formed where |closed| exceeds this share of the bound
RATIO_FLOOR = 0.1


def _case(report: SuiteReport, name: str, inputs: str, run: Callable[[], None], experimental: bool = False):
    try:
        run()
    except Exception as e:
        logger.warning(f"[{report.suite_name}] {name} ({inputs}) raised {type(e).__name__}: {e}")
        report.fail(name, inputs, e, experimental)
        return
    case = report.cases[-1]
    logger.info(f"[{report.suite_name}] {name} ({inputs}): abs_err={case.abs_err:.3e} passed={case.passed}")


def _draw_point(rng: np.random.Generator) -> TomoPoint:
    return TomoPoint(rng.uniform(0, 5), rng.uniform(-3, 3), rng.uniform(-3, 3))


def _draw_triple(rng: np.random.Generator) -> tuple[TomoPoint, TomoPoint, TomoPoint]:
    return _draw_point(rng), _draw_point(rng), _draw_point(rng)


def _ratio_spread(ratios: list[complex]) -> tuple[complex, float]:
    """Median oracle/closed ratio and the worst |ratio/median − 1| around it."""
    if not ratios:
        raise DomainError("no draw cleared the ratio floor")
    ratios = np.asarray(ratios, dtype=complex)
    median = complex(np.median(ratios.real), np.median(ratios.imag))
    return median, float(np.max(np.abs(ratios / median - 1)))


# --------------------------
# Tomogram claims
# --------------------------
def suite_tomogram_claims(
    h: Deformation | float,
    conv: MeasureConvention,
    spec: QuadratureSpec | None = None,
    seed: int = 0,
) -> SuiteReport:
    """Central-circle tomogram of the first excited state: closed form,
    negativity on [0, 𝔥/2), zero crossing, normalization, reality and the
    ratio between the two measure conventions."""
    hbar = hbar_of(h)
    if hbar <= 0:
        raise DomainError(f"tomogram claims need hbar > 0, got {hbar}")
    conv = MeasureConvention(conv)
    spec = spec or make_spec(seed=seed)
    tol = tolerances("tomogram")
    report = SuiteReport(suite_name="tomogram", seed=seed)
    start = time.perf_counter()
    f1 = wigner(1, hbar)

    def omega1(X):
        return quadratic_forward(f1, TomoPoint(X, 0.0, 0.0), conv, spec)

    for X in np.linspace(0.0, 5 * hbar, 20):
        def run(X=float(X)):
            expected = tomogram_fock(1, hbar, X, conv)
            got = omega1(X)
            err = abs(got - expected)
            rel = err / abs(expected)
            report.add("omega1_closed_form", f"hbar={hbar:g},X={X:.6g},{conv}", expected, got, err, tol["omega1_rel"], rel_err=rel, passed=rel <= tol["omega1_rel"])

        _case(report, "omega1_closed_form", f"X={X:.6g}", run)

    for frac, negative in ((0.1, True), (0.4, True), (0.6, False), (1.0, False)):
        def run(frac=frac, negative=negative):
            got = omega1(frac * hbar).real
            ok = got < 0 if negative else got > 0
            report.add("negativity", f"X={frac}*hbar", "<0" if negative else ">0", got, 0.0 if ok else abs(got), 0.0, rel_err=0.0 if ok else 1.0, passed=ok)

        _case(report, "negativity", f"X={frac}*hbar", run)

    def run_crossing():
        root = optimize.brentq(lambda X: omega1(X).real, 0.1 * hbar, 0.9 * hbar, xtol=1e-14, rtol=4 * np.finfo(float).eps)
        report.add("zero_crossing", f"hbar={hbar:g}", hbar / 2, root, abs(root - hbar / 2), tol["zero_crossing_abs"])

    _case(report, "zero_crossing", f"hbar={hbar:g}", run_crossing)

    # integrates to 1 under the polar Jacobian and to 1/π under the 1/(2π) measure
    norm_spec = spec.replace(damping=0.0, upper_cutoff=40.0 * hbar)
    for n in (0, 1, 2):
        for centre in ((0.0, 0.0), (1.0, -0.5)):
            def run(n=n, centre=centre):
                fn = wigner(n, hbar)
                total = damped_semiinfinite_integral(lambda X: quadratic_forward(fn, TomoPoint(X, *centre), conv, spec), norm_spec)
                expected = conv.point_factor / math.pi
                report.add("normalization", f"n={n},centre={centre},{conv}", expected, total, abs(total - expected), tol["normalization_abs"])

            _case(report, "normalization", f"n={n},centre={centre}", run)

    rng = np.random.default_rng(seed)
    real_symbols = {"f0": wigner(0, hbar), "f1": f1, "f2": wigner(2, hbar), "gauss(1,1)": gaussian((1.0, 1.0), 1.0, 1 / math.pi)}
    for label, f in real_symbols.items():
        def run(label=label, f=f):
            worst = 0.0
            for _ in range(10):
                x = TomoPoint(rng.uniform(0, 4 * hbar), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
                worst = max(worst, abs(quadratic_forward(f, x, conv, spec).imag))
            report.add("reality", label, 0.0, worst, worst, tol["reality_abs"])

        _case(report, "reality", label, run)

    def run_ratio():
        worst = 0.0
        for _ in range(20):
            x = TomoPoint(rng.uniform(0, 4 * hbar), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5))
            standard = quadratic_forward(f1, x, MeasureConvention.STANDARD, spec)
            paper = quadratic_forward(f1, x, MeasureConvention.PAPER, spec)
            worst = max(worst, abs(paper - standard / math.pi) / abs(standard / math.pi))
        report.add("convention_ratio", "paper/standard", 1 / math.pi, 1 / math.pi, worst, tol["convention_ratio_rel"], rel_err=worst)

    _case(report, "convention_ratio", "paper/standard", run_ratio)

    report.elapsed = time.perf_counter() - start
    return report


# --------------------------
# Round trip
# --------------------------
ROUND_TRIP_FORWARD_NODES = 128
ROUND_TRIP_INVERSE_NODES = 64
ROUND_TRIP_CUTOFF = 30.0
# oscillator points in units of √𝔥
OSCILLATOR_POINTS = ((0.3, -0.2), (0.0, 0.0), (-0.4, 0.1), (0.2, 0.6), (1.0, 0.3))
GAUSSIAN_POINTS = ((1.0, 1.0), (0.5, 1.2), (1.4, 0.8), (1.0, 0.4), (0.6, 0.7))


def suite_round_trip(
    h: Deformation | float,
    conv: MeasureConvention,
    spec: QuadratureSpec | None = None,
    seed: int = 0,
) -> SuiteReport:
    """quadratic_inverse∘quadratic_forward against the symbol itself, for the
    two lowest oscillator states and a Gaussian centred at (1, 1)."""
    hbar = hbar_of(h)
    if hbar <= 0:
        raise DomainError(f"round trip needs hbar > 0, got {hbar}")
    conv = MeasureConvention(conv)
    spec = spec or make_spec(seed=seed)
    forward_spec = spec.replace(node_count=min(spec.node_count, ROUND_TRIP_FORWARD_NODES))
    inverse_spec = spec.replace(
        node_count=min(spec.node_count, ROUND_TRIP_INVERSE_NODES),
        damping=0.0,
        upper_cutoff=ROUND_TRIP_CUTOFF,
        radial_nodes=8,
    )
    tol = tolerances("roundtrip")
    report = SuiteReport(suite_name="roundtrip", seed=seed)
    start = time.perf_counter()
    scale = math.sqrt(hbar)
    states = {
        "f0": (wigner(0, hbar), [(scale * q, scale * p) for q, p in OSCILLATOR_POINTS]),
        "f1": (wigner(1, hbar), [(scale * q, scale * p) for q, p in OSCILLATOR_POINTS]),
        "gauss(1,1)": (gaussian((1.0, 1.0), 1.0, 1 / math.pi), list(GAUSSIAN_POINTS)),
    }
    for label, (f, points) in states.items():
        def run(label=label, f=f, points=points):
            w = forward_symbol(f, conv, forward_spec)
            worst = 0.0
            for pt in points:
                got = quadratic_inverse(w, pt, conv, inverse_spec)
                expected = complex(f(*pt))
                worst = max(worst, abs(got - expected) / abs(expected))
            report.add("round_trip", f"{label},hbar={hbar:g},{conv}", 0.0, worst, worst, tol["round_trip_rel"], rel_err=worst)

        _case(report, "round_trip", label, run)

    report.elapsed = time.perf_counter() - start
    return report


# --------------------------
# Kernel oracles
# --------------------------
def suite_kernel_oracles(spec: QuadratureSpec | None = None, seed: int = 0) -> SuiteReport:
    """Closed-form kernels against their quadrature oracles, plus the swap
    symmetries and finite-difference checks of the 𝔥 expansion."""
    spec = spec or make_spec(seed=seed)
    oracle_spec = spec.replace(node_count=max(spec.node_count, ORACLE_NODES))
    tol = tolerances("kernels")
    report = SuiteReport(suite_name="kernels", seed=seed)
    start = time.perf_counter()
    rng = np.random.default_rng(seed)

    for conv in MeasureConvention:
        for h in (0.0, 0.3, 0.7):
            def run(conv=conv, h=h):
                bound = quadratic_kernel_bound(h)
                corrected, raw = [], []
                for _ in range(KERNEL_DRAWS):
                    args = KernelArgs(*_draw_triple(rng), h)
                    closed = quadratic_kernel(args)
                    if abs(closed) <= RATIO_FLOOR * bound:
                        continue
                    oracle = quadratic_kernel_oracle(args, conv, oracle_spec)
                    corrected.append(oracle / (closed * k3_phase_term(args)))
                    raw.append(oracle / closed)
                constant, spread = _ratio_spread(corrected)
                report.recorded[f"quadratic_oracle_constant[{conv},h={h}]"] = f"{constant.real:.12g}{constant.imag:+.12g}j"
                report.add("quadratic_oracle_spread", f"{conv},h={h}", conv.point_factor, constant, spread, tol["oracle_spread"])
                # the printed closed form omits the 2𝔥(μ₁ν₂−μ₂ν₁) phase; reported, not gated
                raw_constant, raw_spread = _ratio_spread(raw)
                report.add(
                    "quadratic_oracle_raw", f"{conv},h={h}", conv.point_factor, raw_constant, raw_spread,
                    tol["oracle_spread"], experimental=True,
                )

            _case(report, "quadratic_oracle_spread", f"{conv},h={h}", run)

    def run_degenerate():
        worst = 0.0
        for conv in MeasureConvention:
            for h in (0.0, 0.3, 0.7):
                x1, x2, x3 = _draw_triple(rng)
                args = KernelArgs(x1, x2, TomoPoint(0.0, x3.mu, x3.nu), h)
                expected = conv.point_factor * quadratic_kernel(args) * k3_phase_term(args)
                got = quadratic_kernel_oracle(args, conv, oracle_spec)
                worst = max(worst, abs(got - expected) / quadratic_kernel_bound(h))
        report.add("quadratic_oracle_point", "X3=0", 0.0, worst, worst, 1e-12)

    _case(report, "quadratic_oracle_point", "X3=0", run_degenerate)

    def run_oracle_swap():
        worst = 0.0
        for _ in range(20):
            args = KernelArgs(*_draw_triple(rng), 0.0)
            a = quadratic_kernel_oracle(args, MeasureConvention.STANDARD, oracle_spec)
            b = quadratic_kernel_oracle(args.swapped(), MeasureConvention.STANDARD, oracle_spec)
            worst = max(worst, abs(a - b) / quadratic_kernel_bound(0.0))
        report.add("oracle_swap_h0", "20 draws", 0.0, worst, worst, 1e-12)

    _case(report, "oracle_swap_h0", "20 draws", run_oracle_swap)

    def run_swap_symmetry():
        worst = 0.0
        for h in (0.2, -0.2, 0.6, -0.6):
            for _ in range(KERNEL_DRAWS):
                args = KernelArgs(*_draw_triple(rng), h)
                a = quadratic_kernel(args.swapped())
                b = quadratic_kernel(args.with_hbar(-h))
                worst = max(worst, abs(a - b) / max(abs(b), np.finfo(float).tiny))
        report.add("swap_symmetry", "K(x2,x1;h)=K(x1,x2;-h)", 0.0, worst, worst, tol["swap_symmetry_rel"], rel_err=worst)

    _case(report, "swap_symmetry", "K(x2,x1;h)=K(x1,x2;-h)", run_swap_symmetry)

    def run_classical():
        same = swap = 0.0
        for _ in range(50):
            x1, x2, x3 = _draw_triple(rng)
            k0 = classical_kernel(x1, x2, x3)
            same = max(same, abs(k0 - quadratic_kernel(KernelArgs(x1, x2, x3, 0.0))))
            swap = max(swap, abs(k0 - classical_kernel(x2, x1, x3)))
        report.add("classical_is_h0", "50 draws", 0.0, same, same, tol["classical_swap_abs"])
        report.add("classical_swap", "50 draws", 0.0, swap, swap, tol["classical_swap_abs"])

    _case(report, "classical", "50 draws", run_classical)

    def run_first_order():
        worst = 0.0
        for _ in range(30):
            x1, x2, x3 = _draw_triple(rng)
            worst = max(worst, abs(first_order_coefficient(x1, x2, x3) + first_order_coefficient(x2, x1, x3)))
        report.add("first_order_antisymmetry", "30 draws", 0.0, worst, worst, tol["first_order_antisymmetry_abs"])

    _case(report, "first_order_antisymmetry", "30 draws", run_first_order)

    def run_modulus():
        worst = 0.0
        for h in (0.0, 0.3, 0.7, -0.5):
            for _ in range(KERNEL_DRAWS):
                args = KernelArgs(*_draw_triple(rng), h)
                worst = max(worst, abs(quadratic_kernel(args)) / quadratic_kernel_bound(h))
        excess = max(0.0, worst - 1.0)
        report.add("modulus_bound", "|K|(1-h^2)pi^4 <= 1", 1.0, worst, excess, tol["modulus_slack"])

    _case(report, "modulus_bound", "|K|(1-h^2)pi^4 <= 1", run_modulus)

    def run_fd_antisymmetry():
        worst = diag = 0.0
        for _ in range(KERNEL_DRAWS):
            x1, x2, x3 = _draw_triple(rng)
            worst = max(worst, abs(hbar_derivative_fd(x1, x2, x3) + hbar_derivative_fd(x2, x1, x3)))
            diag = max(diag, abs(hbar_derivative_fd(x1, x1, x3)))
        report.add("fd_antisymmetry", "step=1e-4", 0.0, worst, worst, tol["fd_antisymmetry_abs"])
        report.add("fd_equal_arguments", "x1=x2", 0.0, diag, diag, 1e-10)

    _case(report, "fd_antisymmetry", "step=1e-4", run_fd_antisymmetry)

    def run_fd_slice():
        worst = 0.0
        done = 0
        while done < 30:
            x1, x2, x3 = _draw_triple(rng)
            if abs(x1.mu - x2.mu) < 0.1:
                continue
            nu3 = ((x1.mu + x2.mu - 2 * x3.mu) * (x2.nu - x1.nu) + (x1.nu + x2.nu) * (x1.mu - x2.mu)) / (2 * (x1.mu - x2.mu))
            if abs(nu3) > 3:
                continue
            x3 = TomoPoint(x3.X, x3.mu, nu3)
            worst = max(worst, abs(hbar_derivative_richardson(x1, x2, x3) - first_order_coefficient(x1, x2, x3)))
            done += 1
        report.add("fd_matches_first_order", "vanishing J0 slope", 0.0, worst, worst, tol["fd_slice_abs"])

    _case(report, "fd_matches_first_order", "vanishing J0 slope", run_fd_slice)

    for conv in MeasureConvention:
        def run(conv=conv):
            ratios = []
            for _ in range(K_DEFORMED_DRAWS):
                x1, x2, x3 = _draw_triple(rng)
                closed = k_deformed_kernel(x1, x2, x3)
                if abs(closed) <= RATIO_FLOOR * K_DEFORMED_BOUND:
                    continue
                ratios.append(k_deformed_oracle(x1, x2, x3, oracle_spec, conv) / closed)
            constant, spread = _ratio_spread(ratios)
            report.recorded[f"k_deformed_oracle_constant[{conv}]"] = f"{constant.real:.12g}"
            expected = 1.0 if conv is MeasureConvention.STANDARD else 1 / math.pi
            report.add("k_deformed_oracle_spread", str(conv), expected, constant, spread, tol["oracle_spread"])

        _case(report, "k_deformed_oracle_spread", str(conv), run)

    def run_k_point():
        x1, x2, x3 = _draw_triple(rng)
        x3 = TomoPoint(0.0, x3.mu, x3.nu)
        expected = k_deformed_kernel(x1, x2, x3)
        got = k_deformed_oracle(x1, x2, x3, oracle_spec)
        report.add("k_deformed_point", "X3=0", expected, got, abs(got - expected) / K_DEFORMED_BOUND, 1e-12)

    _case(report, "k_deformed_point", "X3=0", run_k_point)

    def run_k_asymmetry():
        x1 = TomoPoint(0.0, 1.0, 0.0)
        x2 = TomoPoint(0.0, 0.0, 1.0)
        x3 = TomoPoint(0.0, 0.0, 0.0)
        closed = abs(k_deformed_kernel(x1, x2, x3) - k_deformed_kernel(x2, x1, x3))
        oracle = abs(k_deformed_oracle(x1, x2, x3, oracle_spec) - k_deformed_oracle(x2, x1, x3, oracle_spec))
        gap = min(closed, oracle) / K_DEFORMED_BOUND
        report.add("k_deformed_asymmetry", "(1,0),(0,1)", ">0", gap, 0.0, 0.0, rel_err=0.0, passed=bool(gap > 1e-3))

    _case(report, "k_deformed_asymmetry", "(1,0),(0,1)", run_k_asymmetry)

    report.elapsed = time.perf_counter() - start
    return report


# --------------------------
# Classical limit
# --------------------------
def _circle_gaussian_product(g1, g2, x: TomoPoint) -> complex:
    # product of Gaussians is a Gaussian; its standard circle average is
    # πA e^{−(ρ²+X)/s} I₀(2√Xρ/s)
    s1, s2 = g1.width**2, g2.width**2
    s = s1 * s2 / (s1 + s2)
    a, b = np.asarray(g1.center), np.asarray(g2.center)
    c = (a / s1 + b / s2) * s
    amp = g1.amplitude * g2.amplitude * math.exp(-float(np.sum((a - b) ** 2)) / (s1 + s2))
    rho = math.hypot(x.mu - c[0], x.nu - c[1])
    z = 2 * math.sqrt(x.X) * rho / s
    return complex(math.pi * amp * math.exp(-((math.sqrt(x.X) - rho) ** 2) / s) * special.i0e(z))


def _circle_planewave_product(w1, w2, x: TomoPoint) -> complex:
    a, b = w1.a + w2.a, w1.b + w2.b
    return complex(math.pi * np.exp(1j * (a * x.mu + b * x.nu)) * special.j0(math.hypot(a, b) * math.sqrt(x.X)))


def suite_classical_limit(spec: QuadratureSpec | None = None, seed: int = 0, experimental: bool = False) -> SuiteReport:
    """At 𝔥 = 0 the product of tomographic symbols is the circle average of
    the pointwise product. With ``experimental`` the kernel itself is
    integrated for one plane-wave pair by Monte Carlo."""
    spec = spec or make_spec(seed=seed)
    tol = tolerances("classical")
    report = SuiteReport(suite_name="classical", seed=seed)
    start = time.perf_counter()
    rng = np.random.default_rng(seed)
    standard = MeasureConvention.STANDARD

    f0 = wigner(0, 1.0)
    g_a = gaussian((0.5, 0.0), 1.0, 1.0)
    g_b = gaussian((-0.3, 0.4), 0.8, 1.0)
    pw1, pw2 = planewave(1, 0), planewave(0, 1)
    pairs = {
        "f0*f0": (f0, f0, lambda x: _circle_gaussian_product(gaussian((0, 0), 1.0, 1 / math.pi), gaussian((0, 0), 1.0, 1 / math.pi), x)),
        "planewaves(1,0)(0,1)": (pw1, pw2, lambda x: _circle_planewave_product(pw1, pw2, x)),
        "gaussians": (g_a, g_b, lambda x: _circle_gaussian_product(g_a, g_b, x)),
    }
    points = [TomoPoint(1.0, 0.0, 0.0)] + [
        TomoPoint(rng.uniform(0, 3), rng.uniform(-1.5, 1.5), rng.uniform(-1.5, 1.5)) for _ in range(9)
    ]
    for label, (f1, f2, analytic) in pairs.items():
        def run(label=label, f1=f1, f2=f2, analytic=analytic):
            worst = 0.0
            for x in points:
                r = math.sqrt(x.X)
                # ∫ f₁ f₂ δ(u² + v² − X₃) du dv in polar form
                circle = 0.5 * periodic_integral(
                    lambda phi: f1(x.mu + r * np.cos(phi), x.nu + r * np.sin(phi)) * f2(x.mu + r * np.cos(phi), x.nu + r * np.sin(phi)),
                    spec,
                )
                tomogram = quadratic_forward(product_symbol(f1, f2), x, standard, spec)
                exact = analytic(x)
                scale = max(abs(exact), np.finfo(float).tiny)
                worst = max(worst, abs(circle - exact) / scale, abs(tomogram - exact) / scale)
            report.add("circle_identity", label, 0.0, worst, worst, tol["circle_identity_rel"], rel_err=worst)

        _case(report, "circle_identity", label, run)

    def run_unit():
        one = planewave(0, 0)
        worst = 0.0
        for x in points:
            a = quadratic_forward(product_symbol(f0, one), x, standard, spec)
            b = quadratic_forward(f0, x, standard, spec)
            worst = max(worst, abs(a - b) / abs(b))
        report.add("unit_element", "f2=1", 0.0, worst, worst, tol["circle_identity_rel"], rel_err=worst)

    _case(report, "unit_element", "f2=1", run_unit)

    if experimental:
        def run_route():
            x3 = TomoPoint(0.5, 0.2, -0.1)
            mc_spec = spec.replace(sample_count=max(spec.sample_count, 4_000_000))
            estimate, std_error = classical_route_mc((1.0, 0.0), (0.0, 1.0), x3, mc_spec)
            expected = _circle_planewave_product(pw1, pw2, x3) / math.pi
            err = abs(estimate - expected)
            report.recorded["kernel_route_std_error"] = f"{std_error:.6g}"
            report.recorded["kernel_route_constant[standard]"] = f"{1 / math.pi:.12g}"
            tolerance = tol["kernel_route_rel"] * abs(expected)
            passed = err <= tolerance and std_error <= tolerance / 2
            report.add("kernel_route_mc", "k1=(1,0),k2=(0,1)", expected, estimate, err, tolerance, passed=passed, experimental=True)

        _case(report, "kernel_route_mc", "k1=(1,0),k2=(0,1)", run_route, experimental=True)

    report.elapsed = time.perf_counter() - start
    return report


# --------------------------
# 𝔥 → 1
# --------------------------
H1_X = TomoPoint(0.5, 0.3, -0.2)
H1_WIDTH = 1.0


def h1_test_functions() -> tuple[TomoGaussian, TomoGaussian]:
    """Gaussians on and off the delta manifold of the 𝔥 = 1 kernel at x₁ = x₂ = H1_X."""
    w0 = (H1_X.mu, H1_X.nu)  # stationary centre m/2 for equal arguments
    c0 = (w0[0] + 0.7, w0[1])
    on = TomoGaussian(TomoPoint(0.49, *c0), H1_WIDTH)
    off = TomoGaussian(TomoPoint(0.49 - 5 * H1_WIDTH, *c0), H1_WIDTH)
    return on, off


def suite_h1_limit(spec: QuadratureSpec | None = None, seed: int = 0) -> SuiteReport:
    """Smeared actions of the regular kernel as 𝔥 → 1 against the singular kernel."""
    spec = spec or make_spec(seed=seed)
    smear_spec = spec.replace(node_count=min(spec.node_count, 64))
    tol = tolerances("h1")
    report = SuiteReport(suite_name="h1", seed=seed)
    start = time.perf_counter()
    on, off = h1_test_functions()
    singular: dict[str, complex] = {}

    def run_singular():
        singular["on"] = smeared_kernel_action("h1-singular", H1_X, H1_X, on, smear_spec)
        report.add("singular_action_nonzero", "on manifold", ">0", singular["on"], 0.0, 0.0, rel_err=0.0, passed=abs(singular["on"]) > 0)

    _case(report, "singular_action_nonzero", "on manifold", run_singular)

    def run_off():
        if "on" not in singular:
            raise DomainError("no singular action to compare against")
        value = smeared_kernel_action("h1-singular", H1_X, H1_X, off, smear_spec)
        ratio = abs(value) / abs(singular["on"])
        report.add("singular_off_manifold", "X0-5sigma", 0.0, value, ratio, tol["off_manifold_ratio"], rel_err=ratio)

    _case(report, "singular_off_manifold", "X0-5sigma", run_off)

    def run_sequence():
        if "on" not in singular:
            raise DomainError("no singular action to compare against")
        ratios = []
        for h in H1_SEQUENCE:
            action = smeared_kernel_action("quantum", H1_X, H1_X, on, smear_spec, h=h)
            ratios.append(action / singular["on"])
            logger.info(f"[h1] hbar={h}: action={action!r}, ratio={ratios[-1]!r}")
        eps = [1 - h * h for h in H1_SEQUENCE]
        # linear in ε through the last two terms
        limit = (eps[-2] * ratios[-1] - eps[-1] * ratios[-2]) / (eps[-2] - eps[-1])
        error_bar = abs(ratios[-1] - ratios[-2])
        distances = [abs(r - limit) for r in ratios]
        monotone = all(a > b for a, b in zip(distances, distances[1:]))
        last = error_bar / abs(ratios[-1])
        for h, r in zip(H1_SEQUENCE, ratios):
            report.recorded[f"ratio[h={h}]"] = f"{r.real:.12g}{r.imag:+.12g}j"
        report.recorded["limit"] = f"{limit.real:.12g}{limit.imag:+.12g}j"
        report.recorded["limit_error_bar"] = f"{error_bar:.6g}"
        report.add("monotone_convergence", "hbar in " + ",".join(map(str, H1_SEQUENCE)), limit, ratios[-1], 0.0 if monotone else 1.0, 0.0, rel_err=0.0, passed=monotone)
        report.add("last_two_ratios", "hbar=0.99,0.995", ratios[-2], ratios[-1], last, tol["last_ratio_rel"], rel_err=last)

    _case(report, "h1_sequence", "regular to singular", run_sequence)

    def run_equal_arguments():
        x3 = TomoPoint(0.7, 0.1, 0.4)
        got = singular_kernel_h1(H1_X, H1_X, x3).delta_argument
        expected = 4 * x3.X - 4 * (H1_X.mu - x3.mu) ** 2 - 4 * (H1_X.nu - x3.nu) ** 2
        report.add("delta_equal_arguments", "x1=x2", expected, got, abs(got - expected), 1e-12)

    _case(report, "delta_equal_arguments", "x1=x2", run_equal_arguments)

    report.elapsed = time.perf_counter() - start
    return report


# --------------------------
# Runner
# --------------------------
SUITES = ("tomogram", "roundtrip", "kernels", "classical", "h1")


def run_suites(names: list[str] | tuple[str, ...], cfg: RunConfig) -> list[SuiteReport]:
    """Run the named suites in the fixed order of ``SUITES``.

    Raises:
        ConfigError: On an unknown suite name
    """
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ConfigError(f"unknown suite(s) {unknown}, expected a subset of {SUITES}")
    spec = cfg.quadrature()
    runners = {
        "tomogram": lambda: suite_tomogram_claims(cfg.hbar, MeasureConvention(cfg.convention), spec, cfg.seed),
        "roundtrip": lambda: suite_round_trip(cfg.hbar, MeasureConvention(cfg.convention), spec, cfg.seed),
        "kernels": lambda: suite_kernel_oracles(spec, cfg.seed),
        "classical": lambda: suite_classical_limit(spec, cfg.seed, cfg.experimental),
        "h1": lambda: suite_h1_limit(spec, cfg.seed),
    }
    reports = []
    for name in SUITES:
        if name in names:
            report = runners[name]()
            logger.info(f"suite {name}: passed={report.passed}, max_rel_err={report.max_rel_err:.3e}, {report.elapsed:.2f}s")
            reports.append(report)
    return reports

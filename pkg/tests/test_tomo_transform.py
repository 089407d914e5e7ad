import cmath
import math

import numpy as np
import pytest
from scipy import special

from tomostar.config import make_spec
from tomostar.errors import ChartError, DegenerateLineError, DomainError
from tomostar.phase_space import gaussian, planewave, wigner
from tomostar.specfun import damped_semiinfinite_integral
from tomostar.tomo_transform import (
    MeasureConvention,
    forward_symbol,
    forward_values,
    quadratic_forward,
    quadratic_inverse,
    quadratic_transition,
    symplectic_forward,
    symplectic_kernel,
    symplectic_transition,
    tomogram_fock,
)
from tomostar.types import TomoPoint

STANDARD = MeasureConvention.STANDARD
PAPER = MeasureConvention.PAPER


# --------------------------
# Forward transform
# --------------------------
@pytest.mark.parametrize("h", [0.5, 1.0])
@pytest.mark.parametrize("X", [0.0, 0.2, 0.5 * 0.5, 1.3, 4.0])
def test_first_excited_tomogram(spec, h, X):
    got = quadratic_forward(wigner(1, h), TomoPoint(X, 0.0, 0.0), PAPER, spec)
    expected = -(1 / (math.pi * h)) * math.exp(-X / h) * (1 - 2 * X / h)
    assert abs(got - expected) <= 1e-10 * max(abs(expected), 1e-3)


def test_ground_state_standard(spec):
    for X in (0.0, 0.5, 2.0, 7.0):
        assert quadratic_forward(wigner(0, 1.0), TomoPoint(X, 0.0, 0.0), STANDARD, spec) == pytest.approx(math.exp(-X))


def test_planewave_tomogram(spec):
    a, b, X, mu, nu = 1.3, -0.4, 2.1, 0.2, 0.5
    got = quadratic_forward(planewave(a, b), TomoPoint(X, mu, nu), STANDARD, spec)
    expected = math.pi * cmath.exp(1j * (a * mu + b * nu)) * special.j0(math.sqrt(X * (a * a + b * b)))
    assert abs(got - expected) < 1e-12


def test_degenerate_circle_is_a_point(spec):
    f = gaussian((0.3, 0.1), 0.7)
    assert quadratic_forward(f, TomoPoint(0.0, 0.2, -0.2), STANDARD, spec) == pytest.approx(math.pi * f(0.2, -0.2))
    assert quadratic_forward(f, TomoPoint(0.0, 0.2, -0.2), PAPER, spec) == pytest.approx(f(0.2, -0.2))


def test_negative_radius(spec):
    with pytest.raises(DomainError):
        quadratic_forward(wigner(0, 1.0), TomoPoint(-0.1, 0.0, 0.0), STANDARD, spec)
    with pytest.raises(DomainError):
        forward_values(wigner(0, 1.0), [-0.1, 1.0], 0.0, 0.0, STANDARD, spec)


def test_convention_ratio(spec):
    f = gaussian((0.4, -0.2), 1.1)
    for X in (0.3, 1.0, 2.5):
        x = TomoPoint(X, 0.1, 0.2)
        ratio = quadratic_forward(f, x, STANDARD, spec) / quadratic_forward(f, x, PAPER, spec)
        assert ratio == pytest.approx(math.pi, rel=1e-14)


@pytest.mark.parametrize("n", [0, 1, 2])
@pytest.mark.parametrize("h", [0.5, 1.0])
@pytest.mark.parametrize("centre", [(0.0, 0.0), (1.0, -0.5)])
def test_standard_tomogram_integrates_to_one(spec, n, h, centre):
    f = wigner(n, h)
    x_spec = spec.replace(upper_cutoff=60.0)
    total = damped_semiinfinite_integral(lambda X: quadratic_forward(f, TomoPoint(X, *centre), STANDARD, spec), x_spec)
    assert total == pytest.approx(1.0, abs=1e-6)


@pytest.mark.parametrize("h", [0.5, 1.0])
def test_first_excited_crosses_zero(spec, h):
    f = wigner(1, h)
    assert quadratic_forward(f, TomoPoint(0.1 * h, 0, 0), PAPER, spec).real < 0
    assert quadratic_forward(f, TomoPoint(h, 0, 0), PAPER, spec).real > 0
    assert abs(quadratic_forward(f, TomoPoint(h / 2, 0, 0), PAPER, spec)) < 1e-12


def test_real_symbols_have_real_tomograms(spec):
    rng = np.random.default_rng(3)
    f = wigner(2, 0.8)
    for X, mu, nu in zip(rng.uniform(0, 5, 20), rng.uniform(-3, 3, 20), rng.uniform(-3, 3, 20)):
        assert abs(quadratic_forward(f, TomoPoint(X, mu, nu), STANDARD, spec).imag) < 1e-14


@pytest.mark.parametrize("n", range(5))
@pytest.mark.parametrize("conv", [STANDARD, PAPER])
def test_fock_closed_form(spec, n, conv):
    X = np.linspace(0, 4, 9)
    numeric = forward_values(wigner(n, 0.8), X, 0.0, 0.0, conv, spec)
    assert np.allclose(numeric, tomogram_fock(n, 0.8, X, conv), atol=1e-12)


def test_forward_values_match_scalar(spec):
    f = gaussian((0.2, 0.3), 0.9)
    X = np.array([0.0, 0.4, 1.7])
    mu = np.array([0.1, -0.5, 0.9])
    got = forward_values(f, X, mu, 0.25, STANDARD, spec)
    for i in range(3):
        assert got[i] == pytest.approx(quadratic_forward(f, TomoPoint(X[i], mu[i], 0.25), STANDARD, spec), abs=1e-15)


def test_constant_symbol(spec):
    def one(q, p):
        return 1.0

    assert quadratic_forward(one, TomoPoint(1.0, 0.0, 0.0), STANDARD, spec) == pytest.approx(math.pi, rel=1e-14)
    assert quadratic_forward(one, TomoPoint(2.5, 0.4, -1.0), PAPER, spec) == pytest.approx(1.0, rel=1e-14)
    got = forward_values(one, [0.0, 0.5, 2.0], 0.3, -0.1, STANDARD, spec)
    assert got.shape == (3,)
    assert np.allclose(got, math.pi, rtol=1e-14, atol=0)


# --------------------------
# Inverse transform
# --------------------------
def test_transition_in_polar_form():
    # with c = z + √t e_θ the transition is (1/π) e^{i(X − t)}
    q, p, t, th, X = 0.3, -0.2, 1.7, 0.9, 2.2
    x = TomoPoint(X, q + math.sqrt(t) * math.cos(th), p + math.sqrt(t) * math.sin(th))
    assert quadratic_transition(q, p, x) == pytest.approx(cmath.exp(1j * (X - t)) / math.pi)


def test_inverse_of_zero():
    spec = make_spec(node_count=16, upper_cutoff=10.0, radial_nodes=4)
    got = quadratic_inverse(lambda X, mu, nu: np.zeros(np.broadcast_shapes(np.shape(X), np.shape(mu))), (0.3, 0.1), STANDARD, spec)
    assert got == 0


def test_inverse_spreads_thin_and_scalar_symbols():
    spec = make_spec(node_count=16, upper_cutoff=10.0, radial_nodes=4)

    def full(X, mu, nu):
        return np.exp(-X) * np.ones_like(mu) * np.ones_like(nu)

    # depends on X only: shape (1, n_X) against the (n_θ, n_X) node grid
    thin = quadratic_inverse(lambda X, mu, nu: np.exp(-X), (0.3, 0.1), PAPER, spec)
    assert thin == pytest.approx(quadratic_inverse(full, (0.3, 0.1), PAPER, spec), rel=1e-14)
    scalar = quadratic_inverse(lambda X, mu, nu: 0.5, (0.3, 0.1), PAPER, spec)
    assert scalar == pytest.approx(quadratic_inverse(lambda X, mu, nu: 0.5 * np.ones_like(X * mu), (0.3, 0.1), PAPER, spec), rel=1e-14)


def inverse_spec():
    return make_spec(node_count=64, damping=0.0, upper_cutoff=30.0, radial_nodes=8)


@pytest.mark.slow
@pytest.mark.parametrize(
    "f,points",
    [
        (wigner(0, 1.0), [(0.3, -0.2), (0.0, 0.0), (0.5, 0.5), (-0.4, 0.1), (1.0, 0.3)]),
        (wigner(1, 1.0), [(0.3, -0.2), (0.0, 0.0), (-0.4, 0.1), (0.2, 0.6), (1.0, 0.3)]),
        (gaussian((1.0, 1.0), 1.0, 1 / math.pi), [(1.0, 1.0), (0.5, 1.2), (1.4, 0.8)]),
    ],
)
@pytest.mark.parametrize("conv", [STANDARD, PAPER])
def test_inverse_recovers_decaying_symbols(f, points, conv):
    w = forward_symbol(f, conv, make_spec(node_count=128))
    for pt in points:
        got = quadratic_inverse(w, pt, conv, inverse_spec())
        expected = f(*pt)
        assert abs(got - expected) <= 1e-3 * abs(expected)


@pytest.mark.slow
def test_inverse_recovers_planewave():
    # w(X, μ, ν) = π e^{iμ} J₀(√X), the standard tomogram of e^{iq}
    def w(X, mu, nu):
        return math.pi * np.exp(1j * mu) * special.j0(np.sqrt(X)) * np.ones_like(nu)

    spec = make_spec(node_count=64, damping=0.1, upper_cutoff=1120.0, radial_nodes=8)
    got = quadratic_inverse(w, (0.0, 0.0), STANDARD, spec)
    assert abs(got - 1.0) < 1e-3


# --------------------------
# Symplectic tomography
# --------------------------
def test_symplectic_ground_state():
    spec = make_spec()
    f = wigner(0, 1.0)
    assert symplectic_forward(f, 0.0, 1.0, 0.0, spec) == pytest.approx(1 / math.sqrt(math.pi), rel=1e-10)


@pytest.mark.parametrize("X", [0.0, 0.4, 1.5])
@pytest.mark.parametrize("angle", [0.0, math.pi / 3, math.pi / 2])
def test_symplectic_rotation_invariance(X, angle):
    spec = make_spec()
    f = wigner(0, 1.0)
    rotated = symplectic_forward(f, X, math.cos(angle), math.sin(angle), spec)
    assert rotated == pytest.approx(symplectic_forward(f, X, 1.0, 0.0, spec), abs=1e-10)
    assert rotated == pytest.approx(math.exp(-(X**2)) / math.sqrt(math.pi), abs=1e-10)


def test_symplectic_scaling():
    spec = make_spec()
    f = gaussian((0.2, -0.1), 0.8)
    assert symplectic_forward(f, 1.0, 2.0, 1.0, spec) == pytest.approx(symplectic_forward(f, 0.5, 1.0, 0.5, spec) / 2, rel=1e-9)


def test_symplectic_degenerate_line():
    with pytest.raises(DegenerateLineError):
        symplectic_forward(wigner(0, 1.0), 1.0, 0.0, 0.0, make_spec())


def test_symplectic_transition_modulus():
    assert abs(symplectic_transition(0.3, -1.2, TomoPoint(0.4, 1.5, -0.7))) == pytest.approx(1 / (4 * math.pi**2))


def test_symplectic_kernel_at_origin():
    k = symplectic_kernel(TomoPoint(0, 0, 0), TomoPoint(0, 0, 0), TomoPoint(0, 0, 1), 1.0)
    assert k.amplitude == pytest.approx(1 / (4 * math.pi**2))
    assert k.delta_argument == 0


def test_symplectic_kernel_example():
    x1, x2, x3 = TomoPoint(1, 0, 1), TomoPoint(2, 1, 0), TomoPoint(0.5, 1, 2)
    k = symplectic_kernel(x1, x2, x3, 1.0)
    assert k.amplitude == pytest.approx(cmath.exp(1j * (3 - 0.25 + 0.5)) / (4 * math.pi**2))
    assert k.delta_argument == pytest.approx(1.0)


def test_symplectic_kernel_swap_at_zero_hbar():
    x1, x2, x3 = TomoPoint(0.4, 1.2, -0.3), TomoPoint(1.1, -0.5, 0.8), TomoPoint(0.9, 0.2, 1.5)
    k, ks = symplectic_kernel(x1, x2, x3, 0.0), symplectic_kernel(x2, x1, x3, 0.0)
    assert k.amplitude == pytest.approx(ks.amplitude)
    assert k.delta_argument == pytest.approx(ks.delta_argument)


def test_symplectic_kernel_chart():
    with pytest.raises(ChartError):
        symplectic_kernel(TomoPoint(0, 1, 1), TomoPoint(0, 1, 1), TomoPoint(0, 1, 0), 0.5)


def test_symplectic_of_zero():
    assert symplectic_forward(lambda q, p: 0.0, 0.7, 1.0, 2.0, make_spec()) == 0

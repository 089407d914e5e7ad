"""
Value types shared across modules.

Fields may hold numpy arrays instead of floats: every kernel and transform
broadcasts over them.
"""

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np

from tomostar.errors import DomainError


# (q, p) -> value, broadcasting over numpy arrays
SymbolFn = Callable[[np.ndarray, np.ndarray], np.ndarray]
# (X, mu, nu) -> value, broadcasting over numpy arrays
TomoSymbolFn = Callable[[np.ndarray, np.ndarray, np.ndarray], np.ndarray]


class PhasePoint(NamedTuple):
    q: float
    p: float


class TomoPoint(NamedTuple):
    """Circle with squared radius ``X`` centred at ``(mu, nu)``."""

    X: float
    mu: float
    nu: float

    @classmethod
    def checked(cls, X: float, mu: float, nu: float) -> "TomoPoint":
        if not all(map(math.isfinite, (X, mu, nu))):
            raise DomainError(f"non-finite tomographic point ({X}, {mu}, {nu})")
        if X < 0:
            raise DomainError(f"squared radius must be non-negative, got X={X}")
        return cls(X, mu, nu)

    @classmethod
    def from_flat(cls, values) -> tuple["TomoPoint", "TomoPoint", "TomoPoint"]:
        """Split a 9-tuple [X1,mu1,nu1,X2,mu2,nu2,X3,mu3,nu3] into three points."""
        if len(values) != 9:
            raise DomainError(f"expected 9 numbers, got {len(values)}")
        v = [float(i) for i in values]
        return cls.checked(*v[0:3]), cls.checked(*v[3:6]), cls.checked(*v[6:9])


@dataclass(frozen=True)
class Deformation:
    """Commutator scale 𝔥 of [q̂, p̂] = i𝔥.

    Negative values are admitted only to express the swap symmetry
    K(x₂, x₁, x₃; 𝔥) = K(x₁, x₂, x₃; −𝔥).
    """

    hbar: float

    def __post_init__(self):
        if not math.isfinite(self.hbar) or not (-1.0 < self.hbar <= 1.0):
            raise DomainError(f"hbar must lie in (-1, 1], got {self.hbar}")

    def __float__(self):
        return float(self.hbar)


def hbar_of(h: "Deformation | float") -> float:
    if isinstance(h, Deformation):
        return h.hbar
    return float(Deformation(float(h)).hbar)


@dataclass(frozen=True)
class SingularKernel:
    """Distributional kernel value ``amplitude * delta(delta_argument)``.

    It has no pointwise value; integrate it with ``kernels.smeared_kernel_action``.
    """

    amplitude: complex
    delta_argument: float

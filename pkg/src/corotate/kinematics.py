"""Deformation motions t -> F(t) with analytic time derivatives, and the
derived Eulerian fields B, V, R, L, D, W at any time."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .tensors import Array, skew, sym, tensor_sqrt

_E12 = np.zeros((3, 3))
_E12[0, 1] = 1.0
_E12.setflags(write=False)

ConfigItems = tuple[tuple[str, str], ...]


class Motion:
    """Analytic deformation path. Subclasses supply F(t) and Fdot(t) in
    closed form; finite differences exist only as an independent oracle."""

    config: ConfigItems | None = None

    def F(self, t: float) -> Array:
        raise NotImplementedError

    def Fdot(self, t: float) -> Array:
        raise NotImplementedError


@dataclass(frozen=True)
class SimpleShear(Motion):
    """F(t) = I + gamma(t) e1 (x) e2."""

    gamma: Callable[[float], float]
    gamma_dot: Callable[[float], float]
    config: ConfigItems | None = field(default=None, compare=False)

    @classmethod
    def linear(cls, rate: float = 1.0) -> "SimpleShear":
        return cls(lambda t: rate * t, lambda t: rate,
                   config=(("type", "simple_shear"), ("rate", repr(float(rate)))))

    def F(self, t: float) -> Array:
        return np.eye(3) + self.gamma(t) * _E12

    def Fdot(self, t: float) -> Array:
        return self.gamma_dot(t) * _E12


@dataclass(frozen=True)
class Uniaxial(Motion):
    """F(t) = diag(a(t), 1, 1), giving D = diag(adot/a, 0, 0)."""

    a: Callable[[float], float]
    a_dot: Callable[[float], float]
    config: ConfigItems | None = field(default=None, compare=False)

    @classmethod
    def exponential(cls, rate: float = 0.3) -> "Uniaxial":
        return cls(lambda t: math.exp(rate * t), lambda t: rate * math.exp(rate * t),
                   config=(("type", "uniaxial"), ("profile", "exponential"),
                           ("rate", repr(float(rate)))))

    @classmethod
    def linear(cls, rate: float = 0.3) -> "Uniaxial":
        return cls(lambda t: 1.0 + rate * t, lambda t: rate,
                   config=(("type", "uniaxial"), ("profile", "linear"),
                           ("rate", repr(float(rate)))))

    def F(self, t: float) -> Array:
        return np.diag([self.a(t), 1.0, 1.0])

    def Fdot(self, t: float) -> Array:
        return np.diag([self.a_dot(t), 0.0, 0.0])


@dataclass(frozen=True)
class TriaxialDiagonal(Motion):
    """F(t) = diag(a(t), b(t), c(t))."""

    abc: tuple[Callable[[float], float], ...]
    abc_dot: tuple[Callable[[float], float], ...]
    config: ConfigItems | None = field(default=None, compare=False)

    @classmethod
    def exponential(cls, ra: float, rb: float, rc: float) -> "TriaxialDiagonal":
        fns = tuple((lambda r: lambda t: math.exp(r * t))(r) for r in (ra, rb, rc))
        dfns = tuple((lambda r: lambda t: r * math.exp(r * t))(r) for r in (ra, rb, rc))
        return cls(fns, dfns,
                   config=(("type", "triaxial"), ("rate_a", repr(float(ra))),
                           ("rate_b", repr(float(rb))), ("rate_c", repr(float(rc)))))

    def F(self, t: float) -> Array:
        return np.diag([f(t) for f in self.abc])

    def Fdot(self, t: float) -> Array:
        return np.diag([f(t) for f in self.abc_dot])


def _axis_matrix(axis: tuple[float, float, float]) -> Array:
    n = np.asarray(axis, dtype=float)
    norm = np.linalg.norm(n)
    if norm == 0:
        raise ValueError("rotation axis must be nonzero")
    n = n / norm
    return np.array([[0.0, -n[2], n[1]],
                     [n[2], 0.0, -n[0]],
                     [-n[1], n[0], 0.0]])


@dataclass(frozen=True)
class RigidRotation(Motion):
    """F(t) = exp(rate * t * K_axis): pure rotation, D = 0, W = rate * K."""

    axis: tuple[float, float, float]
    rate: float
    config: ConfigItems | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.config is None:
            ax = ",".join(repr(float(a)) for a in self.axis)
            object.__setattr__(self, "config",
                               (("type", "rigid_rotation"), ("axis", ax),
                                ("rate", repr(float(self.rate)))))

    def spin(self) -> Array:
        return self.rate * _axis_matrix(self.axis)

    def F(self, t: float) -> Array:
        # Rodrigues form of exp(theta K)
        K = _axis_matrix(self.axis)
        th = self.rate * t
        return np.eye(3) + math.sin(th) * K + (1.0 - math.cos(th)) * (K @ K)

    def Fdot(self, t: float) -> Array:
        return self.spin() @ self.F(t)


@dataclass(frozen=True)
class Composite(Motion):
    """Superposed rotation: F(t) = Q(t) U(t) with Q from a rotation motion."""

    rotation: Motion
    stretch: Motion
    config: ConfigItems | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.config is None and self.rotation.config and self.stretch.config:
            items = (("type", "composite"),)
            items += tuple(("rotation." + k, v) for k, v in self.rotation.config)
            items += tuple(("stretch." + k, v) for k, v in self.stretch.config)
            object.__setattr__(self, "config", items)

    def F(self, t: float) -> Array:
        return self.rotation.F(t) @ self.stretch.F(t)

    def Fdot(self, t: float) -> Array:
        return (self.rotation.Fdot(t) @ self.stretch.F(t)
                + self.rotation.F(t) @ self.stretch.Fdot(t))


@dataclass(frozen=True)
class TabulatedPolynomial(Motion):
    """F(t) = sum_k C_k t^k with 3x3 coefficient matrices."""

    coeffs: tuple[Array, ...]
    config: ConfigItems | None = field(default=None, compare=False)

    def __post_init__(self):
        if self.config is None:
            items = (("type", "polynomial"),)
            for k, C in enumerate(self.coeffs):
                items += ((f"c{k}", ",".join(repr(float(x)) for x in np.ravel(C))),)
            object.__setattr__(self, "config", items)

    def F(self, t: float) -> Array:
        out = np.zeros((3, 3))
        for k, C in enumerate(self.coeffs):
            out += (t ** k) * np.asarray(C, dtype=float)
        return out

    def Fdot(self, t: float) -> Array:
        out = np.zeros((3, 3))
        for k, C in enumerate(self.coeffs):
            if k >= 1:
                out += k * (t ** (k - 1)) * np.asarray(C, dtype=float)
        return out


@dataclass(frozen=True, eq=False)
class KinematicState:
    """Eulerian fields of a motion at one instant.

    Invariants: B = F F^T, V^2 = B, F = V R with R^T R = I, L = Fdot F^-1,
    D = sym L, W = skew L, Bdot = L B + B L^T.
    """

    t: float
    F: Array
    B: Array
    V: Array
    R: Array
    L: Array
    D: Array
    W: Array
    Bdot: Array

    @classmethod
    def from_tensors(cls, B: Array, D: Array, W: Array | None = None,
                     t: float = 0.0) -> "KinematicState":
        """Synthetic state with prescribed (B, D, W): realized by F = V,
        R = I, L = D + W. Any SPD B with any L is instantaneously admissible."""
        B = sym(np.asarray(B, dtype=float))
        D = sym(np.asarray(D, dtype=float))
        W = np.zeros((3, 3)) if W is None else skew(np.asarray(W, dtype=float))
        V = tensor_sqrt(B)
        L = D + W
        return cls(t=t, F=V, B=B, V=V, R=np.eye(3), L=L, D=D, W=W,
                   Bdot=L @ B + B @ L.T)


def polar_decompose(F: Array) -> tuple[Array, Array]:
    """Left polar decomposition F = V R with V SPD and R proper orthogonal."""
    F = np.asarray(F, dtype=float)
    if np.linalg.det(F) <= 0.0:
        raise ValueError("polar decomposition requires det F > 0")
    V = tensor_sqrt(sym(F @ F.T))
    R = np.linalg.solve(V, F)
    return V, R


def state_at(motion: Motion, t: float) -> KinematicState:
    """Evaluate all Eulerian fields of the motion at time t."""
    F = motion.F(t)
    if np.linalg.det(F) <= 0.0:
        raise ValueError(f"motion is singular at t={t}: det F <= 0")
    Fdot = motion.Fdot(t)
    L = Fdot @ np.linalg.inv(F)
    D = sym(L)
    W = skew(L)
    B = sym(F @ F.T)
    V = tensor_sqrt(B)
    R = np.linalg.solve(V, F)
    return KinematicState(t=t, F=F, B=B, V=V, R=R, L=L, D=D, W=W,
                          Bdot=L @ B + B @ L.T)


def material_derivative_fd(field_fn: Callable[[float], Array], t: float,
                           h: float = 1e-6) -> Array:
    """Central-difference D/Dt oracle; accuracy floor ~1e-10 in double precision."""
    return (field_fn(t + h) - field_fn(t - h)) / (2.0 * h)


def builtin_motions() -> dict[str, Motion]:
    """Seeded catalog used by the verification harness and property suites."""
    poly = TabulatedPolynomial((
        np.eye(3),
        np.array([[0.10, 0.40, -0.20],
                  [-0.30, 0.20, 0.10],
                  [0.20, -0.10, 0.30]]),
        np.array([[0.05, -0.15, 0.10],
                  [0.10, 0.05, -0.20],
                  [-0.05, 0.10, 0.15]]),
    ))
    return {
        "simple_shear": SimpleShear.linear(1.0),
        "uniaxial": Uniaxial.exponential(0.4),
        "triaxial": TriaxialDiagonal.exponential(0.35, -0.20, 0.10),
        "rotation": RigidRotation((0.0, 0.0, 1.0), 1.3),
        "rotation_shear": Composite(RigidRotation((0.0, 1.0, 1.0), 1.1),
                                    SimpleShear.linear(0.8)),
        "polynomial": poly,
    }

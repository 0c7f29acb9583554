"""Objective rates of isotropic stress fields along motions, and the induced
tangent stiffness H(sigma) = D_B sigma . A(B)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import spins, stiffness
from .kinematics import KinematicState
from .spins import SpinGenerator
from .tensors import (Array, DEFAULT_CLUSTER_TOL, apply_mandel,
                      frechet_primary, invariants, operator_to_mandel,
                      primary_matrix_function, sym)

NONCOROTATIONAL_KINDS = ("cotter-rivlin", "oldroyd", "biezeno-hencky", "truesdell")


@dataclass(frozen=True)
class RichterLaw:
    """Isotropic Cauchy stress in Richter form sigma = phi0 I + phi1 B + phi2 B^2
    with coefficients and their partial derivatives as functions of the
    principal invariants (I1, I2, I3) of B."""

    phi: Callable[[float, float, float], tuple[float, float, float]]
    dphi: Callable[[float, float, float], tuple[tuple[float, float, float], ...]]
    name: str = "custom"
    isochoric: bool = False

    def sigma(self, B: Array) -> Array:
        i1, i2, i3 = invariants(B)
        p0, p1, p2 = self.phi(i1, i2, i3)
        return p0 * np.eye(3) + p1 * B + p2 * (B @ B)

    def dsigma(self, B: Array) -> Array:
        """Frechet derivative as a 6x6 operator: product rule on the powers of
        B plus invariant-gradient terms dI1 = I, dI2 = I1 I - B, dI3 = I3 B^-1."""
        i1, i2, i3 = invariants(B)
        p = self.phi(i1, i2, i3)
        dp = self.dphi(i1, i2, i3)
        eye = np.eye(3)
        grads = (eye, i1 * eye - B, i3 * np.linalg.inv(sym(B)))
        powers = (eye, B, B @ B)

        def op(H: Array) -> Array:
            out = p[1] * H + p[2] * (B @ H + H @ B)
            for k in range(3):
                coeff = sum(dp[k][q] * float(np.tensordot(grads[q], H))
                            for q in range(3))
                if coeff:
                    out = out + coeff * powers[k]
            return out

        return operator_to_mandel(op)


@dataclass(frozen=True)
class PrimaryLaw:
    """Primary-matrix-function stress sigma = f(B) with Daleckii-Krein
    Frechet derivative."""

    f: Callable[[float], float]
    fprime: Callable[[float], float]
    name: str = "primary"
    isochoric: bool = False

    def sigma(self, B: Array) -> Array:
        return primary_matrix_function(B, self.f)

    def dsigma(self, B: Array) -> Array:
        return frechet_primary(B, self.f, self.fprime)


@dataclass(frozen=True)
class ProductLaw:
    """Pointwise product sigma1(B) sigma2(B) of two isotropic laws; the factors
    commute (common eigenbasis), so the product stays symmetric."""

    law1: "StressLaw"
    law2: "StressLaw"
    name: str = "product"

    def sigma(self, B: Array) -> Array:
        return sym(self.law1.sigma(B) @ self.law2.sigma(B))

    def dsigma(self, B: Array) -> Array:
        s1 = self.law1.sigma(B)
        s2 = self.law2.sigma(B)
        M1 = self.law1.dsigma(B)
        M2 = self.law2.dsigma(B)

        def op(H: Array) -> Array:
            return sym(apply_mandel(M1, H) @ s2 + s1 @ apply_mandel(M2, H))

        return operator_to_mandel(op)


StressLaw = RichterLaw | PrimaryLaw | ProductLaw


# ---------------------------------------------------------------------------
# named presets
# ---------------------------------------------------------------------------

_ZERO3 = ((0.0, 0.0, 0.0), (0.0, 0.0, 0.0), (0.0, 0.0, 0.0))


def linear_law() -> RichterLaw:
    """sigma = B."""
    return RichterLaw(lambda i1, i2, i3: (0.0, 1.0, 0.0),
                      lambda i1, i2, i3: _ZERO3, name="linear")


def constant_law(c: float = 1.0) -> RichterLaw:
    """sigma = c I (constant spherical field)."""
    return RichterLaw(lambda i1, i2, i3: (c, 0.0, 0.0),
                      lambda i1, i2, i3: _ZERO3, name=f"const({c:g})")


def almansi_law() -> RichterLaw:
    """Almansi-type stress sigma = (I - B^-1)/2, written in Richter form via
    Cayley-Hamilton: B^-1 = (B^2 - I1 B + I2 I)/I3."""
    def phi(i1, i2, i3):
        return (0.5 * (1.0 - i2 / i3), 0.5 * i1 / i3, -0.5 / i3)

    def dphi(i1, i2, i3):
        return ((0.0, -0.5 / i3, 0.5 * i2 / i3 ** 2),
                (0.5 / i3, 0.0, -0.5 * i1 / i3 ** 2),
                (0.0, 0.0, 0.5 / i3 ** 2))

    return RichterLaw(phi, dphi, name="almansi")


def perfect_fluid_law(h: Callable[[float], float],
                      h1: Callable[[float], float],
                      h2: Callable[[float], float],
                      name: str = "perfect-fluid") -> RichterLaw:
    """Perfect elastic fluid sigma = h'(sqrt(det B)) I."""
    def phi(i1, i2, i3):
        return (h1(math.sqrt(i3)), 0.0, 0.0)

    def dphi(i1, i2, i3):
        s = math.sqrt(i3)
        return ((0.0, 0.0, h2(s) / (2.0 * s)), (0.0,) * 3, (0.0,) * 3)

    return RichterLaw(phi, dphi, name=name)


def perfect_fluid_quadratic() -> RichterLaw:
    # h(s) = s^2: h' = 2s, h'' = 2
    return perfect_fluid_law(lambda s: s * s, lambda s: 2.0 * s, lambda s: 2.0,
                             name="perfect-fluid:h=quadratic")


def isochoric_neo_hooke_law() -> RichterLaw:
    """sigma = B/(det B)^(1/3) - I (vanishes at B = I, homogeneous of degree 0)."""
    def phi(i1, i2, i3):
        return (-1.0, i3 ** (-1.0 / 3.0), 0.0)

    def dphi(i1, i2, i3):
        return ((0.0,) * 3, (0.0, 0.0, -i3 ** (-4.0 / 3.0) / 3.0), (0.0,) * 3)

    return RichterLaw(phi, dphi, name="isochoric-nh", isochoric=True)


def log_law() -> PrimaryLaw:
    """sigma = log B."""
    return PrimaryLaw(math.log, lambda x: 1.0 / x, name="log")


def parse_law(text: str) -> StressLaw:
    """Parse CLI law descriptors: "linear", "almansi",
    "perfect-fluid:h=quadratic", "isochoric-nh", "log"."""
    s = text.strip().lower()
    table = {
        "linear": linear_law,
        "almansi": almansi_law,
        "perfect-fluid:h=quadratic": perfect_fluid_quadratic,
        "perfect-fluid": perfect_fluid_quadratic,
        "isochoric-nh": isochoric_neo_hooke_law,
        "log": log_law,
    }
    if s in table:
        return table[s]()
    raise ValueError(f"unknown stress law descriptor {text!r}")


# ---------------------------------------------------------------------------
# rate evaluation
# ---------------------------------------------------------------------------

def sigma_and_gradient(law: StressLaw, B: Array) -> tuple[Array, Array]:
    """Stress value and its Frechet derivative (6x6) at B."""
    return law.sigma(B), law.dsigma(B)


def material_rate(law: StressLaw, state: KinematicState) -> Array:
    """Material derivative of sigma(B(t)) along the motion: D_B sigma . Bdot."""
    return apply_mandel(law.dsigma(state.B), state.Bdot)


def corotational_rate(gen: SpinGenerator | str, state: KinematicState,
                      law: StressLaw,
                      cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Array:
    """D[sigma] in the frame spinning with the generator:
    D_B sigma . Bdot - Omega sigma + sigma Omega."""
    if isinstance(gen, str):
        gen = spins.parse_generator(gen)
    sigma = law.sigma(state.B)
    sdot = material_rate(law, state)
    Om = spins.spin_tensor(gen, state, cluster_tol)
    return sdot - Om @ sigma + sigma @ Om


def noncorotational_rate(kind: str, state: KinematicState,
                         law: StressLaw) -> Array:
    """The four classical non-corotational objective rates."""
    sigma = law.sigma(state.B)
    sdot = material_rate(law, state)
    L, D, W = state.L, state.D, state.W
    trD = float(np.trace(D))
    if kind == "cotter-rivlin":
        return sdot + L.T @ sigma + sigma @ L
    if kind == "oldroyd":
        return sdot - (L @ sigma + sigma @ L.T)
    if kind == "biezeno-hencky":
        return sdot + sigma @ W - W @ sigma + sigma * trD
    if kind == "truesdell":
        return sdot - (L @ sigma + sigma @ L.T) + sigma * trD
    raise ValueError(f"unknown non-corotational rate kind: {kind!r}")


def induced_stiffness_H(gen: SpinGenerator | str, law: StressLaw, B: Array,
                        cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Array:
    """Induced tangent stiffness H = D_B sigma . A(B) as a 6x6 composition,
    so that the corotational rate of sigma equals H.D."""
    A = stiffness.assemble_A(B, gen, cluster_tol)
    return law.dsigma(B) @ A

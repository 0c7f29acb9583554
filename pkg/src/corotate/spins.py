"""Material-spin family Omega = W + Upsilon(B, D).

Classical catalog (Zaremba-Jaumann, Green-Naghdi, logarithmic, Gurtin-Spear,
two Aifantis variants), the nu-coefficient representation
Upsilon = nu1 skew(BD) + nu2 skew(B^2 D) + nu3 skew(B^2 D B), the g-scalar
representation Upsilon = sum g(lam_i, lam_j) V_i D V_j, and conversions
between the two.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .kinematics import KinematicState
from .tensors import (Array, DEFAULT_CLUSTER_TOL, Spectral3, invariants, skew,
                      spectral_decompose)

# switch radius for the logarithmic-spin series about Z = 1: the direct
# formula loses ~eps/del^2 to cancellation (1e-4 relative already at
# |Z-1| = 1e-4), while the 4-term odd series truncates at ~6 t^8 / 9e4,
# i.e. below 1e-12 for |Z-1| up to 0.05
LOG_SERIES_RADIUS = 5e-2


class SpinDiscontinuityError(ValueError):
    """Gurtin-Spear spin evaluated at (near-)coincident principal stretches."""


@dataclass(frozen=True)
class GForm:
    """Spin generator in g-scalar form: g(lam_i, lam_j), antisymmetric and
    homogeneous of degree zero in the stretches."""

    g: Callable[[float, float], float]
    name: str = "custom-g"
    continuous: bool = True


@dataclass(frozen=True)
class NuForm:
    """Spin generator in nu-coefficient form; each nu_k is an isotropic
    invariant of B, stored as a function of (I1, I2, I3)."""

    nu: Callable[[float, float, float], tuple[float, float, float]]
    name: str = "custom-nu"

    def coefficients(self, B: Array) -> tuple[float, float, float]:
        i1, i2, i3 = invariants(B)
        return self.nu(i1, i2, i3)

    @classmethod
    def constant(cls, nu1: float, nu2: float, nu3: float,
                 name: str | None = None) -> "NuForm":
        vals = (float(nu1), float(nu2), float(nu3))
        if name is None:
            name = f"nu({vals[0]:g},{vals[1]:g},{vals[2]:g})"
        return cls(lambda i1, i2, i3: vals, name=name)


SpinGenerator = GForm | NuForm


# ---------------------------------------------------------------------------
# the classical g catalog
# ---------------------------------------------------------------------------

def _g_log_series(t: float) -> float:
    # 1/t - coth t about t = 0
    t2 = t * t
    return t * (-1.0 / 3.0 + t2 * (1.0 / 45.0 + t2 * (-2.0 / 945.0 + t2 / 4725.0)))


def g_classical(kind: str, lam_i: float, lam_j: float,
                cluster_tol: float = DEFAULT_CLUSTER_TOL) -> float:
    """Spin scalar g(lam_i, lam_j) of a classical rate; arguments are
    principal stretches (eigenvalues of V)."""
    if lam_i <= 0 or lam_j <= 0:
        raise ValueError("principal stretches must be positive")
    if kind == "zj":
        return 0.0
    if kind == "gn":
        return (lam_j - lam_i) / (lam_i + lam_j)
    if kind == "log":
        z = lam_i / lam_j
        if abs(z - 1.0) < LOG_SERIES_RADIUS:
            return _g_log_series(math.log(lam_i) - math.log(lam_j))
        return ((lam_i * lam_i + lam_j * lam_j) / (lam_j * lam_j - lam_i * lam_i)
                + 1.0 / (math.log(lam_i) - math.log(lam_j)))
    if kind == "gs":
        if abs(lam_i - lam_j) <= cluster_tol * max(lam_i, lam_j):
            raise SpinDiscontinuityError(
                "Gurtin-Spear spin is discontinuous at coincident stretches")
        return (lam_i * lam_i + lam_j * lam_j) / (lam_j * lam_j - lam_i * lam_i)
    raise ValueError(f"unknown classical rate kind: {kind!r}")


def zaremba_jaumann() -> NuForm:
    # nu = (0,0,0): Omega = W, and the classification reports it totally positive
    return NuForm.constant(0.0, 0.0, 0.0, name="zj")


def green_naghdi() -> GForm:
    return GForm(lambda li, lj: g_classical("gn", li, lj), name="gn")


def logarithmic() -> GForm:
    return GForm(lambda li, lj: g_classical("log", li, lj), name="log")


def gurtin_spear() -> GForm:
    return GForm(lambda li, lj: g_classical("gs", li, lj), name="gs",
                 continuous=False)


def aifantis_nu(variant: int, zeta: float, B: Array) -> tuple[float, float, float]:
    """nu coefficients of the Aifantis spin built from an isochoric
    Cauchy-elastic law (variant 1 or 2)."""
    i1, _, i3 = invariants(B)
    return _aifantis_nu_from_invariants(variant, zeta, i1, i3)


def _aifantis_nu_from_invariants(variant: int, zeta: float, i1: float,
                                 i3: float) -> tuple[float, float, float]:
    if variant == 1:
        return (2.0 * zeta / i3 ** (1.0 / 3.0), 0.0, 0.0)
    if variant == 2:
        return (2.0 * zeta * (i3 ** (-1.0 / 3.0) + i1 * i3 ** (-2.0 / 3.0)),
                -2.0 * zeta * i3 ** (-2.0 / 3.0),
                0.0)
    raise ValueError("Aifantis variant must be 1 or 2")


def aifantis(variant: int, zeta: float) -> NuForm:
    if variant not in (1, 2):
        raise ValueError("Aifantis variant must be 1 or 2")
    return NuForm(
        lambda i1, i2, i3: _aifantis_nu_from_invariants(variant, zeta, i1, i3),
        name=f"aif{variant}:zeta={zeta:g}")


def aifantis_g(variant: int, zeta: float, B: Array, lam_i: float,
               lam_j: float) -> float:
    """Closed-form g(lam_i, lam_j) of the Aifantis spins; depends on det B, so
    it is not expressible in the one-variable Z ratio form."""
    _, _, det_b = invariants(B)
    d13 = det_b ** (1.0 / 3.0)
    li2, lj2 = lam_i * lam_i, lam_j * lam_j
    if variant == 1:
        return zeta / d13 * (li2 - lj2)
    if variant == 2:
        return zeta * ((li2 - lj2) / d13 + d13 * (1.0 / lj2 - 1.0 / li2))
    raise ValueError("Aifantis variant must be 1 or 2")


# ---------------------------------------------------------------------------
# conversions and spin assembly
# ---------------------------------------------------------------------------

def nu_to_g(nu1: float, nu2: float, nu3: float, lam_i: float,
            lam_j: float) -> float:
    """g scalar equivalent to nu coefficients, from expanding skew(BD),
    skew(B^2 D), skew(B^2 D B) in eigenprojections:
    g = (lam_i^2 - lam_j^2)/2 * [nu1 + nu2 (lam_i^2 + lam_j^2) + nu3 lam_i^2 lam_j^2].
    """
    li2, lj2 = lam_i * lam_i, lam_j * lam_j
    return 0.5 * (li2 - lj2) * (nu1 + nu2 * (li2 + lj2) + nu3 * li2 * lj2)


def g_from_nu(gen: NuForm, B: Array) -> GForm:
    """g-form of a nu-form generator, with the coefficients frozen at B."""
    n1, n2, n3 = gen.coefficients(B)
    return GForm(lambda li, lj: nu_to_g(n1, n2, n3, li, lj),
                 name=gen.name + "->g")


def upsilon_from_spectral(spectral: Spectral3, g: Callable[[float, float], float],
                          D: Array) -> Array:
    """Upsilon = sum_{i != j} g(lam_i, lam_j) P_i D P_j over distinct clusters.

    Antisymmetry of g makes the result independent of cluster ordering.
    """
    out = np.zeros((3, 3))
    if spectral.m == 1:
        return out
    lam = [math.sqrt(mu) for mu in spectral.eigenvalues]
    P = spectral.projections
    for i in range(spectral.m):
        for j in range(spectral.m):
            if i != j:
                out += g(lam[i], lam[j]) * (P[i] @ D @ P[j])
    return out


def upsilon(gen: SpinGenerator, B: Array, D: Array,
            cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Array:
    """The D-linear spin part Omega - W for a material-spin generator."""
    if isinstance(gen, NuForm):
        n1, n2, n3 = gen.coefficients(B)
        out = np.zeros((3, 3))
        if n1:
            out += n1 * skew(B @ D)
        if n2 or n3:
            B2 = B @ B
            if n2:
                out += n2 * skew(B2 @ D)
            if n3:
                out += n3 * skew(B2 @ D @ B)
        return out
    spectral = spectral_decompose(B, cluster_tol)
    if not gen.continuous and spectral.m < 3:
        raise SpinDiscontinuityError(
            f"{gen.name} spin requires distinct principal stretches")
    return upsilon_from_spectral(spectral, gen.g, D)


def spin_tensor(gen: SpinGenerator, state: KinematicState,
                cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Array:
    """Material spin Omega = W + Upsilon(B, D) of the state."""
    return state.W + upsilon(gen, state.B, state.D, cluster_tol)


# ---------------------------------------------------------------------------
# CLI string descriptors
# ---------------------------------------------------------------------------

def parse_generator(text: str) -> SpinGenerator:
    """Parse generator descriptors: "zj", "gn", "log", "gs",
    "aif1:zeta=0.5" (also "aif1:0.5"), "nu:1.0,0.0,0.0"."""
    s = text.strip().lower()
    simple = {"zj": zaremba_jaumann, "gn": green_naghdi,
              "log": logarithmic, "gs": gurtin_spear}
    if s in simple:
        return simple[s]()
    if s.startswith(("aif1", "aif2")):
        variant = int(s[3])
        rest = s[4:]
        zeta = 0.0
        if rest.startswith(":"):
            val = rest[1:]
            for prefix in ("zeta=", "ζ="):
                if val.startswith(prefix):
                    val = val[len(prefix):]
            zeta = float(val)
        elif rest:
            raise ValueError(f"cannot parse generator descriptor {text!r}")
        return aifantis(variant, zeta)
    if s.startswith("nu:"):
        parts = [float(p) for p in s[3:].split(",")]
        if len(parts) != 3:
            raise ValueError("nu generator needs exactly three coefficients")
        return NuForm.constant(*parts)
    raise ValueError(f"cannot parse generator descriptor {text!r}")


def classical_generators() -> dict[str, SpinGenerator]:
    return {"zj": zaremba_jaumann(), "gn": green_naghdi(),
            "log": logarithmic(), "gs": gurtin_spear()}

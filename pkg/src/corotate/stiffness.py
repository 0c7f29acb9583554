"""Tangent stiffness A(B) of corotational rates, assembled by two independent
routes, the z_ij / gbar(Z) characteristic quantities, and the
positive / invertible / totally-positive classification."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from . import spins
from .spins import GForm, NuForm, SpinGenerator, nu_to_g
from .tensors import (Array, DEFAULT_CLUSTER_TOL, Spectral3, extract6,
                      mandel_basis, mandel_to_unweighted, spectral_decompose)

GBAR_SERIES_RADIUS = spins.LOG_SERIES_RADIUS
_SQRT2 = math.sqrt(2.0)

_BASIS_STACK = np.stack(mandel_basis())  # (6, 3, 3)


def _resolve(gen: SpinGenerator | str) -> SpinGenerator:
    return spins.parse_generator(gen) if isinstance(gen, str) else gen


def _embed_columns(Hs: Array) -> Array:
    # stack of tensors (n,3,3) -> 6xn matrix of orthonormal coordinates
    return np.stack([Hs[:, 0, 0], Hs[:, 1, 1], Hs[:, 2, 2],
                     _SQRT2 * Hs[:, 0, 1], _SQRT2 * Hs[:, 0, 2],
                     _SQRT2 * Hs[:, 1, 2]])


# ---------------------------------------------------------------------------
# assembly route 1: nu-coefficient commutator form
# ---------------------------------------------------------------------------

def _apply_A_nu(B: Array, nu: tuple[float, float, float], Ds: Array) -> Array:
    # Ds may be one tensor (3,3) or a stack (n,3,3); broadcasting covers both
    n1, n2, n3 = nu
    out = Ds @ B + B @ Ds
    K = B @ Ds - Ds @ B
    if n1:
        out = out + (0.5 * n1) * (B @ K - K @ B)
    if n2 or n3:
        B2 = B @ B
        if n2:
            out = out + (0.5 * n2) * (B2 @ K - K @ B2)
        if n3:
            out = out + (0.5 * n3) * (B2 @ K @ B - B @ K @ B2)
    return out


def apply_A_nu(B: Array, nu: tuple[float, float, float], D: Array) -> Array:
    """Action D B + B D + nu1/2 (B[B,D] - [B,D]B) + nu2/2 (B^2[B,D] - [B,D]B^2)
    + nu3/2 (B^2[B,D]B - B[B,D]B^2)."""
    return _apply_A_nu(B, nu, D)


def assemble_A_nu(B: Array, nu1: float, nu2: float, nu3: float,
                  cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Array:
    """6x6 (orthonormal basis) stiffness from the nu-coefficient route."""
    spectral_decompose(B, cluster_tol)  # SPD domain check
    return _embed_columns(_apply_A_nu(B, (nu1, nu2, nu3), _BASIS_STACK))


# ---------------------------------------------------------------------------
# assembly route 2: eigenprojection g form
# ---------------------------------------------------------------------------

def _apply_A_g(B: Array, spectral: Spectral3, g: Callable[[float, float], float],
               Ds: Array) -> Array:
    out = B @ Ds + Ds @ B
    if spectral.m == 1:
        return out
    lam = [math.sqrt(mu) for mu in spectral.eigenvalues]
    P = spectral.projections
    for i in range(spectral.m):
        for j in range(spectral.m):
            if i != j:
                coeff = g(lam[i], lam[j]) * (lam[i] ** 2 - lam[j] ** 2)
                out = out + coeff * (P[i] @ Ds @ P[j])
    return out


def apply_A_g(B: Array, spectral: Spectral3, g: Callable[[float, float], float],
              D: Array) -> Array:
    """Action B D + D B + sum_{i != j} g_ij (lam_i^2 - lam_j^2) V_i D V_j."""
    return _apply_A_g(B, spectral, g, D)


def _require_continuous(gen: GForm, spectral: Spectral3) -> None:
    if not gen.continuous and spectral.m < 3:
        raise spins.SpinDiscontinuityError(
            f"{gen.name} requires distinct principal stretches")


def assemble_A_g(B: Array, g: Callable[[float, float], float] | GForm,
                 cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Array:
    """6x6 (orthonormal basis) stiffness from the eigenprojection route."""
    spectral = spectral_decompose(B, cluster_tol)
    if isinstance(g, GForm):
        _require_continuous(g, spectral)
        g = g.g
    return _embed_columns(_apply_A_g(B, spectral, g, _BASIS_STACK))


def _assemble_with_spectral(B: Array, gen: SpinGenerator, spectral: Spectral3) -> Array:
    if isinstance(gen, NuForm):
        return _embed_columns(_apply_A_nu(B, gen.coefficients(B), _BASIS_STACK))
    _require_continuous(gen, spectral)
    return _embed_columns(_apply_A_g(B, spectral, gen.g, _BASIS_STACK))


def assemble_A(B: Array, gen: SpinGenerator | str,
               cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Array:
    """Stiffness by the generator's natural route (nu or g form)."""
    gen = _resolve(gen)
    spectral = spectral_decompose(B, cluster_tol)
    return _assemble_with_spectral(B, gen, spectral)


def apply_A(B: Array, gen: SpinGenerator | str, D: Array,
            cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Array:
    """A(B).D without materializing the 6x6."""
    gen = _resolve(gen)
    if isinstance(gen, NuForm):
        spectral_decompose(B, cluster_tol)
        return _apply_A_nu(B, gen.coefficients(B), D)
    spectral = spectral_decompose(B, cluster_tol)
    _require_continuous(gen, spectral)
    return _apply_A_g(B, spectral, gen.g, D)


# ---------------------------------------------------------------------------
# characteristic quantities z_ij and gbar(Z)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ZEntry:
    i: int
    j: int
    lam_i: float
    lam_j: float
    z: float


@dataclass(frozen=True)
class ZTable:
    """z_ij = lam_i^2 + lam_j^2 + g_ij (lam_i^2 - lam_j^2) for each unordered
    pair of distinct clustered stretches (z_ji = z_ij by antisymmetry of g)."""

    entries: tuple[ZEntry, ...]

    def min_z(self) -> float | None:
        return min((e.z for e in self.entries), default=None)

    def min_abs_z(self) -> float | None:
        return min((abs(e.z) for e in self.entries), default=None)


def _pair_g(gen: SpinGenerator, B: Array) -> Callable[[float, float], float]:
    if isinstance(gen, NuForm):
        n1, n2, n3 = gen.coefficients(B)
        return lambda li, lj: nu_to_g(n1, n2, n3, li, lj)
    return gen.g


def _z_entries(spectral: Spectral3, g: Callable[[float, float], float]) -> list[ZEntry]:
    lam = [math.sqrt(mu) for mu in spectral.eigenvalues]
    entries = []
    for i in range(spectral.m):
        for j in range(i + 1, spectral.m):
            li2, lj2 = lam[i] ** 2, lam[j] ** 2
            z = li2 + lj2 + g(lam[i], lam[j]) * (li2 - lj2)
            entries.append(ZEntry(i + 1, j + 1, lam[i], lam[j], z))
    return entries


def z_table(B: Array, gen: SpinGenerator | str,
            cluster_tol: float = DEFAULT_CLUSTER_TOL) -> ZTable:
    gen = _resolve(gen)
    spectral = spectral_decompose(B, cluster_tol)
    if isinstance(gen, GForm):
        _require_continuous(gen, spectral)
    return ZTable(tuple(_z_entries(spectral, _pair_g(gen, B))))


def gbar(kind_or_g: str | GForm | Callable[[float, float], float],
         Z: float) -> float:
    """One-variable characteristic function gbar(Z) = Z^2 + 1 + g(Z)(Z^2 - 1),
    Z = lam_i / lam_j. Defined for generators whose g depends on the stretch
    ratio only (all classical ones; not the Aifantis spins)."""
    if Z <= 0:
        raise ValueError("Z must be positive")
    Z2 = Z * Z
    if isinstance(kind_or_g, str):
        kind = kind_or_g
        if kind == "zj":
            g_val = 0.0
        elif kind == "gn":
            g_val = (1.0 - Z) / (1.0 + Z)
        elif kind == "log":
            if abs(Z - 1.0) < GBAR_SERIES_RADIUS:
                g_val = spins._g_log_series(math.log(Z))
            else:
                g_val = (1.0 + Z2) / (1.0 - Z2) + 1.0 / math.log(Z)
        elif kind == "gs":
            # the composition cancels identically; the Z = 1 point takes the
            # (zero) limit rather than the discontinuity error of g itself
            if Z == 1.0:
                return 0.0
            g_val = (1.0 + Z2) / (1.0 - Z2)
        else:
            raise ValueError(f"unknown classical rate kind: {kind!r}")
        return Z2 + 1.0 + g_val * (Z2 - 1.0)
    g = kind_or_g.g if isinstance(kind_or_g, GForm) else kind_or_g
    return Z2 + 1.0 + g(Z, 1.0) * (Z2 - 1.0)


def gbar_derivative_fd(kind: str, Z: float, h: float = 1e-6) -> float:
    return (gbar(kind, Z + h) - gbar(kind, Z - h)) / (2.0 * h)


# ---------------------------------------------------------------------------
# quadratic form and classification
# ---------------------------------------------------------------------------

def quadratic_form_decomposed(B: Array, gen: SpinGenerator | str, D: Array,
                              cluster_tol: float = DEFAULT_CLUSTER_TOL) -> float:
    """<A(B).D, D> assembled from the principal-axes decomposition:
    2 sum lam_i^2 d_ii^2 + sum_{i != j} z_ij d_ij^2.

    Evaluated through eigenprojections (coaxial part plus cluster-pair parts),
    so repeated eigenvalues need no axis choice.
    """
    gen = _resolve(gen)
    spectral = spectral_decompose(B, cluster_tol)
    if isinstance(gen, GForm):
        _require_continuous(gen, spectral)
    g = _pair_g(gen, B)
    P = spectral.projections
    # within-cluster pairs have z = 2 lam^2, merging with the diagonal term
    # into 2 mu_k ||P_k D P_k||^2
    total = 0.0
    for k in range(spectral.m):
        blk = P[k] @ D @ P[k]
        total += 2.0 * spectral.eigenvalues[k] * float(np.tensordot(blk, blk))
    for e in _z_entries(spectral, g):
        blk = P[e.i - 1] @ D @ P[e.j - 1]
        total += 2.0 * e.z * float(np.tensordot(blk, blk))
    return total


@dataclass(frozen=True, eq=False)
class RateClassification:
    """Positivity / invertibility verdict with numeric witnesses.

    degenerate marks the boundary stratum (no distinct-stretch pair, or a z
    value inside the strict-positivity margin) rather than silently rounding
    the verdict.
    """

    generator: str
    positive: bool
    invertible: bool
    totally_positive: bool | None
    min_z: float | None
    min_eig_A: float
    witness_D: Array
    degenerate: bool

    def to_dict(self) -> dict:
        return {
            "generator": self.generator,
            "positive": self.positive,
            "invertible": self.invertible,
            "totally_positive": self.totally_positive,
            "min_z": self.min_z,
            "min_eig_A": self.min_eig_A,
            "witness_D": [[float(x) for x in row] for row in self.witness_D],
            "degenerate": self.degenerate,
        }


def classify(B: Array, gen: SpinGenerator | str,
             cluster_tol: float = DEFAULT_CLUSTER_TOL) -> RateClassification:
    """Necessary-and-sufficient classification of a material-spin rate at B.

    Runs both routes -- the z_ij criterion and the eigenvalues of the
    symmetric 6x6 -- and refuses to answer if they disagree beyond 1e-8
    (permanent regression guard for the nu2/nu3 closed-form question).
    """
    gen = _resolve(gen)
    spectral = spectral_decompose(B, cluster_tol)
    if isinstance(gen, GForm):
        _require_continuous(gen, spectral)
    zs = [e.z for e in _z_entries(spectral, _pair_g(gen, B))]
    M = _assemble_with_spectral(B, gen, spectral)
    Msym = 0.5 * (M + M.T)
    eigs, vecs = np.linalg.eigh(Msym)
    min_eig = float(eigs[0])
    witness = extract6(vecs[:, 0])

    mu_max = max(spectral.eigenvalues)
    eps_pos = 1e-12 * mu_max
    min_z = min(zs) if zs else None

    # the operator spectrum is {2 mu_k} on the coaxial block plus {z_ij}
    predicted_min = min([2.0 * mu for mu in spectral.eigenvalues] + zs)
    if abs(predicted_min - min_eig) > 1e-8 * max(1.0, mu_max):
        raise RuntimeError(
            "z-criterion and 6x6 eigenvalue route disagree: "
            f"predicted min {predicted_min:.12e}, computed {min_eig:.12e}")

    positive = all(z > eps_pos for z in zs)
    invertible = all(abs(z) > eps_pos for z in zs)
    degenerate = (not zs) or any(abs(z) <= eps_pos for z in zs)
    totally = None
    if isinstance(gen, NuForm):
        totally = all(n >= 0.0 for n in gen.coefficients(B))
    return RateClassification(
        generator=gen.name, positive=positive, invertible=invertible,
        totally_positive=totally, min_z=min_z, min_eig_A=min_eig,
        witness_D=witness, degenerate=degenerate)


# ---------------------------------------------------------------------------
# open-question resolution artifact: the a_44 closed forms
# ---------------------------------------------------------------------------

def _a44_printed_formula(mu_i: float, mu_j: float,
                         nu: tuple[float, float, float]) -> float:
    # published closed form for the shear diagonal of the 6x6 in the
    # unweighted vec convention (mu = squared stretches)
    n1, n2, n3 = nu
    return (2.0 * (mu_i + mu_j)
            + 0.5 * (mu_i - mu_j) ** 2
            * (2.0 * n1 + n2 * (mu_i + mu_j) + n3 * mu_i * mu_j))


def a44_report(samples: int = 100, seed: int = 0) -> dict:
    """Compare the published a_44 closed form and 2*z_ij via nu_to_g against
    the brute-force 6x6 shear diagonal (unweighted convention) over random
    diagonal (B, nu), and state which closed form matches the assembly."""
    rng = np.random.default_rng(seed)
    pair_slots = {(0, 1): 3, (1, 2): 4, (2, 0): 5}  # unweighted vec slot per shear
    max_rel_printed = 0.0
    max_rel_two_z = 0.0
    rows = []
    for k in range(samples):
        mu = np.sort(np.exp(rng.uniform(-3.0, 3.0, size=3)))
        nu = tuple(float(x) for x in rng.uniform(-2.0, 2.0, size=3))
        B = np.diag(mu)
        M = assemble_A_nu(B, *nu)
        Mp = mandel_to_unweighted(M)
        for (i, j), slot in pair_slots.items():
            direct = float(Mp[slot, slot])
            printed = _a44_printed_formula(mu[i], mu[j], nu)
            two_z = 2.0 * (mu[i] + mu[j]
                           + nu_to_g(*nu, math.sqrt(mu[i]), math.sqrt(mu[j]))
                           * (mu[i] - mu[j]))
            denom = max(1.0, abs(direct))
            max_rel_printed = max(max_rel_printed, abs(direct - printed) / denom)
            max_rel_two_z = max(max_rel_two_z, abs(direct - two_z) / denom)
            if k < 5:
                rows.append({
                    "sample": k, "pair": [i + 1, j + 1],
                    "mu_i": float(mu[i]), "mu_j": float(mu[j]),
                    "nu": [float(n) for n in nu],
                    "direct": direct, "printed_formula": printed,
                    "two_z_from_nu": two_z,
                })
    matches = "two_z_from_nu" if max_rel_two_z < 1e-10 else (
        "printed_formula" if max_rel_printed < 1e-10 else "neither")
    return {
        "samples": samples,
        "seed": seed,
        "max_rel_err_printed_formula": max_rel_printed,
        "max_rel_err_two_z_from_nu": max_rel_two_z,
        "matches_direct_assembly": matches,
        "note": ("The published shear-diagonal closed form carries nu2 and nu3 "
                 "coefficients half the size of the direct assembly; "
                 "2*z_ij obtained through the nu -> g conversion reproduces "
                 "the assembled operator."),
        "example_rows": rows,
    }

"""Seth-Hill strain family, scale functions, and strain-rate positivity
pairings (structure-preservation sweeps, including the conjecture
counterexample search)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import spins, stiffness
from .kinematics import KinematicState
from .spins import SpinGenerator
from .tensors import (Array, DEFAULT_CLUSTER_TOL, divided_difference_table,
                      frechet_primary, primary_matrix_function, random_spd,
                      spectral_decompose, tensor_log)


def scale_function(m: float, chi: float) -> float:
    """Seth-Hill scale e_m(chi) = (chi^m - 1)/(2m), with (log chi)/2 at m = 0.

    Normalized so that e_m(1) = 0 and e_m'(1) = 1/2.
    """
    if chi <= 0:
        raise ValueError("scale function argument must be positive")
    if m == 0:
        return 0.5 * math.log(chi)
    return (chi ** m - 1.0) / (2.0 * m)


def scale_derivative(m: float, chi: float) -> float:
    if chi <= 0:
        raise ValueError("scale function argument must be positive")
    if m == 0:
        return 0.5 / chi
    return 0.5 * chi ** (m - 1.0)


def scale_function_mirror(m: float, chi: float) -> float:
    """Mirrored family (1 - chi^(-m))/(2m), same normalization."""
    if chi <= 0:
        raise ValueError("scale function argument must be positive")
    if m == 0:
        return 0.5 * math.log(chi)
    return (1.0 - chi ** (-m)) / (2.0 * m)


def seth_hill(B: Array, m: float,
              cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Array:
    """Spatial strain (B^m - I)/(2m), with (log B)/2 at m = 0.

    Integer exponents use repeated multiplication for exactness; real
    exponents go through the spectral scale function.
    """
    if m == 0:
        return 0.5 * tensor_log(B, cluster_tol)
    if float(m).is_integer():
        k = int(m)
        P = np.eye(3)
        M = B if k > 0 else np.linalg.inv(B)
        for _ in range(abs(k)):
            P = P @ M
        return (P - np.eye(3)) / (2.0 * m)
    return primary_matrix_function(B, lambda x: scale_function(m, x), cluster_tol)


def seth_hill_frechet(B: Array, m: float,
                      cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Array:
    """D_B of the Seth-Hill strain as a 6x6 operator (Daleckii-Krein)."""
    if m == 0:
        return frechet_primary(B, lambda x: 0.5 * math.log(x),
                               lambda x: 0.5 / x, cluster_tol)
    return frechet_primary(B, lambda x: (x ** m - 1.0) / (2.0 * m),
                           lambda x: 0.5 * x ** (m - 1.0), cluster_tol)


def strain_rate_pairing(gen: SpinGenerator | str, state: KinematicState,
                        m: float,
                        cluster_tol: float = DEFAULT_CLUSTER_TOL) -> float:
    """<D[E_m(B)], D> evaluated through the composition
    D_B E_m(B) . A(B) . D; positive generators keep it > 0 for D != 0."""
    if isinstance(gen, str):
        gen = spins.parse_generator(gen)
    B, D = state.B, state.D
    spectral = spectral_decompose(B, cluster_tol)
    if isinstance(gen, spins.NuForm):
        AD = stiffness.apply_A_nu(B, gen.coefficients(B), D)
    else:
        if not gen.continuous and spectral.m < 3:
            raise spins.SpinDiscontinuityError(
                f"{gen.name} requires distinct principal stretches")
        AD = stiffness.apply_A_g(B, spectral, gen.g, D)
    if m == 0:
        tab = divided_difference_table(spectral, lambda x: 0.5 * math.log(x),
                                       lambda x: 0.5 / x)
    else:
        tab = divided_difference_table(spectral, lambda x: scale_function(m, x),
                                       lambda x: scale_derivative(m, x))
    P = spectral.projections
    out = np.zeros((3, 3))
    for i in range(spectral.m):
        PiAD = P[i] @ AD
        for j in range(spectral.m):
            out += tab[i, j] * (PiAD @ P[j])
    return float(np.tensordot(out, D))


@dataclass(frozen=True)
class PairingSample:
    generator: str
    m: float
    seed: int
    value: float
    min_over_batch: float


@dataclass(frozen=True)
class SweepResult:
    samples: tuple[PairingSample, ...]
    counterexamples: tuple[PairingSample, ...]
    min_value: float

    def rows(self) -> list[tuple]:
        return [(s.generator, s.m, s.seed, s.value, s.min_over_batch)
                for s in self.samples]


def positivity_sweep(generators: Sequence[SpinGenerator | str],
                     m_values: Sequence[float], n_samples: int,
                     seed: int = 42, log_range: float = 3.0) -> SweepResult:
    """Counterexample search for strain-rate positivity.

    Draws n_samples seeded (B, D) pairs, cycling through the
    (generator, m) grid; any non-positive pairing is recorded as a
    counterexample, never asserted impossible.
    """
    gens = [spins.parse_generator(g) if isinstance(g, str) else g
            for g in generators]
    combos = [(g, float(m)) for g in gens for m in m_values]
    running_min: dict[tuple[str, float], float] = {}
    samples: list[PairingSample] = []
    bad: list[PairingSample] = []
    overall_min = math.inf
    for k in range(n_samples):
        sample_seed = seed + k
        rng = np.random.default_rng(sample_seed)
        gen, m = combos[k % len(combos)]
        B = random_spd(rng, log_range)
        D = rng.normal(size=(3, 3))
        D = 0.5 * (D + D.T)
        if float(np.linalg.norm(D)) < 1e-12:
            continue
        state = KinematicState.from_tensors(B, D)
        value = strain_rate_pairing(gen, state, m)
        key = (gen.name, m)
        running_min[key] = min(running_min.get(key, math.inf), value)
        overall_min = min(overall_min, value)
        rec = PairingSample(gen.name, m, sample_seed, value, running_min[key])
        samples.append(rec)
        if value <= 0.0:
            bad.append(rec)
    return SweepResult(tuple(samples), tuple(bad), overall_min)

"""Executable checks for the identity calculus of corotational rates:
product and chain rules, the constant-field identity and its non-corotational
counterexamples, invariant conservation under frame integration, objectivity
under superposed rotations, and the perfect-fluid coincidence."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from . import rates, spins, stiffness
from .kinematics import (Composite, KinematicState, Motion, RigidRotation,
                         SimpleShear, builtin_motions, material_derivative_fd,
                         state_at)
from .rates import StressLaw
from .spins import SpinGenerator
from .tensors import (Array, apply_mandel, commutator, frob, random_skew,
                      random_spd, random_sym, sym)

DEFAULT_SEED = 42


@dataclass(frozen=True)
class CheckResult:
    check: str
    generator: str
    seed: int
    residual: float
    threshold: float
    passed: bool

    def to_record(self) -> dict:
        return {"check": self.check, "generator": self.generator,
                "seed": self.seed, "residual": self.residual,
                "threshold": self.threshold, "pass": self.passed}


def _result(check: str, generator: str, seed: int, residual: float,
            threshold: float, invert: bool = False) -> CheckResult:
    passed = residual >= threshold if invert else residual <= threshold
    return CheckResult(check, generator, seed, float(residual),
                       float(threshold), bool(passed))


# ---------------------------------------------------------------------------
# individual checks
# ---------------------------------------------------------------------------

def check_product_rule(gen: SpinGenerator, state: KinematicState,
                       law1: StressLaw, law2: StressLaw) -> float:
    """Residual of D[sigma1 sigma2] - D[sigma1] sigma2 - sigma1 D[sigma2],
    with the product evaluated as its own stress field."""
    product = rates.ProductLaw(law1, law2)
    left = rates.corotational_rate(gen, state, product)
    r1 = rates.corotational_rate(gen, state, law1)
    r2 = rates.corotational_rate(gen, state, law2)
    s1 = law1.sigma(state.B)
    s2 = law2.sigma(state.B)
    return frob(left - r1 @ s2 - s1 @ r2)


def product_rule_violation(kind: str, state: KinematicState,
                           law1: StressLaw, law2: StressLaw) -> float:
    """Same residual for a non-corotational rate; nonzero by construction."""
    product = rates.ProductLaw(law1, law2)
    left = rates.noncorotational_rate(kind, state, product)
    r1 = rates.noncorotational_rate(kind, state, law1)
    r2 = rates.noncorotational_rate(kind, state, law2)
    s1 = law1.sigma(state.B)
    s2 = law2.sigma(state.B)
    return frob(left - r1 @ s2 - s1 @ r2)


def check_chain_rule(gen: SpinGenerator, motion: Motion, t: float,
                     law: StressLaw, h: float = 1e-6) -> float:
    """Residual of D[sigma] - D_B sigma . D[B], the left side computed by a
    finite-difference material derivative plus spin terms along the motion."""
    state = state_at(motion, t)
    sigma_of_t = lambda s: law.sigma(state_at(motion, s).B)
    sdot_fd = material_derivative_fd(sigma_of_t, t, h)
    Om = spins.spin_tensor(gen, state)
    sigma = law.sigma(state.B)
    left = sdot_fd - Om @ sigma + sigma @ Om
    A = stiffness.assemble_A(state.B, gen)
    right = apply_mandel(law.dsigma(state.B) @ A, state.D)
    return frob(left - right)


def check_constant_field(gen: SpinGenerator, state: KinematicState,
                         c: float = 2.5) -> float:
    """Corotational rate of the constant spherical field c I (zero identically)."""
    return frob(rates.corotational_rate(gen, state, rates.constant_law(c)))


def truesdell_constant_field_residual(state: KinematicState,
                                      c: float = 2.5) -> float:
    """Residual of the Truesdell rate of c I against its closed form
    c (tr D I - 2 D)."""
    got = rates.noncorotational_rate("truesdell", state, rates.constant_law(c))
    want = c * (np.trace(state.D) * np.eye(3) - 2.0 * state.D)
    return frob(got - want)


def constant_field_violation(kind: str, state: KinematicState,
                             c: float = 2.5) -> float:
    return frob(rates.noncorotational_rate(kind, state, rates.constant_law(c)))


def check_commutator_identity(law: StressLaw, B: Array, Om: Array) -> float:
    """Residual of [Omega, sigma(B)] - D_B sigma . [Omega, B]."""
    sigma, M = rates.sigma_and_gradient(law, B)
    return frob(commutator(Om, sigma) - apply_mandel(M, commutator(Om, B)))


def check_norm_identity(gen: SpinGenerator, motion: Motion, t: float,
                        law: StressLaw, h: float = 1e-6) -> float:
    """Residual of 2 <D[sigma], sigma> - d/dt ||sigma||^2 (FD oracle)."""
    state = state_at(motion, t)
    rate = rates.corotational_rate(gen, state, law)
    sigma = law.sigma(state.B)
    lhs = 2.0 * float(np.tensordot(rate, sigma))

    def norm2(s: float) -> Array:
        sig = law.sigma(state_at(motion, s).B)
        return np.array([[float(np.tensordot(sig, sig))]])

    rhs = float(material_derivative_fd(norm2, t, h)[0, 0])
    scale = max(1.0, abs(rhs))
    return abs(lhs - rhs) / scale


def check_perfect_fluid(gen_list: Sequence[SpinGenerator],
                        state: KinematicState, law: StressLaw,
                        h2: Callable[[float], float]) -> float:
    """Max deviation among all generators' rates of a perfect-fluid stress,
    and against the closed form h''(sqrt det B) sqrt(det B) tr(D) I."""
    det_b = float(np.linalg.det(state.B))
    closed = (h2(math.sqrt(det_b)) * math.sqrt(det_b)
              * float(np.trace(state.D)) * np.eye(3))
    vals = [rates.corotational_rate(g, state, law) for g in gen_list]
    worst = max(frob(v - closed) for v in vals)
    for i in range(len(vals)):
        for j in range(i + 1, len(vals)):
            worst = max(worst, frob(vals[i] - vals[j]))
    return worst


def check_objectivity(gen: SpinGenerator, motion: Motion,
                      rotation: RigidRotation, t: float,
                      law: StressLaw | None = None) -> tuple[float, float]:
    """Spin and rate transformation residuals under the superposed rotation
    F -> Q(t) F(t): Omega' = Qdot Q^T + Q Omega Q^T and
    D[sigma'] = Q D[sigma] Q^T."""
    law = law or rates.linear_law()
    base = state_at(motion, t)
    primed = state_at(Composite(rotation, motion), t)
    Q = rotation.F(t)
    Qdot = rotation.Fdot(t)
    Om = spins.spin_tensor(gen, base)
    Om_p = spins.spin_tensor(gen, primed)
    spin_res = frob(Om_p - (Qdot @ Q.T + Q @ Om @ Q.T))
    r = rates.corotational_rate(gen, base, law)
    r_p = rates.corotational_rate(gen, primed, law)
    rate_res = frob(r_p - Q @ r @ Q.T)
    return spin_res, rate_res


def check_corotated_frame_form(gen: SpinGenerator, motion: Motion, t: float,
                               law: StressLaw, dt: float = 5e-4) -> float:
    """Residual of the spinning-frame form Q (d/dt)[Q^T sigma Q] Q^T against
    the direct evaluation, with the frame integrated from Qdot = Omega(s) Q.

    The central difference across one integration step dominates the residual
    (O(dt^2)); the RK4 frame error sits far below it.
    """
    def omega(s: float) -> Array:
        return spins.spin_tensor(gen, state_at(motion, s))

    if abs(round(t / dt) * dt - t) > 0.25 * dt:
        raise ValueError("t must lie on the integration grid (a multiple of dt)")
    n_steps = int(round((t + dt) / dt))
    frames = {}
    Q = np.eye(3)
    s = 0.0
    for k in range(n_steps + 1):
        if abs(s - (t - dt)) < 0.5 * dt or abs(s - t) < 0.5 * dt \
                or abs(s - (t + dt)) < 0.5 * dt:
            frames[round(s / dt)] = Q
        k1 = omega(s) @ Q
        om_mid = omega(s + 0.5 * dt)
        k2 = om_mid @ (Q + 0.5 * dt * k1)
        k3 = om_mid @ (Q + 0.5 * dt * k2)
        k4 = omega(s + dt) @ (Q + dt * k3)
        Q = Q + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        s += dt

    def corotated(step: int) -> Array:
        Qs = frames[step]
        sigma = law.sigma(state_at(motion, step * dt).B)
        return Qs.T @ sigma @ Qs

    base = round(t / dt)
    Qt = frames[base]
    fd = (corotated(base + 1) - corotated(base - 1)) / (2.0 * dt)
    left = Qt @ fd @ Qt.T
    right = rates.corotational_rate(gen, state_at(motion, t), law)
    return frob(left - right) / max(1.0, frob(right))


@dataclass(frozen=True)
class ConservationResult:
    eig_drift: float
    norm_drift: float
    reorthonormalizations: int


def _polar_project(Q: Array) -> Array:
    U, _, Vt = np.linalg.svd(Q)
    return U @ Vt


def check_invariant_conservation(gen: SpinGenerator, motion: Motion,
                                 sigma0: Array, horizon: float = 1.0,
                                 dt: float = 1e-3) -> ConservationResult:
    """Integrate the corotated frame Qdot = Omega(t) Q with classical RK4 and
    transport sigma(t) = Q sigma0 Q^T, i.e. impose D[sigma] = 0; report the
    eigenvalue and norm drift over the horizon.

    A step whose orthogonality drift exceeds 1e-8 is re-orthonormalized by
    polar projection and counted.
    """
    def omega(s: float) -> Array:
        return spins.spin_tensor(gen, state_at(motion, s))

    n_steps = int(round(horizon / dt))
    Q = np.eye(3)
    reorths = 0
    t = 0.0
    for _ in range(n_steps):
        k1 = omega(t) @ Q
        om_mid = omega(t + 0.5 * dt)
        k2 = om_mid @ (Q + 0.5 * dt * k1)
        k3 = om_mid @ (Q + 0.5 * dt * k2)
        k4 = omega(t + dt) @ (Q + dt * k3)
        Q = Q + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4)
        t += dt
        if frob(Q.T @ Q - np.eye(3)) > 1e-8:
            Q = _polar_project(Q)
            reorths += 1
    sigma_t = Q @ sigma0 @ Q.T
    eig0 = np.linalg.eigvalsh(sym(sigma0))
    eig1 = np.linalg.eigvalsh(sym(sigma_t))
    eig_drift = float(np.max(np.abs(eig1 - eig0)))
    norm_drift = abs(frob(sigma_t) - frob(sigma0))
    return ConservationResult(eig_drift, norm_drift, reorths)


# ---------------------------------------------------------------------------
# suite runner
# ---------------------------------------------------------------------------

def _corotational_catalog() -> list[SpinGenerator]:
    return [spins.zaremba_jaumann(), spins.green_naghdi(), spins.logarithmic(),
            spins.aifantis(1, 0.5), spins.aifantis(2, 0.5)]


def _identity_checks(seed: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out: list[CheckResult] = []
    laws = [rates.linear_law(), rates.almansi_law(),
            rates.isochoric_neo_hooke_law(), rates.perfect_fluid_quadratic()]

    worst = 0.0
    for _ in range(50):
        B = random_spd(rng)
        Om = random_skew(rng)
        for law in laws:
            worst = max(worst, check_commutator_identity(law, B, Om))
    out.append(_result("commutator_identity", "any", seed, worst, 1e-10))

    motions = builtin_motions()
    gens = _corotational_catalog()
    worst = 0.0
    for name, motion in motions.items():
        state = state_at(motion, 0.4)
        for gen in gens:
            worst = max(worst, check_product_rule(
                gen, state, rates.linear_law(), rates.almansi_law()))
            worst = max(worst, check_product_rule(
                gen, state, rates.linear_law(), rates.linear_law()))
    out.append(_result("product_rule", "all-corotational", seed, worst, 1e-9))

    worst = 0.0
    for name, motion in motions.items():
        for gen in gens:
            for law in (rates.linear_law(), rates.almansi_law(), rates.log_law()):
                worst = max(worst, check_chain_rule(gen, motion, 0.4, law))
    out.append(_result("chain_rule_fd", "all-corotational", seed, worst, 1e-6))

    worst = 0.0
    for name, motion in motions.items():
        state = state_at(motion, 0.4)
        for gen in gens:
            worst = max(worst, check_constant_field(gen, state))
    out.append(_result("constant_field_identity", "all-corotational", seed,
                       worst, 1e-12))

    worst = 0.0
    for name, motion in motions.items():
        state = state_at(motion, 0.4)
        worst = max(worst, truesdell_constant_field_residual(state))
    out.append(_result("truesdell_constant_field_closed_form", "truesdell",
                       seed, worst, 1e-12))

    worst = 0.0
    for name, motion in motions.items():
        for gen in gens:
            worst = max(worst, check_norm_identity(
                gen, motion, 0.4, rates.almansi_law()))
    out.append(_result("norm_identity_fd", "all-corotational", seed, worst, 1e-7))

    worst = 0.0
    fluid = rates.perfect_fluid_quadratic()
    for name, motion in motions.items():
        state = state_at(motion, 0.4)
        worst = max(worst, check_perfect_fluid(
            gens, state, fluid, lambda s: 2.0))
    out.append(_result("perfect_fluid_coincidence", "all-corotational", seed,
                       worst, 1e-10))

    # the direct evaluation equals the spinning-frame (back-rotated) form
    worst = 0.0
    for gen in (spins.zaremba_jaumann(), spins.green_naghdi(),
                spins.logarithmic()):
        worst = max(worst, check_corotated_frame_form(
            gen, motions["rotation_shear"], 0.4, rates.almansi_law()))
    out.append(_result("corotated_frame_form_fd", "zj/gn/log", seed, worst,
                       1e-5))

    # the logarithmic spin's defining property: D_log[log V] = D
    worst = 0.0
    log_gen = spins.logarithmic()
    half_log = rates.PrimaryLaw(lambda x: 0.5 * math.log(x),
                                lambda x: 0.5 / x, name="log-V")
    for name, motion in motions.items():
        if name == "rotation":
            continue  # B = I keeps D = 0 trivially
        state = state_at(motion, 0.4)
        got = rates.corotational_rate(log_gen, state, half_log)
        worst = max(worst, frob(got - state.D))
    out.append(_result("log_rate_of_log_V_is_D", "log", seed, worst, 1e-9))
    return out


def _counterexample_checks(seed: int) -> list[CheckResult]:
    # designed motions where the non-corotational rates must fail the
    # structure identities with a visible margin
    out: list[CheckResult] = []
    motions = builtin_motions()
    shear = state_at(motions["simple_shear"], 0.5)
    stretchy = state_at(motions["triaxial"], 0.5)
    for kind in rates.NONCOROTATIONAL_KINDS:
        state = stretchy if kind == "biezeno-hencky" else shear
        res = constant_field_violation(kind, state)
        out.append(_result(f"constant_field_violation[{kind}]", kind, seed,
                           res, 1e-3, invert=True))
        res = product_rule_violation(kind, state, rates.linear_law(),
                                     rates.linear_law())
        out.append(_result(f"product_rule_violation[{kind}]", kind, seed,
                           res, 1e-3, invert=True))
    return out


def _objectivity_checks(seed: int) -> list[CheckResult]:
    out: list[CheckResult] = []
    motions = builtin_motions()
    rot = RigidRotation((0.3, -1.0, 0.8), 1.7)
    gens = _corotational_catalog() + [spins.gurtin_spear()]
    worst_spin = 0.0
    worst_rate = 0.0
    for gen in gens:
        for name in ("simple_shear", "triaxial", "polynomial"):
            s_res, r_res = check_objectivity(gen, motions[name], rot, 0.4,
                                             rates.almansi_law())
            worst_spin = max(worst_spin, s_res)
            worst_rate = max(worst_rate, r_res)
    out.append(_result("objectivity_spin_transform", "all", seed, worst_spin, 1e-8))
    out.append(_result("objectivity_rate_transform", "all", seed, worst_rate, 1e-8))
    return out


def _conservation_checks(seed: int) -> list[CheckResult]:
    rng = np.random.default_rng(seed)
    out: list[CheckResult] = []
    sigma0 = random_sym(rng)
    motions = builtin_motions()
    # fast spin keeps the RK4 truncation error measurable above roundoff,
    # so the dt-halving factor reflects the integrator order
    fast = Composite(RigidRotation((0.0, 0.0, 1.0), 5.0), SimpleShear.linear(2.0))
    cases = [("zj", spins.zaremba_jaumann(), motions["rotation_shear"]),
             ("gn", spins.green_naghdi(), motions["simple_shear"]),
             ("log", spins.logarithmic(), fast)]
    worst = 0.0
    for _, gen, motion in cases:
        res = check_invariant_conservation(gen, motion, sigma0)
        worst = max(worst, res.eig_drift, res.norm_drift)
    out.append(_result("invariant_conservation_drift", "zj/gn/log", seed,
                       worst, 1e-8))

    # closed-form rigid check: ZJ transport along a rigid rotation equals
    # Q sigma0 Q^T exactly, eigenvalues frozen
    res = check_invariant_conservation(spins.zaremba_jaumann(),
                                       motions["rotation"], sigma0)
    out.append(_result("invariant_conservation_rigid", "zj", seed,
                       res.eig_drift, 1e-10))

    coarse = check_invariant_conservation(spins.green_naghdi(), fast, sigma0,
                                          dt=2e-3)
    fine = check_invariant_conservation(spins.green_naghdi(), fast, sigma0,
                                        dt=1e-3)
    factor = coarse.eig_drift / max(fine.eig_drift, 1e-300)
    out.append(_result("invariant_conservation_dt_halving", "gn", seed,
                       factor, 8.0, invert=True))
    return out


SUITES = ("identities", "counterexamples", "objectivity", "conservation", "all")


def run_suite(suite: str = "all", seed: int = DEFAULT_SEED) -> list[CheckResult]:
    """Run a named check suite; reproducible bit-for-bit for a given seed."""
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}; choose from {SUITES}")
    parts = {
        "identities": _identity_checks,
        "counterexamples": _counterexample_checks,
        "objectivity": _objectivity_checks,
        "conservation": _conservation_checks,
    }
    names = list(parts) if suite == "all" else [suite]
    results: list[CheckResult] = []
    for name in names:
        results.extend(parts[name](seed))
    return results


def report_json(results: Sequence[CheckResult]) -> str:
    return json.dumps({"results": [r.to_record() for r in results],
                       "all_passed": all(r.passed for r in results)},
                      indent=2)

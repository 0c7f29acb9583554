"""Exact-shape 3x3 symmetric tensor algebra.

Spectral decomposition with eigenvalue clustering, eigenprojections via
Sylvester's formula, primary matrix functions, divided-difference (Daleckii-
Krein) Frechet derivatives, and the orthonormal 6-vector embedding of
fourth-order operators on Sym(3).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

Array = np.ndarray

DEFAULT_CLUSTER_TOL = 1e-8
_SQRT2 = math.sqrt(2.0)


class NotPositiveDefiniteError(ValueError):
    """Raised when an operation requires a symmetric positive definite tensor."""


# ---------------------------------------------------------------------------
# elementary algebra
# ---------------------------------------------------------------------------

def identity() -> Array:
    return np.eye(3)


def sym(X: Array) -> Array:
    return 0.5 * (X + X.T)


def skew(X: Array) -> Array:
    return 0.5 * (X - X.T)


def dev(X: Array) -> Array:
    return X - (np.trace(X) / 3.0) * np.eye(3)


def commutator(A: Array, B: Array) -> Array:
    """Lie bracket [A, B] = A B - B A."""
    return A @ B - B @ A


def inner(X: Array, Y: Array) -> float:
    """Frobenius inner product <X, Y> = tr(X Y^T)."""
    return float(np.tensordot(X, Y))


def frob(X: Array) -> float:
    return float(np.linalg.norm(X))


def sym3(a11: float, a22: float, a33: float,
         a12: float = 0.0, a13: float = 0.0, a23: float = 0.0) -> Array:
    """Symmetric tensor from its six independent components."""
    return np.array([[a11, a12, a13],
                     [a12, a22, a23],
                     [a13, a23, a33]], dtype=float)


def skew3(w12: float, w13: float = 0.0, w23: float = 0.0) -> Array:
    """Antisymmetric tensor from its three independent components."""
    return np.array([[0.0, w12, w13],
                     [-w12, 0.0, w23],
                     [-w13, -w23, 0.0]])


def invariants(B: Array) -> tuple[float, float, float]:
    """Principal invariants (I1, I2, I3) = (tr B, tr Cof B, det B)."""
    i1 = float(np.trace(B))
    i2 = 0.5 * (i1 * i1 - float(np.trace(B @ B)))
    i3 = float(np.linalg.det(B))
    return i1, i2, i3


def _check_symmetric(A: Array, name: str = "tensor") -> Array:
    if A.shape != (3, 3):
        raise ValueError(f"{name} must be 3x3, got shape {A.shape}")
    scale = max(1.0, float(np.abs(A).max()))
    if float(np.abs(A - A.T).max()) > 1e-9 * scale:
        raise ValueError(f"{name} is not symmetric")
    return sym(A)


# ---------------------------------------------------------------------------
# analytic 3x3 symmetric eigenvalues
# ---------------------------------------------------------------------------

def _det3(M: Array) -> float:
    return (M[0, 0] * (M[1, 1] * M[2, 2] - M[1, 2] * M[2, 1])
            - M[0, 1] * (M[1, 0] * M[2, 2] - M[1, 2] * M[2, 0])
            + M[0, 2] * (M[1, 0] * M[2, 1] - M[1, 1] * M[2, 0]))


def _newton_polish(A: Array, lam: float, scale: float) -> float:
    # one Newton step on p(x) = det(A - x I); p'(x) = -sum of principal 2x2 minors
    M = A - lam * np.eye(3)
    p = _det3(M)
    dp = -((M[1, 1] * M[2, 2] - M[1, 2] * M[2, 1])
           + (M[0, 0] * M[2, 2] - M[0, 2] * M[2, 0])
           + (M[0, 0] * M[1, 1] - M[0, 1] * M[1, 0]))
    if abs(dp) > 1e-4 * scale * scale:
        lam -= p / dp
    return lam


def eigvals_sym3_analytic(A: Array) -> tuple[float, float, float]:
    """Eigenvalues of a symmetric 3x3 tensor, ascending, by the analytic
    trigonometric solve of the characteristic cubic on the shifted deviator,
    followed by one Newton polish step per root on det(A - x I).

    Being a characteristic-polynomial method, its absolute accuracy degrades
    to roughly eps * ||A||^3 / |p'| near close or small eigenvalues, far worse
    than the eps * ||A|| of an orthogonal-transform eigensolver; use it only
    where that envelope suffices.
    """
    q = float(np.trace(A)) / 3.0
    Ad = A - q * np.eye(3)
    p2 = float(np.tensordot(Ad, Ad)) / 6.0
    scale = max(abs(q), math.sqrt(abs(p2)), 1e-300)
    if p2 <= (1e-15 * scale) ** 2:
        return (q, q, q)
    p = math.sqrt(p2)
    r = _det3(Ad / p) / 2.0
    r = min(1.0, max(-1.0, r))
    phi = math.acos(r) / 3.0
    hi = q + 2.0 * p * math.cos(phi)
    lo = q + 2.0 * p * math.cos(phi + 2.0 * math.pi / 3.0)
    mid = 3.0 * q - hi - lo
    out = [_newton_polish(A, x, scale) for x in (lo, mid, hi)]
    out.sort()
    return (out[0], out[1], out[2])


def eigvals_sym3(A: Array) -> tuple[float, float, float]:
    """Eigenvalues of a symmetric 3x3 tensor, ascending.

    Dense symmetric eigensolve: Sylvester projections amplify eigenvalue
    error by the reciprocal eigenvalue gap, and only an orthogonal-transform
    method keeps that error at eps * ||A|| uniformly (the analytic
    characteristic-polynomial route loses several digits on close or small
    eigenvalues, which breaks the projection algebra at large eigenvalue
    ratios).
    """
    w = np.linalg.eigvalsh(A)
    return (float(w[0]), float(w[1]), float(w[2]))


def _cluster(mu: Sequence[float], tol_rel: float) -> tuple[list[float], list[int]]:
    # mu ascending; adjacent values merge when the gap falls below tol_rel * max
    gap = tol_rel * max(abs(m) for m in mu)
    groups: list[list[float]] = [[mu[0]]]
    for m in mu[1:]:
        if m - groups[-1][-1] <= gap:
            groups[-1].append(m)
        else:
            groups.append([m])
    reps = [float(sum(g) / len(g)) for g in groups]
    mult = [len(g) for g in groups]
    return reps, mult


@dataclass(frozen=True, eq=False)
class Spectral3:
    """Clustered spectral decomposition of an SPD tensor.

    eigenvalues are the m distinct clustered values (ascending), projections
    the subordinate eigenprojections satisfying P_i P_j = delta_ij P_i,
    sum P_i = identity and tr P_i = multiplicity.
    """

    eigenvalues: tuple[float, ...]
    multiplicities: tuple[int, ...]
    projections: tuple[Array, ...]

    @property
    def m(self) -> int:
        """Eigenindex: number of distinct eigenvalues."""
        return len(self.eigenvalues)

    def reconstruct(self) -> Array:
        out = np.zeros((3, 3))
        for mu, P in zip(self.eigenvalues, self.projections):
            out += mu * P
        return out

    def apply_function(self, f: Callable[[float], float]) -> Array:
        out = np.zeros((3, 3))
        for mu, P in zip(self.eigenvalues, self.projections):
            out += f(mu) * P
        return out


def spectral_decompose(A: Array, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Spectral3:
    """Eigenvalues, multiplicities and Sylvester eigenprojections of an SPD tensor.

    Raw eigenvalues closer than cluster_tol * max(mu) (relative) merge into a
    single cluster; projections are built from the clustered values, which keeps
    them well conditioned at near-degeneracy where individual eigenvectors are
    ambiguous.
    """
    if cluster_tol <= 0:
        raise ValueError("cluster_tol must be positive")
    A = _check_symmetric(A)
    raw = eigvals_sym3(A)
    if raw[0] <= 0.0:
        raise NotPositiveDefiniteError(
            f"tensor is not positive definite (min eigenvalue {raw[0]:.3e})")
    reps, mult = _cluster(raw, cluster_tol)
    eye = np.eye(3)
    if len(reps) == 1:
        projs = [eye]
    else:
        projs = []
        for i, mui in enumerate(reps):
            P = eye
            for j, muj in enumerate(reps):
                if j != i:
                    P = P @ (A - muj * eye) / (mui - muj)
            projs.append(sym(P))
    for P in projs:
        P.setflags(write=False)
    return Spectral3(tuple(reps), tuple(mult), tuple(projs))


# ---------------------------------------------------------------------------
# primary matrix functions and divided-difference Frechet derivatives
# ---------------------------------------------------------------------------

def primary_matrix_function(A: Array, f: Callable[[float], float],
                            cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Array:
    """Evaluate the primary matrix function sum f(mu_i) P_i of an SPD tensor."""
    spectral = spectral_decompose(A, cluster_tol)
    try:
        vals = [f(mu) for mu in spectral.eigenvalues]
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        raise ValueError(f"scale function undefined on spectrum: {exc}") from exc
    if not all(math.isfinite(v) for v in vals):
        raise ValueError("scale function not finite on spectrum")
    out = np.zeros((3, 3))
    for v, P in zip(vals, spectral.projections):
        out += v * P
    return out


def tensor_log(A: Array, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Array:
    return primary_matrix_function(A, math.log, cluster_tol)


def tensor_sqrt(A: Array, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Array:
    return primary_matrix_function(A, math.sqrt, cluster_tol)


def tensor_power(A: Array, p: float, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Array:
    return primary_matrix_function(A, lambda x: x ** p, cluster_tol)


def divided_difference_table(spectral: Spectral3, f: Callable[[float], float],
                             fprime: Callable[[float], float]) -> Array:
    """m x m table of divided differences (f(mu_i)-f(mu_j))/(mu_i-mu_j).

    Diagonal entries take the derivative value f'(mu_i); clustering guarantees
    off-diagonal gaps stay away from zero.
    """
    m = spectral.m
    mu = spectral.eigenvalues
    fv = [f(x) for x in mu]
    tab = np.empty((m, m))
    for i in range(m):
        for j in range(m):
            tab[i, j] = fprime(mu[i]) if i == j else (fv[i] - fv[j]) / (mu[i] - mu[j])
    return tab


def frechet_primary(B: Array, f: Callable[[float], float],
                    fprime: Callable[[float], float],
                    cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Array:
    """Frechet derivative D_B f(B) of a primary matrix function, as a 6x6
    operator in the orthonormal basis of Sym(3).

    Daleckii-Krein: in the eigenbasis of B the action is entrywise
    multiplication by the divided-difference table.
    """
    spectral = spectral_decompose(B, cluster_tol)
    tab = divided_difference_table(spectral, f, fprime)
    P = spectral.projections

    def op(H: Array) -> Array:
        out = np.zeros((3, 3))
        for i in range(spectral.m):
            PiH = P[i] @ H
            for j in range(spectral.m):
                out += tab[i, j] * (PiH @ P[j])
        return out

    return operator_to_mandel(op)


def frechet_log(B: Array, cluster_tol: float = DEFAULT_CLUSTER_TOL) -> Array:
    """D_B log B as a symmetric positive definite 6x6 operator."""
    return frechet_primary(B, math.log, lambda x: 1.0 / x, cluster_tol)


# ---------------------------------------------------------------------------
# 6-vector embeddings of Sym(3) and operators on it
# ---------------------------------------------------------------------------

def embed6(H: Array) -> Array:
    """Orthonormal (Mandel) coordinates (h11, h22, h33, s2*h12, s2*h13, s2*h23).

    Isometry: <H, K>_Sym(3) = <embed6(H), embed6(K)>_R6.
    """
    return np.array([H[0, 0], H[1, 1], H[2, 2],
                     _SQRT2 * H[0, 1], _SQRT2 * H[0, 2], _SQRT2 * H[1, 2]])


def extract6(v: Array) -> Array:
    a, b, c = v[3] / _SQRT2, v[4] / _SQRT2, v[5] / _SQRT2
    return np.array([[v[0], a, b],
                     [a, v[1], c],
                     [b, c, v[2]]])


def unweighted_vec(H: Array) -> Array:
    """Unweighted 6-vector (h11, h22, h33, h12, h23, h31).

    Read-only convention for reproducing published singular-value tables; not
    an isometry (shear slots count once).
    """
    return np.array([H[0, 0], H[1, 1], H[2, 2], H[0, 1], H[1, 2], H[2, 0]])


def mandel_basis() -> tuple[Array, ...]:
    basis = []
    for k in range(6):
        v = np.zeros(6)
        v[k] = 1.0
        E = extract6(v)
        E.setflags(write=False)
        basis.append(E)
    return tuple(basis)


_MANDEL_BASIS = mandel_basis()


def operator_to_mandel(op: Callable[[Array], Array]) -> Array:
    """6x6 matrix of a linear map Sym(3) -> Sym(3) in the orthonormal basis."""
    M = np.empty((6, 6))
    for k, E in enumerate(_MANDEL_BASIS):
        M[:, k] = embed6(op(E))
    return M


def apply_mandel(M: Array, H: Array) -> Array:
    return extract6(M @ embed6(H))


def rotation_to_mandel(Q: Array) -> Array:
    """6x6 representation of the congruence H -> Q H Q^T (orthogonal when Q is)."""
    return operator_to_mandel(lambda H: Q @ H @ Q.T)


def mandel_to_unweighted(M: Array) -> Array:
    """Re-express a 6x6 operator matrix from the orthonormal basis into the
    unweighted component convention: <M.h_m, h_m> = <M_u.h_u, h_u> with
    h_u = unweighted_vec(H)."""
    T = np.zeros((6, 6))
    T[0, 0] = T[1, 1] = T[2, 2] = 1.0
    T[3, 3] = _SQRT2      # unweighted slot 4 = h12 -> mandel slot 4
    T[4, 5] = _SQRT2      # unweighted slot 6 = h31 -> mandel slot 5 (13)
    T[5, 4] = _SQRT2      # unweighted slot 5 = h23 -> mandel slot 6 (23)
    return T.T @ M @ T


# ---------------------------------------------------------------------------
# random sampling for property suites
# ---------------------------------------------------------------------------

def haar_rotation(rng: np.random.Generator) -> Array:
    """Haar-distributed proper rotation via sign-fixed QR."""
    Z = rng.normal(size=(3, 3))
    Q, R = np.linalg.qr(Z)
    Q = Q @ np.diag(np.sign(np.diag(R)))
    if np.linalg.det(Q) < 0:
        Q[:, 0] = -Q[:, 0]
    return Q


def random_spd(rng: np.random.Generator, log_range: float = 3.0) -> Array:
    """Random SPD tensor Q diag(exp u) Q^T, u uniform in [-log_range, log_range]."""
    mu = np.exp(rng.uniform(-log_range, log_range, size=3))
    Q = haar_rotation(rng)
    return sym(Q @ np.diag(mu) @ Q.T)


def random_sym(rng: np.random.Generator, scale: float = 1.0) -> Array:
    X = rng.normal(scale=scale, size=(3, 3))
    return sym(X)


def random_skew(rng: np.random.Generator, scale: float = 1.0) -> Array:
    X = rng.normal(scale=scale, size=(3, 3))
    return skew(X)

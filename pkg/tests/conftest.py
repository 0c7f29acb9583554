import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)


def dense_projections(A):
    """Eigenprojection oracle from the dense LAPACK eigensolver: groups raw
    eigenvectors by clustered eigenvalue."""
    w, Q = np.linalg.eigh(A)
    groups = []
    tol = 1e-8 * max(abs(w))
    for k in range(3):
        if groups and w[k] - groups[-1][-1][-1] <= tol:
            groups[-1].append((k, w[k]))
        else:
            groups.append([(k, w[k])])
    projs = []
    vals = []
    for g in groups:
        P = np.zeros((3, 3))
        for k, _ in g:
            P += np.outer(Q[:, k], Q[:, k])
        projs.append(P)
        vals.append(np.mean([wk for _, wk in g]))
    return vals, projs

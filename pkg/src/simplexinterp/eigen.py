"""Small dense symmetric eigen/singular solvers.

The matrices in this package are tiny (a few dozen rows), so the solvers are
written for verifiability rather than speed: a cyclic Jacobi iteration for
symmetric eigenproblems, a Cholesky reduction on top of it for generalized
pencils, and a one-sided Jacobi orthogonalization for smallest singular
values.  Library solvers are used as independent cross-checks in the tests.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import NumericalFailureError


def cyclic_jacobi_eigh(S: np.ndarray, tol: float = 1e-12, max_sweeps: int = 100):
    """Eigendecomposition of a symmetric matrix by cyclic Jacobi rotations.

    Sweeps rows cyclically until the off-diagonal Frobenius norm drops below
    ``tol`` times the matrix norm.  Returns (eigenvalues ascending, Q) with
    S = Q diag(w) Q^T.
    """
    A = np.array(S, dtype=float)
    n = A.shape[0]
    if A.shape != (n, n):
        raise ValueError("matrix must be square")
    if not np.allclose(A, A.T, rtol=0.0, atol=1e-12 * max(1.0, np.abs(A).max())):
        raise ValueError("matrix must be symmetric")
    A = (A + A.T) / 2.0
    Q = np.eye(n)
    scale = max(np.linalg.norm(A), 1e-300)
    for _ in range(max_sweeps):
        # off-diagonal Frobenius norm, summed directly (the textbook
        # ||A||^2 - ||diag||^2 form cancels catastrophically near convergence)
        off_entries = A - np.diag(np.diag(A))
        off = float(np.linalg.norm(off_entries))
        if off <= tol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[p, q]
                if abs(apq) <= 1e-300:
                    continue
                theta = (A[q, q] - A[p, p]) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                rp, rq = A[p, :].copy(), A[q, :].copy()
                A[p, :] = c * rp - s * rq
                A[q, :] = s * rp + c * rq
                cp, cq = A[:, p].copy(), A[:, q].copy()
                A[:, p] = c * cp - s * cq
                A[:, q] = s * cp + c * cq
                A[p, q] = A[q, p] = 0.0
                qp, qq = Q[:, p].copy(), Q[:, q].copy()
                Q[:, p] = c * qp - s * qq
                Q[:, q] = s * qp + c * qq
    else:
        raise NumericalFailureError("Jacobi eigendecomposition did not converge")
    w = np.diag(A).copy()
    order = np.argsort(w)
    return w[order], Q[:, order]


def generalized_eigh_max(A: np.ndarray, G: np.ndarray):
    """Largest eigenpair of A x = lam G x for symmetric A and SPD G.

    The pencil is first balanced by the diagonal congruence
    D = diag(G)^(-1/2) (which leaves the eigenvalues unchanged), then reduced
    with a Cholesky factor of G and handed to the Jacobi iteration.  Raises
    ``numpy.linalg.LinAlgError`` when G is not positive definite, so callers
    can retry with better quadrature before giving up.
    """
    dg = np.diag(G).copy()
    if np.any(dg <= 0.0) or not np.all(np.isfinite(dg)):
        raise np.linalg.LinAlgError("G has nonpositive diagonal")
    D = 1.0 / np.sqrt(dg)
    Ah = A * D[:, None] * D[None, :]
    Gh = G * D[:, None] * D[None, :]
    L = np.linalg.cholesky((Gh + Gh.T) / 2.0)
    # S = L^{-1} Ah L^{-T}
    Y = np.linalg.solve(L, Ah)
    S = np.linalg.solve(L, Y.T).T
    w, Q = cyclic_jacobi_eigh((S + S.T) / 2.0)
    lam = float(w[-1])
    y = Q[:, -1]
    x = D * np.linalg.solve(L.T, y)
    return lam, x


def sigma_min_one_sided_jacobi(M: np.ndarray, tol: float = 1e-14,
                               max_sweeps: int = 100) -> float:
    """Smallest singular value via one-sided Jacobi column orthogonalization."""
    A = np.array(M, dtype=float)
    if A.ndim != 2:
        raise ValueError("matrix expected")
    n = A.shape[1]
    scale = max(float(np.abs(A).max()), 1e-300)
    for _ in range(max_sweeps):
        converged = True
        for p in range(n - 1):
            for q in range(p + 1, n):
                ap, aq = A[:, p], A[:, q]
                app = float(ap @ ap)
                aqq = float(aq @ aq)
                apq = float(ap @ aq)
                if abs(apq) <= tol * scale * scale:
                    continue
                converged = False
                theta = (aqq - app) / (2.0 * apq)
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                s = t * c
                newp = c * ap - s * aq
                newq = s * ap + c * aq
                A[:, p], A[:, q] = newp, newq
        if converged:
            break
    else:
        raise NumericalFailureError("one-sided Jacobi SVD did not converge")
    return float(np.sqrt(np.sum(A**2, axis=0)).min())

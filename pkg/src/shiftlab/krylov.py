"""Orthonormal Krylov bases, projections and numerical rank."""

from __future__ import annotations

import numpy as np

RANK_TOL = 1e-8


def arnoldi_basis(A: np.ndarray, v: np.ndarray, k: int, breakdown_tol: float = 1e-13) -> np.ndarray:
    """Orthonormal basis of ``span{v, Av, ..., A^(k-1) v}``.

    Arnoldi with two passes of classical Gram-Schmidt. Stops early when the
    Krylov space becomes invariant (new direction below ``breakdown_tol``
    relative to ``||A q||``).
    """
    n = A.shape[0]
    k = min(k, n)
    Q = np.zeros((n, k), dtype=complex)
    nv = np.linalg.norm(v)
    if nv == 0:
        return Q[:, :0]
    Q[:, 0] = v / nv
    m = 1
    while m < k:
        w = A @ Q[:, m - 1]
        scale = np.linalg.norm(w)
        for _ in range(2):
            w = w - Q[:, :m] @ (Q[:, :m].conj().T @ w)
        nw = np.linalg.norm(w)
        if scale == 0 or nw <= breakdown_tol * scale:
            break
        Q[:, m] = w / nw
        m += 1
    return Q[:, :m]


def orthonormal_basis(V: np.ndarray, rel_tol: float = RANK_TOL) -> np.ndarray:
    """Orthonormal basis of the column span, dropping singular values below ``rel_tol * s_max``."""
    if V.shape[1] == 0:
        return V
    U, s, _ = np.linalg.svd(V, full_matrices=False)
    if s.size == 0 or s[0] == 0:
        return U[:, :0]
    return U[:, s > rel_tol * s[0]]


def numerical_rank(V: np.ndarray, rel_tol: float = RANK_TOL) -> int:
    return orthonormal_basis(V, rel_tol).shape[1]


def projection_residuals(Q: np.ndarray, X: np.ndarray) -> np.ndarray:
    """Relative norm of each column of ``X`` after removing its component in ``span Q``."""
    R = X - Q @ (Q.conj().T @ X)
    R = R - Q @ (Q.conj().T @ R)
    return np.linalg.norm(R, axis=0) / np.linalg.norm(X, axis=0)


def missing_directions(Q: np.ndarray, T: np.ndarray) -> np.ndarray:
    """Singular values of ``(I - QQ*) T`` for orthonormal ``T``, largest first.

    These are the sines of the principal angles between ``span T`` and
    ``span Q``; a value near 1 marks a direction of ``span T`` that ``span Q``
    does not reach.
    """
    R = T - Q @ (Q.conj().T @ T)
    R = R - Q @ (Q.conj().T @ R)
    return np.linalg.svd(R, compute_uv=False)

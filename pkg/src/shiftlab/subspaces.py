"""Invariant subspaces of the compressed shift built from an inner function.

Two equivalent descriptions are provided:

* the cyclic form ``M = C f (+) z^2 theta H^2`` with ``f = f0 + z^2 g``;
* the wandering form ``M = C f2 (+) C f1 (+) z^3 theta H^2``.

In both, ``g`` solves ``(z - ab) g = (beta / theta(ab)) (theta - theta(ab))``
where ``ab = alpha * conj(beta)``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ThetaVanishesAtAbBar, ZeroVector
from .inner import InnerFunction, evaluate, inner_part_of_polynomial, taylor_coeffs
from .krylov import (arnoldi_basis, missing_directions, numerical_rank, orthonormal_basis,
                     projection_residuals)
from .series import CoeffSeries, divide_by_linear, inner_product
from .shift import AbCoords, ParamPair, ab_inner, apply, shift_matrix

T_TOL = 1e-10
PAD = 64


def _theta_at_ab(pair: ParamPair, theta: InnerFunction) -> complex:
    t = evaluate(theta, pair.ab_bar)
    if abs(t) < T_TOL:
        raise ThetaVanishesAtAbBar(
            f"theta(alpha*conj(beta)) = {t:.3e}: no invariant subspace has this theta")
    return t


def exact_norm_sq_g(pair: ParamPair, theta: InnerFunction) -> float:
    """``||g||^2 = |beta|^2 (1 - |t|^2) / (|t|^2 (1 - |ab|^2))`` with ``t = theta(ab)``.

    The difference quotient ``(theta - t)/(z - ab)`` has the same norm as the
    model-space kernel ``(1 - conj(t) theta)/(1 - conj(ab) z)``, which is
    ``(1 - |t|^2)/(1 - |ab|^2)``.
    """
    t = _theta_at_ab(pair, theta)
    lam2 = abs(pair.ab_bar) ** 2
    return pair.beta_sq * (1 - abs(t) ** 2) / (abs(t) ** 2 * (1 - lam2))


def monomial_norm_sq_g(pair: ParamPair, n: int) -> float:
    m2 = abs(pair.ab_bar) ** 2
    return pair.beta_sq / m2 ** n * (1 - m2 ** n) / (1 - m2)


def blaschke_norm_sq_g(pair: ParamPair, a: complex) -> float:
    return pair.beta_sq * (1 - abs(a) ** 2) / abs(pair.ab_bar - a) ** 2


def solve_g(pair: ParamPair, theta: InnerFunction, N: int = 256):
    """Return ``(g, ||g||^2)`` with ``g`` truncated at order ``N``.

    Monomials and single Blaschke factors use their closed forms; other
    products go through synthetic division of the Taylor series of theta.
    The norm is always the exact infinite-series value.
    """
    _theta_at_ab(pair, theta)  # refuses theta(ab) = 0
    lam = pair.ab_bar
    zeros = theta.blaschke_zeros
    j = np.arange(N + 1)
    if not zeros:
        n = theta.monomial_power
        c = np.zeros(N + 1, dtype=complex)
        k = min(n, N + 1)
        # beta/lam^n * (z^(n-1) + lam z^(n-2) + ... + lam^(n-1))
        c[:k] = pair.beta * lam ** (-1.0 - j[:k])
        return CoeffSeries(c), monomial_norm_sq_g(pair, n)
    if len(zeros) == 1 and theta.monomial_power == 0:
        a = zeros[0]
        c = pair.beta * (1 - abs(a) ** 2) / (lam - a) * np.conj(a) ** j
        return CoeffSeries(c), blaschke_norm_sq_g(pair, a)
    return division_route_g(pair, theta, N), exact_norm_sq_g(pair, theta)


def series_pad(theta: InnerFunction, N: int, pad: int = PAD, eps: float = 1e-18) -> int:
    """Extra Taylor terms needed so the coefficients past ``N + pad`` fall below ``eps``."""
    rho, d = theta.decay_rate, len(theta.blaschke_zeros)
    if rho == 0.0:
        return pad
    K = N + pad
    while rho ** K * (K + 1.0) ** d > eps:
        K += max(16, K // 4)
    return K - N


def division_route_g(pair: ParamPair, theta: InnerFunction, N: int, pad: int = PAD) -> CoeffSeries:
    """``g`` from synthetic division of ``theta - t`` by ``z - ab`` (any inner theta)."""
    t = _theta_at_ab(pair, theta)
    u = taylor_coeffs(theta, N + series_pad(theta, N, pad)) - t
    q = divide_by_linear(u, pair.ab_bar)
    return (q * (pair.beta / t)).truncate(N)


def truncated_norm_sq_g(pair: ParamPair, theta: InnerFunction, N: int, pad: int = PAD):
    """Truncated ``sum_{k<=N} |g_k|^2`` and an estimate of the missing tail."""
    g = division_route_g(pair, theta, N + pad, pad)
    head = float(np.sum(np.abs(g.coeffs[:N + 1]) ** 2))
    rho = theta.decay_rate
    if rho == 0.0:
        return head, float(np.sum(np.abs(g.coeffs[N + 1:]) ** 2))
    d = len(theta.blaschke_zeros)
    k = np.arange(N + 1, N + pad + 1)
    known = float(np.sum(np.abs(g.coeffs[N + 1:]) ** 2))
    # envelope |g_k| <= C (k+1)^(d-1) rho^k fitted on the padded coefficients
    env = (k + 1.0) ** (d - 1) * rho ** k
    C = float(np.max(np.abs(g.coeffs[N + 1:]) / env))
    kk = np.arange(N + pad + 1, N + pad + 1 + 20000)
    beyond = C ** 2 * float(np.sum(((kk + 1.0) ** (d - 1) * rho ** kk) ** 2))
    return head, known + beyond


def r_value(pair: ParamPair, t: complex, norm_sq_g: float) -> complex:
    x = pair.alpha_sq * abs(t) ** 2 * (1 + norm_sq_g)
    return pair.ab_bar * (1 + x) / x


@dataclass(frozen=True, eq=False)
class SubspaceModel:
    """``M = C f2 (+) C f1 (+) z^3 theta H^2`` at truncation order ``N``."""

    pair: ParamPair
    theta: InnerFunction
    t: complex
    g: CoeffSeries
    norm_sq_g: float
    f1: AbCoords
    f2: AbCoords
    r: complex
    N: int
    norm_sq_tail_bound: float = 0.0

    @property
    def abs_r(self) -> float:
        return abs(self.r)

    @property
    def correction(self) -> complex:
        """Coefficient of ``z^2 theta`` removed in ``f2``."""
        p = self.pair
        return np.conj(p.alpha) * p.beta / np.conj(p.beta) * np.conj(self.t) * (1 + self.norm_sq_g)

    def abs_r_interval(self) -> tuple:
        """``|r|`` over the admissible range of ``||g||^2`` (a point when the norm is exact)."""
        lo = abs(r_value(self.pair, self.t, self.norm_sq_g + self.norm_sq_tail_bound))
        hi = abs(r_value(self.pair, self.t, self.norm_sq_g))
        return lo, hi

    def theta_block(self, power: int = 3, N: int | None = None) -> AbCoords:
        """``z**power * theta`` as coordinates."""
        N = self.N if N is None else N
        return AbCoords.from_z2_series(0.0, taylor_coeffs(self.theta, N), N, power)


def build_subspace(pair: ParamPair, theta: InnerFunction, N: int = 256,
                   exact_norm: bool = True) -> SubspaceModel:
    t = _theta_at_ab(pair, theta)
    g, norm_sq = solve_g(pair, theta, N)
    tail = 0.0
    if not exact_norm:
        norm_sq, tail = truncated_norm_sq_g(pair, theta, N)
    th = taylor_coeffs(theta, N).coeffs
    lam = pair.ab_bar
    f1 = np.zeros(N, dtype=complex)
    f1[0], f1[1] = lam, pair.beta
    f1[2:] = g.coeffs[:N - 2]
    K = np.conj(pair.alpha) * pair.beta / np.conj(pair.beta) * np.conj(t) * (1 + norm_sq)
    f2 = np.zeros(N, dtype=complex)
    f2[0] = 1.0
    f2[1:] = g.coeffs[:N - 1] - K * th[:N - 1]
    return SubspaceModel(pair, theta, t, g, norm_sq, AbCoords(f1), AbCoords(f2),
                         r_value(pair, t, norm_sq), N, tail)


# -- verification ------------------------------------------------------------

def _cos(u: AbCoords, v: AbCoords) -> float:
    nu, nv = u.norm(), v.norm()
    return abs(ab_inner(u, v)) / (nu * nv) if nu and nv else 0.0


def verify_invariance(model: SubspaceModel, seed: int = 0) -> dict:
    """Residuals of the three identities that make ``M`` invariant.

    (i)   ``S f2 = f1 - K z^3 theta``
    (ii)  ``S f1 = ab f1 + (beta/t) z^3 theta``
    (iii) ``S (z^3 theta h) = z^4 theta h`` for a random polynomial ``h``
    """
    p, N = model.pair, model.N
    z3t = model.theta_block(3)
    r1 = apply(p, model.f2) - (model.f1 - z3t * model.correction)
    r2 = apply(p, model.f1) - (model.f1 * p.ab_bar + z3t * (p.beta / model.t))
    rng = np.random.default_rng(seed)
    h = CoeffSeries(rng.normal(size=6) + 1j * rng.normal(size=6))
    th_h = (taylor_coeffs(model.theta, N) * h).coeffs
    lhs = apply(p, AbCoords.from_z2_series(0, th_h, N, 3))
    r3 = lhs - AbCoords.from_z2_series(0, th_h, N, 4)
    return {
        "S f2": r1.norm() / max(1.0, model.f1.norm()),
        "S f1": r2.norm() / max(1.0, model.f1.norm()),
        "S z3 theta h": r3.norm() / np.linalg.norm(th_h),
    }


def orthogonality_residuals(model: SubspaceModel, n_max: int = 20) -> dict:
    """Normalized inner products that vanish by construction (maxima over ``n <= n_max``)."""
    p = model.pair
    N = model.N
    th = taylor_coeffs(model.theta, N)
    blocks = [model.theta_block(n + 3) for n in range(n_max + 1)]
    g_theta = max(abs(inner_product(model.g, th.shift(n))) / np.sqrt(model.g.norm_sq())
                  for n in range(n_max + 1))
    wander = []
    v = model.f2
    for _ in range(n_max):
        v = apply(p, v)
        wander.append(_cos(model.f2, v))
    return {
        "<f2,f1>": _cos(model.f2, model.f1),
        "<f2,z^(n+3) theta>": max(_cos(model.f2, b) for b in blocks),
        "<f1,z^(n+3) theta>": max(_cos(model.f1, b) for b in blocks),
        "<g,z^n theta>": float(g_theta),
        "<f2,S^n f2>": max(wander),
    }


def subspace_test_basis(model: SubspaceModel, N: int | None = None, J: int | None = None) -> np.ndarray:
    """Columns ``f2, f1, z^3 theta, z^4 theta, ..., z^(J+2) theta`` at order ``N``."""
    N = model.N if N is None else N
    J = N // 2 if J is None else J
    th = taylor_coeffs(model.theta, N).coeffs
    cols = [model.f2.resize(N).vec, model.f1.resize(N).vec]
    for j in range(J):
        cols.append(AbCoords.from_z2_series(0, th, N, 3 + j).vec)
    return np.column_stack(cols)


def codimension_report(model: SubspaceModel, J: int = 24) -> dict:
    """``dim M_J - dim S M_{J-1}`` by numerical rank, plus alignment of the complement with ``f2``.

    ``M_J`` is spanned by ``f2, f1, z^3 theta, ..., z^(J+2) theta``; ``S`` maps
    ``M_{J-1}`` into ``M_J``, and the orthogonal complement should be ``C f2``.
    """
    T = subspace_test_basis(model, J=J)
    T = T / np.linalg.norm(T, axis=0)
    S = shift_matrix(model.pair, model.N)
    ST = S @ T[:, :-1]
    QT = orthonormal_basis(T)
    QS = orthonormal_basis(ST)
    dim_m, dim_sm = QT.shape[1], QS.shape[1]
    containment = float(np.max(projection_residuals(QT, ST)))
    # complement of S M_{J-1} inside M_J
    C = QT - QS @ (QS.conj().T @ QT)
    U, s, _ = np.linalg.svd(C, full_matrices=False)
    comp = U[:, 0]
    f2 = model.f2.vec / model.f2.norm()
    return {
        "dim_M": dim_m,
        "dim_SM": dim_sm,
        "codim": dim_m - dim_sm,
        "containment_residual": containment,
        "f2_alignment": float(abs(np.vdot(comp, f2))),
        "rank": numerical_rank(T),
    }


# -- cyclic form ----------------------------------------------------------------

def cyclic_generator(pair: ParamPair, theta: InnerFunction, N: int = 256) -> AbCoords:
    """Generator ``f = f0 + z^2 g`` of ``C f (+) z^2 theta H^2``."""
    g, _ = solve_g(pair, theta, N)
    return AbCoords.from_z2_series(1.0, g, N, 2)


def cyclic_span_residual(pair: ParamPair, theta: InnerFunction, N: int = 128) -> float:
    """Largest residual of ``f, z^2 theta, ..., z^(N/2+1) theta`` against the Krylov space of ``f``."""
    f = cyclic_generator(pair, theta, N)
    th = taylor_coeffs(theta, N).coeffs
    cols = [f.vec] + [AbCoords.from_z2_series(0, th, N, 2 + j).vec for j in range(N // 2)]
    Q = arnoldi_basis(shift_matrix(pair, N), f.vec, N - 1)
    return float(np.max(projection_residuals(Q, np.column_stack(cols))))


def shifted_subspace_gap(model: SubspaceModel, J: int = 24) -> float:
    """Gap between ``S M`` and the cyclic subspace built from ``z * theta``.

    ``S M = C f1 (+) z^3 theta H^2``, and the cyclic subspace for ``z theta`` is
    ``C f (+) z^3 theta H^2`` with ``f = f1 / ab``; compare the low-order parts.
    """
    p, N = model.pair, model.N
    th = taylor_coeffs(model.theta, N).coeffs
    blocks = [AbCoords.from_z2_series(0, th, N, 3 + j).vec for j in range(J)]
    left = np.column_stack([model.f1.vec] + blocks)
    f = cyclic_generator(p, model.theta.times_z(), N)
    right = np.column_stack([f.vec] + blocks)
    QL, QR = orthonormal_basis(left), orthonormal_basis(right)
    return float(max(missing_directions(QL, QR)[0], missing_directions(QR, QL)[0]))


def inner_part_from_generator(pair: ParamPair, f: AbCoords, tol: float = 1e-12) -> InnerFunction:
    """Inner ``theta`` with ``z^2 theta H^2 = [S f - ab f]`` for a polynomial generator ``f``."""
    if f.norm() <= tol:
        raise ZeroVector("generator is zero")
    g = f.z2_part()
    deg = g.degree(tol * max(1.0, f.norm()))
    g = g.truncate(max(deg, 0))
    if abs(f.c0) <= tol * f.norm():
        q = g
    else:
        q = g.shift(1, g.order + 1) - g * pair.ab_bar + f.c0 * pair.beta
    theta, _ = inner_part_of_polynomial(q)
    return theta


"""Wandering subspace property: closed-form tests and Krylov brute force.

An invariant subspace ``M`` has the property when ``M`` is generated by
``M (-) S M``.  For the whole space this reduces to ``|p| >= 1``; for the
subspaces built from an inner function it reduces to ``|r| >= 1``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .errors import DomainError, InconclusiveTruncation, InternalInconsistency
from .inner import InnerFunction, taylor_coeffs
from .krylov import arnoldi_basis, missing_directions, orthonormal_basis
from .series import CoeffSeries, cauchy_kernel_series, inner_product
from .shift import AbCoords, ParamPair, ab_inner, apply, kernel_adjoint, shift_matrix
from .subspaces import SubspaceModel, build_subspace, series_pad, solve_g, subspace_test_basis

CUBICS = {
    "u": (1.0, 3.0, 2.0, -1.0),
    "gamma": (1.0, 7.0, 12.0, -1.0),
}
BAND = 0.05
MISSING = 0.5


# -- thresholds -------------------------------------------------------------

def _cubic(kind: str):
    key = kind.removesuffix("-cubic")
    if key not in CUBICS:
        raise DomainError(f"unknown cubic {kind!r}; expected u or gamma")
    return CUBICS[key]


def cubic_value(kind: str, y: float) -> float:
    a, b, c, d = _cubic(kind)
    return ((a * y + b) * y + c) * y + d


@lru_cache(maxsize=None)
def cubic_root(kind: str, tol: float = 1e-14) -> float:
    """Root in ``[0, 1]`` of an increasing cubic, by bisection."""
    lo, hi = 0.0, 1.0
    if not cubic_value(kind, lo) < 0 < cubic_value(kind, hi):
        raise InternalInconsistency(f"{kind} cubic has no sign change on [0, 1]")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if cubic_value(kind, mid) < 0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


@dataclass(frozen=True)
class Thresholds:
    u: float
    gamma: float
    one_over_u_plus_1: float
    one_over_4_plus_gamma: float


def thresholds() -> Thresholds:
    u, g = cubic_root("u"), cubic_root("gamma")
    return Thresholds(u, g, 1 / (1 + u), 1 / (4 + g))


# -- whole space ----------------------------------------------------------------

@dataclass(frozen=True)
class FullSpaceVerdict:
    holds: bool
    p: complex
    abs_p: float
    alpha_sq: float
    threshold: float


def full_space_wsp(pair: ParamPair, tol: float = 1e-10) -> FullSpaceVerdict:
    """Whether ``ker S*`` generates the whole space: ``|p| >= 1``, cross-checked against ``|alpha|^2 <= 1/(1+u)``."""
    p = pair.p
    thr = thresholds().one_over_u_plus_1
    by_p = abs(p) >= 1
    by_alpha = pair.alpha_sq <= thr
    x = pair.alpha_sq
    # both tests are the sign of x^3 + x^2 - 1 up to positive factors; near its zero allow rounding
    if by_p != by_alpha and abs(x ** 3 + x ** 2 - 1) > tol:
        raise InternalInconsistency(f"|p| = {abs(p)!r} and |alpha|^2 = {x!r} disagree")
    return FullSpaceVerdict(by_p, complex(p), float(abs(p)), x, thr)


# Krylov vectors live at KRYLOV_PAD * n so that S^k f, k <= n - 2, is never cropped;
# cropped high powers otherwise fill in the very direction being tested for.
KRYLOV_PAD = 2


def _codim(Q: np.ndarray, T: np.ndarray) -> tuple:
    s = missing_directions(Q, orthonormal_basis(T))
    return int(np.sum(s > MISSING)), s


def _stable_codim(run, N: int):
    """Evaluate ``run(n)`` at ``N/2, 3N/4, N``; the counts must agree."""
    curve = []
    counts = []
    for n in (N // 2, (3 * N) // 4, N):
        c, s = run(n)
        counts.append(c)
        curve.append(float(s[0]) if s.size else 0.0)
    if len(set(counts)) != 1:
        raise InconclusiveTruncation(f"codim estimates {counts} differ across truncations")
    return counts[-1], curve


@dataclass(frozen=True)
class KrylovEstimate:
    codim: int
    residual_curve: list
    witness_residual: float | None = None


def full_space_krylov_oracle(pair: ParamPair, N: int = 128) -> KrylovEstimate:
    """Count low-order directions that ``span{S^k f~ : k <= N-2}`` misses."""
    p = pair.p
    if abs(abs(p) - 1) <= BAND:
        raise InconclusiveTruncation(f"|p| = {abs(p):.4f} is within {BAND} of 1")

    def run(n):
        L = KRYLOV_PAD * n
        f = kernel_adjoint(pair, L).vec
        Q = arnoldi_basis(shift_matrix(pair, L), f, n - 1)
        return _codim(Q, np.eye(L, dtype=complex)[:, : n // 2])

    codim, curve = _stable_codim(run, N)
    witness = None
    if abs(p) < 1:
        witness = full_space_witness_residual(pair, N)
    return KrylovEstimate(codim, curve, witness)


def full_space_witness_residual(pair: ParamPair, N: int, kmax: int | None = None) -> float:
    """Largest ``|<w, S^k (S f~ - ab f~)>| / ||S^k(...)||`` for ``w = z^2 k_p``, ``|p| < 1``."""
    p = pair.p
    w = AbCoords.from_z2_series(0.0, cauchy_kernel_series(p, N), N, 2)
    w = w * (1 / w.norm())
    f = kernel_adjoint(pair, N)
    v = apply(pair, f) - f * pair.ab_bar
    kmax = N // 2 if kmax is None else kmax
    worst = 0.0
    for _ in range(kmax):
        worst = max(worst, abs(ab_inner(w, v)) / v.norm())
        v = apply(pair, v)
    return worst


# -- subspaces -----------------------------------------------------------------

def subspace_krylov_oracle(model: SubspaceModel, N: int = 128) -> KrylovEstimate:
    """Count low-order directions of ``M`` missed by ``span{S^k f2 : k <= N-2}``."""
    if abs(model.abs_r - 1) <= BAND:
        raise InconclusiveTruncation(f"|r| = {model.abs_r:.4f} is within {BAND} of 1")
    pair, theta = model.pair, model.theta

    def run(n):
        L = KRYLOV_PAD * n
        m = model if L == model.N else build_subspace(pair, theta, L)
        Q = arnoldi_basis(shift_matrix(pair, L), m.f2.vec, n - 1)
        return _codim(Q, subspace_test_basis(m, L, n // 2))

    codim, curve = _stable_codim(run, N)
    return KrylovEstimate(codim, curve)


@dataclass(frozen=True)
class WspReport:
    r: complex
    abs_r: float
    verdict_closed_form: bool | None
    krylov_codim: int | None
    residual_curve: list
    thresholds: Thresholds
    abs_r_interval: tuple = (0.0, 0.0)
    note: str = ""

    @property
    def verdict(self) -> str:
        if self.verdict_closed_form is None:
            return "indeterminate"
        return "holds" if self.verdict_closed_form else "fails"


def wsp_decision(model: SubspaceModel, oracle_N: int | None = None) -> WspReport:
    """``|r| >= 1`` test, optionally confirmed by the Krylov oracle at order ``oracle_N``."""
    lo, hi = model.abs_r_interval()
    verdict = None if lo < 1 <= hi else hi >= 1
    codim, curve, note = None, [], ""
    if oracle_N is not None:
        try:
            est = subspace_krylov_oracle(model, oracle_N)
            codim, curve = est.codim, est.residual_curve
        except InconclusiveTruncation as exc:
            note = str(exc)
        if codim is not None and verdict is not None and verdict != (codim == 0):
            raise InternalInconsistency(f"|r| = {model.abs_r:.6f} but Krylov codim = {codim}")
    return WspReport(complex(model.r), float(model.abs_r), verdict, codim, curve,
                     thresholds(), (lo, hi), note)


@dataclass(frozen=True)
class WanderingWitness:
    g1: CoeffSeries
    h4_0: complex
    h5: CoeffSeries
    root: complex
    residuals: dict = field(default_factory=dict)

    @property
    def degree(self) -> int:
        return self.h5.degree(1e-9 * float(np.max(np.abs(self.h5.coeffs))))


def h5_witness(model: SubspaceModel, n_coeffs: int = 4) -> WanderingWitness:
    """The linear polynomial ``h5`` with ``S^2 f2 - ab S f2 = z^3 theta h5``.

    ``h5`` is recovered by projecting ``beta + (z - ab) g1`` onto ``theta z^n``,
    which is exact because multiplication by an inner function is isometric.
    """
    p, N = model.pair, model.N
    h4_0 = -model.correction
    # the projections need the series well past N when theta decays slowly
    L = N + series_pad(model.theta, N)
    g, _ = solve_g(p, model.theta, L)
    th = taylor_coeffs(model.theta, L)
    g1 = g + th * h4_0
    lhs = g1.shift(1, L) - g1 * p.ab_bar + p.beta
    h5 = CoeffSeries([inner_product(lhs, th.shift(n)) for n in range(n_coeffs)])
    root = -h5[0] / h5[1]
    K = N - 8
    series_res = np.linalg.norm((lhs - th * h5).coeffs[:K]) / np.linalg.norm(lhs.coeffs[:K])
    Sf2 = apply(p, model.f2)
    lhs_op = apply(p, Sf2) - Sf2 * p.ab_bar
    rhs_op = AbCoords.from_z2_series(0.0, (th * h5).truncate(N), N, 3)
    op_res = (lhs_op - rhs_op).vec[: K - 2]
    residuals = {
        "series": float(series_res),
        "operator": float(np.linalg.norm(op_res) / lhs_op.norm()),
        "root_vs_r": float(abs(root - model.r) / abs(model.r)),
        "closed_form": float(np.max(np.abs(h5.coeffs[:2] - np.array([-h4_0 * model.r, h4_0])))
                             / abs(h4_0 * model.r)),
    }
    return WanderingWitness(g1, complex(h4_0), h5, complex(root), residuals)


# -- scalar inequalities ----------------------------------------------------------

def a_quantity(pair: ParamPair, a: complex) -> float:
    """``1 - |alpha|^4 (1 - |a|^2) / |1 - conj(a) ab|^2``, equal to ``|t|^2 (1 + ||g||^2)``."""
    return 1 - pair.alpha_sq ** 2 * (1 - abs(a) ** 2) / abs(1 - np.conj(a) * pair.ab_bar) ** 2


def wsp_inequality_lhs(pair: ParamPair, a: complex) -> float:
    """``|ab| - |alpha|^2 A (1 - |ab|)``; nonnegative exactly when ``|r| >= 1`` for one Blaschke factor."""
    m = abs(pair.ab_bar)
    return m - pair.alpha_sq * a_quantity(pair, a) * (1 - m)


def monomial_R(pair: ParamPair, n: int) -> float:
    """For ``theta = z^n``, ``|r| >= 1`` iff ``R <= 1``."""
    m = abs(pair.ab_bar)
    return (pair.alpha_sq ** n * pair.beta_sq ** (n - 1) * m * (1 - m)
            + m * (1 - m ** (2 * n)) / (1 + m))


def monomial_bound(pair: ParamPair) -> float:
    m = abs(pair.ab_bar)
    return m / 4 + m / (1 + m)


def beta_cubic(beta_sq: float) -> float:
    b = beta_sq
    return b ** 3 - 4 * b ** 2 + 5 * b - 1


# -- counterexamples -------------------------------------------------------------

def default_a_grid() -> np.ndarray:
    """Uniform grid on ``[0.01, 0.99]`` then ``1 - 10^(-j/4)`` for ``j = 9..40``."""
    tail = 1 - 10.0 ** (-np.arange(9, 41) / 4)
    return np.concatenate([np.linspace(0.01, 0.99, 99), tail])


@dataclass(frozen=True)
class Counterexample:
    pair: ParamPair
    a: float
    lhs: float
    abs_r: float
    B: float
    epsilon: float
    grid: str


@dataclass(frozen=True)
class NotPossible:
    beta_sq: float
    threshold: float
    reason: str


def find_counterexample(beta_sq: float, grid: np.ndarray | None = None):
    """Smallest grid ``a`` giving an invariant subspace without the property.

    Searches real positive ``alpha, beta, a`` with ``|beta|^2 = beta_sq``.
    """
    if not 0 < beta_sq < 1:
        raise DomainError("beta_sq must lie in (0, 1)")
    thr = thresholds().one_over_4_plus_gamma
    if beta_sq >= thr:
        return NotPossible(beta_sq, thr, "beta_sq >= 1/(4+gamma)")
    pair = ParamPair(np.sqrt(1 - beta_sq), np.sqrt(beta_sq))
    m = abs(pair.ab_bar)
    base = m - pair.alpha_sq * (1 - m)
    grid = default_a_grid() if grid is None else np.asarray(grid, dtype=float)
    for a in grid:
        if abs(a - pair.ab_bar) < 1e-9:
            continue
        lhs = wsp_inequality_lhs(pair, a)
        if lhs < 0:
            model = build_subspace(pair, InnerFunction.blaschke(float(a)), 16)
            B = pair.alpha_sq ** 3 * (1 - m) * (1 - a ** 2) / abs(1 - a * pair.ab_bar) ** 2
            return Counterexample(pair, float(a), float(lhs), float(model.abs_r), float(B),
                                  float(-base), "linspace(0.01,0.99,99) + 1-10^(-j/4), j=9..40")
    return NotPossible(beta_sq, thr, "no grid point reached a negative value")

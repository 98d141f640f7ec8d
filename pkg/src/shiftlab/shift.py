"""The compressed shift on H^2_{alpha,beta} and its relatives.

Coordinates are taken in the orthonormal basis ``(f0, z^2, z^3, ..., z^N)``
with ``f0 = alpha + beta z``. A vector of order ``N`` therefore has ``N``
entries: index 0 is the ``f0`` coordinate and index ``k >= 1`` is the
coefficient of ``z^(k+1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, InternalInconsistency, TruncationOverflow, UnsupportedSelector
from .krylov import arnoldi_basis, projection_residuals
from .series import CoeffSeries, as_series

PAIR_TOL = 1e-12


@dataclass(frozen=True)
class ParamPair:
    """Nonzero ``(alpha, beta)`` with ``|alpha|^2 + |beta|^2 = 1``."""

    alpha: complex
    beta: complex

    def __post_init__(self):
        a, b = complex(self.alpha), complex(self.beta)
        if a == 0 or b == 0:
            raise DomainError("alpha and beta must both be nonzero")
        if abs(abs(a) ** 2 + abs(b) ** 2 - 1) > PAIR_TOL:
            raise DomainError(f"|alpha|^2 + |beta|^2 = {abs(a) ** 2 + abs(b) ** 2!r} != 1")
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @classmethod
    def from_alpha_sq(cls, alpha_sq: float, alpha_phase: float = 0.0,
                      beta_phase: float = 0.0) -> "ParamPair":
        if not 0 < alpha_sq < 1:
            raise DomainError("|alpha|^2 must lie in (0, 1)")
        return cls(math.sqrt(alpha_sq) * np.exp(1j * alpha_phase),
                   math.sqrt(1 - alpha_sq) * np.exp(1j * beta_phase))

    @classmethod
    def random(cls, rng: np.random.Generator, lo: float = 0.02, hi: float = 0.98) -> "ParamPair":
        return cls.from_alpha_sq(rng.uniform(lo, hi), *rng.uniform(0, 2 * np.pi, 2))

    @property
    def ab_bar(self) -> complex:
        """``alpha * conj(beta)``, the (1,1) entry of the shift matrix."""
        return self.alpha * np.conj(self.beta)

    @property
    def alpha_sq(self) -> float:
        return abs(self.alpha) ** 2

    @property
    def beta_sq(self) -> float:
        return abs(self.beta) ** 2

    @property
    def p(self) -> complex:
        """``(conj(beta)/conj(alpha)) (1 + |alpha|^2)``; ``|p| >= 1`` decides the full-space case."""
        return np.conj(self.beta) / np.conj(self.alpha) * (1 + self.alpha_sq)

    @property
    def gram_entry(self) -> float:
        """Top-left entry ``|alpha beta|^2 + |beta|^2`` of ``S*S``."""
        return abs(self.alpha * self.beta) ** 2 + self.beta_sq


@dataclass(frozen=True, eq=False)
class AbCoords:
    """Coordinates ``c0 * f0 + sum_n d_n z^n`` in the basis ``(f0, z^2, ..., z^N)``.

    ``overflow`` records the modulus of a coefficient pushed past ``z^N`` by
    the last shift that produced this vector.
    """

    vec: np.ndarray
    overflow: float = 0.0

    def __post_init__(self):
        v = np.array(self.vec, dtype=complex).ravel()
        if v.size < 1:
            raise ValueError("need at least the f0 coordinate")
        v.setflags(write=False)
        object.__setattr__(self, "vec", v)

    @classmethod
    def from_parts(cls, c0: complex, tail, N: int | None = None) -> "AbCoords":
        """``tail`` lists ``d_2, d_3, ...``."""
        tail = np.asarray(tail, dtype=complex).ravel()
        N = tail.size + 1 if N is None else N
        v = np.zeros(N, dtype=complex)
        v[0] = c0
        n = min(tail.size, N - 1)
        v[1:1 + n] = tail[:n]
        return cls(v)

    @classmethod
    def basis(cls, k: int, N: int) -> "AbCoords":
        """Basis vector ``f0`` for ``k = 0``, ``z^k`` for ``k >= 2``."""
        if k == 1 or k > N or k < 0:
            raise ValueError(f"no basis vector z^{k} at order {N}")
        v = np.zeros(N, dtype=complex)
        v[0 if k == 0 else k - 1] = 1
        return cls(v)

    @classmethod
    def from_z2_series(cls, c0: complex, g, N: int, power: int = 2) -> "AbCoords":
        """``c0 * f0 + z**power * g`` with ``power >= 2``."""
        g = as_series(g).coeffs
        v = np.zeros(N, dtype=complex)
        v[0] = c0
        start = power - 1
        n = max(0, min(g.size, N - start))
        v[start:start + n] = g[:n]
        return cls(v)

    @property
    def order(self) -> int:
        return self.vec.size

    @property
    def c0(self) -> complex:
        return complex(self.vec[0])

    @property
    def tail(self) -> np.ndarray:
        return self.vec[1:]

    def norm(self) -> float:
        return float(np.linalg.norm(self.vec))

    def to_hardy(self, pair: ParamPair) -> CoeffSeries:
        """The same element as an H^2 coefficient sequence (order N)."""
        c = np.zeros(self.order + 1, dtype=complex)
        c[0] = self.vec[0] * pair.alpha
        c[1] = self.vec[0] * pair.beta
        c[2:] = self.vec[1:]
        return CoeffSeries(c)

    def z2_part(self) -> CoeffSeries:
        """``g`` with ``self = c0 f0 + z^2 g``."""
        return CoeffSeries(self.vec[1:]) if self.order > 1 else CoeffSeries([0])

    def resize(self, N: int) -> "AbCoords":
        v = np.zeros(N, dtype=complex)
        n = min(N, self.order)
        v[:n] = self.vec[:n]
        return AbCoords(v)

    def __add__(self, other):
        return AbCoords(self.vec + other.vec)

    def __sub__(self, other):
        return AbCoords(self.vec - other.vec)

    def __mul__(self, scalar):
        return AbCoords(self.vec * scalar)

    __rmul__ = __mul__

    def __neg__(self):
        return AbCoords(-self.vec)


def ab_inner(u: AbCoords, v: AbCoords) -> complex:
    n = min(u.order, v.order)
    return complex(np.vdot(v.vec[:n], u.vec[:n]))


# -- operator actions -------------------------------------------------------

def _shift_vec(pair: ParamPair, x: np.ndarray) -> np.ndarray:
    y = np.zeros_like(x)
    y[0] = pair.ab_bar * x[0]
    if x.size > 1:
        y[1] = pair.beta * x[0]
        y[2:] = x[1:-1]
    return y


def apply(pair: ParamPair, v: AbCoords) -> AbCoords:
    x = v.vec
    over = abs(x[-1]) if x.size > 1 else abs(pair.beta * x[0])
    return AbCoords(_shift_vec(pair, x), overflow=float(over))


def apply_adjoint(pair: ParamPair, v: AbCoords) -> AbCoords:
    x = v.vec
    y = np.zeros_like(x)
    y[0] = np.conj(pair.ab_bar) * x[0]
    if x.size > 1:
        y[0] += np.conj(pair.beta) * x[1]
        y[1:-1] = x[2:]
    return AbCoords(y)


def apply_power(pair: ParamPair, v: AbCoords, n: int) -> AbCoords:
    for _ in range(n):
        v = apply(pair, v)
    return v


def kernel_adjoint(pair: ParamPair, N: int = 8) -> AbCoords:
    """Unit vector spanning ``ker S*``: ``f0 - (conj(alpha) beta / conj(beta)) z^2``, normalized."""
    if N < 2:
        raise TruncationOverflow("kernel vector needs z^2, so N >= 2")
    v = np.zeros(N, dtype=complex)
    v[0] = 1.0
    v[1] = -np.conj(pair.alpha) * pair.beta / np.conj(pair.beta)
    return AbCoords(v / np.linalg.norm(v))


def power_on_f0(pair: ParamPair, n: int, N: int) -> AbCoords:
    """Closed form of ``S^n f0``."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if n + 1 > N:
        raise TruncationOverflow(f"S^{n} f0 reaches z^{n + 1}, beyond order {N}")
    lam = pair.ab_bar
    v = np.zeros(N, dtype=complex)
    v[0] = lam ** n
    # beta * [lam^(n-1) z^2 + lam^(n-2) z^3 + ... + z^(n+1)]
    v[1:n + 1] = pair.beta * lam ** np.arange(n - 1, -1, -1)
    return AbCoords(v)


# -- matrices ---------------------------------------------------------------

SELECTORS = {
    "S": "S",
    "shift": "S",
    "S*": "adjoint",
    "adjoint": "adjoint",
    "gram": "gram",
    "S*S": "gram",
    "defect-left": "defect-left",
    "I-S*S": "defect-left",
    "defect-right": "defect-right",
    "I-SS*": "defect-right",
    "self-commutator": "self-commutator",
    "commutator": "self-commutator",
    "cauchy-dual": "cauchy-dual",
    "defect-power": "defect-power",
}


@dataclass(frozen=True, eq=False)
class OpMatrix:
    entries: np.ndarray
    selector: str
    basis_tag: str = field(default="f0,z^2..z^N")

    @property
    def N(self) -> int:
        return self.entries.shape[0]


def shift_matrix(pair: ParamPair, N: int) -> np.ndarray:
    """``P_N S P_N`` (exact: S is lower triangular in this basis)."""
    A = np.zeros((N, N), dtype=complex)
    A[0, 0] = pair.ab_bar
    if N > 1:
        A[1, 0] = pair.beta
        idx = np.arange(1, N - 1)
        A[idx + 1, idx] = 1.0
    return A


def matrix(pair: ParamPair, which: str, N: int, m: int = 1) -> OpMatrix:
    """Compression to the first ``N`` basis vectors of the selected operator.

    Products are formed at a padded size and cropped, so every entry equals
    the corresponding entry of the infinite matrix.
    """
    if N < 4:
        raise ValueError("N must be >= 4")
    try:
        sel = SELECTORS[which]
    except KeyError:
        raise UnsupportedSelector(f"unknown operator selector {which!r}") from None
    pad = N + max(m, 1) + 1
    S = shift_matrix(pair, pad)
    Sh = S.conj().T
    I = np.eye(pad)
    if sel == "S":
        A = S
    elif sel == "adjoint":
        A = Sh
    elif sel == "gram":
        A = Sh @ S
    elif sel == "defect-left":
        A = I - Sh @ S
    elif sel == "defect-right":
        A = I - S @ Sh
    elif sel == "self-commutator":
        A = Sh @ S - S @ Sh
    elif sel == "cauchy-dual":
        A = S.copy()
        A[:, 0] /= pair.gram_entry
    else:  # defect-power
        Sm = np.linalg.matrix_power(S, m)
        A = I - Sm @ Sm.conj().T
    return OpMatrix(np.array(A[:N, :N]), sel)


def hyponormality_check(pair: ParamPair, N: int = 64) -> float:
    """Smallest eigenvalue of the self-commutator ``S*S - SS*`` at order ``N``."""
    C = matrix(pair, "self-commutator", N).entries
    return float(np.linalg.eigvalsh((C + C.conj().T) / 2)[0])


def left_invertibility_bound(pair: ParamPair, N: int = 16) -> float:
    """Smallest eigenvalue of ``S*S``; positive means S is bounded below."""
    G = matrix(pair, "gram", N).entries
    return float(np.linalg.eigvalsh((G + G.conj().T) / 2)[0])


def cauchy_dual_first_step(pair: ParamPair, N: int = 8) -> AbCoords:
    """``S'k - (alpha conj(beta)/p') k`` for the kernel vector ``k`` (unnormalized).

    Proportional to ``z^2 (1/(conj(alpha) beta) - z)``.
    """
    k = np.zeros(N, dtype=complex)
    k[0] = 1.0
    k[1] = -np.conj(pair.alpha) * pair.beta / np.conj(pair.beta)
    Sd = matrix(pair, "cauchy-dual", N).entries
    return AbCoords(Sd @ k - pair.ab_bar / pair.gram_entry * k)


def analyticity_witness(pair: ParamPair, N: int = 128, upto: int | None = None) -> float:
    """Largest residual of ``f0, z^2, ..., z^upto`` against the Cauchy-dual Krylov
    space generated by ``ker S*``. Tends to 0 with N when the shift is analytic.
    """
    if N < 8:
        raise ValueError("N must be >= 8")
    upto = N // 2 if upto is None else upto
    Sd = matrix(pair, "cauchy-dual", N).entries
    Q = arnoldi_basis(Sd, kernel_adjoint(pair, N).vec, N - 1)
    idx = [0] + list(range(1, upto))
    E = np.eye(N, dtype=complex)[:, idx]
    return float(np.max(projection_residuals(Q, E)))


# -- unitary equivalence ----------------------------------------------------

@dataclass(frozen=True)
class EquivalenceReport:
    equivalent: bool
    abs_alpha_match: bool
    abs_beta_match: bool
    ratio_match: bool
    proportional: bool
    defect_invariants: tuple
    t1: complex | None = None
    t: complex | None = None
    conjugation_residual: float | None = None


def unitary_equivalence(pair1: ParamPair, pair2: ParamPair, tol: float = 1e-12,
                        N: int = 32) -> EquivalenceReport:
    """Decide whether ``S_{pair1}`` and ``S_{pair2}`` are unitarily equivalent.

    When they are, the diagonal unitary ``diag(t1, t, t, ...)`` with
    ``t1 = 1`` and ``t = beta2/beta1`` is checked by explicit conjugation.
    """
    a, b = pair1.alpha, pair1.beta
    a1, b1 = pair2.alpha, pair2.beta
    abs_a = abs(abs(a) - abs(a1)) <= tol
    abs_b = abs(abs(b) - abs(b1)) <= tol
    ratio = abs(a / a1 - np.conj(b1) / np.conj(b)) <= tol
    c = a1 / a
    proportional = abs(abs(c) - 1) <= tol and abs(b1 - c * b) <= tol
    defects = (matrix(pair1, "defect-left", N).entries[0, 0].real,
               matrix(pair2, "defect-left", N).entries[0, 0].real)
    ok = abs_a and abs_b and ratio
    if not ok:
        return EquivalenceReport(False, abs_a, abs_b, ratio, proportional, defects)
    t1, t = 1.0 + 0j, complex(b1 / b)
    U = np.diag([t1] + [t] * (N - 1))
    S, S1 = shift_matrix(pair1, N), shift_matrix(pair2, N)
    res = float(np.linalg.norm(U @ S @ U.conj().T - S1, 2))
    return EquivalenceReport(True, abs_a, abs_b, ratio, proportional, defects, t1, t, res)


def restricted_norm_observation(pair: ParamPair) -> dict:
    """Norm of ``S(f/delta)`` on ``C f (+) z^3 H^2`` with ``f = f0 + (beta/(alpha conj beta)) z^2``.

    Returns both the directly computed value and the closed form
    ``sqrt(|alpha beta|^2 + 1/(1 + |alpha|^2))``.
    """
    N = 8
    f = AbCoords.from_parts(1.0, [pair.beta / pair.ab_bar], N)
    delta = math.sqrt(1 + 1 / pair.alpha_sq)
    if abs(f.norm() - delta) > 1e-12:
        raise InternalInconsistency("normalization of f disagrees with delta")
    direct = apply(pair, f * (1 / delta)).norm()
    closed = math.sqrt(abs(pair.alpha * pair.beta) ** 2 + 1 / (1 + pair.alpha_sq))
    return {"direct": direct, "closed_form": closed, "delta": delta}

"""Truncated power series with complex coefficients.

An element of the Hardy space H^2 of the disk is stored by its Taylor
coefficients ``c[0..N]``; the H^2 inner product is the l^2 pairing of
coefficient sequences.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, RootMismatch

DEFAULT_ORDER = 256
DEFAULT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class CoeffSeries:
    """Truncated series ``sum_{n<=order} coeffs[n] z^n``."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).ravel()
        if c.size == 0:
            c = np.zeros(1, dtype=complex)
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def zeros(cls, order: int) -> "CoeffSeries":
        return cls(np.zeros(order + 1, dtype=complex))

    @classmethod
    def monomial(cls, n: int, order: int | None = None, coeff: complex = 1.0) -> "CoeffSeries":
        order = n if order is None else order
        c = np.zeros(order + 1, dtype=complex)
        if n <= order:
            c[n] = coeff
        return cls(c)

    @classmethod
    def constant(cls, value: complex, order: int = 0) -> "CoeffSeries":
        return cls.monomial(0, order, value)

    @property
    def order(self) -> int:
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def __getitem__(self, n):
        return self.coeffs[n]

    def __repr__(self):
        head = ", ".join(f"{c:.6g}" for c in self.coeffs[:6])
        more = ", ..." if self.coeffs.size > 6 else ""
        return f"CoeffSeries([{head}{more}], order={self.order})"

    def norm_sq(self) -> float:
        return float(np.sum(np.abs(self.coeffs) ** 2))

    def truncate(self, order: int) -> "CoeffSeries":
        return CoeffSeries(_fit(self.coeffs, order))

    def shift(self, k: int, order: int | None = None) -> "CoeffSeries":
        """Multiply by ``z**k``; the result keeps ``order`` (default: same order)."""
        order = self.order if order is None else order
        c = np.zeros(order + 1, dtype=complex)
        if k <= order:
            n = min(self.coeffs.size, order + 1 - k)
            c[k:k + n] = self.coeffs[:n]
        return CoeffSeries(c)

    def degree(self, tol: float = 0.0) -> int:
        """Index of the last coefficient with modulus above ``tol`` (-1 for zero)."""
        nz = np.nonzero(np.abs(self.coeffs) > tol)[0]
        return int(nz[-1]) if nz.size else -1

    def __call__(self, w: complex) -> complex:
        return horner(self, w)

    def __add__(self, other):
        if isinstance(other, CoeffSeries):
            n = max(self.order, other.order)
            return CoeffSeries(_fit(self.coeffs, n) + _fit(other.coeffs, n))
        c = self.coeffs.copy()
        c[0] += other
        return CoeffSeries(c)

    __radd__ = __add__

    def __neg__(self):
        return CoeffSeries(-self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, CoeffSeries):
            return mul_series(self, other)
        return CoeffSeries(self.coeffs * other)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        return CoeffSeries(self.coeffs / scalar)


def _fit(c: np.ndarray, order: int) -> np.ndarray:
    out = np.zeros(order + 1, dtype=complex)
    n = min(c.size, order + 1)
    out[:n] = c[:n]
    return out


def as_series(u) -> CoeffSeries:
    return u if isinstance(u, CoeffSeries) else CoeffSeries(u)


def inner_product(u: CoeffSeries, v: CoeffSeries) -> complex:
    """H^2 pairing ``sum u_n conj(v_n)``; the shorter series is zero-padded."""
    u, v = as_series(u), as_series(v)
    n = min(u.coeffs.size, v.coeffs.size)
    return complex(np.vdot(v.coeffs[:n], u.coeffs[:n]))


def mul_series(u: CoeffSeries, v: CoeffSeries, order: int | None = None) -> CoeffSeries:
    """Cauchy product, truncated to ``order`` (default: the larger input order)."""
    u, v = as_series(u), as_series(v)
    if order is None:
        order = max(u.order, v.order)
    a = u.coeffs[:order + 1]
    b = v.coeffs[:order + 1]
    return CoeffSeries(_fit(np.convolve(a, b), order))


def horner(u: CoeffSeries, w: complex) -> complex:
    acc = 0j
    for c in as_series(u).coeffs[::-1]:
        acc = acc * w + c
    return complex(acc)


def divide_by_linear(u: CoeffSeries, lam: complex, tol: float = DEFAULT_TOL) -> CoeffSeries:
    """Solve ``(z - lam) q = u`` by synthetic division.

    ``lam`` must be a root of ``u`` (checked with Horner's rule). The quotient
    has order ``u.order - 1``. Division runs from the top coefficient down,
    which is stable for ``|lam| < 1``.
    """
    u = as_series(u)
    rem = horner(u, lam)
    scale = max(1.0, float(np.max(np.abs(u.coeffs))))
    if not abs(rem) < tol * scale:
        raise RootMismatch(f"u({lam}) = {rem:.3e} exceeds tolerance {tol:.1e}")
    c = u.coeffs
    if c.size == 1:
        return CoeffSeries([0.0])
    q = np.zeros(c.size - 1, dtype=complex)
    acc = 0j
    for k in range(c.size - 1, 0, -1):
        acc = c[k] + lam * acc
        q[k - 1] = acc
    return CoeffSeries(q)


def cauchy_kernel_series(w: complex, N: int) -> CoeffSeries:
    """Reproducing kernel of H^2 at ``w``: coefficients ``conj(w)**n``."""
    if not abs(w) < 1:
        raise DomainError(f"|w| = {abs(w)} >= 1: kernel series is not square summable")
    return CoeffSeries(np.conj(w) ** np.arange(N + 1))


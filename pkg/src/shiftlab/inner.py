"""Inner functions of the form ``c * z**m * prod (z - a_i) / (1 - conj(a_i) z)``."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError, RootFindingFailure, ZeroPolynomial
from .series import CoeffSeries, as_series, mul_series

UNIMODULAR_TOL = 1e-12
# roots this close to the unit circle are refused rather than classified
BOUNDARY_MARGIN = 1e-8


@dataclass(frozen=True)
class InnerFunction:
    unimodular_const: complex = 1.0
    monomial_power: int = 0
    blaschke_zeros: tuple = field(default_factory=tuple)

    def __post_init__(self):
        c = complex(self.unimodular_const)
        if abs(abs(c) - 1.0) > UNIMODULAR_TOL:
            raise DomainError(f"|c| = {abs(c)} is not 1")
        if int(self.monomial_power) < 0:
            raise DomainError("monomial power must be >= 0")
        zeros = tuple(complex(a) for a in self.blaschke_zeros)
        for a in zeros:
            if not 0 < abs(a) < 1:
                raise DomainError(f"Blaschke zero {a} must satisfy 0 < |a| < 1")
        object.__setattr__(self, "unimodular_const", c)
        object.__setattr__(self, "monomial_power", int(self.monomial_power))
        object.__setattr__(self, "blaschke_zeros", zeros)

    @classmethod
    def monomial(cls, n: int) -> "InnerFunction":
        return cls(1.0, n, ())

    @classmethod
    def blaschke(cls, *zeros, power: int = 0, const: complex = 1.0) -> "InnerFunction":
        return cls(const, power, tuple(zeros))

    @property
    def degree(self) -> int:
        return self.monomial_power + len(self.blaschke_zeros)

    @property
    def decay_rate(self) -> float:
        """Geometric rate of the Taylor coefficients (0 for a monomial)."""
        return max((abs(a) for a in self.blaschke_zeros), default=0.0)

    def __call__(self, w: complex) -> complex:
        return evaluate(self, w)

    def times_z(self, k: int = 1) -> "InnerFunction":
        return InnerFunction(self.unimodular_const, self.monomial_power + k, self.blaschke_zeros)

    def __str__(self):
        parts = []
        if self.unimodular_const != 1:
            parts.append(f"({self.unimodular_const:.6g})")
        if self.monomial_power:
            parts.append(f"z^{self.monomial_power}")
        parts += [f"B[{a:.6g}]" for a in self.blaschke_zeros]
        return "*".join(parts) or "1"


def evaluate(theta: InnerFunction, w: complex) -> complex:
    w = complex(w)
    if not abs(w) < 1:
        raise DomainError(f"|w| = {abs(w)} >= 1")
    val = theta.unimodular_const * w ** theta.monomial_power
    for a in theta.blaschke_zeros:
        den = 1 - np.conj(a) * w
        if abs(den) < 1e-14:
            raise DomainError(f"pole of the Blaschke factor at {w}")
        val *= (w - a) / den
    return complex(val)


def blaschke_factor_coeffs(a: complex, N: int) -> np.ndarray:
    """Taylor coefficients of ``(z - a) / (1 - conj(a) z)`` up to ``z**N``."""
    c = np.empty(N + 1, dtype=complex)
    c[0] = -a
    if N >= 1:
        c[1:] = (1 - abs(a) ** 2) * np.conj(a) ** np.arange(N)
    return c


def taylor_coeffs(theta: InnerFunction, N: int) -> CoeffSeries:
    out = CoeffSeries.monomial(theta.monomial_power, N, theta.unimodular_const)
    for a in theta.blaschke_zeros:
        out = mul_series(out, CoeffSeries(blaschke_factor_coeffs(a, N)), N)
    return out


def same_up_to_constant(t1: InnerFunction, t2: InnerFunction, tol: float = 1e-8) -> bool:
    """Equality of inner functions modulo a unimodular constant."""
    if t1.monomial_power != t2.monomial_power:
        return False
    z1, z2 = list(t1.blaschke_zeros), list(t2.blaschke_zeros)
    if len(z1) != len(z2):
        return False
    for a in z1:
        j = int(np.argmin([abs(a - b) for b in z2]))
        if abs(a - z2[j]) > tol:
            return False
        z2.pop(j)
    return True


def inner_part_of_polynomial(q: CoeffSeries, zero_tol: float = 1e-14):
    """Factor a polynomial as ``theta * outer``.

    ``theta`` collects the zero at the origin and one Blaschke factor per root
    inside the disk; ``outer`` has all its roots outside the closed disk.
    Returns ``(theta, outer)``.
    """
    q = as_series(q)
    c = q.coeffs
    scale = float(np.max(np.abs(c))) if c.size else 0.0
    if scale == 0.0:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    live = np.nonzero(np.abs(c) > zero_tol * scale)[0]
    m, deg = int(live[0]), int(live[-1])
    core = c[m:deg + 1]
    try:
        roots = np.roots(core[::-1]) if core.size > 1 else np.array([], dtype=complex)
    except np.linalg.LinAlgError as exc:
        raise RootFindingFailure(str(exc)) from exc
    if not np.all(np.isfinite(roots)):
        raise RootFindingFailure("root finder returned non-finite roots")
    for r in roots:
        if abs(abs(r) - 1.0) < BOUNDARY_MARGIN:
            raise RootFindingFailure(f"root {r} lies within {BOUNDARY_MARGIN} of the unit circle")
    inside = [complex(r) for r in roots if abs(r) < 1]
    outside = [complex(r) for r in roots if abs(r) > 1]
    # q = z^m * lead * prod (z - r_i) * prod (z - s_j) and (z - r) = B_r * (1 - conj(r) z)
    lead = core[-1]
    outer_roots = [1 / np.conj(r) for r in inside] + outside
    outer_poly = lead * np.poly(outer_roots) if outer_roots else np.array([lead])
    scale_in = np.prod([-np.conj(r) for r in inside]) if inside else 1.0
    outer = CoeffSeries((outer_poly * scale_in)[::-1])
    theta = InnerFunction(1.0, m, tuple(inside))
    return theta, outer

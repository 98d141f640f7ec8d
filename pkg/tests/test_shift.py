import numpy as np
import pytest
from hypothesis import given, strategies as st

from conftest import pairs
from oracles import compressed, compressed_shift, embedding
from shiftlab.errors import DomainError, TruncationOverflow, UnsupportedSelector
from shiftlab.shift import (AbCoords, ParamPair, ab_inner, analyticity_witness, apply,
                            apply_adjoint, apply_power, cauchy_dual_first_step,
                            hyponormality_check, kernel_adjoint, left_invertibility_bound, matrix,
                            power_on_f0, restricted_norm_observation, shift_matrix,
                            unitary_equivalence)

S2 = 1 / np.sqrt(2)


def test_shift_matrix_golden(half_pair):
    S = matrix(half_pair, "S", 8).entries
    expect = np.zeros((8, 8))
    expect[0, 0], expect[1, 0] = 0.5, S2
    expect[np.arange(2, 8), np.arange(1, 7)] = 1
    assert np.max(np.abs(S - expect)) < 1e-14


def test_defect_matrices_golden(half_pair):
    dl = matrix(half_pair, "I-S*S", 8).entries
    gram = matrix(half_pair, "S*S", 8).entries
    e = np.zeros((8, 8)); e[0, 0] = 0.25
    assert np.max(np.abs(dl - e)) < 1e-14
    g = np.eye(8); g[0, 0] = 0.75
    assert np.max(np.abs(gram - g)) < 1e-14


@given(pairs())
def test_matrices_match_embedding_oracle(pair):
    a, b = pair.alpha, pair.beta
    N = 10
    assert np.allclose(matrix(pair, "S", N).entries, compressed_shift(a, b, N))
    exprs = {
        "adjoint": lambda S, Sh, I: Sh,
        "gram": lambda S, Sh, I: Sh @ S,
        "defect-left": lambda S, Sh, I: I - Sh @ S,
        "defect-right": lambda S, Sh, I: I - S @ Sh,
        "self-commutator": lambda S, Sh, I: Sh @ S - S @ Sh,
    }
    for sel, fn in exprs.items():
        assert np.allclose(matrix(pair, sel, N).entries, compressed(a, b, N, fn)), sel


@given(pairs())
def test_defect_structure(pair):
    x, m2 = pair.alpha_sq, abs(pair.ab_bar) ** 2
    dl = matrix(pair, "defect-left", 8).entries
    assert np.isclose(dl[0, 0], x ** 2) and np.allclose(dl.ravel()[1:], 0)
    dr = matrix(pair, "defect-right", 8).entries
    lam, b = pair.ab_bar, pair.beta
    block = np.array([[1 - m2, -lam * np.conj(b)], [-np.conj(lam) * b, x]])
    assert np.allclose(dr[:2, :2], block)
    assert np.allclose(dr[2:, :], 0) and np.allclose(dr[:, 2:], 0)
    assert np.isclose(pair.gram_entry, 1 - x ** 2)


@given(pairs())
def test_cauchy_dual_first_column(pair):
    D = matrix(pair, "cauchy-dual", 6).entries
    p = pair.gram_entry
    assert np.allclose(D[:2, 0], [pair.ab_bar / p, pair.beta / p])
    assert np.allclose(D[2:, 1:-1], np.eye(4))


@given(pairs())
def test_cauchy_dual_step_direction(pair):
    v = cauchy_dual_first_step(pair, 8)
    # proportional to z^2 (1/(conj(alpha) beta) - z)
    w = np.zeros(8, dtype=complex)
    w[1], w[2] = 1 / (np.conj(pair.alpha) * pair.beta), -1
    cos = abs(np.vdot(w, v.vec)) / (np.linalg.norm(w) * v.norm())
    assert np.isclose(cos, 1)
    assert abs(v.c0) < 1e-14


@given(pairs())
def test_kernel_of_adjoint(pair):
    k = kernel_adjoint(pair, 8)
    assert np.isclose(k.norm(), 1)
    assert apply_adjoint(pair, k).norm() < 1e-12
    # the unnormalized vector f0 - (conj(alpha) beta / conj(beta)) z^2
    raw = AbCoords.from_parts(1, [-np.conj(pair.alpha) * pair.beta / np.conj(pair.beta)], 8)
    assert apply_adjoint(pair, raw).norm() < 1e-12


@given(pairs())
def test_adjoint_is_adjoint(pair):
    rng = np.random.default_rng(0)
    u = AbCoords(rng.normal(size=12) + 1j * rng.normal(size=12))
    v = AbCoords(np.concatenate([rng.normal(size=11) + 1j * rng.normal(size=11), [0]]))
    assert np.isclose(ab_inner(apply(pair, v), u), ab_inner(v, apply_adjoint(pair, u)))


@given(pairs(0.02, 0.98))
def test_hyponormal(pair):
    assert hyponormality_check(pair, 64) >= -1e-10
    # the nonzero block has determinant |alpha|^4 |beta|^2
    C = matrix(pair, "self-commutator", 8).entries
    assert np.isclose(np.linalg.det(C[:2, :2]), pair.alpha_sq ** 2 * pair.beta_sq)


@given(pairs(), st.integers(1, 12))
def test_power_on_f0(pair, n):
    v = apply_power(pair, AbCoords.basis(0, 16), n)
    assert np.allclose(power_on_f0(pair, n, 16).vec, v.vec)


def test_power_on_f0_overflow(half_pair):
    with pytest.raises(TruncationOverflow):
        power_on_f0(half_pair, 8, 8)


@given(pairs(), st.integers(1, 3))
def test_defect_power(pair, m):
    Sm = np.linalg.matrix_power(compressed_shift(pair.alpha, pair.beta, 20, 0), m)
    ref = (np.eye(20) - Sm @ Sm.conj().T)[:8, :8]
    assert np.allclose(matrix(pair, "defect-power", 8, m).entries, ref)


def test_matrix_errors(half_pair):
    with pytest.raises(UnsupportedSelector):
        matrix(half_pair, "nope", 8)
    with pytest.raises(ValueError):
        matrix(half_pair, "S", 3)


def test_pair_validation():
    with pytest.raises(DomainError):
        ParamPair(1, 0)
    with pytest.raises(DomainError):
        ParamPair(0.5, 0.5)
    with pytest.raises(DomainError):
        ParamPair.from_alpha_sq(1.0)


def test_basis_vectors_embed_orthonormally(half_pair):
    B = embedding(half_pair.alpha, half_pair.beta, 6)
    assert np.allclose(B.conj().T @ B, np.eye(6))
    v = AbCoords.from_parts(2, [1, 3], 6)
    assert np.allclose(v.to_hardy(half_pair).coeffs, B @ v.vec)


@given(pairs(0.05, 0.95))
def test_left_invertible(pair):
    assert np.isclose(left_invertibility_bound(pair), min(1.0, pair.gram_entry))


def test_analyticity_witness_shrinks():
    pair = ParamPair.from_alpha_sq(0.5)
    assert analyticity_witness(pair, 128, 32) < 1e-8


@given(pairs(), st.floats(0, 6.3))
def test_equivalent_under_common_rotation(pair, phi):
    u = np.exp(1j * phi)
    rep = unitary_equivalence(pair, ParamPair(u * pair.alpha, u * pair.beta))
    assert rep.equivalent and rep.proportional
    assert rep.conjugation_residual < 1e-12


def test_not_equivalent_for_different_moduli(half_pair):
    rep = unitary_equivalence(half_pair, ParamPair(np.sqrt(0.9), np.sqrt(0.1)))
    assert not rep.equivalent and not rep.abs_alpha_match
    assert np.isclose(rep.defect_invariants[0], 0.25) and np.isclose(rep.defect_invariants[1], 0.81)


def test_conjugate_phases_not_equivalent():
    # same moduli, but alpha/alpha1 != conj(beta1)/conj(beta)
    p1 = ParamPair.from_alpha_sq(0.3, 0.0, 0.0)
    p2 = ParamPair.from_alpha_sq(0.3, 0.7, 0.0)
    rep = unitary_equivalence(p1, p2)
    assert rep.abs_alpha_match and rep.abs_beta_match and not rep.equivalent
    S1, S2m = shift_matrix(p1, 6), shift_matrix(p2, 6)
    # same modulus in the corner entry, different phase
    assert np.isclose(abs(S1[0, 0]), abs(S2m[0, 0])) and not np.isclose(S1[0, 0], S2m[0, 0])


@given(pairs(0.05, 0.95))
def test_restricted_norm_observation(pair):
    obs = restricted_norm_observation(pair)
    assert np.isclose(obs["direct"], obs["closed_form"])
    # the restriction is not isometric on this unit vector
    assert obs["direct"] < 1

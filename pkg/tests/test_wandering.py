from dataclasses import replace
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings, strategies as st

from conftest import pair_and_theta, pairs
from oracles import cubic_real_root, r_by_fft
from shiftlab.errors import DomainError, InconclusiveTruncation
from shiftlab.inner import InnerFunction
from shiftlab.shift import ParamPair
from shiftlab.subspaces import build_subspace
from shiftlab.wandering import (Counterexample, NotPossible, a_quantity, beta_cubic, cubic_root,
                                cubic_value, find_counterexample, full_space_krylov_oracle,
                                full_space_witness_residual, full_space_wsp, h5_witness,
                                monomial_bound, monomial_R, subspace_krylov_oracle, thresholds,
                                wsp_decision, wsp_inequality_lhs)

S2 = 1 / np.sqrt(2)


def test_cubic_roots_against_companion_matrix():
    u, g = cubic_root("u"), cubic_root("gamma-cubic")
    assert abs(u - cubic_real_root([1, 3, 2, -1])) < 1e-13
    assert abs(g - cubic_real_root([1, 7, 12, -1])) < 1e-13
    assert 0.32 < u < 0.33 and 0.07 < g < 0.08
    assert abs(cubic_value("u", u)) < 1e-12 and abs(cubic_value("gamma", g)) < 1e-12


def test_cubic_sign_change_brackets():
    assert cubic_value("u", 0.32) < 0 < cubic_value("u", 0.33)
    with pytest.raises(DomainError):
        cubic_root("delta")


def test_threshold_values():
    th = thresholds()
    assert np.isclose(th.one_over_u_plus_1, 1 / (1 + cubic_real_root([1, 3, 2, -1])))
    assert np.isclose(th.one_over_4_plus_gamma, 1 / (4 + cubic_real_root([1, 7, 12, -1])))
    assert 0.2451 < th.one_over_4_plus_gamma < 0.2452


def test_full_space_examples(half_pair):
    v = full_space_wsp(half_pair)
    assert v.holds and np.isclose(v.abs_p, 1.5)
    w = full_space_wsp(ParamPair.from_alpha_sq(0.9))
    assert not w.holds and np.isclose(w.abs_p, np.sqrt(0.1) / np.sqrt(0.9) * 1.9)


def test_full_space_boundary():
    x = cubic_real_root([1, 1, 0, -1])  # x^3 + x^2 - 1 = 0
    assert np.isclose(x, thresholds().one_over_u_plus_1, atol=1e-12)
    assert np.isclose(abs(ParamPair.from_alpha_sq(x).p), 1, atol=1e-12)


def test_full_space_grid_signs():
    thr = thresholds().one_over_u_plus_1
    for x in np.linspace(0.001, 0.999, 200):
        p = abs(ParamPair.from_alpha_sq(x).p)
        assert np.sign(round(p - 1, 12)) == np.sign(round(thr - x, 12))


def test_beta_cubic_grid_signs():
    thr = thresholds().one_over_4_plus_gamma
    for b in np.linspace(0.001, 0.999, 200):
        assert np.sign(round(beta_cubic(b), 12)) == np.sign(round(b - thr, 12))


def test_a_quantity_bounds_on_grid():
    for x in np.linspace(0.02, 0.98, 30):
        for ra in np.linspace(0.02, 0.98, 30):
            for ph in np.linspace(0, 2 * np.pi, 8, endpoint=False):
                A = a_quantity(ParamPair.from_alpha_sq(x), ra * np.exp(1j * ph))
                assert 0 < A < 1


@given(pairs(), st.floats(0.05, 0.9), st.floats(0, 6.3))
def test_a_quantity_is_t_sq_times_one_plus_norm(pair, ra, ph):
    a = ra * np.exp(1j * ph)
    assume(abs(a - pair.ab_bar) > 0.05)
    m = build_subspace(pair, InnerFunction.blaschke(a), 8)
    assert np.isclose(a_quantity(pair, a), abs(m.t) ** 2 * (1 + m.norm_sq_g))
    assert (wsp_inequality_lhs(pair, a) >= 0) == (m.abs_r >= 1)


def test_seven_over_25():
    # exact rational arithmetic: |alpha|^2 = 4/5, |ab| = 2/5, a = 1/2
    x, m, a = Fraction(4, 5), Fraction(2, 5), Fraction(1, 2)
    A = 1 - x * x * (1 - a * a) / (1 - a * m) ** 2
    assert m - x * A * (1 - m) == Fraction(7, 25)
    pair = ParamPair(2 / np.sqrt(5), 1 / np.sqrt(5))
    assert abs(wsp_inequality_lhs(pair, 0.5) - 0.28) < 1e-12
    assert wsp_decision(build_subspace(pair, InnerFunction.blaschke(0.5), 64)).verdict == "holds"


def test_counterexample_triple_value():
    pair = ParamPair(np.sqrt(0.95), np.sqrt(0.05))
    m, x, a = np.sqrt(0.95 * 0.05), 0.95, 0.9
    lhs_ref = m - x * (1 - x * x * (1 - a * a) / (1 - a * m) ** 2) * (1 - m)
    assert abs(wsp_inequality_lhs(pair, a) - lhs_ref) < 1e-14
    assert abs(lhs_ref + 0.3278503536) < 1e-9
    assert abs(r_by_fft(pair.alpha, pair.beta, 1, 0, (a,))) < 1


@given(pairs(0.02, 0.98))
def test_monomial_family_always_holds(pair):
    assert monomial_bound(pair) <= 1
    for n in range(1, 7):
        m = build_subspace(pair, InnerFunction.monomial(n), 12)
        R = monomial_R(pair, n)
        assert 1 - R > 0
        assert m.abs_r >= 1
        assert wsp_decision(m).verdict == "holds"


@given(pairs(), st.integers(1, 6))
def test_monomial_R_equivalence(pair, n):
    # |r| >= 1 iff R <= 1, checked through the margin |ab|(1+X) - X
    m = build_subspace(pair, InnerFunction.monomial(n), 12)
    x = pair.alpha_sq * abs(m.t) ** 2 * (1 + m.norm_sq_g)
    ab = abs(pair.ab_bar)
    margin = ab * (1 + x) - x
    assert (margin >= 0) == (monomial_R(pair, n) <= 1)


def test_find_counterexample():
    ce = find_counterexample(0.05)
    assert isinstance(ce, Counterexample)
    assert ce.a <= 0.9 and ce.lhs < 0 and ce.abs_r < 1
    assert ce.B < ce.epsilon
    # the grid point just before does not work
    assert wsp_inequality_lhs(ce.pair, ce.a - 0.01) >= 0
    out = find_counterexample(0.3)
    assert isinstance(out, NotPossible) and out.reason.startswith("beta_sq >=")


def test_find_counterexample_near_threshold():
    thr = thresholds().one_over_4_plus_gamma
    assert isinstance(find_counterexample(thr + 1e-9), NotPossible)
    ce = find_counterexample(thr - 1e-3)
    assert isinstance(ce, Counterexample) and ce.a > 0.99
    with pytest.raises(DomainError):
        find_counterexample(1.0)


def test_decisions_and_indeterminate_band(half_pair):
    m = build_subspace(half_pair, InnerFunction.monomial(1), 64)
    rep = wsp_decision(m)
    assert rep.verdict_closed_form and abs(rep.abs_r - 11 / 6) < 1e-12
    # an uncertain norm large enough to push |r| below 1 leaves the verdict open
    wide = replace(m, norm_sq_tail_bound=100.0)
    assert wsp_decision(wide).verdict == "indeterminate"


def test_full_space_oracles(half_pair):
    est = full_space_krylov_oracle(half_pair, 128)
    assert est.codim == 0 and est.residual_curve[-1] < 1e-6
    est = full_space_krylov_oracle(ParamPair.from_alpha_sq(0.9), 256)
    assert est.codim >= 1 and est.witness_residual < 1e-8
    with pytest.raises(InconclusiveTruncation):
        full_space_krylov_oracle(ParamPair.from_alpha_sq(thresholds().one_over_u_plus_1), 64)


def test_witness_orthogonality_small_p():
    assert full_space_witness_residual(ParamPair.from_alpha_sq(0.95), 128) < 1e-12


def test_subspace_oracle_examples(half_pair):
    m = build_subspace(half_pair, InnerFunction.monomial(1), 128)
    assert subspace_krylov_oracle(m, 128).codim == 0
    pair = ParamPair(np.sqrt(0.95), np.sqrt(0.05))
    mc = build_subspace(pair, InnerFunction.blaschke(0.9), 256)
    rep = wsp_decision(mc, oracle_N=256)
    assert rep.verdict == "fails" and rep.krylov_codim == 1


@pytest.mark.parametrize("a", [0.6, 0.7, 0.75, 0.8])
def test_subspace_oracle_moderate_r(a):
    # |r| between 0.65 and 1.2: codim must not flip between truncation orders
    pair = ParamPair(np.sqrt(0.95), np.sqrt(0.05))
    m = build_subspace(pair, InnerFunction.blaschke(a), 128)
    est = subspace_krylov_oracle(m, 128)
    assert est.codim == (0 if m.abs_r >= 1 else 1)


@settings(max_examples=15)
@given(pair_and_theta(allow_products=False))
def test_oracle_agrees_with_closed_form(pt):
    m = build_subspace(*pt, 128)
    assume(abs(m.abs_r - 1) > 0.1)
    assume(max([abs(a) for a in m.theta.blaschke_zeros], default=0) <= 0.9)
    est = subspace_krylov_oracle(m, 128)
    assert (est.codim == 0) == (m.abs_r >= 1)


@given(pair_and_theta())
def test_h5_is_linear_with_root_r(pt):
    m = build_subspace(*pt, 96)
    w = h5_witness(m)
    assert w.degree == 1
    assert abs(w.h5[2]) < 1e-10 * abs(w.h5[1])
    assert max(w.residuals.values()) < 1e-10, w.residuals
    assert np.isclose(w.root, m.r, rtol=1e-10)

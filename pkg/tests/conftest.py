import numpy as np
import pytest
from hypothesis import HealthCheck, assume, settings, strategies as st

from shiftlab import InnerFunction, ParamPair

settings.register_profile("default", max_examples=40, deadline=None, derandomize=True,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

alpha_sq = st.floats(0.1, 0.9)
phase = st.floats(0, 2 * np.pi)


@st.composite
def pairs(draw, lo=0.1, hi=0.9):
    x = draw(st.floats(lo, hi))
    return ParamPair.from_alpha_sq(x, draw(phase), draw(phase))


@st.composite
def disk_points(draw, lo=0.05, hi=0.9):
    return draw(st.floats(lo, hi)) * np.exp(1j * draw(phase))


@st.composite
def pair_and_theta(draw, allow_products=True):
    """A pair and an inner function with |theta(ab)| bounded away from 0."""
    pair = draw(pairs())
    kind = draw(st.sampled_from(["monomial", "blaschke", "product"] if allow_products
                                else ["monomial", "blaschke"]))
    if kind == "monomial":
        theta = InnerFunction.monomial(draw(st.integers(1, 4)))
    elif kind == "blaschke":
        theta = InnerFunction.blaschke(draw(disk_points()))
    else:
        zeros = draw(st.lists(disk_points(hi=0.8), min_size=1, max_size=3))
        theta = InnerFunction.blaschke(*zeros, power=draw(st.integers(0, 2)))
    lam = pair.ab_bar
    assume(all(abs(a - lam) >= 0.05 for a in theta.blaschke_zeros))
    return pair, theta


@pytest.fixture
def half_pair():
    s = 1 / np.sqrt(2)
    return ParamPair(s, s)

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from braidexp import biseq
from braidexp.biseq import BilateralSequence, add, convolve, delta, l2_norm, scale, truncate, zero
from braidexp.series_engine import tau


def int_sequences(max_len=12):
    return st.builds(
        lambda lo, cs: BilateralSequence(lo, cs),
        st.integers(-20, 20),
        st.lists(st.integers(-50, 50).map(float), min_size=1, max_size=max_len),
    )


def test_delta_identity():
    d = delta(0)
    assert d.lo == 0 and d[0] == 1.0 and d.tail_bound == 0.0
    assert convolve(delta(3), delta(-3)) == delta(0)


def test_add_scale_examples():
    assert add(delta(1), scale(delta(1), -1)) == zero()
    assert add(delta(1), scale(delta(1), -1)).is_zero()
    assert scale(delta(2), 0) == zero()
    one_plus_q = add(delta(0), delta(1))
    assert one_plus_q.support() == {0: 1.0, 1: 1.0}


def test_zero_is_canonical():
    z = add(delta(5), scale(delta(5), -1.0))
    assert z.lo == 0 and len(z) == 1 and z[0] == 0.0


def test_tail_rules_for_add_and_scale():
    a = BilateralSequence(0, [1.0], 0.25)
    b = BilateralSequence(2, [1.0, 2.0], 0.5)
    assert add(a, b).tail_bound == 0.75
    assert scale(b, -3.0).tail_bound == 1.5


def test_rejects_non_finite():
    with pytest.raises(ValueError):
        scale(delta(0), float("nan"))
    with pytest.raises(ValueError):
        BilateralSequence(0, [1.0, float("inf")])
    with pytest.raises(ValueError):
        BilateralSequence(0, [1.0], -1.0)


def test_convolve_examples():
    assert convolve(delta(1), delta(2)) == delta(3)
    a = BilateralSequence(-2, [1.0, -2.0, 0.5, 3.0])
    assert convolve(delta(0), a) == a
    assert convolve(a, delta(0)) == a


def test_convolve_tau_squared_at_one():
    # c_1(tau^2) = -sum_{k != 0,1} 1/(k(1-k)) = 2 by telescoping 1/k + 1/(1-k)
    t = tau(2048)
    sq = convolve(t, t)
    assert abs(sq[1] - 2.0) <= sq.tail_bound
    assert abs(sq[1] - 2.0) < 1e-3


def test_norms():
    assert l2_norm(delta(5)) == 1.0
    assert l2_norm(zero()) == 0.0
    t = tau(10**6)
    assert abs(l2_norm(t) - math.pi / math.sqrt(3)) <= math.sqrt(2 / 10**6)
    assert abs(l2_norm(t) - math.pi / math.sqrt(3)) <= t.tail_bound


def test_truncate_examples():
    assert truncate(delta(0), 5) == delta(0)
    assert truncate(zero(), 0) == zero()
    t = tau(100)
    tt = truncate(t, 10)
    dropped = math.sqrt(math.fsum(1.0 / k**2 for k in range(11, 101)) * 2)
    assert tt.lo == -10 and tt.hi == 10
    assert tt.tail_bound - t.tail_bound == pytest.approx(dropped, rel=1e-12)
    with pytest.raises(ValueError):
        truncate(delta(0), -1)


def test_truncate_drops_everything():
    t = truncate(delta(7), 3)
    assert t.is_zero() and t.tail_bound == 1.0


@settings(max_examples=60, deadline=None)
@given(int_sequences(), int_sequences())
def test_convolution_commutes_exactly(a, b):
    assert convolve(a, b) == convolve(b, a)


@settings(max_examples=40, deadline=None)
@given(int_sequences(8), int_sequences(8), int_sequences(8))
def test_convolution_associates_exactly(a, b, c):
    assert convolve(convolve(a, b), c) == convolve(a, convolve(b, c))


@given(st.integers(-200, 200), st.integers(-200, 200))
def test_group_law(m, n):
    assert convolve(delta(m), delta(n)) == delta(m + n)


@settings(max_examples=60, deadline=None)
@given(int_sequences(), int_sequences())
def test_cauchy_schwarz_per_index(a, b):
    c = convolve(a, b)
    assert np.all(np.abs(c.coefficients) <= l2_norm(a) * l2_norm(b) * (1 + 1e-12))


def test_tail_bound_soundness_for_tau_squared():
    small, big = tau(64), tau(2048)
    cs, cb = convolve(small, small), convolve(big, big)
    lo, hi = cs.lo, cs.hi
    diff = np.max(np.abs(cs.window(lo, hi) - cb.window(lo, hi)))
    assert diff <= cs.tail_bound
    assert not cs.tail_is_l2


def test_multiplier_norm_bound():
    assert biseq.multiplier_norm_bound(zero()) == 0.0
    assert biseq.multiplier_norm_bound(delta(4)) == pytest.approx(1.0, rel=1e-12)
    # |1 + q| peaks at 2
    assert 2.0 <= biseq.multiplier_norm_bound(add(delta(0), delta(1))) <= 2.0 * 1.06
    # partial sums of the symbol of tau stay below 2 Si(pi) ~ 3.7039
    from scipy.special import sici

    g = biseq.multiplier_norm_bound(tau(512))
    assert 2 * sici(math.pi)[0] * 0.99 < g < 2 * sici(math.pi)[0] * 1.06


def test_is_skew():
    assert biseq.is_skew(tau(10))
    assert not biseq.is_skew(delta(1))
    assert biseq.is_skew(zero())

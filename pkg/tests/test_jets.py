import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sasakian.jets import Jet, lift, partial


def test_lift_value_component():
    j = lift(2.0, 0, 1, 3)
    assert j.value == pytest.approx(2.0)


def test_lift_seed_derivative():
    j = lift(0.7, 0, 1, 3)
    assert partial(j, (1,)) == pytest.approx(1.0)
    assert partial(j, (2,)) == pytest.approx(0.0)


def test_sin_second_derivative_at_zero():
    j = lift(0.0, 0, 1, 3).sin()
    assert partial(j, (2,)) == pytest.approx(0.0, abs=1e-15)


def test_partial_circle_tangent():
    s = math.pi / 3
    u = lift(s, 0, 1, 2)
    x, y = u.cos(), u.sin()
    assert partial(x, (1,)) == pytest.approx(-math.sin(s))
    assert partial(y, (1,)) == pytest.approx(math.cos(s))


def test_partial_mixed_two_vars():
    u = lift(0.0, 0, 2, 3)
    v = lift(0.0, 1, 2, 3)
    f = (u + 2.0 * v).cos()
    assert partial(f, (1, 1)) == pytest.approx(-2.0)


def test_fourth_derivative_sqrt2_frequency():
    s = lift(0.0, 0, 1, 5)
    f = (s * math.sqrt(2.0)).cos()
    assert partial(f, (4,)) == pytest.approx(4.0, abs=1e-13)


@pytest.mark.parametrize("omega", [1.0, math.sqrt(2.0), math.sqrt(5.0), 3.0 * math.sqrt(2.0) / 2.0])
def test_trig_derivatives_match_closed_forms(omega):
    # d^k/ds^k of cos(omega s + theta) = omega^k cos(omega s + theta + k pi/2)
    rng = np.random.default_rng(7)
    pts = rng.uniform(-3, 3, size=8)
    theta = 0.4321
    j = (lift(pts, 0, 1, 5) * omega + theta).cos()
    for k in range(6):
        got = partial(j, (k,))
        want = omega**k * np.cos(omega * pts + theta + k * math.pi / 2.0)
        assert np.max(np.abs(got - want)) < 1e-13 * max(1.0, omega**k)


def test_product_rule_exact_on_polynomials():
    x = lift(1.5, 0, 2, 4)
    y = lift(-0.5, 1, 2, 4)
    f = x * x * y + y * y
    # d/dx (x^2 y + y^2) = 2xy ; d^2/dxdy = 2x ; d^3/dx^2 dy = 2
    assert partial(f, (1, 0)) == pytest.approx(2 * 1.5 * -0.5)
    assert partial(f, (1, 1)) == pytest.approx(3.0)
    assert partial(f, (2, 1)) == pytest.approx(2.0)
    assert partial(f, (0, 2)) == pytest.approx(2.0)


def test_division_and_sqrt_roundtrip():
    x = lift(0.3, 0, 1, 5)
    g = (x.sin() + 2.0) / (x.cos() + 3.0)
    h = g * (x.cos() + 3.0) - (x.sin() + 2.0)
    assert np.max(np.abs(h.coef)) < 1e-15
    r = (x.cos() + 1.5).sqrt()
    sq = r * r - (x.cos() + 1.5)
    assert np.max(np.abs(sq.coef)) < 1e-14


def test_truncate_and_accuracy_bookkeeping():
    x = lift(0.1, 0, 1, 5)
    d1 = x.sin().deriv(0)
    assert d1.acc == 4
    with pytest.raises(ValueError):
        partial(d1, (5,))
    with pytest.raises(ValueError):
        d1.truncate(5)


def test_batched_leading_axes():
    pts = np.linspace(0.0, 1.0, 11)
    j = lift(pts, 0, 1, 3).sin()
    assert j.value.shape == (11,)
    assert np.allclose(j.value, np.sin(pts))
    assert np.allclose(partial(j, (1,)), np.cos(pts))


@settings(max_examples=60, deadline=None)
@given(
    a=st.lists(st.floats(-2, 2), min_size=3, max_size=3),
    b=st.lists(st.floats(-2, 2), min_size=3, max_size=3),
    x0=st.floats(-1.5, 1.5),
)
def test_jet_product_matches_polynomial_arithmetic(a, b, x0):
    # jets of two quadratics multiply exactly like the polynomials themselves
    x = lift(x0, 0, 1, 4)
    pa = a[0] + x * a[1] + x * x * a[2]
    pb = b[0] + x * b[1] + x * x * b[2]
    prod = pa * pb
    ca = np.array(a)
    cb = np.array(b)
    cz = np.convolve(ca, cb)
    for k in range(5):
        # derivative of the product at x0 from the coefficient convolution
        want = sum(
            cz[m] * math.perm(m, k) * x0 ** (m - k) for m in range(k, len(cz))
        )
        assert partial(prod, (k,)) == pytest.approx(want, abs=1e-9, rel=1e-9)


def test_finite_difference_cross_check_second_derivative():
    # 4th-order central stencils at h=1e-4 agree with jets to 1e-6
    def f(s):
        return np.cos(math.sqrt(5.0) * s + 0.3) * np.sin(s)

    rng = np.random.default_rng(11)
    pts = rng.uniform(0, 2 * math.pi, size=20)
    x = lift(pts, 0, 1, 3)
    j = (x * math.sqrt(5.0) + 0.3).cos() * x.sin()
    h = 1e-4
    d1_fd = (-f(pts + 2 * h) + 8 * f(pts + h) - 8 * f(pts - h) + f(pts - 2 * h)) / (12 * h)
    d2_fd = (-f(pts + 2 * h) + 16 * f(pts + h) - 30 * f(pts) + 16 * f(pts - h) - f(pts - 2 * h)) / (
        12 * h * h
    )
    assert np.max(np.abs(partial(j, (1,)) - d1_fd)) < 1e-6
    assert np.max(np.abs(partial(j, (2,)) - d2_fd)) < 1e-6

import cmath
import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hankelbound.errors import DivisionBySmallLeadingTerm, NotNormalized
from hankelbound.hankel import second_hankel
from hankelbound.series import (
    PowerSeries,
    differentiate,
    div,
    evaluate,
    koebe,
    mul,
    rotate,
)


def cauchy_bruteforce(a, b):
    n = min(len(a), len(b))
    return [sum(a[i] * b[k - i] for i in range(k + 1)) for k in range(n)]


def test_mul_examples():
    assert mul(PowerSeries([1, 1]), PowerSeries([1, 1])) == PowerSeries([1, 2])
    assert mul(PowerSeries([1, 1, 0]), PowerSeries([1, 1, 0])) == PowerSeries([1, 2, 1])
    a = PowerSeries([0.5, -1j, 3])
    assert mul(a, PowerSeries([1, 0, 0])) == a
    # Koebe: P * f = z f'
    p = PowerSeries([1, 2, 2, 2])
    f = PowerSeries([0, 1, 2, 3])
    assert mul(p, f) == PowerSeries([0, 1, 4, 9])


def test_mul_truncates_to_shorter():
    assert mul(PowerSeries([1, 1, 1, 1]), PowerSeries([1, 1])).order == 1


def test_div_examples():
    assert div(PowerSeries([1, 2, 1]), PowerSeries([1, 1, 0])).allclose(PowerSeries([1, 1, 0]))
    a = PowerSeries([2, -1, 0.5j])
    assert div(a, a).allclose(PowerSeries([1, 0, 0]))
    # z f'/f for Koebe after cancelling z: (1 + 4z + 9z^2)/(1 + 2z + 3z^2)
    q = div(PowerSeries([1, 4, 9]), PowerSeries([1, 2, 3]))
    assert q.allclose(PowerSeries([1, 2, 2]))


def test_div_small_leading_term():
    with pytest.raises(DivisionBySmallLeadingTerm):
        div(PowerSeries([1, 1]), PowerSeries([1e-13, 1]))


def test_differentiate():
    assert differentiate(PowerSeries([0, 1, 1])) == PowerSeries([1, 2])
    assert differentiate(PowerSeries([5])) == PowerSeries([0])
    assert differentiate(PowerSeries([0, 1, 2, 3, 4])) == PowerSeries([1, 4, 9, 16])


def test_rotate_examples():
    f = koebe(6)
    assert rotate(f, 0.0) == f
    flipped = rotate(f, math.pi)
    expect = [0] + [n * (-1) ** (n - 1) for n in range(1, 7)]
    assert np.allclose(flipped.coeffs, expect, atol=1e-12)


def test_rotate_requires_normalized():
    with pytest.raises(NotNormalized):
        rotate(PowerSeries([0, 2, 1]), 0.3)
    with pytest.raises(NotNormalized):
        rotate(PowerSeries([0.1, 1, 1]), 0.3)


def test_evaluate_examples():
    geo = PowerSeries([1] * 21)
    assert evaluate(geo, 0.5) == pytest.approx(2 * (1 - 0.5 ** 21), abs=1e-15)
    assert evaluate(PowerSeries([3 - 1j, 5, 7]), 0) == 3 - 1j
    # z/(1-z)^2 at -1/2 is -2/9; tail of the partial sum is below 1e-12
    assert evaluate(koebe(50), -0.5) == pytest.approx(-2 / 9, abs=1e-9)


def test_evaluate_array():
    z = np.array([0.1, -0.2j])
    vals = evaluate(koebe(80), z)
    assert np.allclose(vals, z / (1 - z) ** 2, atol=1e-12)


def test_invariants_rejected():
    with pytest.raises(ValueError):
        PowerSeries([1, float("nan")])
    with pytest.raises(ValueError):
        PowerSeries([])


def test_json_pairs_roundtrip():
    f = PowerSeries([0, 1, 2 - 3j])
    assert PowerSeries.from_pairs(f.to_pairs()) == f


coef = st.complex_numbers(max_magnitude=3, allow_nan=False, allow_infinity=False)


def series_st(min_size=1, max_size=12):
    return st.lists(coef, min_size=min_size, max_size=max_size).map(PowerSeries)


@given(series_st(), series_st())
def test_mul_matches_bruteforce(a, b):
    expect = cauchy_bruteforce(list(a.coeffs), list(b.coeffs))
    assert np.allclose(mul(a, b).coeffs, expect, atol=1e-12)


@st.composite
def divisor(draw):
    # forward substitution amplifies rounding by the growth of 1/b, which is
    # unbounded unless the tail is small next to b_0
    b0 = draw(st.complex_numbers(min_magnitude=0.1, max_magnitude=3))
    tail = draw(st.lists(st.complex_numbers(max_magnitude=abs(b0) / 2), max_size=11))
    return PowerSeries([b0] + tail)


@given(st.lists(st.complex_numbers(max_magnitude=1), min_size=1, max_size=12).map(PowerSeries),
       divisor())
def test_div_mul_roundtrip(a, b):
    n = min(a.order, b.order)
    back = div(mul(a, b), b)
    assert np.allclose(back.coeffs, a.coeffs[: n + 1], rtol=0, atol=1e-12)


@given(series_st(2), series_st(2))
def test_leibniz_rule(a, b):
    lhs = differentiate(mul(a, b))
    rhs1 = mul(differentiate(a), b)
    rhs2 = mul(a, differentiate(b))
    n = min(lhs.order, rhs1.order, rhs2.order) + 1
    assert np.allclose(lhs.coeffs[:n], rhs1.coeffs[:n] + rhs2.coeffs[:n], rtol=0, atol=1e-10)


@given(st.lists(coef, min_size=3, max_size=10), st.floats(-10, 10))
def test_rotate_roundtrip_and_hankel_modulus(tail, theta):
    f = PowerSeries([0, 1] + tail)
    back = rotate(rotate(f, theta), -theta)
    assert np.allclose(back.coeffs, f.coeffs, rtol=0, atol=1e-12)
    # a_2 a_4 - a_3^2 picks up exp(4 i theta) under rotation
    h, hr = second_hankel(f), second_hankel(rotate(f, theta))
    assert abs(hr - h * cmath.exp(4j * theta)) <= 1e-10 * max(1.0, abs(h))
    assert abs(abs(hr) - abs(h)) <= 1e-10 * max(1.0, abs(h))

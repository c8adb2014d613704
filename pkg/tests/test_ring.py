import random
from decimal import Decimal, getcontext

import pytest
from hypothesis import given, strategies as st

from betanum import (FinElem, NotDivisible, Params, RingElem, beta_divide, fin_add, fin_cmp,
                     fin_times_beta_pow, ring_add, ring_mul, ring_sign)

ints = st.integers(min_value=-10**6, max_value=10**6)
params_st = st.tuples(st.integers(2, 20), st.integers(1, 19)).filter(lambda t: t[0] > t[1]).map(
    lambda t: Params(*t))


def decimal_value(a: int, b: int, f: int, params: Params) -> Decimal:
    """a + b*beta over beta**f with 80 significant digits, straight from the quadratic formula."""
    getcontext().prec = 80
    beta = (Decimal(params.p + 1) + Decimal(params.discriminant).sqrt()) / 2
    return (Decimal(a) + Decimal(b) * beta) / beta ** f


def test_params_validation():
    with pytest.raises(ValueError):
        Params(2, 2)
    with pytest.raises(ValueError):
        Params(3, 0)
    P = Params(5, 2)
    assert (P.discriminant, P.norm, P.T, P.t, P.lower, P.upper) == (24, 3, 2, 2, 2, 3)
    assert Params(4, 1).T == 3 and Params(4, 1).t == 2
    assert Params(3, 2).is_unit and not P.is_unit


def test_ring_add_examples(p52):
    assert ring_add(p52.elem(1, 0), p52.elem(-1, 1)) == p52.elem(0, 1)
    assert ring_add(p52.elem(2, 3), p52.elem(4, -1)) == p52.elem(6, 2)
    assert ring_add(p52.elem(0, 0), p52.elem(5, 7)) == p52.elem(5, 7)


def test_ring_mul_examples(p52):
    assert ring_mul(p52.elem(0, 1), p52.elem(0, 1)) == p52.elem(-3, 6)
    assert ring_mul(p52.elem(1, 1), p52.elem(1, -1)) == p52.elem(4, -6)
    assert ring_mul(p52.elem(2, 0), p52.elem(3, 0)) == p52.elem(6, 0)


def test_ring_sign_examples(p52):
    assert ring_sign(p52.elem(0, 0)) == 0
    assert ring_sign(p52.elem(-5, 1)) == 1
    assert ring_sign(p52.elem(-6, 1)) == -1


def test_beta_divide_examples(p52):
    assert beta_divide(p52.elem(-3, 6)) == p52.elem(0, 1)
    assert beta_divide(p52.elem(3, 0)) == p52.elem(6, -1)
    with pytest.raises(NotDivisible):
        beta_divide(p52.elem(1, 0))


def test_fin_examples(p52):
    assert fin_cmp(p52.fin(6), p52.fin(0, 1)) == 1
    assert fin_add(p52.fin(1), p52.fin(-1, 1)) == p52.fin(0, 1)
    # 6/beta = 12 - 2*beta exactly: beta*(12 - 2 beta) = 12 beta - 2(6 beta - 3) = 6
    x = fin_times_beta_pow(p52.fin(6), -1)
    assert (x.z.a, x.z.b, x.f) == (12, -2, 0)
    assert abs(float(x) - 2 * (3 - 6 ** 0.5)) < 1e-12


def test_canonical_form(p52):
    # (3, 0)/beta is divisible, so it collapses to (6, -1) with f = 0
    x = FinElem.make(p52.elem(3, 0), 1)
    assert (x.z, x.f) == (p52.elem(6, -1), 0)
    y = FinElem.make(p52.elem(1, 2), 2)
    assert y.f == 2
    assert hash(FinElem.make(p52.elem(3, 0), 1)) == hash(p52.fin(6, -1))


@pytest.mark.parametrize("p", range(2, 21))
def test_beta_exceeds_p(p):
    for q in range(1, p):
        assert ring_sign(Params(p, q).elem(-p, 1)) == 1
        assert ring_sign(Params(p, q).elem(-p - 1, 1)) == -1


@given(params_st, ints, ints, ints, ints)
def test_sign_is_multiplicative(P, a, b, c, d):
    x, y = P.elem(a, b), P.elem(c, d)
    assert ring_sign(x * y) == ring_sign(x) * ring_sign(y)
    assert (ring_sign(x) == 0) == (a == 0 and b == 0)


@given(params_st, ints, ints)
def test_divide_undoes_times_beta(P, a, b):
    x = P.elem(a, b)
    assert beta_divide(x.times_beta()) == x


@given(params_st, ints, ints, st.integers(0, 6), ints, ints, st.integers(0, 6))
def test_fin_arithmetic_matches_decimal(P, a, b, f, c, d, g):
    x, y = FinElem.make(P.elem(a, b), f), FinElem.make(P.elem(c, d), g)
    vx, vy = decimal_value(a, b, f, P), decimal_value(c, d, g, P)
    s = x + y
    assert abs(decimal_value(s.z.a, s.z.b, s.f, P) - (vx + vy)) < Decimal(10) ** -40
    m = x * y
    assert abs(decimal_value(m.z.a, m.z.b, m.f, P) - vx * vy) < Decimal(10) ** -30


@given(params_st, ints, ints, st.integers(0, 5), st.integers(-5, 5))
def test_times_beta_pow_round_trip(P, a, b, f, k):
    x = FinElem.make(P.elem(a, b), f)
    assert x.times_beta_pow(k).times_beta_pow(-k) == x


def test_cmp_agrees_with_high_precision():
    rng = random.Random(12)
    for _ in range(10_000):
        p = rng.randint(2, 12)
        P = Params(p, rng.randint(1, p - 1))
        a, b, f = rng.randint(-10**4, 10**4), rng.randint(-10**4, 10**4), rng.randint(0, 4)
        c, d, g = rng.randint(-10**4, 10**4), rng.randint(-10**4, 10**4), rng.randint(0, 4)
        x, y = FinElem.make(P.elem(a, b), f), FinElem.make(P.elem(c, d), g)
        vx, vy = decimal_value(a, b, f, P), decimal_value(c, d, g, P)
        want = (vx > vy) - (vx < vy)
        assert fin_cmp(x, y) == want


def test_mixing_params_is_rejected():
    with pytest.raises(ValueError):
        Params(5, 2).elem(1, 1) + Params(4, 1).elem(1, 1)


def test_large_coefficients_stay_exact():
    P = Params(7, 3)
    big = P.beta_power(300)
    assert beta_divide(big) == P.beta_power(299)
    assert RingElem.sign(big - P.beta_power(299) * 7) == 1

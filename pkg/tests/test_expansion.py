import random

import pytest
from hypothesis import given, strategies as st

from betanum import (BudgetExceeded, DigitString, EventuallyPeriodic, Finite, NegativeInput,
                     Params, evaluate, format_digits, greedy_expand, is_admissible,
                     is_beta_integer, parse_digits)
from betanum.digits import lex_compare
from betanum.expansion import leading_exponent


def test_greedy_examples(p52):
    assert str(greedy_expand(p52.fin(6))) == "10.3"
    assert greedy_expand(p52.fin(-1, 1)) == EventuallyPeriodic(DigitString((4,), 0), (2,))
    assert str(greedy_expand(p52.fin(-1, 1))) == "4.(2)"
    assert str(greedy_expand(p52.fin(1))) == "1."
    assert str(greedy_expand(p52.fin(10))) == "14.3"
    assert greedy_expand(p52.fin(0)) == Finite(DigitString((), 0))


def test_negative_input_rejected(p52):
    with pytest.raises(NegativeInput):
        greedy_expand(p52.fin(-1))


def test_budget_exceeded(p52):
    x = p52.fin(-59, 11, 2)
    assert str(greedy_expand(x)) == "0.005041(4)"
    cut = greedy_expand(x, fractional_budget=3)
    assert isinstance(cut, BudgetExceeded)
    assert format_digits(cut.partial, keep_zeros=True) == "0.005"


def test_is_beta_integer_examples(p52):
    assert is_beta_integer(p52.fin(0, 1))
    assert not is_beta_integer(p52.fin(6))
    assert is_beta_integer(p52.fin(-5))
    assert not is_beta_integer(p52.fin(-1, 1))


def test_leading_exponent(p52):
    assert leading_exponent(p52.fin(1)) == 0
    assert leading_exponent(p52.fin(0, 1)) == 1
    assert leading_exponent(p52.fin(5)) == 0
    assert leading_exponent(p52.fin(1, 0, 1)) == -1


@pytest.mark.parametrize("p", range(2, 21))
def test_beta_minus_one_is_periodic(p):
    for q in range(1, p):
        res = greedy_expand(Params(p, q).fin(-1, 1))
        assert res == EventuallyPeriodic(DigitString((p - 1,), 0), (q,))


params_st = st.sampled_from([Params(3, 1), Params(4, 1), Params(5, 2), Params(3, 2), Params(7, 3)])


@given(params_st, st.lists(st.integers(0, 12), min_size=1, max_size=7), st.integers(-3, 5))
def test_finite_round_trip(P, digits, msd):
    x = evaluate(DigitString(tuple(digits), msd), P)
    res = greedy_expand(x)
    assert isinstance(res, Finite)
    assert is_admissible(res.digits, P)
    assert evaluate(res.digits, P) == x


@given(params_st, st.integers(-200, 200), st.integers(0, 60), st.integers(0, 3))
def test_every_result_is_admissible(P, a, b, f):
    x = P.fin(a, b, f)
    if x.sign() < 0:
        x = -x
    res = greedy_expand(x)
    if isinstance(res, Finite):
        assert is_admissible(res.digits, P) and evaluate(res.digits, P) == x
    elif isinstance(res, EventuallyPeriodic):
        assert is_admissible(DigitString(res.preperiod.digits + res.period * 3, 0), P)


def _unnormalize_once(y: DigitString, P: Params, rng: random.Random) -> DigitString | None:
    """Apply (p+1). = 10.(p-q) or its longer sibling backwards at a random place."""
    p, q = P.p, P.q
    pos = y.as_positions()
    places = list(range(y.lsd_exponent, y.msd_exponent + 2))
    rng.shuffle(places)
    for i in places:
        s = rng.randint(0, 2) if rng.random() < 0.5 else -1
        if s < 0:
            # 1 at i+1, p-q at i-1  ->  p+1 at i
            if pos.get(i + 1, 0) >= 1 and pos.get(i - 1, 0) >= p - q:
                out = dict(pos)
                out[i + 1] -= 1
                out[i - 1] -= p - q
                out[i] = out.get(i, 0) + p + 1
                return DigitString.from_positions(out)
        else:
            # 1 at top, (p-q) below a block of s+2 places  ->  p q^s (q+1)
            top, bottom = i + s + 2, i - 1
            if pos.get(top, 0) >= 1 and pos.get(bottom, 0) >= p - q:
                out = dict(pos)
                out[top] -= 1
                out[bottom] -= p - q
                block = [p] + [q] * s + [q + 1]
                for k, d in zip(range(top - 1, bottom, -1), block):
                    out[k] = out.get(k, 0) + d
                return DigitString.from_positions(out)
    return None


def test_expansion_is_lexicographically_greatest():
    rng = random.Random(5)
    checked = 0
    while checked < 1000:
        p = rng.randint(2, 9)
        P = Params(p, rng.randint(1, p - 1))
        raw = DigitString(tuple(rng.randint(0, 2 * p) for _ in range(rng.randint(2, 7))),
                          rng.randint(0, 4))
        y = greedy_expand(evaluate(raw, P)).digits
        alt = _unnormalize_once(y, P, rng)
        if alt is None:
            continue
        assert evaluate(alt, P) == evaluate(y, P)
        assert lex_compare(y, alt) == 1
        checked += 1


def test_digit_string_input(p52):
    assert str(greedy_expand(evaluate(parse_digits("723."), p52))) == "1200.3"

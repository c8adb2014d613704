"""Greedy beta-expansion of exact numbers."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Union

from .digits import DigitString, format_digits
from .ring import FinElem, beta_power_coords, sign_coords

DEFAULT_BUDGET = 64


class NegativeInput(ValueError):
    pass


@dataclass(frozen=True)
class Finite:
    digits: DigitString

    def __str__(self):
        return format_digits(self.digits)


@dataclass(frozen=True)
class EventuallyPeriodic:
    preperiod: DigitString  # not trimmed: its last digit sits right before the period
    period: tuple[int, ...]

    def __str__(self):
        commas = any(d > 9 for d in self.preperiod.digits + self.period)
        body = (",".join if commas else "".join)(map(str, self.period))
        return format_digits(self.preperiod, keep_zeros=True) + f"({body})"


@dataclass(frozen=True)
class BudgetExceeded:
    partial: DigitString

    def __str__(self):
        return format_digits(self.partial, keep_zeros=True) + "..."


ExpansionResult = Union[Finite, EventuallyPeriodic, BudgetExceeded]


def _ge_power(a: int, b: int, m: int, p: int, q: int) -> bool:
    """a + b*beta >= beta**m, for any integer m."""
    if m >= 0:
        pa, pb = beta_power_coords(p, q, m)
        return sign_coords(a - pa, b - pb, p, q) >= 0
    pa, pb = beta_power_coords(p, q, -m)
    # (a + b beta) * beta^-m >= 1
    ra = a * pa - b * pb * (p - q)
    rb = a * pb + b * pa + b * pb * (p + 1)
    return sign_coords(ra - 1, rb, p, q) >= 0


def leading_exponent(x: FinElem) -> int:
    """The k with beta^k <= x < beta^(k+1), for x > 0."""
    p, q = x.params.p, x.params.q
    a, b, f = x.z.a, x.z.b, x.f
    k = 0
    if _ge_power(a, b, f, p, q):
        while _ge_power(a, b, f + k + 1, p, q):
            k += 1
    else:
        k = -1
        while not _ge_power(a, b, f + k, p, q):
            k -= 1
    return k


def greedy_steps(x: FinElem) -> Iterator[tuple[int, int, int, int, int]]:
    """Yield (position, digit, a, b, g): each digit and the remainder (a+b beta)/beta^g after it.

    The remainder is scaled by beta^-position, so it lies in [0, 1).
    Stops once the remainder is zero; otherwise runs forever.
    """
    if x.sign() <= 0:
        return
    p, q = x.params.p, x.params.q
    norm = p - q
    k = leading_exponent(x)
    a, b, g = x.z.a, x.z.b, x.f + k
    if g < 0:
        pa, pb = beta_power_coords(p, q, -g)
        a, b = a * pa - b * pb * norm, a * pb + b * pa + b * pb * (p + 1)
        g = 0
    pos = k
    while True:
        pa, pb = beta_power_coords(p, q, g)
        d = 0
        while d < p and sign_coords(a - (d + 1) * pa, b - (d + 1) * pb, p, q) >= 0:
            d += 1
        a, b = a - d * pa, b - d * pb
        yield pos, d, a, b, g
        if a == 0 and b == 0:
            return
        pos -= 1
        if g > 0:
            g -= 1
        else:
            a, b = -b * norm, a + b * (p + 1)


def _canonical_key(a: int, b: int, g: int, p: int, q: int) -> tuple[int, int, int]:
    norm = p - q
    while g > 0 and a % norm == 0:
        d = -a // norm
        a, b = b - d * (p + 1), d
        g -= 1
    return a, b, g


def greedy_expand(x: FinElem, fractional_budget: int = DEFAULT_BUDGET) -> ExpansionResult:
    """Greedy beta-expansion of x >= 0 with exact comparisons.

    Returns :class:`Finite`, :class:`EventuallyPeriodic` when a fractional
    remainder recurs, or :class:`BudgetExceeded` after ``fractional_budget``
    fractional digits without either.
    """
    s = x.sign()
    if s < 0:
        raise NegativeInput(repr(x))
    if s == 0:
        return Finite(DigitString((), 0))
    if fractional_budget < 1:
        raise ValueError("fractional_budget must be positive")
    p, q = x.params.p, x.params.q
    digits: list[int] = []
    seen: dict[tuple[int, int, int], int] = {}
    msd = None
    for pos, d, a, b, g in greedy_steps(x):
        if msd is None:
            msd = pos
        digits.append(d)
        if a == 0 and b == 0:
            return Finite(DigitString(tuple(digits), msd).canonical())
        if pos <= 0:
            key = _canonical_key(a, b, g, p, q)
            if key in seen:
                start = seen[key]
                return EventuallyPeriodic(DigitString(tuple(digits[:start]), msd),
                                          tuple(digits[start:]))
            seen[key] = len(digits)
            if -pos >= fractional_budget:
                return BudgetExceeded(DigitString(tuple(digits), msd))
    raise AssertionError("unreachable")


def is_beta_integer(x: FinElem) -> bool:
    """True when |x| has an expansion with no digits below position 0."""
    if x.sign() < 0:
        x = -x
    for pos, d, a, b, _g in greedy_steps(x):
        if pos < 0 and d:
            return False
        if a == 0 and b == 0:
            return True
        if pos <= 0:
            return False
    return True

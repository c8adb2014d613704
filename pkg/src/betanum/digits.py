"""Finite beta-representations: parsing, evaluation, admissibility, rewriting.

A :class:`DigitString` stores digits most significant first together with
the exponent of the first digit.  Digits may be any nonnegative integers;
only the output of :func:`normalize_rewrite` is guaranteed admissible.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from . import _backend
from .ring import FinElem, Params, RingElem


class NotAdmissible(ValueError):
    pass


@dataclass(frozen=True, slots=True)
class DigitString:
    digits: tuple[int, ...]
    msd_exponent: int = 0

    def __post_init__(self):
        if any(d < 0 for d in self.digits):
            raise ValueError("digits must be nonnegative")

    @classmethod
    def from_digits(cls, digits: Iterable[int], msd_exponent: int | None = None) -> DigitString:
        """Build from digits with the point after the last one unless told otherwise."""
        digits = tuple(int(d) for d in digits)
        if msd_exponent is None:
            msd_exponent = len(digits) - 1
        return cls(digits, msd_exponent).canonical()

    @classmethod
    def from_positions(cls, by_pos: dict[int, int]) -> DigitString:
        nz = [k for k, v in by_pos.items() if v]
        if not nz:
            return cls((), 0)
        hi, lo = max(nz), min(nz)
        return cls(tuple(by_pos.get(k, 0) for k in range(hi, lo - 1, -1)), hi)

    @property
    def lsd_exponent(self) -> int:
        return self.msd_exponent - len(self.digits) + 1

    @property
    def frac_len(self) -> int:
        return max(0, -self.lsd_exponent)

    def positions(self) -> range:
        return range(self.msd_exponent, self.lsd_exponent - 1, -1)

    def items(self):
        return zip(self.positions(), self.digits)

    def digit_at(self, pos: int) -> int:
        i = self.msd_exponent - pos
        if 0 <= i < len(self.digits):
            return self.digits[i]
        return 0

    def as_positions(self) -> dict[int, int]:
        return {k: d for k, d in self.items() if d}

    def canonical(self) -> DigitString:
        ds = self.digits
        lo, hi = 0, len(ds)
        while lo < hi and ds[lo] == 0:
            lo += 1
        while hi > lo and ds[hi - 1] == 0:
            hi -= 1
        if lo == hi:
            return DigitString((), 0)
        if lo == 0 and hi == len(ds):
            return self
        return DigitString(ds[lo:hi], self.msd_exponent - lo)

    def padded(self, hi: int, lo: int) -> tuple[int, ...]:
        """Digits from position ``hi`` down to ``lo`` inclusive, zero-filled."""
        return tuple(self.digit_at(k) for k in range(hi, lo - 1, -1))

    def frac_digit_sum(self) -> int:
        return sum(d for k, d in self.items() if k < 0)

    def __str__(self):
        return format_digits(self)


def _fmt_digits(ds: Sequence[int], commas: bool) -> str:
    return ",".join(map(str, ds)) if commas else "".join(map(str, ds))


def format_digits(ds: DigitString, *, keep_zeros: bool = False) -> str:
    """Render as text, e.g. ``1200.3`` or ``12,0,0.11``.  Integers keep a trailing point."""
    if not keep_zeros:
        ds = ds.canonical()
    hi = max(ds.msd_exponent, 0)
    lo = min(ds.lsd_exponent, 0) if ds.digits else 0
    ip = ds.padded(hi, 0) if ds.digits else (0,)
    fp = ds.padded(-1, lo) if lo < 0 else ()
    if not keep_zeros and ip != (0,):
        # drop padding zeros above the leading digit
        first = next((i for i, d in enumerate(ip) if d), len(ip) - 1)
        ip = ip[first:]
    commas = any(d > 9 for d in ds.digits)
    if commas and len(ip) == 1 and len(fp) <= 1:
        # a lone wide digit needs a comma somewhere to be read back as one digit
        ip = (0,) + ip
    return _fmt_digits(ip, commas) + "." + _fmt_digits(fp, commas)


def parse_digits(text: str, *, canonical: bool = True) -> DigitString:
    """Parse the text format; accepts '.' or the bullet as fractional point."""
    s = text.strip().replace("•", ".")
    if not s:
        raise ValueError("empty digit string")
    if s.count(".") > 1:
        raise ValueError(f"more than one fractional point in {text!r}")
    int_part, _, frac_part = s.partition(".")
    try:
        if "," in s:
            ip = [int(t) for t in int_part.split(",")] if int_part else []
            fp = [int(t) for t in frac_part.split(",")] if frac_part else []
        else:
            ip = [int(c) for c in int_part]
            fp = [int(c) for c in frac_part]
    except ValueError:
        raise ValueError(f"malformed digit string {text!r}") from None
    if any(d < 0 for d in ip + fp):
        raise ValueError(f"negative digit in {text!r}")
    if not ip:
        ip = [0]
    ds = DigitString(tuple(ip + fp), len(ip) - 1)
    return ds.canonical() if canonical else ds


def evaluate(ds: DigitString, params: Params) -> FinElem:
    acc_a, acc_b = 0, 0
    p, q = params.p, params.q
    for d in ds.digits:
        # acc = acc * beta + d
        acc_a, acc_b = -acc_b * (p - q) + d, acc_a + acc_b * (p + 1)
    z = RingElem(acc_a, acc_b, params)
    return FinElem.make(z, -ds.lsd_exponent) if ds.digits else FinElem(z, 0)


def is_admissible_seq(digits: Sequence[int], p: int, q: int) -> bool:
    """Parry condition for d*(1) = p q^omega on a digit sequence (msd first)."""
    n = len(digits)
    i = 0
    while i < n:
        d = digits[i]
        if d > p:
            return False
        if d == p:
            j = i + 1
            while j < n and digits[j] == q:
                j += 1
            if j < n and digits[j] > q:
                return False
        i += 1
    return True


def is_admissible(ds: DigitString, params: Params) -> bool:
    return is_admissible_seq(ds.digits, params.p, params.q)


def normalize_rewrite(ds: DigitString, params: Params) -> DigitString:
    """Rewrite with (p+1). = 10.(p-q) and p q^s (q+1). = 1 0^(s+2).(p-q) until admissible.

    Violations are resolved leftmost first.  The result is the beta-expansion
    of the represented number.
    """
    ds = ds.canonical()
    if not ds.digits:
        return ds
    digits, msd = _backend.normalize(list(ds.digits), ds.msd_exponent, params.p, params.q)
    return DigitString(tuple(digits), msd).canonical()


def fp(ds: DigitString, params: Params | None = None) -> int:
    """Length of the fractional part of an admissible string."""
    if params is not None and not is_admissible(ds, params):
        raise NotAdmissible(str(ds))
    return ds.canonical().frac_len


def lex_compare(x: DigitString, y: DigitString) -> int:
    """Compare two representations digit by digit after aligning the point."""
    xs, ys = x.canonical(), y.canonical()
    hi = max(xs.msd_exponent if xs.digits else 0, ys.msd_exponent if ys.digits else 0)
    lo = min(xs.lsd_exponent if xs.digits else 0, ys.lsd_exponent if ys.digits else 0)
    a, b = xs.padded(hi, lo), ys.padded(hi, lo)
    return (a > b) - (a < b)

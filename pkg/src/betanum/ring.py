"""Exact arithmetic in Z[beta] and beta^-f Z[beta].

beta is the larger root of x^2 - (p+1)x + (p-q), so every element of the
ring is a + b*beta with integer a, b.  Signs are decided exactly by writing
2(a + b*beta) = u + v*sqrt(D) and comparing squares; floats are only used
by ``__float__`` for display and sanity checks.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache


class NotDivisible(ArithmeticError):
    """Raised when a ring element is not a multiple of beta."""


@dataclass(frozen=True, slots=True)
class Params:
    p: int
    q: int

    def __post_init__(self):
        if not (isinstance(self.p, int) and isinstance(self.q, int)):
            raise TypeError("p and q must be integers")
        if not self.p > self.q >= 1:
            raise ValueError(f"need p > q >= 1, got p={self.p}, q={self.q}")
        d = self.discriminant
        if d <= 0 or math.isqrt(d) ** 2 == d:
            raise ValueError(f"discriminant {d} is not a positive non-square")

    @property
    def discriminant(self) -> int:
        return (self.p + 1) ** 2 - 4 * (self.p - self.q)

    @property
    def norm(self) -> int:
        """p - q, the product of beta and its conjugate."""
        return self.p - self.q

    @property
    def upper(self) -> int:
        """ceil(p/q), the upper bound on the fractional length of sums."""
        return -(-self.p // self.q)

    @property
    def lower(self) -> int:
        """floor((p-1)/q), the lower bound on the fractional length of sums."""
        return (self.p - 1) // self.q

    @property
    def T(self) -> int:
        return -(-(self.p - 1) // self.q)

    @property
    def t(self) -> int:
        return (self.p + self.q) // (self.q + 1)

    @property
    def is_unit(self) -> bool:
        return self.q == self.p - 1

    @property
    def beta(self) -> RingElem:
        return RingElem(0, 1, self)

    def elem(self, a: int, b: int = 0) -> RingElem:
        return RingElem(a, b, self)

    def fin(self, a: int, b: int = 0, f: int = 0) -> FinElem:
        return FinElem.make(RingElem(a, b, self), f)

    def beta_power(self, n: int) -> RingElem:
        a, b = beta_power_coords(self.p, self.q, n)
        return RingElem(a, b, self)

    def __float__(self):
        return (self.p + 1 + math.sqrt(self.discriminant)) / 2


@lru_cache(maxsize=None)
def beta_power_coords(p: int, q: int, n: int) -> tuple[int, int]:
    if n < 0:
        raise ValueError("negative power is not in Z[beta]")
    if n == 0:
        return (1, 0)
    a, b = beta_power_coords(p, q, n - 1)
    return (-b * (p - q), a + b * (p + 1))


def sign_coords(a: int, b: int, p: int, q: int) -> int:
    """Sign of a + b*beta for the given parameters."""
    u = 2 * a + b * (p + 1)
    v = b
    if v == 0:
        return (u > 0) - (u < 0)
    if u >= 0 and v > 0:
        return 1
    if u <= 0 and v < 0:
        return -1
    # opposite signs: compare |u| with |v|*sqrt(D)
    lhs = u * u
    rhs = v * v * ((p + 1) ** 2 - 4 * (p - q))
    if v > 0:
        return 1 if rhs > lhs else -1
    return 1 if lhs > rhs else -1


@dataclass(frozen=True, slots=True)
class RingElem:
    """The element a + b*beta."""

    a: int
    b: int
    params: Params

    def _check(self, other: RingElem) -> None:
        if self.params != other.params:
            raise ValueError("mixing elements of different rings")

    def _coerce(self, other) -> RingElem:
        if isinstance(other, RingElem):
            self._check(other)
            return other
        if isinstance(other, int):
            return RingElem(other, 0, self.params)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElem(self.a + other.a, self.b + other.b, self.params)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return RingElem(self.a - other.a, self.b - other.b, self.params)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return RingElem(-self.a, -self.b, self.params)

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElem(self.a * other, self.b * other, self.params)
        if not isinstance(other, RingElem):
            return NotImplemented
        self._check(other)
        p, q = self.params.p, self.params.q
        a, b, c, d = self.a, self.b, other.a, other.b
        return RingElem(a * c - b * d * (p - q), a * d + b * c + b * d * (p + 1), self.params)

    __rmul__ = __mul__

    def times_beta(self) -> RingElem:
        p, q = self.params.p, self.params.q
        return RingElem(-self.b * (p - q), self.a + self.b * (p + 1), self.params)

    def divisible_by_beta(self) -> bool:
        return self.a % self.params.norm == 0

    def divide_by_beta(self) -> RingElem:
        p, q = self.params.p, self.params.q
        if self.a % (p - q):
            raise NotDivisible(f"{self} is not divisible by beta")
        d = -self.a // (p - q)
        return RingElem(self.b - d * (p + 1), d, self.params)

    def sign(self) -> int:
        return sign_coords(self.a, self.b, self.params.p, self.params.q)

    def conjugate_float(self) -> float:
        p = self.params
        beta_conj = (p.p + 1 - math.sqrt(p.discriminant)) / 2
        return self.a + self.b * beta_conj

    def __bool__(self):
        return bool(self.a or self.b)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __float__(self):
        return self.a + self.b * float(self.params)

    def __repr__(self):
        return f"RingElem({self.a}, {self.b})"


@dataclass(frozen=True, slots=True)
class FinElem:
    """The number z / beta**f.  Construct via :meth:`make` to get canonical form."""

    z: RingElem
    f: int = 0

    @classmethod
    def make(cls, z: RingElem, f: int = 0) -> FinElem:
        if f < 0:
            return cls(z * z.params.beta_power(-f), 0)
        if not z:
            return cls(z, 0)
        norm = z.params.norm
        while f > 0 and z.a % norm == 0:
            z = z.divide_by_beta()
            f -= 1
        return cls(z, f)

    @classmethod
    def from_int(cls, params: Params, n: int) -> FinElem:
        return cls(RingElem(n, 0, params), 0)

    @property
    def params(self) -> Params:
        return self.z.params

    def _coerce(self, other) -> FinElem:
        if isinstance(other, FinElem):
            return other
        if isinstance(other, RingElem):
            return FinElem(other, 0)
        if isinstance(other, int):
            return FinElem(RingElem(other, 0, self.params), 0)
        return NotImplemented

    def _aligned(self, other: FinElem) -> tuple[RingElem, RingElem, int]:
        f = max(self.f, other.f)
        x = self.z if self.f == f else self.z * self.params.beta_power(f - self.f)
        y = other.z if other.f == f else other.z * self.params.beta_power(f - other.f)
        return x, y, f

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        x, y, f = self._aligned(other)
        return FinElem.make(x + y, f)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        x, y, f = self._aligned(other)
        return FinElem.make(x - y, f)

    def __rsub__(self, other):
        return (-self) + other

    def __neg__(self):
        return FinElem(-self.z, self.f)

    def __mul__(self, other):
        if isinstance(other, int):
            return FinElem.make(self.z * other, self.f)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return FinElem.make(self.z * other.z, self.f + other.f)

    __rmul__ = __mul__

    def times_beta_pow(self, k: int) -> FinElem:
        if k >= 0:
            if self.f >= k:
                return FinElem(self.z, self.f - k)
            return FinElem(self.z * self.params.beta_power(k - self.f), 0)
        return FinElem.make(self.z, self.f - k)

    def sign(self) -> int:
        return self.z.sign()

    def cmp(self, other) -> int:
        other = self._coerce(other)
        x, y, _ = self._aligned(other)
        return (x - y).sign()

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        # canonical forms are unique
        x, y, _ = self._aligned(other)
        return x.a == y.a and x.b == y.b

    def __hash__(self):
        c = FinElem.make(self.z, self.f)
        return hash((c.z.a, c.z.b, c.f, c.params))

    def __lt__(self, other):
        return self.cmp(other) < 0

    def __le__(self, other):
        return self.cmp(other) <= 0

    def __gt__(self, other):
        return self.cmp(other) > 0

    def __ge__(self, other):
        return self.cmp(other) >= 0

    def __float__(self):
        return float(self.z) / float(self.params) ** self.f

    def __repr__(self):
        if self.f == 0:
            return f"FinElem({self.z.a}, {self.z.b})"
        return f"FinElem({self.z.a}, {self.z.b}, f={self.f})"


def ring_add(x: RingElem, y: RingElem) -> RingElem:
    return x + y


def ring_mul(x: RingElem, y: RingElem) -> RingElem:
    return x * y


def ring_sign(x: RingElem) -> int:
    return x.sign()


def beta_divide(x: RingElem) -> RingElem:
    return x.divide_by_beta()


def fin_cmp(x: FinElem, y: FinElem) -> int:
    return x.cmp(y)


def fin_add(x: FinElem, y: FinElem) -> FinElem:
    return x + y


def fin_sub(x: FinElem, y: FinElem) -> FinElem:
    return x - y


def fin_times_beta_pow(x: FinElem, k: int) -> FinElem:
    return x.times_beta_pow(k)

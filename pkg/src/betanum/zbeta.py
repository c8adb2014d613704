"""Beta-integers: enumeration, addition and the fractional-length search."""
from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .digits import (DigitString, NotAdmissible, evaluate, format_digits, is_admissible,
                     normalize_rewrite)
from .expansion import (DEFAULT_BUDGET, Finite, greedy_expand,
                        is_beta_integer)
from .ring import FinElem, Params, RingElem
from . import words


class NotABetaInteger(ValueError):
    pass


class OutOfRange(ValueError):
    pass


DIFF_NAMES = ("integer", "fractional", "periodic", "undecided")


class UnsupportedParams(ValueError):
    pass


class NotInFinError(ArithmeticError):
    """A mixed-sign sum of beta-integers without finite expansion."""


class InvariantViolation(AssertionError):
    pass


def small_gap(params: Params) -> FinElem:
    """beta - p, the gap coded by B."""
    return FinElem(RingElem(-params.p, 1, params), 0)


def eps_unit(params: Params) -> FinElem:
    """(p-q)/beta, which equals (p+1) - beta."""
    return FinElem(RingElem(params.p + 1, -1, params), 0)


def successor(x: FinElem) -> tuple[FinElem, str]:
    """The next nonnegative beta-integer after x and the letter of the gap."""
    if x.sign() < 0 or not is_beta_integer(x):
        raise NotABetaInteger(repr(x))
    return _successor(x)


def _successor(x: FinElem) -> tuple[FinElem, str]:
    y = x + small_gap(x.params)
    if is_beta_integer(y):
        return y, "B"
    return x + 1, "A"


def enumerate_beta_integers(n: int, params: Params) -> list[FinElem]:
    """The first n nonnegative beta-integers in increasing order."""
    out: list[FinElem] = []
    x = FinElem.from_int(params, 0)
    for _ in range(n):
        out.append(x)
        x, _ = _successor(x)
    return out


def successor_letters(n: int, params: Params) -> str:
    """Letters of the first n gaps found by :func:`successor`."""
    letters = []
    x = FinElem.from_int(params, 0)
    for _ in range(n):
        x, c = _successor(x)
        letters.append(c)
    return "".join(letters)


def admissible_strings(length: int, params: Params) -> list[tuple[int, ...]]:
    """All admissible digit tuples of the given length (leading zeros allowed), increasing."""
    p, q = params.p, params.q
    out: list[tuple[int, ...]] = []

    # state True: inside a run p q^s, where the next digit must be <= q
    def rec(prefix: list[int], in_run: bool):
        if len(prefix) == length:
            out.append(tuple(prefix))
            return
        top = q if in_run else p
        for d in range(top + 1):
            prefix.append(d)
            rec(prefix, d == p if not in_run else d == q)
            prefix.pop()

    rec([], False)
    return out


def beta_integers_up_to_digits(digit_bound: int, params: Params) -> list[DigitString]:
    """Nonnegative beta-integers whose expansion has at most digit_bound digits."""
    return [DigitString(t, digit_bound - 1).canonical()
            for t in admissible_strings(digit_bound, params)]


def _integer_expansion(x: DigitString, params: Params) -> None:
    if not is_admissible(x, params):
        raise NotAdmissible(str(x))
    if x.canonical().frac_len:
        raise NotAdmissible(f"{x} has a fractional part")


def _violation_start(ds: DigitString, params: Params) -> int:
    """Position where the leftmost Parry violation of ds begins."""
    p, q = params.p, params.q
    d = ds.digits
    for i, x in enumerate(d):
        if x > p:
            return ds.msd_exponent - i
        if x == p:
            j = i + 1
            while j < len(d) and d[j] == q:
                j += 1
            if j < len(d) and d[j] > q:
                return ds.msd_exponent - i
    raise ValueError("string is admissible")


def add_beta_power(x: DigitString, l: int, params: Params) -> DigitString:
    """Expansion of x + beta**l for a beta-integer x.

    When the sum leaves Z_beta it has the closed form
    x_k..(x_{s+1}+1) 0^(s-l+1) (x_{l-1}-q)..(x_1-q)(x_0-q-1) . (p-q)
    (for l = 0: x_k..(x_{s+1}+1) 0^(s+1) . (p-q)).  The closed form is
    cross-checked against the rewriting normalizer before it is returned.
    """
    if l < 0:
        raise ValueError("l must be nonnegative")
    _integer_expansion(x, params)
    p, q = params.p, params.q
    pos = x.as_positions()
    bumped = dict(pos)
    bumped[l] = bumped.get(l, 0) + 1
    top = max(max(bumped), l)
    raw = DigitString(tuple(bumped.get(k, 0) for k in range(top, -1, -1)), top)
    if is_admissible(raw, params):
        return raw.canonical()
    reference = normalize_rewrite(raw, params)
    if reference.frac_len == 0:
        return reference
    s = _violation_start(raw, params)
    out = {k: v for k, v in pos.items() if k > s + 1}
    out[s + 1] = pos.get(s + 1, 0) + 1
    for k in range(l, s + 1):
        out[k] = 0
    if l >= 1:
        for k in range(1, l):
            out[k] = pos.get(k, 0) - q
        out[0] = pos.get(0, 0) - q - 1
    out[-1] = p - q
    if any(v < 0 for v in out.values()):
        raise InvariantViolation(f"closed form for {x} + beta^{l} has a negative digit")
    result = DigitString.from_positions(out)
    if result != reference:
        raise InvariantViolation(f"closed form {result} != rewrite {reference} for {x} + beta^{l}")
    return result


@dataclass(frozen=True)
class AdditionReport:
    sum_expansion: DigitString
    fp: int
    epsilon: int
    negative: bool = False

    def __str__(self):
        sign = "-" if self.negative else ""
        return f"{sign}{format_digits(self.sum_expansion)} fp={self.fp} eps={self.epsilon}"


def _epsilon(total: FinElem, params: Params) -> int:
    unit = eps_unit(params)
    hits = [e for e in range(params.upper + 1) if is_beta_integer(total - unit * e)]
    if len(hits) != 1:
        raise InvariantViolation(f"expected exactly one epsilon for {total!r}, got {hits}")
    return hits[0]


def _check_beta_integer(x: FinElem) -> None:
    if not is_beta_integer(x):
        raise NotABetaInteger(repr(x))


def add(x: FinElem, y: FinElem, fractional_budget: int = DEFAULT_BUDGET) -> AdditionReport:
    """Sum of two beta-integers with its fractional length and epsilon shift."""
    _check_beta_integer(x)
    _check_beta_integer(y)
    sx, sy = x.sign(), y.sign()
    if sx < 0 and sy < 0:
        r = add(-x, -y, fractional_budget)
        return AdditionReport(r.sum_expansion, r.fp, r.epsilon, negative=True)
    if sx < 0 or sy < 0:
        big, small = (x, -y) if sy < 0 else (y, -x)
        if big.cmp(small) >= 0:
            res, negative = subtract_check(big, small, fractional_budget), False
        else:
            res, negative = subtract_check(small, big, fractional_budget), True
        if isinstance(res, NotInFin):
            raise NotInFinError(f"{x!r} + {y!r} has no finite expansion")
        exp = greedy_expand(res.value)
        return AdditionReport(exp.digits, 0, 0, negative=negative)
    total = x + y
    exp = greedy_expand(total, fractional_budget)
    if not isinstance(exp, Finite):
        raise InvariantViolation(f"sum {total!r} of nonnegative beta-integers is not finite")
    return AdditionReport(exp.digits, exp.digits.frac_len, _epsilon(total, total.params))


@dataclass(frozen=True)
class BetaInteger:
    value: FinElem


@dataclass(frozen=True)
class NotInFin:
    expansion: object  # EventuallyPeriodic or BudgetExceeded


def subtract_check(x: FinElem, y: FinElem, fractional_budget: int = DEFAULT_BUDGET):
    """x - y for beta-integers x >= y >= 0: a beta-integer or not in Fin(beta)."""
    if y.sign() < 0 or x.cmp(y) < 0:
        raise ValueError("need x >= y >= 0")
    diff = x - y
    exp = greedy_expand(diff, fractional_budget)
    if isinstance(exp, Finite):
        if exp.digits.frac_len:
            raise InvariantViolation(f"{diff!r} is in Fin(beta) but not a beta-integer")
        return BetaInteger(diff)
    return NotInFin(exp)


def lemmaF_expansion(j: int, params: Params) -> DigitString:
    """Expansion (j-1) . a_j ... a_1 of j(p-q)/beta, a_1 = p-q, a_i = p-1-iq."""
    if not 1 <= j <= params.lower:
        raise OutOfRange(f"j must be in 1..{params.lower}")
    p, q = params.p, params.q
    a = [p - q] + [(p - 1) - i * q for i in range(2, j + 1)]
    return DigitString((j - 1, *reversed(a)), 0).canonical()


@dataclass
class SearchReport:
    params: Params
    digit_bound: int
    max_fp: int
    histogram: dict[int, int]
    witnesses: list[tuple[DigitString, DigitString]]
    pairs: int = 0
    eps_histogram: dict[int, int] = field(default_factory=dict)
    eps_failures: int = 0
    lattice_mismatches: int = 0
    diff_kinds: dict[str, int] = field(default_factory=dict)

    @property
    def in_bracket(self) -> bool:
        return self.params.lower <= self.max_fp <= self.params.upper

    @property
    def matches_conjecture(self) -> bool:
        """max_fp equals floor((p-1)/q); evidence only, never a proof."""
        return self.max_fp == self.params.lower

    def to_dict(self) -> dict:
        return {
            "p": self.params.p,
            "q": self.params.q,
            "digit_bound": self.digit_bound,
            "max_fp": self.max_fp,
            "histogram": {str(k): v for k, v in sorted(self.histogram.items())},
            "witnesses": [[format_digits(x), format_digits(y)] for x, y in self.witnesses],
            "pairs": self.pairs,
            "epsilon_histogram": {str(k): v for k, v in sorted(self.eps_histogram.items())},
            "epsilon_failures": self.eps_failures,
            "lattice_mismatches": self.lattice_mismatches,
            "differences": dict(self.diff_kinds),
            "lower_bound": self.params.lower,
            "upper_bound": self.params.upper,
            "matches_conjecture": self.matches_conjecture,
        }


def worker_count() -> int:
    raw = os.environ.get("BETANUM_THREADS", "0")
    try:
        n = int(raw)
    except ValueError:
        n = 0
    if n <= 0:
        n = os.cpu_count() or 1
    return n


def _a_before_b(min_b: int, params: Params) -> np.ndarray:
    """Number of A before each of the first min_b B's of u."""
    n = 64
    while True:
        u = words.u_prefix(n, params)
        letters = np.frombuffer(u.encode("ascii"), dtype=np.uint8)
        b_pos = np.nonzero(letters == ord("B"))[0]
        if len(b_pos) >= min_b:
            return (b_pos[:min_b] - np.arange(min_b)).astype(np.int64)
        n *= 2


def _chunks(n: int, parts: int) -> list[tuple[int, int]]:
    """Split row range [0, n) so each chunk has about the same number of pairs."""
    total = n * (n + 1) // 2
    bounds = [0]
    for k in range(1, parts):
        target = total * k // parts
        # rows [0, i) hold i(i+1)/2 pairs
        i = int((np.sqrt(8 * target + 1) - 1) / 2)
        bounds.append(max(bounds[-1], min(n, i)))
    bounds.append(n)
    return [(a, b) for a, b in zip(bounds, bounds[1:]) if b > a]


def lplus_search(digit_bound: int, params: Params, witness_limit: int = 16,
                 threads: int | None = None, check_diffs: bool = True) -> SearchReport:
    """Exhaustive fp(x + y) over beta-integers with at most digit_bound digits.

    The histogram counts ordered pairs.  Witnesses are pairs x >= y reaching
    max_fp, in increasing order of x then y, capped at witness_limit.
    """
    if digit_bound < 1:
        raise ValueError("digit_bound must be >= 1")
    p, q = params.p, params.q
    tuples = admissible_strings(digit_bound, params)
    rows = np.array([t[::-1] for t in tuples], dtype=np.int64)
    coords = np.empty((len(tuples), 2), dtype=np.int64)
    for i, t in enumerate(tuples):
        v = evaluate(DigitString(t, digit_bound - 1), params)
        coords[i] = (v.z.a, v.z.b)
    eps_max = params.upper
    table = _a_before_b(int(2 * coords[:, 1].max()) + eps_max + 2, params)

    n = len(tuples)
    workers = max(1, min(threads or worker_count(), n))
    spans = _chunks(n, workers)

    def run(span):
        return _backend.lplus_scan(rows, coords, p, q, table, eps_max, span[0], span[1],
                                   witness_limit, check_diffs)

    if workers == 1:
        results = [run(s) for s in spans]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run, spans))

    hist = sum(np.asarray(r["hist"]) for r in results)
    eps_hist = sum(np.asarray(r["eps_hist"]) for r in results)
    diff_hist = sum(np.asarray(r["diff_hist"]) for r in results)
    best = max(r["max_fp"] for r in results)
    wit = sorted(tuple(w) for r in results if r["max_fp"] == best for w in r["witnesses"])
    wit = wit[:witness_limit]
    strings = [DigitString(t, digit_bound - 1).canonical() for t in tuples]
    return SearchReport(
        params=params,
        digit_bound=digit_bound,
        max_fp=int(best),
        histogram={k: int(v) for k, v in enumerate(hist) if v},
        witnesses=[(strings[i], strings[j]) for i, j in wit],
        pairs=n * n,
        eps_histogram={k: int(v) for k, v in enumerate(eps_hist) if v},
        eps_failures=int(sum(r["bad_eps"] for r in results)),
        lattice_mismatches=int(sum(r["mismatch"] for r in results)),
        diff_kinds=({name: int(diff_hist[k]) for k, name in enumerate(DIFF_NAMES)}
                    if check_diffs else {}),
    )


@dataclass(frozen=True)
class LowerBoundWitness:
    x: FinElem
    z: FinElem
    fp_value: int
    start: int  # index in u where the factor w(T+1) begins
    factor_len: int


def lower_bound_witness(params: Params, search_limit: int = 1 << 24) -> LowerBoundWitness:
    """Sum x + z with fp >= floor((p-1)/q), built from the balance witness factor.

    x sits where w(T+1) starts inside u, z is the beta-integer of the prefix
    of the same length, and x + z = y + T(p-q)/beta with y the beta-integer
    where the factor ends.
    """
    if params.q > params.p - 2:
        raise UnsupportedParams("the lower bound is trivial for q = p - 1")
    T = params.T
    w = words.w_n(T + 1, params)
    n = max(1024, 4 * len(w))
    while True:
        u = words.u_prefix(n, params)
        i = u.find(w)
        if i >= 0:
            break
        if n > search_limit:
            raise RuntimeError(f"w({T + 1}) not found in the first {n} letters")
        n *= 4
    x = words.beta_integer_from_prefix(i, params)
    z = words.beta_integer_from_prefix(len(w), params)
    y = words.beta_integer_from_prefix(i + len(w), params)
    if x + z != y + eps_unit(params) * T:
        raise InvariantViolation("gap identity x + z = y + T(p-q)/beta failed")
    report = add(x, z)
    if report.fp < params.lower:
        raise InvariantViolation(f"fp {report.fp} below {params.lower}")
    return LowerBoundWitness(x, z, report.fp, i, len(w))

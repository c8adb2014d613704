"""The substitution A -> A^p B, B -> A^q B, its fixed point u and the companion word w.

Words are plain ``str`` over ``"AB"``.  Infinite words are materialized as
prefixes on demand; every function takes an explicit length or index.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _backend
from .ring import FinElem, Params, RingElem


def _table(params: Params) -> dict[int, str]:
    return str.maketrans({"A": "A" * params.p + "B", "B": "A" * params.q + "B"})


def substitute(word: str, params: Params) -> str:
    return word.translate(_table(params))


@lru_cache(maxsize=64)
def _u_block(p: int, q: int, min_len: int) -> str:
    params = Params(p, q)
    u = "A"
    while len(u) < min_len:
        u = substitute(u, params)
    return u


def u_prefix(n: int, params: Params) -> str:
    """First n letters of the fixed point u."""
    if n < 0:
        raise ValueError("negative length")
    if n == 0:
        return ""
    # round up so that repeated calls share cached blocks
    size = 1 << max(0, (n - 1).bit_length())
    return _u_block(params.p, params.q, size)[:n]


@lru_cache(maxsize=256)
def _w(p: int, q: int, n: int) -> str:
    if n == 1:
        return "B"
    return "B" + substitute(_w(p, q, n - 1), Params(p, q))


def w_n(n: int, params: Params) -> str:
    """The n-th companion word: w1 = B, w(n) = B phi(w(n-1))."""
    if n < 1:
        raise ValueError("n must be >= 1")
    return _w(params.p, params.q, n)


def w_counts(n: int, params: Params) -> tuple[int, int]:
    """(#A, #B) of w(n) without materializing it."""
    a, b = 0, 1
    for _ in range(n - 1):
        a, b = params.p * a + params.q * b, 1 + a + b
    return a, b


def w_len(n: int, params: Params) -> int:
    return sum(w_counts(n, params))


def w_prefix(n: int, params: Params) -> str:
    """First n letters of the infinite word w = B phi(w)."""
    k = 1
    while w_len(k, params) < n:
        k += 1
    return w_n(k, params)[:n]


def count_b(word: str) -> int:
    return word.count("B")


def d_bruteforce(n_max: int, params: Params) -> list[int]:
    out = []
    for n in range(1, n_max + 1):
        w = w_n(n, params)
        out.append(count_b(w) - count_b(u_prefix(len(w), params)))
    return out


def d_recurrence(n_max: int, params: Params) -> list[int]:
    """D(n+1) = 1 + #B of the suffix of phi(u(n)) of length (p-q) D(n) - 1."""
    p, q = params.p, params.q
    out = [1]
    for n in range(1, n_max):
        m = w_len(n, params)
        u_n = u_prefix(m, params)
        n_b = count_b(u_n)
        img_len = (p + 1) * (m - n_b) + (q + 1) * n_b
        cut = (p - q) * out[-1] - 1
        # phi(u(n)) is itself a prefix of u
        v = u_prefix(img_len, params)[img_len - cut:] if cut > 0 else ""
        out.append(1 + count_b(v))
    return out


def d_closed(n: int, params: Params) -> int:
    t, T = params.t, params.T
    if n <= t:
        return n
    if n <= T + 1:
        return n - 1
    return T


def d_sequence(n_max: int, params: Params, method: str = "closed_form") -> list[int]:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if method == "bruteforce":
        return d_bruteforce(n_max, params)
    if method == "recurrence":
        return d_recurrence(n_max, params)
    if method == "closed_form":
        return [d_closed(n, params) for n in range(1, n_max + 1)]
    raise ValueError(f"unknown method {method!r}")


def claimed_suffixes(n: int, params: Params) -> list[str]:
    """Suffixes of u(n) asserted by the closed form for D(n); more than one may apply."""
    p, q, t, T = params.p, params.q, params.t, params.T
    out = []
    if n <= t:
        out.append("A" * ((n - 1) * q + n))
    if t + 1 <= n <= T + 1:
        out.append("A" * p + "B" + "A" * ((n - 1) * (q + 1) - p))
    if n >= T + 1:
        out.append("A" * (T - 1))
    return out


def suffix_form_check(n: int, params: Params) -> bool:
    u = u_prefix(w_len(n, params), params)
    return all(u.endswith(s) for s in claimed_suffixes(n, params))


@dataclass
class BalanceScan:
    prefix_len: int
    min_a: np.ndarray  # index k-1 holds window length k
    max_a: np.ndarray

    @property
    def spread(self) -> np.ndarray:
        return self.max_a - self.min_a

    @property
    def max_spread(self) -> int:
        return int(self.spread.max()) if len(self.spread) else 0

    def first_window_with_spread(self, c: int) -> int | None:
        hits = np.nonzero(self.spread >= c)[0]
        return int(hits[0]) + 1 if len(hits) else None


def letters_array(word: str) -> np.ndarray:
    """0/1 array with 1 for A."""
    return (np.frombuffer(word.encode("ascii"), dtype=np.uint8) == ord("A")).astype(np.uint8)


def balance_scan(prefix_len: int, max_window: int, params: Params) -> BalanceScan:
    u = u_prefix(prefix_len, params)
    lo, hi = _backend.window_extrema(letters_array(u), max_window)
    return BalanceScan(prefix_len, np.asarray(lo), np.asarray(hi))


def beta_integer_from_prefix(n: int, params: Params) -> FinElem:
    """#A + #B (beta - p) over the length-n prefix of u."""
    u = u_prefix(n, params)
    n_b = count_b(u)
    n_a = n - n_b
    return FinElem(RingElem(n_a - params.p * n_b, n_b, params), 0)


def a_runs(word: str) -> set[int]:
    """Lengths of maximal A-runs enclosed between two B's."""
    parts = word.split("B")
    return {len(s) for s in parts[1:-1]}


def preimage(word: str, params: Params) -> str | None:
    """The unique v with phi(v) == word, or None."""
    p, q = params.p, params.q
    if not word.endswith("B"):
        return None
    out = []
    for block in word[:-1].split("B"):
        if block == "A" * p:
            out.append("A")
        elif block == "A" * q:
            out.append("B")
        else:
            return None
    return "".join(out)


@dataclass
class StructureReport:
    prefix_len: int
    a_run_lengths: set[int]
    runs_ok: bool
    w_factors: dict[int, bool] = field(default_factory=dict)
    w_not_found: list[int] = field(default_factory=list)
    w_extension_ok: bool = True
    preimages_checked: int = 0
    preimages_ok: bool = True
    w_preimage_prefix_ok: bool = True

    @property
    def ok(self) -> bool:
        return (self.runs_ok and self.w_extension_ok
                and self.preimages_ok and self.w_preimage_prefix_ok)


def structure_checks(prefix_budget: int, params: Params, samples: int = 200) -> StructureReport:
    """Verify the elementary structure of u and w on materialized prefixes.

    A w(n) missing from the prefix is recorded as False ("not found within
    budget"), which does not refute anything about the infinite word.
    """
    p, q = params.p, params.q
    u = u_prefix(prefix_budget, params)
    runs = a_runs(u)
    rep = StructureReport(prefix_budget, runs, runs <= {p, q})

    n = 1
    while w_len(n, params) <= prefix_budget:
        found = w_n(n, params) in u
        rep.w_factors[n] = found
        if not found:
            rep.w_not_found.append(n)
        # w(n+1) = w(n) u' B with u' a prefix of u
        w1, w2 = w_n(n, params), w_n(n + 1, params)
        mid = w2[len(w1):-1]
        if not (w2.startswith(w1) and w2.endswith("B") and mid == u_prefix(len(mid), params)):
            rep.w_extension_ok = False
        n += 1

    # B v B factors: v B has a unique phi-preimage that is a factor of u
    b_pos = [i for i, c in enumerate(u) if c == "B"]
    step = max(1, len(b_pos) // max(1, samples))
    for k in range(0, len(b_pos) - 1, step):
        i = b_pos[k]
        j = b_pos[min(len(b_pos) - 1, k + 1 + (k % 7))]
        vb = u[i + 1:j + 1]
        pre = preimage(vb, params)
        rep.preimages_checked += 1
        if pre is None or pre not in u:
            rep.preimages_ok = False

    # prefixes w'B of w: w'B = B phi(w'') with w'' a prefix of w
    w = w_prefix(min(prefix_budget, 4096), params)
    for k in range(2, len(w) + 1):
        if w[k - 1] != "B":
            continue
        pre = preimage(w[1:k], params)
        if pre is None or not w.startswith(pre):
            rep.w_preimage_prefix_ok = False
            break
    return rep


def incidence_check(params: Params) -> bool:
    """Eigenvalues of [[p,1],[q,1]] are beta and (p-q)/beta with 0 < (p-q)/beta < 1."""
    p, q = params.p, params.q
    trace, det = p + 1, p - q
    beta = params.beta
    other = FinElem.make(RingElem(p - q, 0, params), 1)  # (p-q)/beta
    # sum and product of the two roots
    s = FinElem(beta, 0) + other
    prod = FinElem(beta, 0) * other
    in_unit = other.sign() > 0 and other.cmp(FinElem.from_int(params, 1)) < 0
    return s == FinElem.from_int(params, trace) and prod == FinElem.from_int(params, det) and in_unit

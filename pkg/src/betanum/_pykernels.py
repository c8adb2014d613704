"""Pure-Python versions of the hot kernels.

Each function here has a twin with the same signature in ``_ckernels.pyx``.
The compiled twin is preferred when importable; see ``_backend``.
"""
from __future__ import annotations

import numpy as np


def _find_violation(d: list[int], start: int, p: int, q: int):
    """Leftmost violation at index >= start: (kind, i, j) or None."""
    n = len(d)
    i = start
    while i < n:
        x = d[i]
        if x > p:
            return 1, i, i
        if x == p:
            j = i + 1
            while j < n and d[j] == q:
                j += 1
            if j < n and d[j] > q:
                return 2, i, j
        i += 1
    return None


def normalize(digits: list[int], msd: int, p: int, q: int) -> tuple[list[int], int]:
    d = list(digits)
    start = 0
    while True:
        v = _find_violation(d, start, p, q)
        if v is None:
            return d, msd
        kind, i, j = v
        if i == 0:
            d.insert(0, 0)
            msd += 1
            i += 1
            j += 1
        if j + 1 == len(d):
            d.append(0)
        if kind == 1:
            # batch repeated applications of (p+1). = 10.(p-q) at one place
            k = d[i] // (p + 1)
            d[i] -= k * (p + 1)
        else:
            k = 1
            d[i] -= p
            for m in range(i + 1, j):
                d[m] -= q
            d[j] -= q + 1
        d[i - 1] += k
        d[j + 1] += k * (p - q)
        # the carry may complete a pattern p q^s reaching back from i-1
        start = i - 1
        while start > 0 and d[start - 1] == q:
            start -= 1
        if start > 0:
            start -= 1


def window_extrema(letters: np.ndarray, max_window: int) -> tuple[np.ndarray, np.ndarray]:
    """Min and max count of letter 1 over all windows of each length 1..max_window.

    ``letters`` is a 0/1 array; index k-1 of the outputs belongs to length k.
    """
    n = len(letters)
    max_window = min(max_window, n)
    cs = np.zeros(n + 1, dtype=np.int64)
    np.cumsum(letters, out=cs[1:])
    lo = np.empty(max_window, dtype=np.int64)
    hi = np.empty(max_window, dtype=np.int64)
    for k in range(1, max_window + 1):
        diff = cs[k:] - cs[:-k]
        lo[k - 1] = diff.min()
        hi[k - 1] = diff.max()
    return lo, hi


def _add_fp(dx, dy, width, p, q):
    """fp of the sum of two lsd-first digit rows, via rewriting."""
    msd_first = [dx[k] + dy[k] for k in range(width - 1, -1, -1)]
    out, msd = normalize(msd_first, width - 1, p, q)
    lsd = msd - len(out) + 1
    while out and out[-1] == 0:
        out.pop()
        lsd += 1
    return max(0, -lsd) if out else 0


def _lattice_index(a: int, b: int, p: int, a_before_b: np.ndarray) -> int:
    """Index in Z_beta^+ of a + b*beta, or -1 if it is not a nonnegative beta-integer.

    The n-th nonnegative beta-integer is (#A - p*#B) + #B*beta over the
    length-n prefix of u_beta.  ``a_before_b[m]`` is the number of A before
    the m-th B (0-based); the caller sizes it to cover every queried b.
    """
    if b < 0:
        return -1
    n_a = a + p * b
    lo = a_before_b[b - 1] if b > 0 else 0
    if n_a < lo or n_a > a_before_b[b]:
        return -1
    return n_a + b


DIFF_INTEGER, DIFF_FRACTIONAL, DIFF_PERIODIC, DIFF_UNDECIDED = 0, 1, 2, 3


def _sign(a: int, b: int, p: int, disc: int) -> int:
    u = 2 * a + b * (p + 1)
    if b == 0:
        return (u > 0) - (u < 0)
    if u >= 0 and b > 0:
        return 1
    if u <= 0 and b < 0:
        return -1
    if b > 0:
        return 1 if b * b * disc > u * u else -1
    return 1 if u * u > b * b * disc else -1


def diff_kind(a: int, b: int, p: int, q: int, max_steps: int = 100000) -> int:
    """Classify the greedy expansion of a + b*beta > 0.

    Returns DIFF_INTEGER (no fractional digits), DIFF_FRACTIONAL (finite with
    fractional digits), DIFF_PERIODIC (the fractional remainder cycles) or
    DIFF_UNDECIDED after max_steps fractional digits.
    """
    disc = (p + 1) ** 2 - 4 * (p - q)
    if _sign(a, b, p, disc) <= 0:
        raise ValueError(f"diff_kind needs a positive value, got {a} + {b} beta")
    norm = p - q
    # powers of beta up to the leading one
    pows = [(1, 0)]
    while True:
        pa, pb = pows[-1]
        na, nb = -pb * norm, pa + pb * (p + 1)
        if _sign(a - na, b - nb, p, disc) < 0:
            break
        pows.append((na, nb))
    if _sign(a - 1, b, p, disc) >= 0:
        for pa, pb in reversed(pows):
            d = 0
            while d < p and _sign(a - (d + 1) * pa, b - (d + 1) * pb, p, disc) >= 0:
                d += 1
            a, b = a - d * pa, b - d * pb
    if a == 0 and b == 0:
        return DIFF_INTEGER

    def step(a, b):
        a, b = -b * norm, a + b * (p + 1)
        d = 0
        while d < p and _sign(a - d - 1, b, p, disc) >= 0:
            d += 1
        return a - d, b

    # Brent cycle detection on the fractional remainder
    power = lam = 1
    tort = (a, b)
    hare = step(a, b)
    steps = 1
    while hare != tort:
        if hare == (0, 0):
            return DIFF_FRACTIONAL
        if steps >= max_steps:
            return DIFF_UNDECIDED
        if power == lam:
            tort = hare
            power *= 2
            lam = 0
        hare = step(*hare)
        lam += 1
        steps += 1
    return DIFF_FRACTIONAL if hare == (0, 0) else DIFF_PERIODIC


def lplus_scan(rows: np.ndarray, coords: np.ndarray, p: int, q: int,
               a_before_b: np.ndarray, eps_max: int, start: int, stop: int,
               witness_limit: int, check_diffs: bool = True):
    """Scan pairs (i, j) with start <= i < stop and j <= i.

    ``rows`` holds lsd-first digits of the candidate beta-integers (sorted
    increasingly) and ``coords`` their (a, b) coordinates.  Returns a dict
    with the fp histogram over ordered pairs, the eps histogram, the number
    of pairs without a unique eps, max fp, witnesses (i, j), sums where the
    lattice test disagrees with fp == 0, and counts of difference kinds.
    """
    width = rows.shape[1]
    hist = np.zeros(width + eps_max + 8, dtype=np.int64)
    eps_hist = np.zeros(eps_max + 1, dtype=np.int64)
    diff_hist = np.zeros(4, dtype=np.int64)
    bad_eps = 0
    mismatch = 0
    best = -1
    witnesses: list[tuple[int, int]] = []
    r = p + 1
    for i in range(start, stop):
        xi = rows[i].tolist()
        ai, bi = int(coords[i, 0]), int(coords[i, 1])
        for j in range(i + 1):
            f = _add_fp(xi, rows[j].tolist(), width, p, q)
            w = 1 if i == j else 2
            hist[f] += w
            aj, bj = int(coords[j, 0]), int(coords[j, 1])
            a, b = ai + aj, bi + bj
            if (f == 0) != (_lattice_index(a, b, p, a_before_b) >= 0):
                mismatch += 1
            found = -1
            count = 0
            for e in range(eps_max + 1):
                # x + y - e(p-q)/beta = x + y - e(p+1) + e*beta
                if _lattice_index(a - e * r, b + e, p, a_before_b) >= 0:
                    count += 1
                    if found < 0:
                        found = e
            if count == 1:
                eps_hist[found] += w
            else:
                bad_eps += w
            if f > best:
                best = f
                witnesses = []
            if f == best and len(witnesses) < witness_limit:
                witnesses.append((i, j))
            if check_diffs and i != j:
                kind = diff_kind(ai - aj, bi - bj, p, q)
                diff_hist[kind] += 1
                if (kind == DIFF_INTEGER) != (_lattice_index(ai - aj, bi - bj, p, a_before_b) >= 0):
                    mismatch += 1
    return {
        "hist": hist, "eps_hist": eps_hist, "bad_eps": bad_eps, "max_fp": best,
        "witnesses": witnesses, "mismatch": mismatch, "diff_hist": diff_hist,
    }

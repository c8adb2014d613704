# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

Digits and ring coordinates are held in 64-bit integers.  Callers that can
exceed that range go through the Python versions; ``normalize`` checks its
input and delegates on its own.
"""
import numpy as np

from libc.stdlib cimport malloc, free
from libc.string cimport memset

from . import _pykernels

ctypedef long long i64

cdef i64 DIGIT_LIMIT = 1LL << 40
cdef enum:
    BUF = 192
    OFFSET = 48


cdef inline int sign2(i64 a, i64 b, i64 p, i64 disc) nogil:
    cdef i64 u = 2 * a + b * (p + 1)
    if b == 0:
        return (u > 0) - (u < 0)
    if u >= 0 and b > 0:
        return 1
    if u <= 0 and b < 0:
        return -1
    if b > 0:
        return 1 if b * b * disc > u * u else -1
    return 1 if u * u > b * b * disc else -1


cdef int _normalize_buf(i64* d, int* lo_p, int* hi_p, int cap, i64 p, i64 q) nogil:
    """Rewrite d[lo:hi] in place until admissible.

    Returns 0 on success, -1 when the buffer would overflow.
    """
    cdef int lo = lo_p[0], hi = hi_p[0]
    cdef int start = lo, i, j, m
    cdef i64 x, k
    while True:
        # leftmost violation at index >= start
        i = start
        j = -1
        while i < hi:
            x = d[i]
            if x > p:
                j = i
                break
            if x == p:
                j = i + 1
                while j < hi and d[j] == q:
                    j += 1
                if j < hi and d[j] > q:
                    break
                j = -1
            i += 1
        if j < 0:
            lo_p[0] = lo
            hi_p[0] = hi
            return 0
        if i == lo:
            if lo == 0:
                return -1
            lo -= 1
            d[lo] = 0
        if j + 1 == hi:
            if hi == cap:
                return -1
            d[hi] = 0
            hi += 1
        if i == j:
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
        start = i - 1
        while start > lo and d[start - 1] == q:
            start -= 1
        if start > lo:
            start -= 1


def normalize(digits, long msd, long p, long q):
    cdef Py_ssize_t n = len(digits)
    if n == 0 or n > 4096 or max(digits) >= DIGIT_LIMIT:
        return _pykernels.normalize(digits, msd, p, q)
    # digit sum bounds how far the string can grow in either direction
    cdef int cap = 3 * <int>n + 256
    cdef i64* d = <i64*>malloc(cap * sizeof(i64))
    cdef int lo = <int>n + 64, hi, i, rc
    if d == NULL:
        raise MemoryError()
    try:
        memset(d, 0, cap * sizeof(i64))
        for i in range(n):
            d[lo + i] = digits[i]
        hi = lo + <int>n
        rc = _normalize_buf(d, &lo, &hi, cap, p, q)
        if rc < 0:
            return _pykernels.normalize(digits, msd, p, q)
        return [d[i] for i in range(lo, hi)], msd + (<int>n + 64 - lo)
    finally:
        free(d)


def window_extrema(const unsigned char[:] letters, long max_window):
    cdef Py_ssize_t n = letters.shape[0], i, k
    if max_window > n:
        max_window = n
    cs_arr = np.zeros(n + 1, dtype=np.int64)
    lo_arr = np.empty(max_window, dtype=np.int64)
    hi_arr = np.empty(max_window, dtype=np.int64)
    cdef i64[:] cs = cs_arr
    cdef i64[:] lo = lo_arr
    cdef i64[:] hi = hi_arr
    cdef i64 v, mn, mx
    with nogil:
        for i in range(n):
            cs[i + 1] = cs[i] + letters[i]
        for k in range(1, max_window + 1):
            mn = cs[k]
            mx = mn
            for i in range(1, n - k + 1):
                v = cs[i + k] - cs[i]
                if v < mn:
                    mn = v
                elif v > mx:
                    mx = v
            lo[k - 1] = mn
            hi[k - 1] = mx
    return lo_arr, hi_arr


cdef inline i64 lattice_index(i64 a, i64 b, i64 p, const i64[:] tab) nogil:
    cdef i64 n_a, lo
    if b < 0:
        return -1
    n_a = a + p * b
    lo = tab[b - 1] if b > 0 else 0
    if n_a < lo or n_a > tab[b]:
        return -1
    return n_a + b


cdef int diff_kind_c(i64 a, i64 b, i64 p, i64 q, i64 disc, long max_steps) nogil:
    cdef i64 norm = p - q
    cdef i64 pa[64]
    cdef i64 pb[64]
    cdef int npow = 1, k
    cdef i64 na, nb, d, ta, tb, ha, hb
    cdef long power = 1, lam = 1, steps = 1
    pa[0] = 1
    pb[0] = 0
    while npow < 64:
        na = -pb[npow - 1] * norm
        nb = pa[npow - 1] + pb[npow - 1] * (p + 1)
        if sign2(a - na, b - nb, p, disc) < 0:
            break
        pa[npow] = na
        pb[npow] = nb
        npow += 1
    if npow == 64:
        return 3
    if sign2(a - 1, b, p, disc) >= 0:
        for k in range(npow - 1, -1, -1):
            d = 0
            while d < p and sign2(a - (d + 1) * pa[k], b - (d + 1) * pb[k], p, disc) >= 0:
                d += 1
            a -= d * pa[k]
            b -= d * pb[k]
    if a == 0 and b == 0:
        return 0
    ta, tb = a, b
    # hare = step(a, b)
    ha = -b * norm
    hb = a + b * (p + 1)
    d = 0
    while d < p and sign2(ha - d - 1, hb, p, disc) >= 0:
        d += 1
    ha -= d
    while ha != ta or hb != tb:
        if ha == 0 and hb == 0:
            return 1
        if steps >= max_steps:
            return 3
        if power == lam:
            ta, tb = ha, hb
            power *= 2
            lam = 0
        na = -hb * norm
        nb = ha + hb * (p + 1)
        d = 0
        while d < p and sign2(na - d - 1, nb, p, disc) >= 0:
            d += 1
        ha, hb = na - d, nb
        lam += 1
        steps += 1
    return 1 if (ha == 0 and hb == 0) else 2


def diff_kind(a, b, p, q, max_steps=100000):
    if _pykernels._sign(a, b, p, (p + 1) ** 2 - 4 * (p - q)) <= 0:
        raise ValueError(f"diff_kind needs a positive value, got {a} + {b} beta")
    if max(abs(a), abs(b)) >= (1 << 22):
        return _pykernels.diff_kind(a, b, p, q, max_steps)
    return diff_kind_c(a, b, p, q, (p + 1) ** 2 - 4 * (p - q), max_steps)


cdef int add_fp_c(const i64[:, :] rows, Py_ssize_t i, Py_ssize_t j, int width,
                  i64 p, i64 q, i64* buf) nogil:
    cdef int k, lo = OFFSET, hi = OFFSET + width, rc
    memset(buf, 0, BUF * sizeof(i64))
    for k in range(width):
        buf[OFFSET + width - 1 - k] = rows[i, k] + rows[j, k]
    rc = _normalize_buf(buf, &lo, &hi, BUF, p, q)
    if rc < 0:
        return -1
    while hi > lo and buf[hi - 1] == 0:
        hi -= 1
    # position 0 sits at index OFFSET + width - 1
    k = hi - 1 - (OFFSET + width - 1)
    return k if k > 0 else 0


def lplus_scan(rows, coords, long p, long q, a_before_b, long eps_max,
               long start, long stop, long witness_limit, bint check_diffs=True):
    cdef const i64[:, :] R = np.ascontiguousarray(rows, dtype=np.int64)
    cdef const i64[:, :] C = np.ascontiguousarray(coords, dtype=np.int64)
    cdef const i64[:] tab = np.ascontiguousarray(a_before_b, dtype=np.int64)
    cdef int width = R.shape[1]
    if width > OFFSET or np.abs(coords).max() >= (1 << 22):
        return _pykernels.lplus_scan(rows, coords, p, q, a_before_b, eps_max, start, stop,
                                     witness_limit, check_diffs)
    hist_arr = np.zeros(width + eps_max + 8, dtype=np.int64)
    eps_arr = np.zeros(eps_max + 1, dtype=np.int64)
    diff_arr = np.zeros(4, dtype=np.int64)
    wit_arr = np.zeros((max(witness_limit, 1), 2), dtype=np.int64)
    cdef i64[:] hist = hist_arr
    cdef i64[:] eps_hist = eps_arr
    cdef i64[:] diff_hist = diff_arr
    cdef i64[:, :] wit = wit_arr
    cdef i64 disc = (p + 1) ** 2 - 4 * (p - q)
    cdef i64 buf[BUF]
    cdef Py_ssize_t i, j
    cdef int f, e, count, found, kind, best = -1, n_wit = 0, overflow = 0
    cdef int hist_len = hist_arr.shape[0]
    cdef i64 w, a, b, ai, bi, aj, bj, bad_eps = 0, mismatch = 0, r = p + 1
    with nogil:
        for i in range(start, stop):
            ai = C[i, 0]
            bi = C[i, 1]
            for j in range(i + 1):
                f = add_fp_c(R, i, j, width, p, q, buf)
                if f < 0 or f >= hist_len:
                    overflow = 1
                    break
                w = 1 if i == j else 2
                hist[f] += w
                aj = C[j, 0]
                bj = C[j, 1]
                a = ai + aj
                b = bi + bj
                if (f == 0) != (lattice_index(a, b, p, tab) >= 0):
                    mismatch += 1
                found = -1
                count = 0
                for e in range(eps_max + 1):
                    if lattice_index(a - e * r, b + e, p, tab) >= 0:
                        count += 1
                        if found < 0:
                            found = e
                if count == 1:
                    eps_hist[found] += w
                else:
                    bad_eps += w
                if f > best:
                    best = f
                    n_wit = 0
                if f == best and n_wit < witness_limit:
                    wit[n_wit, 0] = i
                    wit[n_wit, 1] = j
                    n_wit += 1
                if check_diffs and i != j:
                    kind = diff_kind_c(ai - aj, bi - bj, p, q, disc, 100000)
                    diff_hist[kind] += 1
                    if (kind == 0) != (lattice_index(ai - aj, bi - bj, p, tab) >= 0):
                        mismatch += 1
            if overflow:
                break
    if overflow:
        raise OverflowError("digit buffer exhausted in lplus_scan")
    return {
        "hist": hist_arr, "eps_hist": eps_arr, "bad_eps": int(bad_eps), "max_fp": best,
        "witnesses": [(int(wit[k, 0]), int(wit[k, 1])) for k in range(n_wit)],
        "mismatch": int(mismatch), "diff_hist": diff_arr,
    }

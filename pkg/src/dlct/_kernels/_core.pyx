# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot loops: exp/log table build, in-place FWHT, and the
differential-linear / difference / Walsh / boomerang table scans.

Every function here matches _fallback.py result-for-result, witnesses
included; the Python layer selects whichever backend imported.
"""

import numpy as np

cimport numpy as cnp

cnp.import_array()

ctypedef cnp.int64_t i64
ctypedef cnp.uint8_t u8


cdef inline void _fwht_inplace(i64 *a, Py_ssize_t n) noexcept nogil:
    cdef Py_ssize_t h = 1, i, j
    cdef i64 x, y
    while h < n:
        i = 0
        while i < n:
            for j in range(i, i + h):
                x = a[j]
                y = a[j + h]
                a[j] = x + y
                a[j + h] = x - y
            i += 2 * h
        h *= 2


def build_exp_log(int n, long long poly, long long gen):
    """Discrete exp/log tables; exp doubled in length, log[0] = -1."""
    cdef long long order = 1LL << n
    cdef long long period = order - 1
    exp_arr = np.zeros(2 * period, dtype=np.int64)
    log_arr = np.full(order, -1, dtype=np.int64)
    cdef i64[::1] exp = exp_arr
    cdef i64[::1] log = log_arr
    cdef long long v = 1, i, a, b, p, top = order
    with nogil:
        for i in range(period):
            exp[i] = v
            exp[i + period] = v
            log[v] = i
            a = v
            b = gen
            p = 0
            while b:
                if b & 1:
                    p ^= a
                a <<= 1
                if a & top:
                    a ^= poly
                b >>= 1
            v = p
    return exp_arr, log_arr


def fwht(arr):
    """In-place Walsh-Hadamard transform of a 1-D contiguous int64 array."""
    cdef i64[::1] a = arr
    with nogil:
        _fwht_inplace(&a[0], a.shape[0])


def dlct_scan(table, long long u_lo, long long u_hi, hist_arr=None):
    """Max |entry| of the differential-linear table over rows u in [u_lo,u_hi)
    with u >= 1, transform columns w != 0, with the first (smallest u, then w)
    witness.  Column index w is a transform index; the output mask it stands
    for is dual_index_inv[w], and the multiset over w equals that over masks.

    When hist_arr is given (int64, length 2^n + 1) the per-entry histogram,
    indexed by entry + 2^(n-1), is accumulated into it in place.
    """
    F_arr = np.ascontiguousarray(table, dtype=np.int64)
    cdef const i64[::1] F = F_arr
    cdef long long order = F.shape[0]
    cdef long long half = order >> 1
    cnt_arr = np.zeros(order, dtype=np.int64)
    cdef i64[::1] cnt = cnt_arr
    cdef bint want_hist = hist_arr is not None
    cdef i64[::1] hist
    if want_hist:
        hist = hist_arr
    cdef long long u, x, w, e, val
    cdef long long best = -1, bu = 0, bw = 0
    if u_lo < 1:
        u_lo = 1
    with nogil:
        for u in range(u_lo, u_hi):
            for x in range(order):
                cnt[x] = 0
            for x in range(order):
                cnt[F[x ^ u] ^ F[x]] += 1
            _fwht_inplace(&cnt[0], order)
            for w in range(1, order):
                e = cnt[w] / 2  # counts-minus-half form: entry is half the sum
                val = -e if e < 0 else e
                if val > best:
                    best = val
                    bu = u
                    bw = w
                if want_hist:
                    hist[e + half] += 1
    return int(best), int(bu), int(bw)


def ddt_scan(table, long long u_lo, long long u_hi, hist_arr=None):
    """Max difference-table entry over rows u in [u_lo,u_hi) with u != 0,
    all output differences, plus an optional histogram of cell values."""
    F_arr = np.ascontiguousarray(table, dtype=np.int64)
    cdef const i64[::1] F = F_arr
    cdef long long order = F.shape[0]
    cnt_arr = np.zeros(order, dtype=np.int64)
    cdef i64[::1] cnt = cnt_arr
    cdef bint want_hist = hist_arr is not None
    cdef i64[::1] hist
    if want_hist:
        hist = hist_arr
    cdef long long u, x, b
    cdef long long best = -1, bu = 0, bb = 0
    if u_lo < 1:
        u_lo = 1
    with nogil:
        for u in range(u_lo, u_hi):
            for x in range(order):
                cnt[x] = 0
            for x in range(order):
                cnt[F[x ^ u] ^ F[x]] += 1
            for b in range(order):
                if cnt[b] > best:
                    best = cnt[b]
                    bu = u
                    bb = b
                if want_hist:
                    hist[cnt[b]] += 1
    return int(best), int(bu), int(bb)


def walsh_scan(table, exp, log, trace_bits, long long v_lo, long long v_hi,
               hist_arr=None):
    """Max |Walsh coefficient| over output masks v in [v_lo,v_hi) (v >= 1)
    and all transform columns, with optional histogram indexed by value + 2^n."""
    F_arr = np.ascontiguousarray(table, dtype=np.int64)
    cdef const i64[::1] F = F_arr
    cdef const i64[::1] exp_t = exp
    cdef const i64[::1] log_t = log
    cdef const u8[::1] tr = trace_bits
    cdef long long order = F.shape[0]
    s_arr = np.zeros(order, dtype=np.int64)
    cdef i64[::1] s = s_arr
    cdef bint want_hist = hist_arr is not None
    cdef i64[::1] hist
    if want_hist:
        hist = hist_arr
    cdef long long v, x, w, y, lv, val
    cdef long long best = -1, bv = 0, bw = 0
    if v_lo < 1:
        v_lo = 1
    with nogil:
        for v in range(v_lo, v_hi):
            lv = log_t[v]
            for x in range(order):
                y = F[x]
                if y == 0:
                    s[x] = 1
                else:
                    s[x] = 1 - 2 * <long long> tr[exp_t[lv + log_t[y]]]
            _fwht_inplace(&s[0], order)
            for w in range(order):
                val = -s[w] if s[w] < 0 else s[w]
                if val > best:
                    best = val
                    bv = v
                    bw = w
                if want_hist:
                    hist[s[w] + order] += 1
    return int(best), int(bv), int(bw)


def bct_scan(table, inv_table, long long v_lo, long long v_hi):
    """Max boomerang-table entry over v in [v_lo,v_hi) with v >= 1, u >= 1.

    table must be a permutation and inv_table its compositional inverse.
    Pairs are bucketed by the fixed-point structure of x -> F^-1(F(x)^v)^x,
    so each v costs O(2^n + collisions) instead of O(4^n).
    """
    F_arr = np.ascontiguousarray(table, dtype=np.int64)
    Finv_arr = np.ascontiguousarray(inv_table, dtype=np.int64)
    cdef const i64[::1] F = F_arr
    cdef const i64[::1] Finv = Finv_arr
    cdef long long order = F.shape[0]
    h_arr = np.zeros(order, dtype=np.int64)
    bcnt_arr = np.zeros(order, dtype=np.int64)
    bpos_arr = np.zeros(order, dtype=np.int64)
    order_arr = np.zeros(order, dtype=np.int64)
    cc_arr = np.zeros(order, dtype=np.int64)
    touched_arr = np.zeros(order, dtype=np.int64)
    cdef i64[::1] h = h_arr
    cdef i64[::1] bcnt = bcnt_arr
    cdef i64[::1] bpos = bpos_arr
    cdef i64[::1] srt = order_arr
    cdef i64[::1] cc = cc_arr
    cdef i64[::1] touched = touched_arr
    cdef long long v, x, c, i, j, u, sz, base, run, ntouched, t
    cdef long long vmax, vu
    cdef long long best = -1, bu = 0, bv = 0
    if v_lo < 1:
        v_lo = 1
    with nogil:
        for v in range(v_lo, v_hi):
            for x in range(order):
                h[x] = Finv[F[x] ^ v] ^ x
                bcnt[x] = 0
            for x in range(order):
                bcnt[h[x]] += 1
            run = 0
            for c in range(order):
                bpos[c] = run
                run += bcnt[c]
            for x in range(order):
                srt[bpos[h[x]]] = x
                bpos[h[x]] += 1
            # bpos[c] now marks one past the end of bucket c
            ntouched = 0
            for c in range(order):
                sz = bcnt[c]
                if sz < 2:
                    continue
                base = bpos[c] - sz
                for i in range(sz):
                    for j in range(sz):
                        if i == j:
                            continue
                        u = srt[base + i] ^ srt[base + j]
                        if cc[u] == 0:
                            touched[ntouched] = u
                            ntouched += 1
                        cc[u] += 1
            vmax = 0
            vu = 1
            for t in range(ntouched):
                u = touched[t]
                if cc[u] > vmax or (cc[u] == vmax and u < vu):
                    vmax = cc[u]
                    vu = u
                cc[u] = 0
            if vmax > best:
                best = vmax
                bu = vu
                bv = v
    return int(best), int(bu), int(bv)

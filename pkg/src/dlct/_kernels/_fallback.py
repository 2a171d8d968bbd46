"""Pure-numpy implementations of the hot loops.

Same call signatures and, bit for bit, the same results as the compiled
extension in _core.pyx.  Scans run over blocked row ranges so memory stays
bounded at a few tens of megabytes regardless of field size.
"""

from __future__ import annotations

import numpy as np

_BLOCK_CELLS = 1 << 22  # elements per row block (int64: ~32 MB per temp)


def build_exp_log(n: int, poly: int, gen: int):
    """Discrete exp/log tables for the cyclic group generated by gen.

    exp has length 2*(2^n - 1) (second half repeats the first so that index
    sums never need reduction); log[0] is the sentinel -1.
    """
    order = 1 << n
    period = order - 1
    exp = np.zeros(2 * period, dtype=np.int64)
    exp[0] = 1
    size = 1
    while size < period:
        # exp[size + i] = exp[i] * exp[size] for a block of i, doubling size
        factor = _clmul_const(exp[size - 1 : size], gen, n, poly)[0]
        take = min(size, period - size)
        exp[size : size + take] = _clmul_const(exp[:take], int(factor), n, poly)
        size += take
    log = np.full(order, -1, dtype=np.int64)
    log[exp[:period]] = np.arange(period, dtype=np.int64)
    exp[period:] = exp[:period]
    return exp, log


def _clmul_const(arr: np.ndarray, c: int, n: int, poly: int) -> np.ndarray:
    """Carry-less multiply an int64 array by the constant c, reduced mod poly."""
    res = np.zeros_like(arr)
    work = arr.copy()
    while c:
        if c & 1:
            res ^= work
        c >>= 1
        if c:
            work <<= 1
            over = (work >> n) & 1
            work ^= over * poly
    return res


def fwht(a: np.ndarray) -> None:
    """In-place Walsh-Hadamard transform of a 1-D int64 array (length 2^k)."""
    _fwht_rows(a.reshape(1, -1))


def _fwht_rows(a: np.ndarray) -> None:
    """In-place Walsh-Hadamard transform along the last axis."""
    n = a.shape[-1]
    h = 1
    while h < n:
        b = a.reshape(a.shape[0], -1, 2, h)
        x = b[:, :, 0, :] + b[:, :, 1, :]
        y = b[:, :, 0, :] - b[:, :, 1, :]
        b[:, :, 0, :] = x
        b[:, :, 1, :] = y
        h <<= 1


def _row_blocks(lo: int, hi: int, ncols: int):
    rows = max(1, _BLOCK_CELLS // ncols)
    for start in range(lo, hi, rows):
        yield start, min(start + rows, hi)


def dlct_scan(table: np.ndarray, u_lo: int, u_hi: int, hist: np.ndarray | None = None):
    """Max |entry| of the differential-linear table over rows u in [u_lo,u_hi)
    with u >= 1, transform columns w != 0, with the first (smallest u, then w)
    witness.  Column index w is a transform index; the output mask it stands
    for is dual_index_inv[w], and the multiset over w equals that over masks.

    When hist is given (int64, length 2^n + 1) the per-entry histogram over
    those rows, indexed by entry + 2^(n-1), is accumulated into it in place.
    """
    F = np.ascontiguousarray(table, dtype=np.int64)
    order = F.shape[0]
    half = order >> 1
    xs = np.arange(order, dtype=np.int64)
    best, bu, bw = -1, 0, 0
    for lo, hi in _row_blocks(max(u_lo, 1), u_hi, order):
        us = np.arange(lo, hi, dtype=np.int64)
        diff = F[xs[None, :] ^ us[:, None]] ^ F[None, :]
        offs = np.arange(len(us), dtype=np.int64)[:, None] * order
        cnt = np.bincount((diff + offs).ravel(), minlength=len(us) * order)
        cnt = cnt.reshape(len(us), order).astype(np.int64, copy=False)
        _fwht_rows(cnt)
        cnt //= 2  # counts-minus-half form: entries are half the signed sums
        sub = np.abs(cnt[:, 1:])
        blockmax = int(sub.max())
        if blockmax > best:
            r, c = divmod(int(np.argmax(sub)), order - 1)
            best, bu, bw = blockmax, int(us[r]), c + 1
        if hist is not None:
            hist += np.bincount((cnt[:, 1:] + half).ravel(), minlength=order + 1)
    return best, bu, bw


def ddt_scan(table: np.ndarray, u_lo: int, u_hi: int, hist: np.ndarray | None = None):
    """Max difference-table entry over rows u in [u_lo,u_hi) with u != 0,
    all output differences, plus an optional histogram of cell values."""
    F = np.ascontiguousarray(table, dtype=np.int64)
    order = F.shape[0]
    xs = np.arange(order, dtype=np.int64)
    best, bu, bb = -1, 0, 0
    for lo, hi in _row_blocks(max(u_lo, 1), u_hi, order):
        us = np.arange(lo, hi, dtype=np.int64)
        diff = F[xs[None, :] ^ us[:, None]] ^ F[None, :]
        offs = np.arange(len(us), dtype=np.int64)[:, None] * order
        cnt = np.bincount((diff + offs).ravel(), minlength=len(us) * order)
        cnt = cnt.reshape(len(us), order).astype(np.int64, copy=False)
        blockmax = int(cnt.max())
        if blockmax > best:
            r, c = divmod(int(np.argmax(cnt)), order)
            best, bu, bb = blockmax, int(us[r]), c
        if hist is not None:
            hist += np.bincount(cnt.ravel(), minlength=order + 1)
    return best, bu, bb


def walsh_scan(
    table: np.ndarray,
    exp: np.ndarray,
    log: np.ndarray,
    trace_bits: np.ndarray,
    v_lo: int,
    v_hi: int,
    hist: np.ndarray | None = None,
):
    """Max |Walsh coefficient| over output masks v in [v_lo,v_hi) (v >= 1)
    and all input masks, with optional histogram indexed by value + 2^n."""
    F = np.ascontiguousarray(table, dtype=np.int64)
    order = F.shape[0]
    zero_cols = F == 0
    logF = log[F]
    best, bv, bw = -1, 0, 0
    for lo, hi in _row_blocks(max(v_lo, 1), v_hi, order):
        vs = np.arange(lo, hi, dtype=np.int64)
        prod = exp[log[vs][:, None] + logF[None, :]]
        prod[:, zero_cols] = 0
        signs = 1 - 2 * trace_bits[prod].astype(np.int64)
        _fwht_rows(signs)
        sub = np.abs(signs)
        blockmax = int(sub.max())
        if blockmax > best:
            r, c = divmod(int(np.argmax(sub)), order)
            best, bv, bw = blockmax, int(vs[r]), c
        if hist is not None:
            hist += np.bincount((signs + order).ravel(), minlength=2 * order + 1)
    return best, bv, bw


def bct_scan(table: np.ndarray, inv_table: np.ndarray, v_lo: int, v_hi: int):
    """Max boomerang-table entry over v in [v_lo,v_hi) with v >= 1, u >= 1.

    table must be a permutation and inv_table its compositional inverse.
    """
    F = np.ascontiguousarray(table, dtype=np.int64)
    Finv = np.ascontiguousarray(inv_table, dtype=np.int64)
    order = F.shape[0]
    xs = np.arange(order, dtype=np.int64)
    best, bu, bv = -1, 0, 0
    for v in range(max(v_lo, 1), v_hi):
        h = Finv[F ^ v] ^ xs
        vmax, vu = -1, 0
        for lo, hi in _row_blocks(1, order, order):
            us = np.arange(lo, hi, dtype=np.int64)
            eq = (h[xs[None, :] ^ us[:, None]] == h[None, :]).sum(axis=1)
            blockmax = int(eq.max())
            if blockmax > vmax:
                vmax, vu = blockmax, int(us[int(np.argmax(eq))])
        if vmax > best:
            best, bu, bv = vmax, vu, v
    return best, bu, bv

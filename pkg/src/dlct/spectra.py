"""Differential-linear, difference, Walsh and boomerang analysis of tables.

Two independent routes compute differential-linear entries: a naive counting
path (trace evaluations summed directly) and a transform path (difference
histogram pushed through a Walsh-Hadamard transform).  They agree entry for
entry; small fields default to the counting path, large ones to transforms.
Full-table scans run on the kernel backend and may fan out over a thread
pool; merges are deterministic regardless of thread count.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import _kernels
from .errors import ParameterError
from .functions import FunctionTable

_NAIVE_DEFAULT_MAX_N = 8


@dataclass(frozen=True)
class SpectrumHistogram:
    """A value -> multiplicity histogram, stored as ascending (value, count) pairs."""

    counts: tuple[tuple[int, int], ...]

    @classmethod
    def from_dict(cls, d: dict[int, int]) -> "SpectrumHistogram":
        return cls(tuple(sorted((int(v), int(c)) for v, c in d.items() if c)))

    @classmethod
    def from_offset_array(cls, arr: np.ndarray, offset: int) -> "SpectrumHistogram":
        idx = np.flatnonzero(arr)
        return cls(tuple((int(i) - offset, int(arr[i])) for i in idx))

    def as_dict(self) -> dict[int, int]:
        return dict(self.counts)

    def __getitem__(self, value: int) -> int:
        return self.as_dict().get(value, 0)

    @property
    def population(self) -> int:
        return sum(c for _, c in self.counts)

    @property
    def support(self) -> tuple[int, ...]:
        return tuple(v for v, _ in self.counts)

    @property
    def max_abs(self) -> int:
        return max((abs(v) for v, _ in self.counts), default=0)


def fwht(values) -> np.ndarray:
    """Walsh-Hadamard transform (parity kernel, unnormalized) of a vector
    whose length is a power of two.  Returns a fresh int64 array."""
    arr = np.array(values, dtype=np.int64)
    if arr.ndim != 1 or arr.size == 0 or arr.size & (arr.size - 1):
        raise ParameterError("fwht requires a 1-D vector of power-of-two length")
    _kernels.fwht(arr)
    return arr


def _resolve_method(F: FunctionTable, method: str) -> str:
    if method == "auto":
        return "naive" if F.spec.n <= _NAIVE_DEFAULT_MAX_N else "transform"
    if method not in ("naive", "transform"):
        raise ParameterError(f"method must be auto, naive or transform, not {method!r}")
    return method


def dlct_entry(F: FunctionTable, u: int, v: int, method: str = "auto") -> int:
    """The differential-linear entry at (u, v): the number of x with
    Tr(v * (F(x+u) + F(x))) = 0, minus 2^(n-1)."""
    spec = F.spec
    if not 0 <= u < spec.order or not 0 <= v < spec.order:
        raise ParameterError("u and v must be field elements")
    if _resolve_method(F, method) == "naive":
        diff = F.values[np.arange(spec.order, dtype=np.int64) ^ u] ^ F.values
        ones = int(spec.trace_vec(spec.mul_vec(v, diff)).sum())
        return spec.order - ones - (spec.order >> 1)
    return int(_dlct_row_transform(F, u)[v])


def _dlct_row_transform(F: FunctionTable, u: int) -> np.ndarray:
    spec = F.spec
    diff = F.values[np.arange(spec.order, dtype=np.int64) ^ u] ^ F.values
    cnt = np.bincount(diff, minlength=spec.order).astype(np.int64)
    _kernels.fwht(cnt)
    cnt //= 2
    return cnt[spec.dual_index]


def _dlct_row_naive(F: FunctionTable, u: int) -> np.ndarray:
    spec = F.spec
    order = spec.order
    exp, log = spec.exp_table, spec.log_table
    diff = F.values[np.arange(order, dtype=np.int64) ^ u] ^ F.values
    vs = np.arange(1, order, dtype=np.int64)
    prod = exp[log[vs][:, None] + log[diff][None, :]]
    prod[:, diff == 0] = 0
    ones = spec.trace_bits[prod].astype(np.int64).sum(axis=1)
    row = np.empty(order, dtype=np.int64)
    row[0] = order >> 1
    row[1:] = order - ones - (order >> 1)
    return row


def dlct_row(F: FunctionTable, u: int, method: str = "auto") -> np.ndarray:
    """All 2^n differential-linear entries of row u, indexed by output mask v."""
    spec = F.spec
    if not 0 <= u < spec.order:
        raise ParameterError("u must be a field element")
    if _resolve_method(F, method) == "naive":
        return _dlct_row_naive(F, u)
    return _dlct_row_transform(F, u)


def dlct_table_naive(F: FunctionTable) -> np.ndarray:
    """The full table [u, v] by the counting path.  Quadratic memory in 2^n;
    intended for the small fields where it serves as an independent oracle."""
    spec = F.spec
    out = np.empty((spec.order, spec.order), dtype=np.int64)
    for u in range(spec.order):
        out[u] = _dlct_row_naive(F, u)
    return out


def _chunk_ranges(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    total = hi - lo
    parts = max(1, min(parts, total)) if total > 0 else 1
    step = -(-total // parts)
    return [(s, min(s + step, hi)) for s in range(lo, hi, step)] or [(lo, hi)]


def _parallel_scan(scan, lo: int, hi: int, threads: int, hist_len: int | None):
    """Run scan(lo, hi, hist) over row chunks, merging deterministically.

    scan returns (best, a, b) with a the row index; merge keeps the largest
    best, breaking ties toward the smallest (a, b).
    """
    if threads <= 1 or hi - lo <= 1:
        hist = np.zeros(hist_len, dtype=np.int64) if hist_len else None
        return scan(lo, hi, hist), hist
    ranges = _chunk_ranges(lo, hi, threads)
    hists = [np.zeros(hist_len, dtype=np.int64) if hist_len else None for _ in ranges]
    with ThreadPoolExecutor(max_workers=len(ranges)) as pool:
        futs = [pool.submit(scan, a, b, h) for (a, b), h in zip(ranges, hists)]
        results = [f.result() for f in futs]
    best = min(results, key=lambda r: (-r[0], r[1], r[2]))
    hist = None
    if hist_len:
        hist = np.zeros(hist_len, dtype=np.int64)
        for h in hists:
            hist += h
    return best, hist


def _power_row_histogram(F: FunctionTable, method: str) -> np.ndarray:
    """Histogram (offset 2^(n-1)) of the full table of a monomial function,
    from row u=1 alone: row u equals row 1 reindexed by the bijection
    v -> u^d * v, so every row has the same multiset over v != 0."""
    spec = F.spec
    row = dlct_row(F, 1, method)[1:]
    hist = np.bincount(row + (spec.order >> 1), minlength=spec.order + 1).astype(np.int64)
    return hist * (spec.order - 1)


def _dlu_core(F: FunctionTable, method: str, threads: int, force_full: bool, want_hist: bool):
    spec = F.spec
    method = _resolve_method(F, method)
    if F.power_exponent is not None and not force_full:
        row = dlct_row(F, 1, method)
        sub = np.abs(row[1:])
        value = int(sub.max())
        v = int(np.argmax(sub)) + 1
        hist = _power_row_histogram(F, method) if want_hist else None
        return value, 1, v, hist
    if method == "naive":
        table = dlct_table_naive(F)
        sub = np.abs(table[1:, 1:])
        value = int(sub.max())
        r, c = divmod(int(np.argmax(sub)), spec.order - 1)
        hist = None
        if want_hist:
            hist = np.bincount(
                (table[1:, 1:] + (spec.order >> 1)).ravel(), minlength=spec.order + 1
            ).astype(np.int64)
        return value, r + 1, c + 1, hist
    hist_len = spec.order + 1 if want_hist else None

    def scan(lo, hi, hist):
        return _kernels.dlct_scan(F.values, lo, hi, hist)

    (value, u, w), hist = _parallel_scan(scan, 1, spec.order, threads, hist_len)
    return value, u, int(spec.dual_index_inv[w]), hist


def dlu(F: FunctionTable, *, method: str = "auto", threads: int = 1,
        force_full: bool = False) -> int:
    """The differential-linear uniformity: max |entry| over u != 0, v != 0."""
    return _dlu_core(F, method, threads, force_full, want_hist=False)[0]


def dlu_witness(F: FunctionTable, *, method: str = "auto", threads: int = 1,
                force_full: bool = False) -> tuple[int, int, int]:
    """The uniformity together with one attaining pair: (value, u, v)."""
    value, u, v, _ = _dlu_core(F, method, threads, force_full, want_hist=False)
    return value, u, v


def dlct_spectrum(F: FunctionTable, *, method: str = "auto", threads: int = 1,
                  force_full: bool = False) -> SpectrumHistogram:
    """Multiset of differential-linear entries over u != 0, v != 0."""
    _, _, _, hist = _dlu_core(F, method, threads, force_full, want_hist=True)
    return SpectrumHistogram.from_offset_array(hist, F.spec.order >> 1)


def ddt_uniformity(F: FunctionTable, *, threads: int = 1) -> int:
    """Differential uniformity: max difference-table cell over u != 0."""
    def scan(lo, hi, hist):
        return _kernels.ddt_scan(F.values, lo, hi, hist)

    (value, _, _), _ = _parallel_scan(scan, 1, F.spec.order, threads, None)
    return value


def ddt_spectrum(F: FunctionTable, *, threads: int = 1) -> SpectrumHistogram:
    """Multiset of difference-table cells over u != 0 (all output differences)."""
    def scan(lo, hi, hist):
        return _kernels.ddt_scan(F.values, lo, hi, hist)

    _, hist = _parallel_scan(scan, 1, F.spec.order, threads, F.spec.order + 1)
    return SpectrumHistogram.from_offset_array(hist, 0)


def _walsh_scan_args(F: FunctionTable):
    spec = F.spec
    return F.values, spec.exp_table, spec.log_table, spec.trace_bits


def nonlinearity(F: FunctionTable, *, threads: int = 1) -> int:
    """2^(n-1) - max|W|/2 over output masks v != 0 and all input masks."""
    args = _walsh_scan_args(F)

    def scan(lo, hi, hist):
        return _kernels.walsh_scan(*args, lo, hi, hist)

    (w_max, _, _), _ = _parallel_scan(scan, 1, F.spec.order, threads, None)
    return (F.spec.order >> 1) - w_max // 2


def walsh_spectrum(F: FunctionTable, *, threads: int = 1) -> SpectrumHistogram:
    """Multiset of Walsh coefficients over v != 0 and all input masks."""
    args = _walsh_scan_args(F)

    def scan(lo, hi, hist):
        return _kernels.walsh_scan(*args, lo, hi, hist)

    _, hist = _parallel_scan(scan, 1, F.spec.order, threads, 2 * F.spec.order + 1)
    return SpectrumHistogram.from_offset_array(hist, F.spec.order)


def boomerang_uniformity(F: FunctionTable, *, threads: int = 1) -> int:
    """Max boomerang-table entry over u != 0, v != 0; permutations only."""
    inv = F.inverse_values()

    def scan(lo, hi, hist):
        return _kernels.bct_scan(F.values, inv, lo, hi)

    (value, _, _), _ = _parallel_scan(scan, 1, F.spec.order, threads, None)
    return value


def extended_boomerang_uniformity(F: FunctionTable) -> int:
    """Max of the pair-counting boomerang table over u != 0, v != 0.

    The entry at (u, v) counts ordered pairs (x, y) with F(x) + F(y) = v and
    F(x+u) + F(y+u) = v.  This is defined for every function and agrees with
    boomerang_uniformity on bijections; pairs group by the derivative value
    F(x) + F(x+u), so each row costs the squared row-profile of the
    difference table rather than 4^n."""
    values = F.values
    order = F.spec.order
    xs = np.arange(order, dtype=np.int64)
    best = 0
    for u in range(1, order):
        deriv = values ^ values[xs ^ u]
        srt = np.argsort(deriv, kind="stable")
        sorted_deriv = deriv[srt]
        starts = np.flatnonzero(np.r_[True, sorted_deriv[1:] != sorted_deriv[:-1]])
        ends = np.r_[starts[1:], order]
        hist = np.zeros(order, dtype=np.int64)
        for s, e in zip(starts, ends):
            if e - s < 2:
                continue
            group = values[srt[s:e]]
            hist += np.bincount((group[:, None] ^ group[None, :]).ravel(),
                                minlength=order)
        hist[0] = 0  # v = 0 excluded (diagonal pairs and output collisions)
        row_max = int(hist.max())
        if row_max > best:
            best = row_max
    return best


@dataclass(frozen=True)
class DluLowerBound:
    """The universal lower bound on differential-linear uniformity for an
    (n,m)-function: sqrt(radicand), sharpened to 2^(n/2-1) + 2 when n = m
    is even."""

    n: int
    m: int
    radicand: Fraction
    sharpened: int | None

    @property
    def effective(self) -> int:
        """The smallest integer c with c >= sqrt(radicand), or the sharpened
        bound when that is larger."""
        p, q = self.radicand.numerator, self.radicand.denominator
        c = math.isqrt(p // q)
        while c * c * q < p:
            c += 1
        return max(c, self.sharpened or 0)


def dlu_lower_bound(n: int, m: int) -> DluLowerBound:
    """Universal lower bound for (n,m)-functions; requires m >= n - 1."""
    if m < n - 1:
        raise ParameterError(f"bound requires m >= n-1, got n={n}, m={m}")
    radicand = Fraction((1 << (m + n + 1)) - (1 << (2 * n)), 4 * ((1 << m) - 1))
    sharpened = (1 << (n // 2 - 1)) + 2 if (n == m and n % 2 == 0) else None
    return DluLowerBound(n=n, m=m, radicand=radicand, sharpened=sharpened)

"""Binary Kloosterman sums and the closed forms built on them.

K(gamma) = sum over x in GF(2^n) of (-1)^Tr(gamma*x + x^(2^n-2)), the x = 0
term contributing +1.  A single value is summed directly; the full profile
over every gamma comes from one Walsh-Hadamard transform of the sign vector
of Tr(x^(-1)).  The two routes are independent and cross-checked in tests.

The module also carries the closed forms tied to these sums: the extrema
and value-coverage laws, the unit-circle identity linking a degree-2m field
to its half-degree subfield, and the predicted differential-linear behavior
of the Dillon-exponent monomials.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .errors import ParameterError
from .field import FieldSpec


def kloosterman(spec: FieldSpec, gamma: int) -> int:
    """K(gamma) by direct summation (no transform involved)."""
    if not 0 <= gamma < spec.order:
        raise ParameterError("gamma must be a field element")
    xs = np.arange(spec.order, dtype=np.int64)
    ones = int(spec.trace_vec(spec.mul_vec(gamma, xs) ^ spec.inv_table).sum())
    return spec.order - 2 * ones


@lru_cache(maxsize=None)
def _profile_values(spec: FieldSpec) -> np.ndarray:
    signs = 1 - 2 * spec.trace_bits[spec.inv_table].astype(np.int64)
    _kernels.fwht(signs)
    vals = signs[spec.dual_index]
    vals.setflags(write=False)
    return vals


@dataclass(frozen=True)
class KloostermanProfile:
    """All 2^n Kloosterman values of a field model, indexed by gamma."""

    spec: FieldSpec
    values: np.ndarray

    def value(self, gamma: int) -> int:
        return int(self.values[gamma])

    @property
    def k_max(self) -> int:
        return int(self.values.max())

    @property
    def k_min(self) -> int:
        return int(self.values.min())

    @property
    def max_witness(self) -> int:
        return int(np.argmax(self.values))

    @property
    def min_witness(self) -> int:
        return int(np.argmin(self.values))

    def histogram(self) -> dict[int, int]:
        vals, counts = np.unique(self.values, return_counts=True)
        return {int(v): int(c) for v, c in zip(vals, counts)}


def kloosterman_profile(spec: FieldSpec) -> KloostermanProfile:
    """The full value table via one Walsh-Hadamard transform."""
    return KloostermanProfile(spec=spec, values=_profile_values(spec))


def extrema_closed_form(n: int) -> tuple[int, int]:
    """(max, min) of the Kloosterman values over GF(2^n), from the closed
    form driven by t = floor(2^(n/2+1)) and its residue mod 4."""
    if n < 2:
        raise ParameterError("extrema closed form needs n >= 2")
    t = math.isqrt(1 << (n + 2))
    j = t % 4
    k_max = t + 1 if j == 3 else t - j
    k_min = 4 - t if j == 0 else j - t
    return k_max, k_min


@dataclass(frozen=True)
class ValueCoverageReport:
    """Outcome of checking that every multiple of 4 in the admissible range
    [1 - 2^((n+2)/2), 1 + 2^((n+2)/2)] is attained by some gamma."""

    n: int
    range_bound: int
    expected: tuple[int, ...]
    missing: tuple[int, ...]
    stray: tuple[int, ...]

    @property
    def ok(self) -> bool:
        return not self.missing and not self.stray


def verify_value_surjectivity(spec: FieldSpec) -> ValueCoverageReport:
    """Check the value-coverage law (valid for n >= 3) against the profile."""
    if spec.n < 3:
        raise ParameterError("value coverage requires n >= 3")
    t = math.isqrt(1 << (spec.n + 2))
    lo_k = -((t - 1) // 4)  # smallest k with 4k >= 1 - t
    hi_k = (1 + t) // 4
    expected = tuple(4 * k for k in range(lo_k, hi_k + 1))
    attained = set(int(v) for v in np.unique(_profile_values(spec)))
    missing = tuple(s for s in expected if s not in attained)
    stray = tuple(sorted(attained - set(expected)))
    return ValueCoverageReport(
        n=spec.n, range_bound=t, expected=expected, missing=missing, stray=stray
    )


def unit_circle_sum(spec: FieldSpec, gamma: int) -> int:
    """Sum of (-1)^Tr(gamma*z) over the unit circle of a degree-2m field.

    Requires even degree and gamma != 0; equals 1 - K(gamma * conj(gamma))
    taken in the half-degree subfield, which tests verify exhaustively.
    """
    if spec.m is None:
        raise ParameterError("unit-circle sum requires even degree")
    if not 0 < gamma < spec.order:
        raise ParameterError("gamma must be a nonzero field element")
    ones = int(spec.trace_vec(spec.mul_vec(gamma, spec.unit_circle_elements)).sum())
    return (spec.unit_circle_elements.size - ones) - ones


def kloosterman_of_norm(spec: FieldSpec, v: int) -> int:
    """K(v * conj(v)) evaluated in the canonical half-degree subfield model."""
    if spec.m is None:
        raise ParameterError("subfield Kloosterman requires even degree")
    if not 0 <= v < spec.order:
        raise ParameterError("v must be a field element")
    norm = spec.mul(v, spec.conjugate(v))
    iso = spec.subfield_iso()
    return int(_profile_values(iso.small)[iso.project(norm)])


def dillon_dlct_predict(spec: FieldSpec, v: int) -> int:
    """Predicted differential-linear entry at (1, v) for the Dillon-exponent
    monomials over a degree-2m field: K^2/2 - 2*Tr(v)*K with K the subfield
    Kloosterman value of the norm of v."""
    if spec.m is None:
        raise ParameterError("Dillon prediction requires even degree")
    if not 0 < v < spec.order:
        raise ParameterError("v must be nonzero")
    k = kloosterman_of_norm(spec, v)
    return k * k // 2 - 2 * spec.trace(v) * k


def dillon_dlu_predict(m: int) -> int:
    """Predicted differential-linear uniformity of the Dillon-exponent
    monomials over GF(2^(2m)), from the Kloosterman extrema closed form."""
    if m < 2:
        raise ParameterError("Dillon uniformity closed form needs m >= 2")
    k_max, _ = extrema_closed_form(m)
    j = math.isqrt(1 << (m + 2)) % 4
    if j in (0, 3):
        return k_max * k_max // 2
    return k_max * k_max // 2 + 2 * k_max

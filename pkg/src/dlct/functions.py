"""Function-family constructions over GF(2^n) and their lookup tables.

Every construction is a small frozen dataclass; build(spec, construction)
evaluates it into a FunctionTable, an immutable 2^n-entry value table tagged
with its field model and a deterministic label.  Power-family constructions
also record their exponent so the analysis layer can use the single-row
reduction that holds for monomial functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotBijectiveError, ParameterError, TableFormatError
from .field import FieldSpec


@dataclass(frozen=True)
class FunctionTable:
    """An (n,n)-function as an immutable lookup table over a field model."""

    spec: FieldSpec
    values: np.ndarray
    label: str
    power_exponent: int | None = None

    def __post_init__(self):
        vals = np.ascontiguousarray(self.values, dtype=np.int64)
        if vals.shape != (self.spec.order,):
            raise ParameterError(
                f"table length {vals.shape} does not match field order {self.spec.order}"
            )
        if vals.size and (int(vals.min()) < 0 or int(vals.max()) >= self.spec.order):
            raise ParameterError("table values outside the field range")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    def __len__(self):
        return self.spec.order

    def __call__(self, x: int) -> int:
        return int(self.values[x])

    def is_permutation(self) -> bool:
        return bool(np.array_equal(np.sort(self.values), np.arange(self.spec.order)))

    def inverse_values(self) -> np.ndarray:
        """Compositional inverse table; requires a permutation."""
        if not self.is_permutation():
            raise NotBijectiveError(f"{self.label} is not a permutation of GF(2^{self.spec.n})")
        inv = np.empty(self.spec.order, dtype=np.int64)
        inv[self.values] = np.arange(self.spec.order, dtype=np.int64)
        return inv


class _Construction:
    """Shared behavior for construction parameter classes."""

    def validate(self, spec: FieldSpec) -> None:  # pragma: no cover - overridden
        pass

    def power_exponent(self, spec: FieldSpec) -> int | None:
        return None

    def label(self, spec: FieldSpec) -> str:
        raise NotImplementedError

    def build_values(self, spec: FieldSpec) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class Power(_Construction):
    """The monomial x^d (with 0^0 = 1 when d = 0)."""

    d: int

    def validate(self, spec):
        if self.d < 0:
            raise ParameterError("power exponent must be non-negative")

    def power_exponent(self, spec):
        return self.d

    def label(self, spec):
        return f"power[d={self.d}]"

    def build_values(self, spec):
        return spec.pow_vec(np.arange(spec.order), self.d)


@dataclass(frozen=True)
class Inverse(_Construction):
    """The inverse function x^(2^n - 2), with 0 mapped to 0."""

    def power_exponent(self, spec):
        return spec.order - 2

    def label(self, spec):
        return "inverse"

    def build_values(self, spec):
        return spec.inv_table.copy()


@dataclass(frozen=True)
class CubicGold(_Construction):
    """The cubic monomial x^(2^(2k) + 2^k + 1)."""

    k: int

    def validate(self, spec):
        if self.k < 1:
            raise ParameterError("cubic parameter k must be >= 1")

    def power_exponent(self, spec):
        return (1 << (2 * self.k)) + (1 << self.k) + 1

    def label(self, spec):
        return f"cubic[k={self.k}]"

    def build_values(self, spec):
        return spec.pow_vec(np.arange(spec.order), self.power_exponent(spec))


@dataclass(frozen=True)
class Kasami(_Construction):
    """The Kasami monomial x^(2^(2k) - 2^k + 1)."""

    k: int

    def validate(self, spec):
        if self.k < 1:
            raise ParameterError("Kasami parameter k must be >= 1")

    def power_exponent(self, spec):
        return (1 << (2 * self.k)) - (1 << self.k) + 1

    def label(self, spec):
        return f"kasami[k={self.k}]"

    def build_values(self, spec):
        return spec.pow_vec(np.arange(spec.order), self.power_exponent(spec))


@dataclass(frozen=True)
class Dillon(_Construction):
    """The Dillon-exponent monomial x^(l*(2^m - 1)) over GF(2^(2m))."""

    l: int = 1

    def validate(self, spec):
        if spec.m is None:
            raise ParameterError("Dillon construction requires even degree")
        if self.l < 1:
            raise ParameterError("Dillon parameter l must be >= 1")
        if math.gcd(self.l, (1 << spec.m) + 1) != 1:
            raise ParameterError(
                f"Dillon parameter l={self.l} shares a factor with 2^{spec.m}+1"
            )

    def power_exponent(self, spec):
        return self.l * ((1 << spec.m) - 1)

    def label(self, spec):
        return f"dillon[l={self.l}]"

    def build_values(self, spec):
        return spec.pow_vec(np.arange(spec.order), self.power_exponent(spec))


def _format_terms(terms) -> str:
    return ",".join(f"{i}:{j}:{a:#x}" for i, j, a in terms)


def _validate_quadratic_terms(spec: FieldSpec, terms) -> None:
    seen = set()
    for i, j, a in terms:
        if not (0 <= i < j < spec.n):
            raise ParameterError(f"quadratic term needs 0 <= i < j < n, got ({i},{j})")
        if not 0 <= a < spec.order:
            raise ParameterError(f"coefficient {a:#x} outside the field")
        if (i, j) in seen:
            raise ParameterError(f"duplicate quadratic term ({i},{j})")
        seen.add((i, j))


def _quadratic_values(spec: FieldSpec, terms) -> np.ndarray:
    xs = np.arange(spec.order, dtype=np.int64)
    out = np.zeros(spec.order, dtype=np.int64)
    for i, j, a in terms:
        if a:
            out ^= spec.mul_vec(spec.pow_vec(xs, (1 << i) + (1 << j)), a)
    return out


@dataclass(frozen=True)
class Quadratic(_Construction):
    """A quadratic function sum of a_ij * x^(2^i + 2^j) over terms (i, j, a_ij)."""

    terms: tuple[tuple[int, int, int], ...]

    def validate(self, spec):
        _validate_quadratic_terms(spec, self.terms)

    def label(self, spec):
        return f"quadratic[{_format_terms(self.terms)}]"

    def build_values(self, spec):
        return _quadratic_values(spec, self.terms)


@dataclass(frozen=True)
class CubicPlusQuadratic(_Construction):
    """x^(2^(2k) + 2^k + 1) plus a quadratic part given by terms (i, j, a_ij)."""

    k: int
    terms: tuple[tuple[int, int, int], ...] = ()

    def validate(self, spec):
        if self.k < 1:
            raise ParameterError("cubic parameter k must be >= 1")
        _validate_quadratic_terms(spec, self.terms)

    def label(self, spec):
        return f"cubic[k={self.k}]+quadratic[{_format_terms(self.terms)}]"

    def build_values(self, spec):
        cube = spec.pow_vec(np.arange(spec.order), (1 << (2 * self.k)) + (1 << self.k) + 1)
        return cube ^ _quadratic_values(spec, self.terms)


@dataclass(frozen=True)
class PointModified(_Construction):
    """A base construction with finitely many points remapped to fixed values."""

    base: _Construction
    points: tuple[tuple[int, int], ...]

    def validate(self, spec):
        self.base.validate(spec)
        xs = [x for x, _ in self.points]
        if len(set(xs)) != len(xs):
            raise ParameterError("modified points must be distinct")
        for x, y in self.points:
            if not 0 <= x < spec.order or not 0 <= y < spec.order:
                raise ParameterError(f"modified point ({x:#x},{y:#x}) outside the field")

    def label(self, spec):
        mods = ",".join(f"{x:#x}->{y:#x}" for x, y in self.points)
        return f"{self.base.label(spec)}~mod[{mods}]"

    def build_values(self, spec):
        vals = np.array(self.base.build_values(spec), dtype=np.int64)
        for x, y in self.points:
            vals[x] = y
        return vals


@dataclass(frozen=True)
class GeneralizedCyclotomic(_Construction):
    """Piecewise monomial map: a_i * x^(r_i) on the coset C_i = g^i * C of the
    index-d subgroup C of the multiplicative group, with 0 mapped to 0.
    Branches are (coset index i, coefficient a_i, exponent r_i)."""

    d: int
    branches: tuple[tuple[int, int, int], ...]

    def validate(self, spec):
        if self.d < 1 or (spec.order - 1) % self.d != 0:
            raise ParameterError(f"index d={self.d} must divide 2^{spec.n}-1")
        idx = sorted(i for i, _, _ in self.branches)
        if idx != list(range(self.d)):
            raise ParameterError("branches must cover each coset index 0..d-1 exactly once")
        for i, a, r in self.branches:
            if not 0 <= a < spec.order:
                raise ParameterError(f"coefficient {a:#x} outside the field")
            if r < 0:
                raise ParameterError("branch exponents must be non-negative")

    def label(self, spec):
        body = ";".join(f"{i}:{a:#x}:{r}" for i, a, r in sorted(self.branches))
        return f"cyclotomic[d={self.d};{body}]"

    def build_values(self, spec):
        out = np.zeros(spec.order, dtype=np.int64)
        groups = cosets(spec, self.d)
        for i, a, r in self.branches:
            xs = groups[i]
            out[xs] = spec.mul_vec(spec.pow_vec(xs, r), a)
        return out


@dataclass(frozen=True)
class SubfieldBranchInverse(_Construction):
    """The inverse function with its half-degree-subfield branch rescaled:
    x^(2^n-2) off the subfield, scale * x^(2^n-2) on it.  The default scale
    is g^(2^m+1) for the spec generator g."""

    scale: int | None = None

    def _scale(self, spec):
        if self.scale is not None:
            return self.scale
        return spec.pow(spec.generator, (1 << spec.m) + 1)

    def validate(self, spec):
        if spec.m is None:
            raise ParameterError("subfield-branch inverse requires even degree")
        if self.scale is not None and not 0 < self.scale < spec.order:
            raise ParameterError("scale must be a nonzero field element")

    def label(self, spec):
        return f"subfield-branch-inverse[scale={self._scale(spec):#x}]"

    def build_values(self, spec):
        vals = spec.inv_table.copy()
        sub = spec.subfield_elements
        vals[sub] = spec.mul_vec(vals[sub], self._scale(spec))
        return vals


def build(spec: FieldSpec, construction: _Construction) -> FunctionTable:
    """Evaluate a construction into a FunctionTable over the given field model."""
    construction.validate(spec)
    return FunctionTable(
        spec=spec,
        values=construction.build_values(spec),
        label=construction.label(spec),
        power_exponent=construction.power_exponent(spec),
    )


def cosets(spec: FieldSpec, d: int) -> list[np.ndarray]:
    """The cosets g^i * C (i = 0..d-1) of the index-d multiplicative subgroup,
    each ascending.  Requires d | 2^n - 1."""
    if d < 1 or (spec.order - 1) % d != 0:
        raise ParameterError(f"index d={d} must divide 2^{spec.n}-1")
    xs = np.arange(1, spec.order, dtype=np.int64)
    idx = spec.log_table[xs] % d
    return [np.sort(xs[idx == i]) for i in range(d)]


def subfield_branch_inverse(spec: FieldSpec, scale: int | None = None) -> FunctionTable:
    """Convenience wrapper building SubfieldBranchInverse(scale)."""
    return build(spec, SubfieldBranchInverse(scale))


# ---------------------------------------------------------------------------
# S-box file I/O: a decimal `n=<n>` header line followed by 2^n hex values.
# ---------------------------------------------------------------------------

def save_table(path, table: FunctionTable) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"n={table.spec.n}\n")
        for v in table.values:
            fh.write(f"{int(v):x}\n")


def load_table(path, spec: FieldSpec | None = None, label: str | None = None) -> FunctionTable:
    """Read a table file; the field model defaults to the Conway model of the
    header degree.  Raises TableFormatError on malformed input."""
    with open(path, "r", encoding="utf-8") as fh:
        lines = [ln.strip() for ln in fh if ln.strip()]
    if not lines or not lines[0].startswith("n="):
        raise TableFormatError("missing n=<degree> header line")
    try:
        n = int(lines[0][2:], 10)
    except ValueError as exc:
        raise TableFormatError(f"bad degree in header: {lines[0]!r}") from exc
    if spec is None:
        spec = FieldSpec(n)
    elif spec.n != n:
        raise TableFormatError(f"file degree n={n} does not match field spec n={spec.n}")
    body = lines[1:]
    if len(body) != spec.order:
        raise TableFormatError(f"expected {spec.order} values, found {len(body)}")
    try:
        vals = np.array([int(tok, 16) for tok in body], dtype=np.int64)
    except ValueError as exc:
        raise TableFormatError("non-hexadecimal table value") from exc
    if vals.size and (vals.min() < 0 or vals.max() >= spec.order):
        raise TableFormatError("table value outside the field range")
    return FunctionTable(spec=spec, values=vals, label=label or "sbox", power_exponent=None)

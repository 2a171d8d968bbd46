"""Exact arithmetic in GF(2^n) for 1 <= n <= 20.

Field elements are plain ints whose bits are the polynomial-basis
coefficients (bit i = coefficient of x^i), so addition is ^.  A FieldSpec
fixes the degree, the reduction polynomial and a primitive element; all
operations are pure functions of their inputs and the cached lookup tables
are logically immutable, so specs are safe to share across threads.
"""

from __future__ import annotations

from functools import cached_property

import numpy as np

from .errors import ParameterError

MAX_DEGREE = 20

# Conway polynomials over F_2, computed offline from the defining property
# (lexicographically least primitive polynomial compatible with the norm
# maps onto every proper subfield).  These match Magma/GAP defaults, and the
# residue class of x is primitive by construction.
CONWAY_POLY = {
    1: 0x3,
    2: 0x7,
    3: 0xB,
    4: 0x13,
    5: 0x25,
    6: 0x5B,
    7: 0x83,
    8: 0x11D,
    9: 0x211,
    10: 0x46F,
    11: 0x805,
    12: 0x10EB,
    13: 0x201B,
    14: 0x40A9,
    15: 0x8035,
    16: 0x1002D,
    17: 0x20009,
    18: 0x41403,
    19: 0x80027,
    20: 0x1006F3,
}


# ---------------------------------------------------------------------------
# Polynomials over F_2 as int bitmasks (bit i = coefficient of x^i).
# ---------------------------------------------------------------------------

def poly_mul(a: int, b: int) -> int:
    """Carry-less product of two F_2[x] polynomials."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        b >>= 1
        a <<= 1
    return r


def poly_mod(a: int, m: int) -> int:
    """Remainder of a modulo m over F_2[x]."""
    dm = m.bit_length()
    while a.bit_length() >= dm:
        a ^= m << (a.bit_length() - dm)
    return a


def poly_mulmod(a: int, b: int, m: int) -> int:
    return poly_mod(poly_mul(a, b), m)


def poly_powmod(a: int, e: int, m: int) -> int:
    r = 1
    a = poly_mod(a, m)
    while e:
        if e & 1:
            r = poly_mulmod(r, a, m)
        a = poly_mulmod(a, a, m)
        e >>= 1
    return r


def poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, poly_mod(a, b)
    return a


def prime_factors(v: int) -> list[int]:
    """Distinct prime factors of v by trial division (v < 2^21 here)."""
    fs = []
    d = 2
    while d * d <= v:
        if v % d == 0:
            fs.append(d)
            while v % d == 0:
                v //= d
        d += 1
    if v > 1:
        fs.append(v)
    return fs


def poly_is_irreducible(f: int, n: int) -> bool:
    """Irreducibility of a degree-n polynomial over F_2."""
    if f.bit_length() != n + 1:
        return False
    if n == 1:
        return True
    x = 0b10
    if poly_powmod(x, 1 << n, f) != poly_mod(x, f):
        return False
    for q in prime_factors(n):
        r = poly_powmod(x, 1 << (n // q), f) ^ x
        if poly_gcd(f, poly_mod(r, f)) != 1:
            return False
    return True


def poly_is_primitive(f: int, n: int) -> bool:
    """True when f is irreducible and its x-class generates GF(2^n)^*."""
    if not poly_is_irreducible(f, n):
        return False
    order = (1 << n) - 1
    x = 0b10
    if poly_powmod(x, order, f) != 1:
        return False
    return all(poly_powmod(x, order // q, f) != 1 for q in prime_factors(order))


def _parity(v: np.ndarray | int):
    """Bit parity of values below 2^32 (scalar int or ndarray)."""
    v = v ^ (v >> 16)
    v = v ^ (v >> 8)
    v = v ^ (v >> 4)
    v = v ^ (v >> 2)
    v = v ^ (v >> 1)
    return v & 1


class FieldSpec:
    """A concrete model of GF(2^n): degree, reduction polynomial, generator."""

    def __init__(self, n: int, poly: int | None = None, generator: int | None = None):
        if not 1 <= n <= MAX_DEGREE:
            raise ParameterError(f"degree n={n} outside supported range 1..{MAX_DEGREE}")
        self.n = n
        self.order = 1 << n
        self.poly = CONWAY_POLY[n] if poly is None else poly
        if not poly_is_irreducible(self.poly, n):
            raise ParameterError(
                f"reduction polynomial {self.poly:#x} is not an irreducible degree-{n} polynomial"
            )
        self.generator = (0b10 if n > 1 else 1) if generator is None else generator
        if not 0 < self.generator < self.order:
            raise ParameterError(f"generator {self.generator:#x} out of range for n={n}")
        if self.element_order(self.generator) != self.order - 1:
            raise ParameterError(
                f"generator {self.generator:#x} does not have multiplicative order 2^{n}-1"
            )
        self.m = n // 2 if n % 2 == 0 else None

    def __repr__(self):
        return f"FieldSpec(n={self.n}, poly={self.poly:#x}, generator={self.generator:#x})"

    def __eq__(self, other):
        return (
            isinstance(other, FieldSpec)
            and (self.n, self.poly, self.generator) == (other.n, other.poly, other.generator)
        )

    def __hash__(self):
        return hash((self.n, self.poly, self.generator))

    # -- scalar arithmetic --------------------------------------------------

    def mul(self, a: int, b: int) -> int:
        """Product in GF(2^n): carry-less multiply reduced by the field polynomial."""
        p = 0
        top = self.order
        poly = self.poly
        while b:
            if b & 1:
                p ^= a
            a <<= 1
            if a & top:
                a ^= poly
            b >>= 1
        return p

    def sqr(self, a: int) -> int:
        return self.mul(a, a)

    def pow(self, a: int, e: int) -> int:
        """a^e by square-and-multiply; pow(0, 0) = 1, pow(0, e) = 0 for e > 0."""
        if e < 0:
            raise ParameterError("negative exponent")
        r = 1
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        """Multiplicative inverse, with the convention inv(0) = 0."""
        if a == 0:
            return 0
        return self.pow(a, self.order - 2)

    def frob(self, a: int, k: int) -> int:
        """k-fold Frobenius a^(2^k); negative k means the inverse automorphism."""
        for _ in range(k % self.n):
            a = self.mul(a, a)
        return a

    def trace(self, a: int) -> int:
        """Absolute trace to F_2."""
        return int(_parity(a & self.trace_mask))

    def conjugate(self, a: int) -> int:
        """Conjugate over the half-degree subfield: a^(2^m).  Even n only."""
        if self.m is None:
            raise ParameterError("conjugate requires even degree")
        return self.frob(a, self.m)

    def element_order(self, a: int) -> int:
        """Multiplicative order of a nonzero element."""
        if a == 0:
            raise ParameterError("0 has no multiplicative order")
        order = self.order - 1
        for q in prime_factors(order):
            while order % q == 0 and self.pow(a, order // q) == 1:
                order //= q
        return order

    def elements(self) -> range:
        return range(self.order)

    # -- cached tables -------------------------------------------------------

    @cached_property
    def trace_mask(self) -> int:
        # bit i = Tr(x^i), computed by the power-sum definition
        mask = 0
        for i in range(self.n):
            t = s = 1 << i
            for _ in range(self.n - 1):
                s = self.mul(s, s)
                t ^= s
            mask |= t << i
        return mask

    @cached_property
    def _exp_log(self):
        from . import _kernels

        exp, log = _kernels.build_exp_log(self.n, self.poly, self.generator)
        return exp, log

    @property
    def exp_table(self) -> np.ndarray:
        """exp_table[i] = generator^i, doubled in length for index wraparound."""
        return self._exp_log[0]

    @property
    def log_table(self) -> np.ndarray:
        """Discrete log base the generator; log_table[0] = -1 sentinel."""
        return self._exp_log[1]

    @cached_property
    def inv_table(self) -> np.ndarray:
        exp, log = self._exp_log
        idx = (self.order - 1) - log[np.arange(self.order)]
        idx[0] = 0
        out = exp[idx]
        out[0] = 0
        return out

    @cached_property
    def trace_bits(self) -> np.ndarray:
        """trace_bits[a] = Tr(a), as uint8."""
        xs = np.arange(self.order, dtype=np.int64)
        return _parity(xs & self.trace_mask).astype(np.uint8)

    @cached_property
    def dual_index(self) -> np.ndarray:
        """Linear bijection v -> w with Tr(v*y) = bit-parity(w & y) for all y.

        Lets one read trace-pairing transforms straight off a Walsh-Hadamard
        transform: the row entry for mask v sits at transform index
        dual_index[v].
        """
        xs = np.arange(self.order, dtype=np.int64)
        w = np.zeros(self.order, dtype=np.int64)
        for i in range(self.n):
            col = self.trace_bits[self.mul_vec(xs, 1 << i)].astype(np.int64)
            w |= col << i
        return w

    @cached_property
    def dual_index_inv(self) -> np.ndarray:
        inv = np.empty(self.order, dtype=np.int64)
        inv[self.dual_index] = np.arange(self.order, dtype=np.int64)
        return inv

    # -- vectorized arithmetic (numpy int64 arrays of element values) --------

    def mul_vec(self, a, b) -> np.ndarray:
        """Elementwise field product of arrays (or array and scalar)."""
        exp, log = self._exp_log
        a = np.asarray(a, dtype=np.int64)
        b = np.asarray(b, dtype=np.int64)
        out = exp[log[a] + log[b]]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow_vec(self, xs, e: int) -> np.ndarray:
        """Elementwise xs^e; exponent reduced mod 2^n-1 on nonzero inputs."""
        if e < 0:
            raise ParameterError("negative exponent")
        xs = np.asarray(xs, dtype=np.int64)
        if e == 0:
            return np.ones_like(xs)
        exp, log = self._exp_log
        out = exp[(log[xs] * (e % (self.order - 1))) % (self.order - 1)]
        return np.where(xs == 0, 0, out)

    def inv_vec(self, xs) -> np.ndarray:
        return self.inv_table[np.asarray(xs, dtype=np.int64)]

    def trace_vec(self, xs) -> np.ndarray:
        xs = np.asarray(xs, dtype=np.int64)
        return _parity(xs & self.trace_mask).astype(np.int64)

    def frob_vec(self, xs, k: int) -> np.ndarray:
        return self.pow_vec(xs, 1 << (k % self.n))

    # -- half-degree subfield and unit circle ---------------------------------

    def _require_even(self, what: str) -> int:
        if self.m is None:
            raise ParameterError(f"{what} requires even degree, got n={self.n}")
        return self.m

    def is_subfield_element(self, a: int) -> bool:
        m = self._require_even("subfield membership")
        return self.frob(a, m) == a

    @cached_property
    def subfield_elements(self) -> np.ndarray:
        """The 2^m elements of the half-degree subfield, ascending."""
        m = self._require_even("subfield enumeration")
        xs = np.arange(self.order, dtype=np.int64)
        return np.sort(xs[self.pow_vec(xs, 1 << m) == xs])

    @cached_property
    def unit_circle_elements(self) -> np.ndarray:
        """The norm-1 subgroup {z : z * z^(2^m) = 1}, 2^m + 1 elements ascending."""
        m = self._require_even("unit circle")
        step = (1 << m) - 1
        idx = np.arange((1 << m) + 1, dtype=np.int64) * step
        return np.sort(self.exp_table[idx])

    def unit_circle(self) -> np.ndarray:
        return self.unit_circle_elements

    def decompose_nonsubfield(self, x: int) -> tuple[int, int]:
        """The unique (v1, v2) on the unit circle, both != 1 and v1 != v2,
        with x = v1*(v2+1)/(v1+v2).  Defined off the half-degree subfield."""
        m = self._require_even("decomposition")
        if self.frob(x, m) == x:
            raise ParameterError(f"element {x:#x} lies in the subfield; decomposition undefined")
        v1 = self.mul(x, self.inv(self.frob(x, m)))
        y = x ^ 1
        v2 = self.mul(y, self.inv(self.frob(y, m)))
        return v1, v2

    def recompose_pair(self, v1: int, v2: int) -> int:
        """Inverse of decompose_nonsubfield: v1*(v2+1)/(v1+v2)."""
        if v1 == v2:
            raise ParameterError("recompose requires v1 != v2")
        return self.mul(self.mul(v1, v2 ^ 1), self.inv(v1 ^ v2))

    def subfield_spec(self) -> "FieldSpec":
        """Canonical (Conway-default) model of the half-degree subfield."""
        m = self._require_even("subfield spec")
        return FieldSpec(m)

    @cached_property
    def _default_subfield_iso(self) -> "SubfieldIso":
        return SubfieldIso(self, self.subfield_spec())

    def subfield_iso(self, small: "FieldSpec | None" = None) -> "SubfieldIso":
        m = self._require_even("subfield isomorphism")
        if small is None:
            return self._default_subfield_iso
        if small.n != m:
            raise ParameterError(f"subfield spec must have degree {m}, got {small.n}")
        return SubfieldIso(self, small)


class SubfieldIso:
    """Field isomorphism between the half-degree subfield of a degree-2m spec
    and a standalone degree-m spec, realized by rooting the small reduction
    polynomial inside the big field."""

    def __init__(self, big: FieldSpec, small: FieldSpec):
        self.big = big
        self.small = small
        m = small.n
        root = None
        for cand in map(int, big.subfield_elements):
            # Horner evaluation of the small reduction polynomial at cand
            acc = 0
            for i in range(m, -1, -1):
                acc = big.mul(acc, cand) ^ ((small.poly >> i) & 1)
            if acc == 0:
                root = cand
                break
        if root is None:  # impossible for a valid irreducible polynomial
            raise ParameterError("small reduction polynomial has no root in the subfield")
        self.root = root
        powers = [1]
        for _ in range(m - 1):
            powers.append(big.mul(powers[-1], root))
        emb = np.zeros(small.order, dtype=np.int64)
        for v in range(small.order):
            acc = 0
            for i in range(m):
                if (v >> i) & 1:
                    acc ^= powers[i]
            emb[v] = acc
        self._embed = emb
        self._project = {int(e): v for v, e in enumerate(emb)}

    def embed(self, v: int) -> int:
        """Small-field value -> element of the big field's subfield."""
        return int(self._embed[v])

    def project(self, y: int) -> int:
        """Big-field subfield element -> small-field value."""
        try:
            return self._project[y]
        except KeyError:
            raise ParameterError(f"element {y:#x} is not in the half-degree subfield") from None


def parse_field_file(path) -> FieldSpec:
    """Read a field-spec file: lines `n = <decimal>`, `poly = <hex>`,
    `generator = <hex>`; poly/generator fall back to Conway defaults."""
    keys: dict[str, str] = {}
    with open(path, "r", encoding="utf-8") as fh:
        for raw in fh:
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ParameterError(f"malformed field-spec line: {raw.strip()!r}")
            key, val = (part.strip() for part in line.split("=", 1))
            if key not in ("n", "poly", "generator"):
                raise ParameterError(f"unknown field-spec key: {key!r}")
            keys[key] = val
    if "n" not in keys:
        raise ParameterError("field-spec file must define n")
    n = int(keys["n"], 10)
    poly = int(keys["poly"], 16) if "poly" in keys else None
    gen = int(keys["generator"], 16) if "generator" in keys else None
    return FieldSpec(n, poly=poly, generator=gen)

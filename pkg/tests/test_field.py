import numpy as np
import pytest

from conftest import field
from dlct import CONWAY_POLY, FieldSpec, ParameterError, parse_field_file
from dlct.field import (
    poly_is_irreducible,
    poly_is_primitive,
    poly_mod,
    poly_mul,
    poly_mulmod,
)


def _oracle_mul(a: int, b: int, n: int, poly: int) -> int:
    """Schoolbook carry-less multiply then reduce, independent of FieldSpec."""
    return poly_mod(poly_mul(a, b), poly)


def test_conway_constants_are_irreducible_and_primitive():
    for n, poly in CONWAY_POLY.items():
        assert poly >> n == 1, f"degree mismatch at n={n}"
        assert poly_is_irreducible(poly, n)
        assert poly_is_primitive(poly, n)


@pytest.mark.parametrize("n", range(2, 15))
def test_conway_subfield_compatibility(n):
    # The class of x in the degree-n model, raised to (2^n-1)/(2^d-1), must be
    # a root of the degree-d default polynomial for every proper divisor d.
    spec = field(n)
    for d in range(1, n):
        if n % d:
            continue
        g = spec.pow(0b10, ((1 << n) - 1) // ((1 << d) - 1))
        acc = 0
        power = 1
        sub_poly = CONWAY_POLY[d]
        for i in range(d + 1):
            if (sub_poly >> i) & 1:
                acc ^= power
            power = spec.mul(power, g)
        assert acc == 0, f"n={n} d={d}"


@pytest.mark.parametrize("n", [1, 2, 3, 5, 8, 11, 12])
def test_mul_matches_polynomial_oracle(n):
    spec = field(n)
    rng = np.random.default_rng(101 + n)
    for _ in range(300):
        a = int(rng.integers(spec.order))
        b = int(rng.integers(spec.order))
        assert spec.mul(a, b) == _oracle_mul(a, b, n, spec.poly)


@pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
def test_field_axioms_on_blocked_grids(n):
    spec = field(n)
    xs = np.arange(spec.order, dtype=np.int64)
    for a in range(spec.order):
        ab = spec.mul_vec(xs, a)
        for b in range(spec.order):
            left = spec.mul_vec(ab, b)                     # (x*a)*b
            right = spec.mul_vec(xs, spec.mul(a, b))       # x*(a*b)
            assert np.array_equal(left, right)
        distrib = spec.mul_vec(xs ^ a, 0b10)
        assert np.array_equal(distrib, spec.mul_vec(xs, 0b10) ^ spec.mul(a, 0b10))


@pytest.mark.parametrize("n", range(1, 11))
def test_inverse_table(n):
    spec = field(n)
    xs = np.arange(1, spec.order, dtype=np.int64)
    products = spec.mul_vec(xs, spec.inv_vec(xs))
    assert np.all(products == 1)
    assert spec.inv(0) == 0
    assert spec.inv_table[0] == 0


@pytest.mark.parametrize("n", [2, 3, 6, 8, 9])
def test_pow_and_frobenius(n):
    spec = field(n)
    rng = np.random.default_rng(7 * n)
    xs = rng.integers(spec.order, size=64).astype(np.int64)
    assert np.all(spec.pow_vec(xs, 0) == 1)
    assert spec.pow(0, 0) == 1
    assert spec.pow(0, 5) == 0
    for k in range(n + 2):
        expected = spec.pow_vec(xs, 1 << (k % n))
        assert np.array_equal(spec.frob_vec(xs, k), expected)
    for a in map(int, xs[:16]):
        assert spec.frob(spec.frob(a, 3), -3) == a
        assert spec.pow(a, spec.order - 1) == (1 if a else 0)


@pytest.mark.parametrize("n", range(1, 11))
def test_trace_is_the_masked_parity_of_the_power_sum(n):
    spec = field(n)
    xs = np.arange(spec.order, dtype=np.int64)
    direct = np.zeros(spec.order, dtype=np.int64)
    for k in range(n):
        direct ^= spec.frob_vec(xs, k)
    assert np.all((direct == 0) | (direct == 1))
    assert np.array_equal(spec.trace_vec(xs), direct)
    assert sum(spec.trace(int(x)) for x in xs) == spec.order >> 1 or n == 1
    a, b = (3, 5) if n >= 3 else (1, 1)
    for x in map(int, xs[: min(64, spec.order)]):
        assert spec.trace(x ^ a) ^ spec.trace(x) == spec.trace(a)
        _ = b


@pytest.mark.parametrize("n", [4, 6, 8])
def test_dual_index_realizes_the_trace_pairing(n):
    spec = field(n)
    phi = spec.dual_index
    for v in range(spec.order):
        for y in range(spec.order):
            parity = bin(int(phi[v]) & y).count("1") & 1
            assert parity == spec.trace(spec.mul(v, y))
    assert np.array_equal(spec.dual_index_inv[phi], np.arange(spec.order))


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
def test_subfield_membership_and_conjugation(n):
    spec = field(n)
    sub = spec.subfield_elements
    assert len(sub) == (1 << spec.m)
    xs = np.arange(spec.order, dtype=np.int64)
    fixed = xs[spec.frob_vec(xs, spec.m) == xs]
    assert np.array_equal(sub, fixed)
    for x in range(spec.order):
        conj = spec.conjugate(x)
        assert spec.conjugate(conj) == x
        assert spec.is_subfield_element(spec.mul(x, conj))
        assert spec.is_subfield_element(x ^ conj)


@pytest.mark.parametrize("n", [2, 4, 6, 8])
def test_unit_circle(n):
    spec = field(n)
    circle = spec.unit_circle_elements
    assert len(circle) == (1 << spec.m) + 1
    for z in map(int, circle):
        assert spec.mul(z, spec.conjugate(z)) == 1
    overlap = set(map(int, circle)) & set(map(int, spec.subfield_elements))
    assert overlap == {1}


@pytest.mark.parametrize("n", [4, 6, 8])
def test_decomposition_is_a_bijection_off_the_subfield(n):
    spec = field(n)
    sub = set(map(int, spec.subfield_elements))
    seen = {}
    for x in range(spec.order):
        if x in sub:
            with pytest.raises(ParameterError):
                spec.decompose_nonsubfield(x)
            continue
        v1, v2 = spec.decompose_nonsubfield(x)
        circle = set(map(int, spec.unit_circle_elements))
        assert v1 in circle and v2 in circle
        assert v1 != 1 and v2 != 1 and v1 != v2
        assert spec.recompose_pair(v1, v2) == x
        key = (v1, v2)
        assert key not in seen
        seen[key] = x
    assert len(seen) == spec.order - (1 << spec.m)


@pytest.mark.parametrize("n", [2, 4, 6, 8, 10])
def test_subfield_iso_is_a_field_homomorphism(n):
    spec = field(n)
    iso = spec.subfield_iso()
    small = iso.small
    rng = np.random.default_rng(n)
    for _ in range(100):
        a = int(rng.integers(small.order))
        b = int(rng.integers(small.order))
        ea, eb = iso.embed(a), iso.embed(b)
        assert iso.embed(small.mul(a, b)) == spec.mul(ea, eb)
        assert iso.embed(a ^ b) == ea ^ eb
        assert iso.project(ea) == a
    with pytest.raises(ParameterError):
        iso.project(int(np.setdiff1d(np.arange(spec.order),
                                     spec.subfield_elements)[0]))


def test_spec_validation_rejects_bad_parameters():
    with pytest.raises(ParameterError):
        FieldSpec(0)
    with pytest.raises(ParameterError):
        FieldSpec(21)
    with pytest.raises(ParameterError):
        FieldSpec(4, poly=0b10101)  # x^4+x^2+1 = (x^2+x+1)^2 is reducible
    with pytest.raises(ParameterError):
        FieldSpec(3, generator=1)  # order 1, not a generator
    spec = FieldSpec(3, poly=0b1101)  # x^3+x^2+1, fine but not the default
    assert spec.poly == 0b1101
    assert spec.mul(spec.generator, spec.inv(spec.generator)) == 1


def test_parse_field_file(tmp_path):
    path = tmp_path / "field.txt"
    path.write_text("# comment\nn=4\npoly=13\ngenerator=2\n")
    spec = parse_field_file(path)
    assert (spec.n, spec.poly, spec.generator) == (4, 0x13, 2)
    path.write_text("n=4\n")
    spec = parse_field_file(path)
    assert spec.poly == CONWAY_POLY[4]
    path.write_text("poly=13\n")
    with pytest.raises(ParameterError):
        parse_field_file(path)


@pytest.mark.parametrize("n", [1, 2, 5, 9])
def test_exp_log_roundtrip(n):
    spec = field(n)
    exp, log = spec.exp_table, spec.log_table
    period = spec.order - 1
    assert log[0] == -1
    for x in range(1, spec.order):
        assert exp[log[x]] == x
    for i in range(period):
        assert exp[i + period] == exp[i]


def test_mul_vec_agrees_with_scalar_and_handles_zero():
    spec = field(6)
    rng = np.random.default_rng(2)
    xs = rng.integers(spec.order, size=200).astype(np.int64)
    ys = rng.integers(spec.order, size=200).astype(np.int64)
    xs[:5] = 0
    ys[3:8] = 0
    got = spec.mul_vec(xs, ys)
    for x, y, g in zip(xs, ys, got):
        assert int(g) == spec.mul(int(x), int(y))

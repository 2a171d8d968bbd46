"""Theorem checks: operators, bounds, closed forms, and their verdicts."""

import json
import math

import numpy as np
import pytest

from conftest import field
from dlct import (
    CubicGold,
    Inverse,
    LinearizedOperator,
    ParameterError,
    PointModified,
    build,
    canonical_kasami_exponent,
    check_cubic_bound,
    check_cubic_plus_quadratic_bound,
    check_inverse_formula,
    check_kasami_bound,
    check_modified_inverse,
    check_modified_kasami,
    check_point_modification,
    cubic_kernel_operator,
    cubic_kernel_sizes,
    cubic_phase_form,
    dlct_entry,
    modified_dlct,
    modified_inverse_dlct,
)
from dlct.functions import FunctionTable


# -- linearized operators -----------------------------------------------------------


def test_operator_evaluation_and_linearity():
    spec = field(5)
    op = LinearizedOperator(spec=spec, terms=((0b00110, 2), (0b10001, 0), (1, -1)))
    zs = np.arange(spec.order, dtype=np.int64)
    vec = op.evaluate_vec(zs)
    for z in spec.elements():
        assert vec[z] == op.evaluate(z)
    for a in (3, 17, 30):
        for b in (1, 9, 22):
            assert op.evaluate(a ^ b) == op.evaluate(a) ^ op.evaluate(b)


def test_operator_kernel_matches_brute_force():
    spec = field(6)
    rng = np.random.default_rng(42)
    for _ in range(8):
        terms = tuple(
            (int(rng.integers(0, spec.order)), int(rng.integers(-3, 4)))
            for _ in range(int(rng.integers(1, 4)))
        )
        op = LinearizedOperator(spec=spec, terms=terms)
        brute = sorted(z for z in spec.elements() if op.evaluate(z) == 0)
        assert op.kernel().tolist() == brute
        assert op.kernel_size() == len(brute)
        assert op.kernel_size() & (op.kernel_size() - 1) == 0


def test_operator_frobenius_minus_identity_has_the_prime_subfield_kernel():
    spec = field(6)
    op = LinearizedOperator(spec=spec, terms=((1, 1), (1, 0)))
    assert op.kernel().tolist() == [0, 1]


def test_operator_rejects_bad_coefficients():
    with pytest.raises(ParameterError):
        LinearizedOperator(spec=field(4), terms=((16, 0),))


# -- the cubic kernel machinery --------------------------------------------------------


@pytest.mark.parametrize("n,k", [(5, 1), (5, 2), (6, 1), (6, 2)])
def test_cubic_kernel_sizes_match_per_mask_operators(n, k):
    spec = field(n)
    sizes = cubic_kernel_sizes(spec, k)
    assert sizes[0] == spec.order
    for v in range(1, spec.order):
        assert sizes[v] == cubic_kernel_operator(spec, k, v).kernel_size()


@pytest.mark.parametrize("n,k", [(5, 1), (6, 1), (6, 2), (7, 1)])
def test_cubic_phase_identity_on_the_kernel(n, k):
    # The squared row-one sign sum of the cubic monomial equals 2^n times the
    # signed phase sum over the kernel of the companion operator.
    spec = field(n)
    F = build(spec, CubicGold(k))
    for v in range(1, spec.order):
        sign_sum = 2 * dlct_entry(F, 1, v)
        kernel = cubic_kernel_operator(spec, k, v).kernel()
        phase = sum((-1) ** cubic_phase_form(spec, k, v, int(z)) for z in kernel)
        assert sign_sum * sign_sum == spec.order * phase, v


def test_cubic_machinery_validates_arguments():
    with pytest.raises(ParameterError):
        cubic_kernel_operator(field(5), 0, 1)
    with pytest.raises(ParameterError):
        cubic_kernel_operator(field(5), 1, 32)
    with pytest.raises(ParameterError):
        cubic_kernel_sizes(field(5), 0)


# -- cubic bounds ------------------------------------------------------------------------


@pytest.mark.parametrize("n", range(3, 9))
def test_cubic_bound_holds_for_every_parameter(n):
    spec = field(n)
    for k in range(1, n):
        report = check_cubic_bound(spec, k)
        assert report.ok, (n, k, report)
        assert report.details["squared_entry_ok"]
        assert report.details["kernel_max"] <= report.details["kernel_cap"]


def test_cubic_bound_known_tight_and_strict_cases():
    tight = check_cubic_bound(field(6), 1)
    assert (tight.predicted, tight.measured, tight.verdict) == (16, 16, "tight")
    strict = check_cubic_bound(field(5), 1)
    assert (strict.predicted, strict.measured, strict.verdict) == (8, 4, "holds")
    wide = check_cubic_bound(field(9), 3)
    assert (wide.predicted, wide.measured, wide.verdict) == (256, 256, "tight")


def test_cubic_bound_kernel_check_gating():
    spec = field(6)
    on = check_cubic_bound(spec, 1, kernel_check=True)
    off = check_cubic_bound(spec, 1, kernel_check=False)
    assert "kernel_max" in on.details
    assert "kernel_max" not in off.details
    assert on.measured == off.measured


def test_cubic_plus_quadratic_bound_on_seeded_instances():
    rng = np.random.default_rng(7)
    for n in (5, 6, 7, 8):
        spec = field(n)
        for _ in range(5):
            k = int(rng.integers(1, n))
            pairs = set()
            while len(pairs) < int(rng.integers(1, 4)):
                i, j = sorted(rng.integers(0, n, size=2).tolist())
                if i != j:
                    pairs.add((int(i), int(j)))
            terms = tuple((i, j, int(rng.integers(1, spec.order))) for i, j in pairs)
            report = check_cubic_plus_quadratic_bound(spec, k, terms)
            assert report.ok, (n, k, terms, report)


# -- point modification -------------------------------------------------------------------


def _random_mods(spec, values, t, rng):
    xs = rng.choice(spec.order, size=t, replace=False)
    mods = []
    for x in xs:
        y = int(rng.integers(0, spec.order))
        while y == int(values[x]):
            y = int(rng.integers(0, spec.order))
        mods.append((int(x), y))
    return mods


@pytest.mark.parametrize("n", [4, 5])
def test_modified_entry_equals_the_rebuilt_table(n):
    spec = field(n)
    base = build(spec, Inverse())
    rng = np.random.default_rng(50 + n)
    for t in (1, 2, 3):
        mods = _random_mods(spec, base.values, t, rng)
        rebuilt = build(spec, PointModified(Inverse(), tuple(mods)))
        for u in range(spec.order):
            for v in range(spec.order):
                assert modified_dlct(base, mods, u, v) == dlct_entry(rebuilt, u, v)


def test_modified_entry_validates_arguments():
    base = build(field(4), Inverse())
    with pytest.raises(ParameterError):
        modified_dlct(base, [(1, 2), (1, 3)], 1, 1)
    with pytest.raises(ParameterError):
        modified_dlct(base, [(16, 0)], 1, 1)
    with pytest.raises(ParameterError):
        modified_dlct(base, [(0, 1)], 16, 1)


def test_point_modification_bound_on_seeded_instances():
    rng = np.random.default_rng(99)
    for n in (4, 5, 6):
        spec = field(n)
        base = build(spec, Inverse())
        for _ in range(4):
            t = int(rng.integers(1, 4))
            mods = _random_mods(spec, base.values, t, rng)
            report = check_point_modification(base, mods)
            assert report.ok, (n, mods, report)
            assert report.predicted == report.details["base_dlu"] + 2 * t


# -- modified inverse ----------------------------------------------------------------------


@pytest.mark.parametrize("n", [4, 6])
def test_modified_inverse_closed_form_is_exhaustively_exact(n):
    spec = field(n)
    rng = np.random.default_rng(60 + n)
    cases = [(0, spec.generator)]
    while len(cases) < 3:
        xi = int(rng.integers(0, spec.order))
        a = int(rng.integers(0, spec.order))
        if a != spec.inv(xi) and (xi, a) not in cases:
            cases.append((xi, a))
    for xi, a in cases:
        table = build(spec, PointModified(Inverse(), ((xi, a),)))
        for u in range(1, spec.order):
            for v in range(1, spec.order):
                assert modified_inverse_dlct(spec, xi, a, u, v) == dlct_entry(
                    table, u, v
                ), (xi, a, u, v)


def test_modified_inverse_closed_form_validates_arguments():
    spec = field(4)
    with pytest.raises(ParameterError):
        modified_inverse_dlct(field(5), 0, 1, 1, 1)  # odd degree
    with pytest.raises(ParameterError):
        modified_inverse_dlct(spec, 2, spec.inv(2), 1, 1)  # no actual change
    with pytest.raises(ParameterError):
        modified_inverse_dlct(spec, 0, 2, 0, 1)
    with pytest.raises(ParameterError):
        modified_inverse_dlct(spec, 0, 2, 1, 0)


@pytest.mark.parametrize("n", [4, 6])
def test_modified_inverse_zero_point_hits_the_equality_case(n):
    spec = field(n)
    report = check_modified_inverse(spec, 0, spec.generator)
    assert report.verdict == "tight"
    assert report.predicted == 1 << spec.m
    assert report.details["equality_case"]


def test_modified_inverse_nonzero_point_respects_the_bound():
    spec = field(6)
    rng = np.random.default_rng(61)
    for _ in range(4):
        xi = int(rng.integers(1, spec.order))
        a = int(rng.integers(0, spec.order))
        if a == spec.inv(xi):
            continue
        report = check_modified_inverse(spec, xi, a)
        assert report.ok, (xi, a, report)
        assert report.predicted == (1 << spec.m) + 2


# -- inverse formula and Kasami ---------------------------------------------------------------


@pytest.mark.parametrize("n", range(3, 9))
def test_inverse_entry_formula_has_no_mismatches(n):
    report = check_inverse_formula(field(n))
    assert report.verdict == "tight"
    assert report.measured == 0
    if n % 2 == 0:
        assert report.details["dlu"] == report.details["dlu_expected"]


def test_canonical_kasami_exponents():
    assert canonical_kasami_exponent(5) == 2
    assert canonical_kasami_exponent(7) == 2
    assert canonical_kasami_exponent(11) == 4
    assert canonical_kasami_exponent(13) == 4
    for bad in (4, 9, 2, 1):
        with pytest.raises(ParameterError):
            canonical_kasami_exponent(bad)


@pytest.mark.parametrize("n,k", [(5, 2), (7, 2), (7, 5)])
def test_kasami_uniformity_is_exact(n, k):
    report = check_kasami_bound(field(n), k)
    assert report.verdict == "tight"
    assert report.predicted == 1 << ((n - 1) // 2)


def test_kasami_hypotheses_are_enforced():
    with pytest.raises(ParameterError):
        check_kasami_bound(field(6), 1)  # even degree
    with pytest.raises(ParameterError):
        check_kasami_bound(field(9), 2)  # degree divisible by 3
    with pytest.raises(ParameterError):
        check_kasami_bound(field(7), 3)  # 9 is neither +1 nor -1 mod 7


@pytest.mark.parametrize("k", [2, 5])
def test_modified_kasami_bound_is_tight_at_n7(k):
    spec = field(7)
    report = check_modified_kasami(spec, k, 0, spec.generator)
    assert (report.predicted, report.measured, report.verdict) == (10, 10, "tight")


def test_modified_kasami_rejects_a_no_op_modification():
    spec = field(5)
    with pytest.raises(ParameterError):
        check_modified_kasami(spec, 2, 1, spec.pow(1, 13))


# -- report plumbing -----------------------------------------------------------------------


def test_reports_serialize_to_json():
    report = check_cubic_bound(field(5), 1)
    blob = json.dumps(report.to_dict())
    back = json.loads(blob)
    assert back["theorem"] == "cubic-dlu-bound"
    assert back["verdict"] == report.verdict
    assert report.ok


def test_point_modification_report_label_counts_points():
    spec = field(4)
    base = build(spec, Inverse())
    report = check_point_modification(base, [(0, 1), (5, 2)])
    assert report.params["t"] == 2
    assert report.theorem == "point-modification-dlu-bound"

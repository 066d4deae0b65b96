"""Point counts, closed points, fixed-point groups, orbit correspondence."""

import math

import pytest

import oracles
from test_weil import CORPUS
from weilflow.counting import (
    CountTable,
    build_count_table,
    closed_point_count,
    fixed_point_group,
    mobius,
    orbit_table,
    point_count,
    primitive_orbit_count,
)
from weilflow.errors import (
    CorrespondenceFailure,
    InsufficientCountRange,
    NonIntegralInversion,
)
from weilflow.weil import frobenius_model, parse_weil_datum


def _model(doc):
    return frobenius_model(parse_weil_datum(doc))


E5A2 = _model({"q": 5, "trace": 2})
G2 = _model({"q": 5, "g": 2, "weil_poly": [1, -6, 18, -30, 25]})


def test_mobius_values():
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_point_count_hand_values():
    assert [point_count(E5A2, n) for n in (1, 2, 3, 4)] == [4, 32, 148, 640]
    assert point_count(G2, 1) == 8  # 4 * 2 from the two elliptic factors


def test_count_table_frozen_and_oracle():
    ct = build_count_table(E5A2, 8)
    assert list(ct.counts) == [4, 32, 148, 640, 3044, 15392, 78068, 391680]
    assert list(ct.closed_points) == [4, 14, 48, 152, 608, 2536, 11152, 48880]
    assert list(ct.counts) == oracles.trace_counts(2, 5, 8)
    assert list(ct.closed_points) == oracles.closed_points(oracles.trace_counts(2, 5, 8))


def test_count_table_g2_frozen_and_oracle():
    ct = build_count_table(G2, 6)
    expected = oracles.product_counts([2, 4], 5, 6)
    assert list(ct.counts) == expected
    assert expected == [8, 640, 18056, 409600, 9746888, 244117120]
    assert list(ct.closed_points) == oracles.closed_points(expected)
    assert list(ct.closed_points) == [8, 316, 6016, 102240, 1949376, 40683072]


def test_counts_match_recurrence_all_elliptic_corpus():
    for doc in CORPUS:
        if "trace" not in doc:
            continue
        m = _model(doc)
        ct = build_count_table(m, 20)
        assert list(ct.counts) == oracles.trace_counts(doc["trace"], doc["q"], 20)


def test_closed_point_examples():
    ct = build_count_table(E5A2, 4)
    assert closed_point_count(ct, 1) == 4
    assert closed_point_count(ct, 2) == (32 - 4) // 2
    assert closed_point_count(ct, 3) == (148 - 4) // 3
    assert closed_point_count(ct, 4) == (640 - 32) // 4
    assert 1 * 4 + 2 * 14 + 4 * 152 == 640  # divisor-sum identity at n = 4


def test_divisor_sum_identity_to_20():
    for m in (E5A2, G2):
        ct = build_count_table(m, 20)
        for n in range(1, 21):
            total = sum(
                d * ct.closed_points[d - 1] for d in range(1, n + 1) if n % d == 0
            )
            assert total == ct.counts[n - 1]


def test_float_exact_consistency():
    # |prod (mu_i^n - 1)| tracks the exact integer count
    for m in (E5A2, G2):
        ct = build_count_table(m, 20)
        for n in range(1, 21):
            prod = 1 + 0j
            for mu in m.roots:
                prod *= mu ** n - 1
            assert abs(abs(prod) - ct.counts[n - 1]) <= 1e-6 * ct.counts[n - 1]


def test_fixed_point_group_hand_values():
    g1 = fixed_point_group(E5A2, 1)
    assert g1.divisors == (1, 4) and g1.order == 4
    g2 = fixed_point_group(E5A2, 2)
    assert g2.divisors == (2, 16) and g2.order == 32
    g3 = fixed_point_group(E5A2, 3)
    assert g3.divisors == (1, 148)
    h2 = fixed_point_group(G2, 2)
    assert h2.divisors == (1, 1, 4, 160) and h2.order == 640


def test_fixed_point_group_vs_sympy_and_counts():
    from weilflow.intlinalg import identity, mat_pow, mat_sub

    for m, n_hi in ((E5A2, 8), (G2, 5)):
        ct = build_count_table(m, n_hi)
        for n in range(1, n_hi + 1):
            fg = fixed_point_group(m, n)
            assert fg.order == ct.counts[n - 1]
            for a, b in zip(fg.divisors, fg.divisors[1:]):
                assert b % a == 0
            mat = mat_sub(mat_pow(m.matrix, n), identity(len(m.matrix)))
            assert list(fg.divisors) == oracles.sympy_snf_divisors(mat)


def test_primitive_orbits():
    ct = build_count_table(E5A2, 12)
    assert primitive_orbit_count(ct, 1) == 4
    assert primitive_orbit_count(ct, 2) == 14
    for nu in (2, 3, 5, 7, 11):  # prime nu: b = (N_nu - N_1)/nu
        assert primitive_orbit_count(ct, nu) == (ct.counts[nu - 1] - ct.counts[0]) // nu
    ot = orbit_table(ct)
    assert list(ot.counts) == list(ct.closed_points)
    for nu in range(1, 13):
        assert abs(ot.lengths[nu - 1] - nu * math.log(5)) < 1e-12


def test_range_errors():
    ct = build_count_table(E5A2, 3)
    with pytest.raises(InsufficientCountRange):
        ct.count(4)
    with pytest.raises(InsufficientCountRange):
        closed_point_count(ct, 4)
    with pytest.raises(InsufficientCountRange):
        primitive_orbit_count(ct, 9)
    with pytest.raises(ValueError):
        point_count(E5A2, 0)


def test_forged_tables_are_caught():
    ct = build_count_table(E5A2, 3)
    # N_2 bumped by 1: Mobius total 29 is not divisible by 2
    forged = CountTable(q=5, g=1, n_max=3, counts=(4, 33, 148),
                        closed_points=ct.closed_points)
    with pytest.raises(NonIntegralInversion):
        primitive_orbit_count(forged, 2)
    # consistent counts but wrong closed-point slot: correspondence breaks
    forged2 = CountTable(q=5, g=1, n_max=3, counts=ct.counts,
                         closed_points=(4, 15, 48))
    with pytest.raises(CorrespondenceFailure):
        primitive_orbit_count(forged2, 2)


def test_positivity_whole_corpus():
    for doc in CORPUS:
        m = _model(doc)
        for n in range(1, 11):
            assert point_count(m, n) > 0

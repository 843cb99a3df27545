import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qplab.algebra import Polynomial, determinant, hankel_matrix, sturm_real_root_count
from qplab.inequalities import (HANKEL_FACTORS, expression_quasipolynomial, form_for,
                                generalized_laguerre, inequality_profile, is_hyperbolic,
                                jensen_poly, laguerre_expression, laguerre_form, limit_profile,
                                limit_target, r_log_concave_check, threshold_scan,
                                turan_expression)
from qplab.partitions import Multiset, gcd_condition, series_values
from qplab.quasipoly import QuasiPolynomial

windows = st.lists(st.integers(-10 ** 4, 10 ** 4), min_size=7, max_size=7)


def test_turan2_closed_form():
    assert turan_expression([1, 3, 2], 2) == 9 - 2
    assert turan_expression([5, 5, 5], 2) == 0


@given(windows)
def test_laguerre_raw_is_twice_reduced(w):
    for d in (1, 2, 3):
        assert laguerre_expression(w, d) == 2 * laguerre_expression(w, d, reduced=True)
    assert laguerre_expression(w, 2, reduced=True) == 3 * w[2] ** 2 - 4 * w[1] * w[3] + w[0] * w[4]
    assert laguerre_expression(w, 3, reduced=True) == \
        10 * w[3] ** 2 - 15 * w[2] * w[4] + 6 * w[1] * w[5] - w[0] * w[6]


def test_laguerre_order_zero_is_a_square():
    assert laguerre_form(0) == {(0, 0): 1}
    with pytest.raises(ValueError):
        laguerre_form(-1)


@settings(max_examples=500)
@given(st.lists(st.integers(1, 10 ** 3), min_size=5, max_size=5))
def test_turan_forms_are_scaled_hankel_determinants(w):
    for d in (2, 3, 4):
        # Turán 2/3 windows start one step before the Jensen polynomial's first term
        window = w[:d + 1]
        jp = jensen_poly(window, d)
        lhs = determinant(hankel_matrix(jp)) * jp.leading ** (2 * (d - 1))
        assert lhs == HANKEL_FACTORS[d] * turan_expression(window, d)


@settings(max_examples=300)
@given(st.lists(st.integers(1, 200), min_size=5, max_size=5))
def test_turan_sign_matches_hyperbolicity(w):
    # for degree <= 3 the discriminant sign decides real-rootedness
    for d in (2, 3):
        jp = jensen_poly(w[:d + 1], d)
        t = turan_expression(w[:d + 1], d)
        if t > 0:
            assert is_hyperbolic(jp)
        elif t < 0:
            assert not is_hyperbolic(jp)


def test_jensen_and_hyperbolic():
    assert jensen_poly([1, 2, 1], 2) == Polynomial([1, 4, 1])
    assert is_hyperbolic(Polynomial([1, 4, 1]))
    assert not is_hyperbolic(Polynomial([1, 0, 1]))
    with pytest.raises(ValueError):
        jensen_poly([1], 2)


def test_generalized_laguerre_small():
    a = Fraction(3, 2)
    assert generalized_laguerre(0, a) == Polynomial([1])
    assert generalized_laguerre(1, a) == Polynomial([a + 1, -1])
    assert generalized_laguerre(2, a) == Polynomial([(a + 1) * (a + 2) / 2, -(a + 2),
                                                     Fraction(1, 2)])
    assert generalized_laguerre(3, a) == Polynomial([(a + 1) * (a + 2) * (a + 3) / 6,
                                                     -(a + 2) * (a + 3) / 2, (a + 3) / 2,
                                                     Fraction(-1, 6)])


@pytest.mark.parametrize("alpha", range(0, 8))
def test_generalized_laguerre_has_positive_real_roots(alpha):
    for m in range(1, 7):
        p = generalized_laguerre(m, alpha)
        assert sturm_real_root_count(p, count_multiplicity=True, lo=0) == m


def test_limit_target():
    # 2! L_2^(2)(x) = x^2 - 8x + 12
    assert limit_target(2, 4) == Polynomial([12, -8, 1])


def test_limit_profile_small_cases():
    A = Multiset([1, 1])
    lp = limit_profile(A, 1, 10 ** 4, [1])
    assert lp.deviations[0] < Fraction(1, 100)
    lp0 = limit_profile(Multiset.first(5), 0, 50, [Fraction(1, 2), 3])
    assert lp0.values == (1, 1) and lp0.deviations == (0, 0)
    with pytest.raises(ValueError):
        limit_profile(A, 2, 10, [1])
    with pytest.raises(ValueError):
        limit_profile(Multiset([2, 4]), 1, 1, [1])


def test_limit_approach_is_monotone_for_A5():
    A = Multiset.first(5)
    vals = series_values(A.parts, 10 ** 4 + 2)
    xs = [Fraction(1, 2), 1, 2]
    near = limit_profile(A, 2, 10 ** 4, xs, vals)
    far = limit_profile(A, 2, 10 ** 3, xs, vals)
    assert all(a < b for a, b in zip(near.deviations, far.deviations))
    assert near.deviations[1] < Fraction(1, 100)


def test_r_log_concave_examples():
    assert r_log_concave_check([i + 1 for i in range(20)], 1)
    assert not r_log_concave_check([2 ** i for i in range(20)], 1)
    vals = series_values((1, 2, 3, 4, 5), 600)
    assert r_log_concave_check(vals, 1, start=37)
    assert not r_log_concave_check(vals, 1, start=35)
    with pytest.raises(ValueError):
        r_log_concave_check([1, 2, 3], 2)
    with pytest.raises(ValueError):
        r_log_concave_check([1, 2, 3], 0)


def test_threshold_scan_basics():
    res = threshold_scan([7] * 50, "turan2")
    assert res.last_violation is None and res.holds_from == res.first == 1
    vals = series_values((1, 2, 3, 4, 5), 1001)
    res = threshold_scan(vals, "turan2", limit=1000)
    assert res.last_violation == 37 and res.holds_from == 38
    assert threshold_scan(vals, "turan2", limit=1000, jobs=3) == res
    with pytest.raises(ValueError):
        threshold_scan(vals, "turan2", limit=5000)
    with pytest.raises(ValueError):
        threshold_scan(vals, "laguerre")


def test_jensen_scan_agrees_with_turan2():
    vals = series_values((1, 2, 3, 4, 5), 300)
    j = threshold_scan(vals, "jensen", 2, limit=298)
    t = threshold_scan(vals, "turan2", limit=299)
    # Jensen at n is the Turán-2 sign at n + 1; equality counts as real-rooted
    assert {n + 1 for n in j.violations} == set(t.violations) - {0}


def test_monomial_raw_laguerre_expression():
    f = QuasiPolynomial.from_polynomial(Polynomial([0, 0, 1]))
    e = expression_quasipolynomial(f, "laguerre", 1, reduced=False)
    assert e.pieces[0] == Polynomial([2, 8, 4])


@pytest.mark.parametrize("l", range(1, 13))
def test_monomial_laguerre_leading_term(l):
    from math import comb, factorial
    f = QuasiPolynomial.from_polynomial(Polynomial([0] * l + [1]))
    for d in range(1, min(5, l // 2) + 1):
        prof = inequality_profile(f, "laguerre", d, reduced=False)
        assert prof.degrees == (2 * (l - d),)
        assert prof.leading == (factorial(2 * d) * comb(l, d),)


def test_profile_of_small_period_example():
    base = [0] * 11 + [1, 1, 1, 1, 1]
    special = list(base)
    special[12] = 2
    f = QuasiPolynomial(4, [Polynomial(special)] + [Polynomial(base)] * 3)
    prof = inequality_profile(f, "turan3")
    assert set(prof.degrees) == {54}
    assert prof.leading == (12411, 12659, 12539, 12771)
    special[12] = 500
    g = QuasiPolynomial(4, [Polynomial(special)] + [Polynomial(base)] * 3)
    assert inequality_profile(g, "turan3").leading[2] == -266341
    h = QuasiPolynomial(5, [Polynomial([0] * 6 + [r, 1, 1, 1, 1]) for r in range(5)])
    lag = inequality_profile(h, "laguerre", 2)
    assert (lag.min_leading, lag.min_degree) == (525, 16)


def test_profile_matches_expression_values():
    A = Multiset([1, 2, 3, 4])
    from qplab.quasipoly import partition_quasipolynomial
    f = partition_quasipolynomial(A)
    vals = series_values(A.parts, 200)
    for kind, d in (("turan2", None), ("turan3", None), ("turan4", None), ("laguerre", 1)):
        e = expression_quasipolynomial(f, kind, d)
        from qplab.inequalities import expression_value
        start = 1 if kind in ("turan2", "turan3") else 0
        assert all(e(n) == expression_value(vals, n, kind, d) for n in range(start, 180))
    prof = inequality_profile(f, "turan2", jobs=2)
    assert prof == inequality_profile(f, "turan2", jobs=1)


def test_profile_rejects_nonpositive_pieces():
    f = QuasiPolynomial(2, (Polynomial([1, 1]), Polynomial([1, -1])))
    with pytest.raises(ValueError):
        inequality_profile(f, "turan2")


def test_profile_reports_zero_classes():
    f = QuasiPolynomial.from_polynomial(Polynomial([3]))
    prof = inequality_profile(f, "turan2")
    assert prof.zero_classes == (0,)
    assert prof.to_json()["classes"][0]["leading"] is None
    assert prof.csv_rows()[1] == (0, "zero", 0, 1)


def test_form_for_errors():
    with pytest.raises(ValueError):
        form_for("turan", 5)
    with pytest.raises(ValueError):
        form_for("laguerre")
    with pytest.raises(ValueError):
        form_for("bogus")


@pytest.mark.parametrize("parts,kind,d,size", [
    ((1, 2, 3, 4, 5), "turan2", None, 3),
    ((1, 2, 3, 4, 5, 6), "turan3", None, 3),
    ((1, 2, 3, 4, 5), "laguerre", 1, 3),
    ((1, 2, 3, 4, 5, 6), "laguerre", 2, 2),
])
def test_gcd_criterion_implies_positive_profile(parts, kind, d, size, qp_cache):
    A = Multiset(parts)
    prof = inequality_profile(qp_cache(parts), kind, d)
    if gcd_condition(A, size):
        assert prof.all_positive
    else:
        # the criterion fails in these cases and so does positivity
        assert not prof.all_positive

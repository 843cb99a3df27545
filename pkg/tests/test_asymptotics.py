import random
import warnings
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from qplab.asymptotics import (HypothesisWarning, almkvist_hypothesis, almkvist_main_term,
                               guaranteed_rows, sigma, sigma_closed_forms)
from qplab.partitions import Multiset, gcd_condition


@given(st.lists(st.integers(1, 30), min_size=1, max_size=7))
def test_sigma_matches_closed_forms(parts):
    A = Multiset(parts)
    sig = sigma(A, 7)
    closed = sigma_closed_forms(A)
    for i in (0, 2, 4, 6):
        assert sig[i] == closed[i]
    assert sig[1] == sig[3] == sig[5] == sig[7] == 0


def test_sigma_single_part():
    # (t/2)/sinh(t/2) = 1 - t^2/24 + 7 t^4/5760 - ...
    sig = sigma(Multiset([1]), 4)
    assert list(sig.coefficients) == [1, 0, Fraction(-1, 24), 0, Fraction(7, 5760)]
    assert len(sig) == 5


def test_main_term_for_two_ones():
    # p_{1,1}(n) = n + 1 exactly
    main = almkvist_main_term(Multiset([1, 1]), 1)
    assert main.coeffs == (1, 1)


def test_hypothesis_warning_and_strict():
    A = Multiset([2, 4, 5])
    assert not almkvist_hypothesis(A, 2)
    with pytest.warns(HypothesisWarning):
        almkvist_main_term(A, 2)
    with pytest.raises(ValueError):
        almkvist_main_term(A, 2, strict=True)
    with pytest.raises(ValueError):
        almkvist_main_term(A, 0)


SUITE = [(1, 2, 3), (1, 2, 3, 4, 5), (2, 3, 5, 7), (6, 10, 15), (3, 4, 5), (1, 1, 1, 1, 300),
         (2, 2, 3, 3), (1, 4, 6, 9)]


@pytest.mark.parametrize("parts", SUITE)
def test_main_term_pins_constant_rows(parts, qp_cache):
    A = Multiset(parts)
    table = qp_cache(parts).coefficient_table()
    for j in range(1, A.k + 1):
        if not almkvist_hypothesis(A, j):
            continue
        main = almkvist_main_term(A, j)
        for deg in guaranteed_rows(A, j):
            assert table.is_constant(deg)
            assert table.constant_value(deg) == main[deg]


@pytest.mark.parametrize("parts", SUITE)
def test_prose_indexing_alias(parts, qp_cache):
    # if every (k-j)-subset is coprime, b_{k-1} .. b_{k-1-j} are class independent
    A = Multiset(parts)
    table = qp_cache(parts).coefficient_table()
    for j in range(0, A.k):
        if gcd_condition(A, A.k - j):
            main = almkvist_main_term(A, A.k - j)
            for deg in range(A.k - 1 - j, A.k):
                assert table.constant_value(deg) == main[deg]


def test_random_multisets_main_term(qp_cache):
    rng = random.Random(5)
    for _ in range(8):
        parts = tuple(rng.randint(1, 8) for _ in range(rng.randint(1, 4)))
        A = Multiset(parts)
        table = qp_cache(parts).coefficient_table()
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", HypothesisWarning)
            for j in range(1, A.k + 1):
                if almkvist_hypothesis(A, j):
                    main = almkvist_main_term(A, j)
                    assert all(table.constant_value(d) == main[d] for d in guaranteed_rows(A, j))

"""Almkvist's expansion of p_A(n): sigma coefficients and the main-term polynomial."""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

from .algebra import Polynomial
from .partitions import Multiset, gcd_condition


class HypothesisWarning(UserWarning):
    """The gcd hypothesis of the expansion fails; the error bound is void."""


def _inverse_series(c: list, order: int) -> list:
    """Reciprocal of a power series with c[0] = 1, truncated after t^order."""
    b = [Fraction(1)]
    for n in range(1, order + 1):
        b.append(-sum(c[i] * b[n - i] for i in range(1, min(n, len(c) - 1) + 1)))
    return b


def _half_sinhc_reciprocal(order: int) -> list:
    # sinh(u/2)/(u/2) = sum_m (u/2)^(2m) / (2m+1)!
    c = [Fraction(0)] * (order + 1)
    for m in range(order // 2 + 1):
        c[2 * m] = Fraction(1, 2 ** (2 * m) * math.factorial(2 * m + 1))
    return _inverse_series(c, order)


@dataclass(frozen=True)
class SigmaSeries:
    A: Multiset
    coefficients: tuple

    def __getitem__(self, i: int) -> Fraction:
        return self.coefficients[i]

    def __len__(self):
        return len(self.coefficients)


def _mul_truncated(a: list, b: list, order: int) -> list:
    out = [Fraction(0)] * (order + 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j in range(min(len(b), order + 1 - i)):
            out[i + j] += x * b[j]
    return out


def sigma(A: Multiset, upto: int) -> SigmaSeries:
    """Taylor coefficients sigma_0..sigma_upto of prod_a (a t/2) / sinh(a t/2)."""
    if upto < 0:
        raise ValueError("upto must be non-negative")
    h = _half_sinhc_reciprocal(upto)
    total = [Fraction(1)] + [Fraction(0)] * upto
    for a in A.parts:
        factor = [h[m] * a ** m for m in range(upto + 1)]
        total = _mul_truncated(total, factor, upto)
    return SigmaSeries(A, tuple(total))


def sigma_closed_forms(A: Multiset) -> dict:
    """sigma_2, sigma_4, sigma_6 written in the power sums s_2, s_4, s_6."""
    s2, s4, s6 = A.power_sum(2), A.power_sum(4), A.power_sum(6)
    return {
        0: Fraction(1),
        2: Fraction(-s2, 24),
        4: Fraction(5 * s2 ** 2 + 2 * s4, 5760),
        6: Fraction(-(35 * s2 ** 3 + 42 * s2 * s4 + 16 * s6), 2903040),
    }


def almkvist_hypothesis(A: Multiset, j: int) -> bool:
    """Every j-element multisubset of A has gcd 1."""
    return gcd_condition(A, j)


def almkvist_main_term(A: Multiset, j: int, strict: bool = False) -> Polynomial:
    """(1/prod a) * sum_{i<=k-j} sigma_i (n + s_1/2)^(k-1-i) / (k-1-i)!  in n.

    When the gcd hypothesis fails the polynomial is still returned, with a
    :class:`HypothesisWarning` (or ``ValueError`` if ``strict``).
    """
    k = A.k
    if not 1 <= j <= k:
        raise ValueError(f"j must lie in [1, {k}], got {j}")
    if not almkvist_hypothesis(A, j):
        msg = (f"some {j}-element multisubset of {A} has a common factor; "
               f"the O(n^{j - 2}) error bound does not apply")
        if strict:
            raise ValueError(msg)
        warnings.warn(msg, HypothesisWarning, stacklevel=2)
    sig = sigma(A, k - j)
    base = Polynomial([Fraction(A.power_sum(1), 2), 1])
    total = Polynomial()
    for i in range(k - j + 1):
        if sig[i]:
            total = total + base ** (k - 1 - i) * (sig[i] / math.factorial(k - 1 - i))
    return total * Fraction(1, A.product)


def guaranteed_rows(A: Multiset, j: int) -> range:
    """Degrees of n whose coefficients the expansion at level j pins down."""
    return range(j - 1, A.k)

"""Quasi-polynomials: one polynomial in n per residue class of n mod M."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .algebra import Polynomial, as_fraction
from .partitions import Multiset, series_values


class InsufficientData(ValueError):
    pass


class NotQuasiPolynomial(ValueError):
    """Samples do not fit a quasi-polynomial of the requested period and degree."""


def fmt_rational(x) -> str:
    x = as_fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class QuasiPolynomial:
    period: int
    pieces: tuple

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be >= 1")
        pieces = tuple(p if isinstance(p, Polynomial) else Polynomial(p) for p in self.pieces)
        if len(pieces) != self.period:
            raise ValueError(f"expected {self.period} pieces, got {len(pieces)}")
        object.__setattr__(self, "pieces", pieces)

    @classmethod
    def from_polynomial(cls, p: Polynomial, period: int = 1) -> "QuasiPolynomial":
        return cls(period, (p,) * period)

    @property
    def degree(self) -> int:
        return max(p.degree for p in self.pieces)

    def piece(self, n: int) -> Polynomial:
        return self.pieces[n % self.period]

    def __call__(self, n: int) -> Fraction:
        return self.piece(n)(Fraction(n))

    evaluate = __call__

    def lift(self, period: int) -> "QuasiPolynomial":
        if period % self.period:
            raise ValueError(f"{period} is not a multiple of {self.period}")
        return QuasiPolynomial(period, tuple(self.pieces[r % self.period] for r in range(period)))

    def _combine(self, other: "QuasiPolynomial", op) -> "QuasiPolynomial":
        if not isinstance(other, QuasiPolynomial):
            other = QuasiPolynomial.from_polynomial(
                other if isinstance(other, Polynomial) else Polynomial.constant(other))
        M = self.period * other.period // math.gcd(self.period, other.period)
        a, b = self.lift(M), other.lift(M)
        return QuasiPolynomial(M, tuple(op(p, q) for p, q in zip(a.pieces, b.pieces)))

    def __add__(self, other):
        return self._combine(other, lambda p, q: p + q)

    __radd__ = __add__

    def __mul__(self, other):
        return self._combine(other, lambda p, q: p * q)

    __rmul__ = __mul__

    def __neg__(self):
        return QuasiPolynomial(self.period, tuple(-p for p in self.pieces))

    def __sub__(self, other):
        return self + (-other)

    def shift(self, t: int) -> "QuasiPolynomial":
        """The quasi-polynomial n -> f(n + t).

        Any integer t works since f is defined on all of Z by its pieces.
        """
        M = self.period
        return QuasiPolynomial(M, tuple(self.pieces[(r + t) % M].shift(t) for r in range(M)))

    def coefficient_table(self) -> "CoefficientTable":
        deg = self.degree
        rows = {j: tuple(p[j] for p in self.pieces) for j in range(deg + 1)}
        return CoefficientTable(self.period, rows)

    def to_json(self) -> dict:
        return {"period": self.period,
                "pieces": [[fmt_rational(c) for c in p.coeffs] for p in self.pieces]}

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, data) -> "QuasiPolynomial":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(int(data["period"]), tuple(Polynomial(Fraction(c) for c in piece)
                                              for piece in data["pieces"]))


@dataclass(frozen=True)
class CoefficientTable:
    """rows[j][r] is the coefficient of n^j on the residue class r."""

    period: int
    rows: dict

    def is_constant(self, j: int) -> bool:
        row = self.rows.get(j)
        if row is None:
            return True
        return all(v == row[0] for v in row)

    def constant_value(self, j: int):
        return self.rows[j][0] if self.is_constant(j) else None

    def constant_top_rows(self) -> int:
        """How many rows, counting down from the top degree, are class-independent."""
        count = 0
        for j in sorted(self.rows, reverse=True):
            if not self.is_constant(j):
                break
            count += 1
        return count


def _fit_class(ys: Sequence, degree: int, r: int, M: int) -> Polynomial:
    # forward differences on the equally spaced samples n = r + M q
    diffs = [list(ys)]
    for _ in range(degree + 1):
        prev = diffs[-1]
        diffs.append([b - a for a, b in zip(prev, prev[1:])])
    if any(v != 0 for v in diffs[degree + 1]):
        bad = next(i for i, v in enumerate(diffs[degree + 1]) if v != 0)
        raise NotQuasiPolynomial(
            f"class {r} mod {M}: samples from n={r + M * bad} on do not lie on "
            f"a polynomial of degree {degree}")
    # Newton form sum_i diff_i(0) * C(q, i), expanded in q
    q_poly = Polynomial()
    basis = Polynomial.constant(1)
    for i in range(degree + 1):
        q_poly = q_poly + basis * diffs[i][0]
        basis = basis * Polynomial([Fraction(-i, i + 1), Fraction(1, i + 1)])
    # q = (n - r) / M
    return q_poly.scale_argument(Fraction(1, M)).shift(-r)


def recover(values: Sequence, period: int, degree: int) -> QuasiPolynomial:
    """Interpolate values[n] classwise and check every other sample exactly.

    Each class needs degree + 2 samples: degree + 1 to fit and at least one
    to validate.
    """
    if period < 1 or degree < 0:
        raise ValueError("period must be >= 1 and degree >= 0")
    need = period * (degree + 2)
    if len(values) < need:
        raise InsufficientData(
            f"need at least {need} samples for period {period}, degree {degree}; "
            f"got {len(values)}")
    vals = [as_fraction(v) if not isinstance(v, int) else v for v in values]
    pieces = tuple(_fit_class(vals[r::period], degree, r, period) for r in range(period))
    return QuasiPolynomial(period, pieces)


def partition_quasipolynomial(A: Multiset, extra: int = 1) -> QuasiPolynomial:
    """Recover p_A as a quasi-polynomial of period lcm(A) and degree k - 1."""
    M, deg = A.lcm, A.k - 1
    vals = series_values(A.parts, M * (deg + 1 + extra) - 1)
    return recover(vals, M, deg)

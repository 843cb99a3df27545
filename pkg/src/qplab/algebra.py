"""Exact univariate polynomials over the rationals and the small combinatorial
toolkit (binomials, Stirling numbers, Sturm chains, Newton sums, Hankel
determinants) that the rest of the package is built on.

Scalars are plain Python ``int`` and ``fractions.Fraction``; both are arbitrary
precision and ``Fraction`` is always kept in lowest terms, so equality of
rationals is structural.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence, Union

Rational = Union[int, Fraction]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_fraction(value) -> Fraction:
    """Coerce ints, Fractions and ``"p/q"`` strings to a Fraction.

    Floats are refused: they would silently smuggle rounding into exact code.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact rational")


class Polynomial:
    """Dense polynomial with Fraction coefficients, lowest power first.

    The zero polynomial has no coefficients and degree -1. Instances are
    immutable and hashable.
    """

    __slots__ = ("_c",)

    def __init__(self, coeffs: Iterable = ()):
        c = [as_fraction(a) for a in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self._c = tuple(c)

    @classmethod
    def _raw(cls, coeffs: tuple) -> "Polynomial":
        # coeffs already Fractions and trimmed
        p = object.__new__(cls)
        p._c = coeffs
        return p

    @classmethod
    def constant(cls, value) -> "Polynomial":
        return cls([value])

    @classmethod
    def x(cls) -> "Polynomial":
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots: Iterable, leading=1) -> "Polynomial":
        p = cls.constant(leading)
        for r in roots:
            p = p * cls([-as_fraction(r), 1])
        return p

    @property
    def coeffs(self) -> tuple:
        return self._c

    @property
    def degree(self) -> int:
        return len(self._c) - 1

    @property
    def leading(self) -> Fraction:
        return self._c[-1] if self._c else _ZERO

    def is_zero(self) -> bool:
        return not self._c

    def __getitem__(self, k: int) -> Fraction:
        return self._c[k] if 0 <= k < len(self._c) else _ZERO

    def __len__(self) -> int:
        return len(self._c)

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self._c == other._c
        if isinstance(other, (int, Fraction)):
            return self._c == Polynomial.constant(other)._c
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._c)

    def __repr__(self) -> str:
        return f"Polynomial({[str(a) for a in self._c]})"

    def __str__(self) -> str:
        if not self._c:
            return "0"
        terms = []
        for k in range(len(self._c) - 1, -1, -1):
            a = self._c[k]
            if a == 0:
                continue
            sign = "-" if a < 0 else "+"
            mag = -a if a < 0 else a
            if k == 0:
                body = str(mag)
            else:
                var = "x" if k == 1 else f"x^{k}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append((sign, body))
        first_sign, first = terms[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            return other
        return Polynomial.constant(other)

    def __add__(self, other) -> "Polynomial":
        o = self._coerce(other)
        a, b = self._c, o._c
        if len(a) < len(b):
            a, b = b, a
        return Polynomial(tuple(x + y for x, y in zip(a, b)) + a[len(b):])

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial._raw(tuple(-a for a in self._c))

    def __sub__(self, other) -> "Polynomial":
        return self + (-self._coerce(other))

    def __rsub__(self, other) -> "Polynomial":
        return self._coerce(other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            s = as_fraction(other)
            if s == 0:
                return Polynomial()
            return Polynomial._raw(tuple(a * s for a in self._c))
        a, b = self._c, other._c
        if not a or not b:
            return Polynomial()
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x == 0:
                continue
            for j, y in enumerate(b):
                out[i + j] += x * y
        return Polynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> "Polynomial":
        if e < 0:
            raise ValueError("negative exponent")
        result = Polynomial.constant(1)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for a in reversed(self._c):
            acc = acc * x + a
        return acc

    def derivative(self) -> "Polynomial":
        return Polynomial(k * self._c[k] for k in range(1, len(self._c)))

    def shift(self, t) -> "Polynomial":
        """Return p(x + t) by repeated synthetic division (Taylor shift)."""
        t = as_fraction(t)
        c = list(self._c)
        n = len(c)
        if t == 0 or n < 2:
            return self
        for i in range(n - 1):
            for k in range(n - 2, i - 1, -1):
                c[k] += t * c[k + 1]
        return Polynomial(c)

    def compose(self, q: "Polynomial") -> "Polynomial":
        acc = Polynomial()
        for a in reversed(self._c):
            acc = acc * q + a
        return acc

    def scale_argument(self, s) -> "Polynomial":
        """Return p(s*x)."""
        s = as_fraction(s)
        out, pw = [], _ONE
        for a in self._c:
            out.append(a * pw)
            pw *= s
        return Polynomial(out)

    def monic(self) -> "Polynomial":
        if not self._c:
            return self
        lc = self._c[-1]
        return Polynomial._raw(tuple(a / lc for a in self._c))

    def __divmod__(self, other: "Polynomial"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        r = list(self._c)
        db = other.degree
        lb = other.leading
        if len(r) - 1 < db:
            return Polynomial(), self
        q = [_ZERO] * (len(r) - db)
        for k in range(len(r) - 1 - db, -1, -1):
            coef = r[k + db] / lb
            q[k] = coef
            if coef:
                for j, b in enumerate(other._c):
                    r[k + j] -= coef * b
        return Polynomial(q), Polynomial(r[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]


def poly_gcd(p: Polynomial, q: Polynomial) -> Polynomial:
    """Monic gcd (zero if both inputs are zero)."""
    while not q.is_zero():
        p, q = q, p % q
    return p.monic()


# ---------------------------------------------------------------------------
# combinatorics

def binomial(n: int, r: int) -> int:
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if r < 0 or r > n:
        return 0
    return math.comb(n, r)


def generalized_binomial(top, r: int) -> Fraction:
    """C(top, r) for rational ``top``: falling factorial over r!."""
    if r < 0:
        return _ZERO
    top = as_fraction(top)
    num = _ONE
    for i in range(r):
        num *= top - i
    return num / math.factorial(r)


@lru_cache(maxsize=None)
def stirling2(v: int, u: int) -> int:
    """Stirling number of the second kind via S(v,u) = u S(v-1,u) + S(v-1,u-1)."""
    if v < 0 or u < 0:
        raise ValueError("Stirling numbers need non-negative arguments")
    if v == u:
        return 1
    if u == 0 or u > v:
        return 0
    return u * stirling2(v - 1, u) + stirling2(v - 1, u - 1)


# ---------------------------------------------------------------------------
# Sturm chains

def sturm_chain(p: Polynomial) -> list:
    chain = [p, p.derivative()]
    while not chain[-1].is_zero():
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        chain.append(-r)
    if chain[-1].is_zero():
        chain.pop()
    return chain


def _sign_changes(signs) -> int:
    nz = [s for s in signs if s != 0]
    return sum(1 for a, b in zip(nz, nz[1:]) if a != b)


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _signs_at(chain, point) -> list:
    if point == math.inf:
        return [_sign(q.leading) for q in chain]
    if point == -math.inf:
        return [_sign(q.leading) * (-1) ** q.degree for q in chain]
    return [_sign(q(point)) for q in chain]


def _distinct_real_roots(p: Polynomial, lo, hi) -> int:
    if p.degree < 1:
        return 0
    chain = sturm_chain(p)
    return _sign_changes(_signs_at(chain, lo)) - _sign_changes(_signs_at(chain, hi))


def sturm_real_root_count(p: Polynomial, count_multiplicity: bool = False,
                          lo=-math.inf, hi=math.inf) -> int:
    """Number of real roots of ``p`` in the half-open interval (lo, hi].

    With ``count_multiplicity`` the polynomial is peeled as p, gcd(p, p'),
    gcd of that with its derivative, ...; a root of multiplicity m is a
    distinct root of the first m layers, so summing distinct counts over the
    layers counts multiplicities.
    """
    if p.is_zero():
        raise ValueError("the zero polynomial has no well-defined root count")
    if not count_multiplicity:
        g = poly_gcd(p, p.derivative())
        return _distinct_real_roots(p // g, lo, hi)
    total = 0
    layer = p
    while layer.degree >= 1:
        g = poly_gcd(layer, layer.derivative())
        total += _distinct_real_roots(layer // g, lo, hi)
        layer = g
    return total


# ---------------------------------------------------------------------------
# Newton sums and the Hankel matrix of Hermite's criterion

def newton_sums(p: Polynomial, upto: int) -> list:
    """Power sums P_0..P_upto of the complex roots of ``p``, from coefficients."""
    s = p.degree
    if s < 1:
        raise ValueError("Newton sums need a polynomial of degree >= 1")
    lc = p.leading
    # a[i] is the coefficient of x^(s-i) in the monic polynomial
    a = [p[s - i] / lc for i in range(s + 1)]
    sums = [Fraction(s)]
    for m in range(1, upto + 1):
        if m <= s:
            acc = m * a[m] + sum(a[i] * sums[m - i] for i in range(1, m))
        else:
            acc = sum(a[i] * sums[m - i] for i in range(1, s + 1))
        sums.append(-acc)
    return sums


def hankel_matrix(p: Polynomial) -> list:
    s = p.degree
    P = newton_sums(p, 2 * s - 2)
    return [[P[i + j] for j in range(s)] for i in range(s)]


def determinant(m: Sequence[Sequence]) -> Fraction:
    """Exact determinant by Gaussian elimination over the rationals."""
    a = [[as_fraction(x) for x in row] for row in m]
    n = len(a)
    det = _ONE
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col] != 0), None)
        if pivot is None:
            return _ZERO
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            det = -det
        pv = a[col][col]
        det *= pv
        for r in range(col + 1, n):
            f = a[r][col] / pv
            if f:
                row, prow = a[r], a[col]
                for c in range(col, n):
                    row[c] -= f * prow[c]
    return det


def hankel_minor_dets(p: Polynomial) -> list:
    """Determinants of the leading principal 1x1 .. sxs minors of H(p)."""
    h = hankel_matrix(p)
    return [determinant([row[:k] for row in h[:k]]) for k in range(1, len(h) + 1)]


def is_positive_semidefinite(m: Sequence[Sequence]) -> bool:
    """All principal minors nonnegative; exponential, for small matrices."""
    n = len(m)
    for size in range(1, n + 1):
        for idx in combinations(range(n), size):
            if determinant([[m[i][j] for j in idx] for i in idx]) < 0:
                return False
    return True


def hankel_is_hyperbolic(p: Polynomial) -> bool:
    """Hermite's criterion: p is real-rooted iff its Hankel matrix is PSD."""
    if p.degree < 1:
        return True
    return is_positive_semidefinite(hankel_matrix(p))

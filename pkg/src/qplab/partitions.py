"""Restricted partition functions p_A(n) for a finite multiset A of parts."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import reduce
from itertools import combinations
from typing import Iterable, Sequence


def _as_int(item) -> int:
    if isinstance(item, bool) or (isinstance(item, float) and not item.is_integer()):
        raise ValueError(f"{item!r} is not an integer")
    return int(item)


@dataclass(frozen=True)
class Multiset:
    """Finite multiset of positive integers, stored sorted.

    Repeated values are distinct part sources: {1, 1} has two kinds of 1.
    """

    parts: tuple

    def __init__(self, parts: Iterable[int]):
        parts = tuple(sorted(int(a) for a in parts))
        if not parts:
            raise ValueError("a multiset of parts must be nonempty")
        if parts[0] < 1:
            raise ValueError(f"parts must be positive integers, got {parts[0]}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def parse(cls, text: str) -> "Multiset":
        """Accept ``"1,1,1,1,300"`` or a JSON array ``"[1, 2, 3]"``."""
        text = text.strip()
        if text.startswith("["):
            items = json.loads(text)
        else:
            items = [t for t in text.replace(" ", "").split(",") if t]
        try:
            return cls(_as_int(t) for t in items)
        except (TypeError, ValueError) as exc:
            raise ValueError(f"cannot parse multiset {text!r}: {exc}") from None

    @classmethod
    def first(cls, m: int) -> "Multiset":
        """A_m = {1, 2, ..., m}."""
        return cls(range(1, m + 1))

    @property
    def k(self) -> int:
        return len(self.parts)

    @property
    def lcm(self) -> int:
        return reduce(lambda a, b: a * b // math.gcd(a, b), set(self.parts), 1)

    @property
    def gcd(self) -> int:
        return reduce(math.gcd, self.parts)

    @property
    def product(self) -> int:
        return math.prod(self.parts)

    def power_sum(self, m: int) -> int:
        return sum(a ** m for a in self.parts)

    def canonical(self) -> str:
        return ",".join(map(str, self.parts))

    def __str__(self) -> str:
        return "{" + self.canonical() + "}"

    def __len__(self) -> int:
        return len(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def union(self, other: Iterable[int]) -> "Multiset":
        return Multiset(self.parts + tuple(other))


@dataclass(frozen=True)
class PartitionSeries:
    A: Multiset
    values: tuple = field(repr=False)

    @property
    def N(self) -> int:
        return len(self.values) - 1

    def __getitem__(self, n: int) -> int:
        if n < 0:
            return 0
        return self.values[n]

    def __len__(self) -> int:
        return len(self.values)


def series_values(parts: Sequence[int], N: int) -> list:
    """Coefficients of x^0..x^N in prod 1/(1 - x^a), one factor per element."""
    if N < 0:
        raise ValueError("N must be non-negative")
    vals = [0] * (N + 1)
    vals[0] = 1
    for a in parts:
        # multiplying by 1/(1 - x^a) is a running sum with stride a
        for n in range(a, N + 1):
            vals[n] += vals[n - a]
    return vals


def series(A: Multiset, N: int) -> PartitionSeries:
    return PartitionSeries(A, tuple(series_values(A.parts, N)))


def brute_force_count(A: Multiset, n: int) -> int:
    """Count exponent vectors (e_1..e_k) >= 0 with sum e_i a_i = n by recursion.

    Independent of :func:`series`; exponential in k, meant for small n.
    """
    if n < 0:
        return 0
    parts = A.parts

    def count(i: int, rest: int) -> int:
        if i == len(parts) - 1:
            return 1 if rest % parts[i] == 0 else 0
        return sum(count(i + 1, rest - e * parts[i]) for e in range(rest // parts[i] + 1))

    return count(0, n)


def denominator_coefficients(A: Multiset) -> dict:
    """Sparse coefficients of prod (1 - x^a); annihilates the series of p_A."""
    poly = {0: 1}
    for a in A.parts:
        nxt = dict(poly)
        for e, c in poly.items():
            nxt[e + a] = nxt.get(e + a, 0) - c
        poly = {e: c for e, c in nxt.items() if c}
    return poly


def check_series(A: Multiset, values: Sequence[int]) -> bool:
    """True iff ``values`` are exactly p_A(0..len-1).

    Uses prod(1 - x^a) * sum p_A(n) x^n = 1, which costs O(N * #terms) and
    shares no code with the running-sum construction.
    """
    if not values or values[0] != 1:
        return False
    den = sorted(denominator_coefficients(A).items())
    for n in range(1, len(values)):
        acc = 0
        for e, c in den:
            if e > n:
                break
            acc += c * values[n - e]
        if acc != 0:
            return False
    return True


def _prime_factors(n: int) -> set:
    out, d = set(), 2
    while d * d <= n:
        while n % d == 0:
            out.add(d)
            n //= d
        d += 1
    if n > 1:
        out.add(n)
    return out


def gcd_condition(A: Multiset, size: int) -> bool:
    """True iff every ``size``-element multisubset of A has gcd 1.

    Some multisubset of that size has a common factor exactly when a single
    prime divides at least ``size`` elements of A.
    """
    if not 1 <= size <= A.k:
        raise ValueError(f"size must lie in [1, {A.k}], got {size}")
    primes = set().union(*(_prime_factors(a) for a in set(A.parts)))
    return all(sum(1 for a in A.parts if a % p == 0) < size for p in primes)


def gcd_condition_enumerated(A: Multiset, size: int) -> bool:
    """Same predicate as :func:`gcd_condition` by listing every multisubset."""
    if not 1 <= size <= A.k:
        raise ValueError(f"size must lie in [1, {A.k}], got {size}")
    return all(reduce(math.gcd, B) == 1 for B in combinations(A.parts, size))

"""Turán, Laguerre and log-concavity expressions over sequences and quasi-polynomials.

An expression is stored as a *form*: a mapping from a sorted tuple of offsets
(i_1, ..., i_h) to an integer coefficient, standing for the monomial
w_{n+i_1} * ... * w_{n+i_h}. The same form is evaluated numerically on a
window of sequence values and symbolically on the pieces of a quasi-polynomial.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

from .algebra import (Polynomial, as_fraction, binomial, generalized_binomial,
                      sturm_real_root_count)
from .partitions import Multiset, series_values
from .quasipoly import QuasiPolynomial, fmt_rational

# ---------------------------------------------------------------------------
# forms


def _form_mul(f: dict, g: dict) -> dict:
    out = {}
    for m1, c1 in f.items():
        for m2, c2 in g.items():
            key = tuple(sorted(m1 + m2))
            out[key] = out.get(key, 0) + c1 * c2
    return {k: c for k, c in out.items() if c}


def _form_add(*forms) -> dict:
    out = {}
    for f in forms:
        for k, c in f.items():
            out[k] = out.get(k, 0) + c
    return {k: c for k, c in out.items() if c}


def _form_scale(f: dict, s: int) -> dict:
    return {k: c * s for k, c in f.items()}


def _w(*offsets, coef=1) -> dict:
    return {tuple(sorted(offsets)): coef}


def _turan2_form() -> dict:
    return _form_add(_w(0, 0), _w(-1, 1, coef=-1))


def _turan3_form() -> dict:
    left = _form_mul(_form_add(_w(0, 0), _w(-1, 1, coef=-1)),
                     _form_add(_w(1, 1), _w(0, 2, coef=-1)))
    cross = _form_add(_w(0, 1), _w(-1, 2, coef=-1))
    return _form_add(_form_scale(left, 4), _form_scale(_form_mul(cross, cross), -1))


_TURAN4_TERMS = [
    (54, (0, 1, 1, 2, 4, 4)), (1, (0, 0, 0, 4, 4, 4)), (108, (1, 1, 1, 2, 3, 4)),
    (36, (1, 1, 2, 2, 3, 3)), (-12, (0, 0, 1, 3, 4, 4)), (-54, (1, 1, 2, 2, 2, 4)),
    (-6, (0, 1, 1, 3, 3, 4)), (-54, (0, 2, 2, 2, 3, 3)), (-27, (1, 1, 1, 1, 4, 4)),
    (-180, (0, 1, 2, 2, 3, 4)), (-27, (0, 0, 3, 3, 3, 3)), (108, (0, 1, 2, 3, 3, 3)),
    (-64, (1, 1, 1, 3, 3, 3)), (-18, (0, 0, 2, 2, 4, 4)), (81, (0, 2, 2, 2, 2, 4)),
    (54, (0, 0, 2, 3, 3, 4)),
]


def _turan4_form() -> dict:
    return {m: c for c, m in _TURAN4_TERMS}


def laguerre_form(d: int, reduced: bool = False) -> dict:
    """sum_j (-1)^(j+d) C(2d, j) w_{n+j} w_{n+2d-j}; halved when ``reduced`` and d >= 1."""
    if d < 0:
        raise ValueError("Laguerre order must be non-negative")
    form = _form_add(*(_w(j, 2 * d - j, coef=(-1) ** (j + d) * binomial(2 * d, j))
                       for j in range(2 * d + 1)))
    if reduced and d >= 1:
        form = {k: c // 2 for k, c in form.items()}
    return form


TURAN_FORMS = {2: _turan2_form(), 3: _turan3_form(), 4: _turan4_form()}

# det(H) * lc^(2(d-1)) equals this multiple of the Turán form of order d
# (the discriminant of the Jensen polynomial)
HANKEL_FACTORS = {2: 4, 3: 27, 4: 256}


def form_for(kind: str, d: Optional[int] = None, reduced: bool = True) -> dict:
    if kind in ("turan2", "turan3", "turan4"):
        return TURAN_FORMS[int(kind[-1])]
    if kind == "turan":
        if d not in TURAN_FORMS:
            raise ValueError(f"closed-form Turán expressions exist for d in 2..4, not {d}")
        return TURAN_FORMS[d]
    if kind == "laguerre":
        if d is None:
            raise ValueError("laguerre needs an order d")
        return laguerre_form(d, reduced=reduced)
    raise ValueError(f"unknown expression kind {kind!r}")


def form_span(form: dict) -> tuple:
    offsets = [i for m in form for i in m]
    return min(offsets), max(offsets)


def form_degree(form: dict) -> int:
    degrees = {len(m) for m in form}
    if len(degrees) != 1:
        raise ValueError("form is not homogeneous")
    return degrees.pop()


def evaluate_form(form: dict, window: Sequence) -> Fraction:
    """Evaluate with window[0] standing for the smallest offset in the form."""
    lo, hi = form_span(form)
    if len(window) < hi - lo + 1:
        raise ValueError(f"window of length {len(window)} is shorter than the "
                         f"span {hi - lo + 1} of the expression")
    total = 0
    for m, c in form.items():
        t = c
        for i in m:
            t *= window[i - lo]
        total += t
    return total


# ---------------------------------------------------------------------------
# sequence-level expressions


def jensen_poly(window: Sequence, d: int) -> Polynomial:
    """J^{d,n}(x) = sum_i C(d, i) w_{n+i} x^i with window[0] = w_n."""
    if len(window) < d + 1:
        raise ValueError(f"Jensen polynomial of degree {d} needs {d + 1} values")
    return Polynomial(binomial(d, i) * as_fraction(window[i]) for i in range(d + 1))


def is_hyperbolic(p: Polynomial) -> bool:
    if p.is_zero():
        raise ValueError("the zero polynomial has no well-defined roots")
    if p.degree < 1:
        return True
    return sturm_real_root_count(p, count_multiplicity=True) == p.degree


def turan_expression(window: Sequence, d: int):
    """Closed-form order-d Turán expression; >= 0 means the inequality holds.

    For d = 2, 3 the window starts at w_{n-1}; for d = 4 it starts at w_n.
    """
    if d not in TURAN_FORMS:
        raise ValueError(f"closed-form Turán expressions exist for d in 2..4, not {d}")
    return evaluate_form(TURAN_FORMS[d], window)


def laguerre_expression(window: Sequence, d: int, reduced: bool = False):
    """Raw order-d Laguerre sum on a window starting at w_n (length 2d + 1).

    ``reduced`` halves it for d >= 1, which gives the printed short forms
    3w2^2 - 4w1w3 + w0w4 (d=2) and so on.
    """
    return evaluate_form(laguerre_form(d, reduced=reduced), window)


def generalized_laguerre(m: int, alpha) -> Polynomial:
    """L_m^(alpha)(x) = sum_j C(m + alpha, m - j) (-x)^j / j!."""
    if m < 0:
        raise ValueError("degree must be non-negative")
    alpha = as_fraction(alpha)
    return Polynomial(generalized_binomial(m + alpha, m - j) * (-1) ** j / math.factorial(j)
                      for j in range(m + 1))


def _log_concavity_step(values: Sequence) -> list:
    return [values[i + 1] ** 2 - values[i] * values[i + 2] for i in range(len(values) - 2)]


def r_log_concave_check(values: Sequence, r: int, start: int = 0) -> bool:
    """All entries with index >= start of L w, L^2 w, ..., L^r w are positive,
    where (L w)_i = w_{i+1}^2 - w_i w_{i+2}."""
    if r < 1:
        raise ValueError("r must be >= 1")
    if len(values) - 2 * r <= start:
        raise ValueError(f"need more than {start + 2 * r} values to apply the operator {r} times")
    seq = list(values)
    for _ in range(r):
        seq = _log_concavity_step(seq)
        if any(v <= 0 for v in seq[start:]):
            return False
    return True


# ---------------------------------------------------------------------------
# limit shape of renormalised Jensen polynomials


@dataclass(frozen=True)
class LimitProfile:
    A: Multiset
    s: int
    n: int
    xs: tuple
    values: tuple
    targets: tuple
    target: Polynomial

    @property
    def deviations(self) -> tuple:
        return tuple(abs(v - t) for v, t in zip(self.values, self.targets))


def limit_target(s: int, l: int) -> Polynomial:
    """(-1)^s s! L_s^(l-s)(x)."""
    return generalized_laguerre(s, l - s) * ((-1) ** s * math.factorial(s))


def limit_profile(A: Multiset, s: int, n: int, xs: Sequence, values: Sequence = None) -> LimitProfile:
    """Evaluate n^s / p_A(n) * J^{s,n}(x/n - 1) exactly at each x.

    ``values`` may supply p_A(0..n+s) to avoid recomputing the series.
    """
    l = A.k - 1
    if not 0 <= s <= l:
        raise ValueError(f"s must lie in [0, {l}]")
    if values is None:
        values = series_values(A.parts, n + s)
    window = [values[n + i] for i in range(s + 1)]
    if any(v <= 0 for v in window):
        raise ValueError(f"p_A vanishes somewhere in [{n}, {n + s}]")
    jp = jensen_poly(window, s)
    target = limit_target(s, l)
    xs = tuple(as_fraction(x) for x in xs)
    vals = tuple(Fraction(n) ** s / window[0] * jp(x / n - 1) for x in xs)
    return LimitProfile(A, s, n, xs, vals, tuple(target(x) for x in xs), target)


# ---------------------------------------------------------------------------
# residue-class profiles of expressions built from a quasi-polynomial


def _int_mul(a: list, b: list) -> list:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _class_expression(pieces: dict, form: dict, h: int):
    """Expand ``form`` with w_{n+i} -> pieces[i] (Polynomials in n).

    Coefficients are cleared to integers by a common denominator D, so the
    homogeneous degree-h form comes back scaled by D^h.
    """
    D = 1
    for p in pieces.values():
        for c in p.coeffs:
            D = D * c.denominator // math.gcd(D, c.denominator)
    ints = {i: [int(c * D) for c in p.coeffs] or [0] for i, p in pieces.items()}
    total = []
    powers = {}
    for m, coef in form.items():
        key_counts = {}
        for i in m:
            key_counts[i] = key_counts.get(i, 0) + 1
        prod = [coef]
        for i, e in key_counts.items():
            pw = powers.get((i, e))
            if pw is None:
                pw = ints[i]
                for _ in range(e - 1):
                    pw = _int_mul(pw, ints[i])
                powers[(i, e)] = pw
            prod = _int_mul(prod, pw)
        if len(prod) > len(total):
            total.extend([0] * (len(prod) - len(total)))
        for k, v in enumerate(prod):
            total[k] += v
    while total and total[-1] == 0:
        total.pop()
    return total, D ** h


def _profile_chunk(args):
    f, form, h, classes, full = args
    lo, hi = form_span(form)
    out = []
    for r in classes:
        pieces = {i: f.pieces[(r + i) % f.period].shift(i) for i in range(lo, hi + 1)}
        ints, scale = _class_expression(pieces, form, h)
        if full:
            out.append(Polynomial(Fraction(c, scale) for c in ints))
        elif ints:
            out.append((len(ints) - 1, Fraction(ints[-1], scale)))
        else:
            out.append((None, None))
    return out


def _chunks(n: int, jobs: int) -> list:
    size = max(1, -(-n // (jobs * 4)))
    return [range(i, min(n, i + size)) for i in range(0, n, size)]


def _run_chunks(fn, tasks: list, jobs: int) -> list:
    if jobs <= 1 or len(tasks) <= 1:
        results = [fn(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(fn, tasks))
    return [x for chunk in results for x in chunk]


def _asymptotic_key(degree, coef):
    # orders leading terms c*n^deg by their behaviour as n -> infinity
    if coef is None or coef == 0:
        return (0, 0, Fraction(0))
    sign = 1 if coef > 0 else -1
    return (sign, sign * degree, coef)


@dataclass(frozen=True)
class InequalityProfile:
    kind: str
    order: Optional[int]
    period: int
    degrees: tuple
    leading: tuple
    reduced: bool = True
    min_key: tuple = field(init=False, repr=False)

    def __post_init__(self):
        keys = [_asymptotic_key(d, c) for d, c in zip(self.degrees, self.leading)]
        object.__setattr__(self, "min_key", min(keys))

    @property
    def zero_classes(self) -> tuple:
        return tuple(r for r, d in enumerate(self.degrees) if d is None)

    @property
    def argmin_classes(self) -> tuple:
        return tuple(r for r, (d, c) in enumerate(zip(self.degrees, self.leading))
                     if _asymptotic_key(d, c) == self.min_key)

    @property
    def min_leading(self):
        return self.leading[self.argmin_classes[0]]

    @property
    def min_degree(self):
        return self.degrees[self.argmin_classes[0]]

    @property
    def all_positive(self) -> bool:
        return all(c is not None and c > 0 for c in self.leading)

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "order": self.order,
            "reduced": self.reduced,
            "period": self.period,
            "classes": [{"class": r, "degree": d,
                         "leading": None if c is None else fmt_rational(c)}
                        for r, (d, c) in enumerate(zip(self.degrees, self.leading))],
            "min_leading": None if self.min_leading is None else fmt_rational(self.min_leading),
            "min_degree": self.min_degree,
            "argmin_classes": list(self.argmin_classes),
        }

    def csv_rows(self) -> list:
        rows = [("class", "degree", "leading_num", "leading_den")]
        for r, (d, c) in enumerate(zip(self.degrees, self.leading)):
            if c is None:
                rows.append((r, "zero", 0, 1))
            else:
                rows.append((r, d, c.numerator, c.denominator))
        return rows


def _check_positive(f: QuasiPolynomial) -> None:
    for r, p in enumerate(f.pieces):
        if p.is_zero() or p.leading <= 0:
            raise ValueError(f"quasi-polynomial piece for class {r} does not have "
                             f"a positive leading coefficient")


def inequality_profile(f: QuasiPolynomial, kind: str, d: Optional[int] = None,
                       reduced: bool = True, jobs: int = 1) -> InequalityProfile:
    """Per-class degree and leading coefficient of an expression in f(n + i).

    The class r refers to n mod period, with the same indexing convention as
    the sequence-level expressions (Turán 2/3 use f(n - 1), ..., Laguerre
    starts at f(n)). Everything is expanded exactly; nothing is sampled.
    """
    _check_positive(f)
    form = form_for(kind, d, reduced)
    h = form_degree(form)
    tasks = [(f, form, h, chunk, False) for chunk in _chunks(f.period, max(1, jobs))]
    results = _run_chunks(_profile_chunk, tasks, jobs)
    order = d if kind in ("laguerre", "turan") else int(kind[-1])
    name = "laguerre" if kind == "laguerre" else f"turan{order}"
    return InequalityProfile(name, order, f.period,
                             tuple(x[0] for x in results), tuple(x[1] for x in results),
                             reduced if kind == "laguerre" else True)


def expression_quasipolynomial(f: QuasiPolynomial, kind: str, d: Optional[int] = None,
                               reduced: bool = True, jobs: int = 1) -> QuasiPolynomial:
    """The full expression as a quasi-polynomial in n (same period as f)."""
    form = form_for(kind, d, reduced)
    h = form_degree(form)
    tasks = [(f, form, h, chunk, True) for chunk in _chunks(f.period, max(1, jobs))]
    return QuasiPolynomial(f.period, tuple(_run_chunks(_profile_chunk, tasks, jobs)))


# ---------------------------------------------------------------------------
# threshold scans


SCAN_KINDS = ("turan2", "turan3", "turan4", "laguerre", "jensen", "rlogconcave")


@dataclass(frozen=True)
class ScanResult:
    """Empirical: violations are only searched for up to ``limit``."""

    kind: str
    order: Optional[int]
    first: int
    limit: int
    last_violation: Optional[int]
    violations: tuple

    @property
    def holds_from(self) -> int:
        return self.first if self.last_violation is None else self.last_violation + 1


def _scan_span(kind: str, d: Optional[int]) -> tuple:
    """Offsets (lo, hi) of sequence entries that the check at n reads."""
    if kind in ("turan2", "turan3", "turan4", "laguerre"):
        return form_span(form_for(kind, d))
    if kind == "jensen":
        return 0, d
    if kind == "rlogconcave":
        return 0, 2 * d
    raise ValueError(f"unknown scan kind {kind!r}")


def expression_value(values: Sequence, n: int, kind: str, d: Optional[int] = None,
                     reduced: bool = True):
    """Value of the expression at n; for jensen/rlogconcave a 1/0 indicator."""
    lo, hi = _scan_span(kind, d)
    window = values[n + lo:n + hi + 1]
    if kind == "jensen":
        return int(is_hyperbolic(jensen_poly(window, d)))
    if kind == "rlogconcave":
        seq = list(window)
        for _ in range(d):
            seq = _log_concavity_step(seq)
            if seq[0] <= 0:
                return 0
        return 1
    return evaluate_form(form_for(kind, d, reduced), window)


def _holds(value, kind: str) -> bool:
    if kind in ("jensen", "rlogconcave"):
        return value == 1
    return value >= 0


def _scan_chunk(args):
    # values is a slice starting at sequence index base
    values, base, kind, d, ns = args
    out = []
    for n in ns:
        v = expression_value(values, n - base, kind, d)
        if not _holds(v, kind):
            out.append(n)
    return out


def first_admissible(kind: str, d: Optional[int] = None) -> int:
    lo, _ = _scan_span(kind, d)
    return max(0, -lo)


def threshold_scan(values: Sequence, kind: str, d: Optional[int] = None,
                   limit: Optional[int] = None, jobs: int = 1) -> ScanResult:
    """Check the inequality exactly at every admissible n <= limit."""
    if kind in ("jensen", "rlogconcave", "laguerre") and d is None:
        raise ValueError(f"{kind} needs an order d")
    if kind in ("jensen", "rlogconcave") and d < 1:
        raise ValueError(f"{kind} needs d >= 1")
    lo, hi = _scan_span(kind, d)
    first = first_admissible(kind, d)
    top = len(values) - 1 - hi
    if limit is None:
        limit = top
    if limit > top:
        raise ValueError(f"values cover n <= {top} for this expression, not {limit}")
    ns = range(first, limit + 1)
    jobs = max(1, jobs)
    size = max(1, -(-len(ns) // (jobs * 4)))
    tasks = []
    for i in range(0, len(ns), size):
        chunk = ns[i:i + size]
        base = chunk.start + lo
        tasks.append((values[base:chunk.stop + hi], base, kind, d, chunk))
    bad = tuple(_run_chunks(_scan_chunk, tasks, jobs))
    order = int(kind[-1]) if kind.startswith("turan") else d
    return ScanResult(kind, order, first, limit, bad[-1] if bad else None, bad)

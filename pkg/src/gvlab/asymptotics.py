"""Rate-distance curves: q-ary entropy, the GV rate, Hamming-ball exponents,
the finite-n character-sum bound and its gap to the GV curve.

At finite n a target distance d is compared at relative distance
delta = (d - 1) / n, the largest weight the character sum ranges over.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import mpmath

from .code import ball_volume, enumerate_low_weight, gv_greedy_construct, min_distance
from .errors import DomainError, PreconditionError
from .field import FieldSpec, field_from_order
from .indicator import WORKPREC, cosine_table

__all__ = [
    "RatePoint",
    "BoundCurve",
    "ball_exponent",
    "ball_volume",
    "curve_table",
    "curves_to_csv",
    "entropy_q",
    "gv_rate",
    "log_q",
    "rhs_5t_sum",
    "tightness_gap",
]

LABELS = ("gv", "rhs5t", "greedy-empirical")


def log_q(x: int | Fraction, q: int) -> float:
    """log base q of a positive integer or rational of any size.

    ``math.log2`` on a Python int reads the bit length and the leading
    mantissa bits, so huge ball volumes lose only ~1e-16 relative accuracy.
    """
    x = Fraction(x)
    if x <= 0:
        raise DomainError(f"logarithm of non-positive value {x}")
    return (math.log2(x.numerator) - math.log2(x.denominator)) / math.log2(q)


def entropy_q(x: float, q: int) -> float:
    """x log_q(q-1) - x log_q x - (1-x) log_q(1-x), continuous at 0 and 1."""
    if q < 2:
        raise DomainError(f"alphabet size must be >= 2, got {q}")
    if not 0.0 <= x <= 1.0:
        raise DomainError(f"entropy argument {x} outside [0, 1]")
    lq = math.log(q)
    out = x * math.log(q - 1) / lq if q > 2 else 0.0
    if 0.0 < x:
        out -= x * math.log(x) / lq
    if x < 1.0:
        out -= (1.0 - x) * math.log1p(-x) / lq
    return out


def gv_rate(delta: float, q: int) -> float:
    top = (q - 1) / q
    if not 0.0 <= delta <= top:
        raise DomainError(f"delta {delta} outside [0, {top}]")
    if delta == top:
        return 0.0
    return 1.0 - entropy_q(delta, q)


def ball_exponent(n: int, w: int, q: int) -> float:
    """(1/n) log_q Vol_q(n, w)."""
    if not 1 <= w <= n:
        raise PreconditionError(f"need 1 <= w <= n, got w={w}, n={n}")
    return log_q(ball_volume(n, w, q), q) / n


def rhs_5t_sum(n: int, d: int, spec: FieldSpec, a: Optional[Sequence[int]] = None) -> float:
    """log_q of the sum over words s of weight 1 .. d-1 of p^(sum_s cos(2 pi (a, s)_s / p)).

    ``a`` defaults to the zero row, where every term equals q and the sum is
    q (Vol_q(n, d-1) - 1) exactly.  Binary rows use the closed count of words
    with odd overlap; other rows are enumerated.
    """
    q = spec.q
    if not 2 <= d <= n + 1:
        raise PreconditionError(f"need 2 <= d <= n + 1, got d={d}, n={n}")
    if a is None or not any(a):
        if a is not None and len(a) != n:
            raise PreconditionError(f"row has length {len(a)}, expected {n}")
        return log_q(q * (ball_volume(n, d - 1, q) - 1), q)
    a = [spec.index(x) for x in a]
    if len(a) != n:
        raise PreconditionError(f"row has length {len(a)}, expected {n}")
    if q == 2:
        return log_q(_binary_row_sum(n, d, sum(1 for x in a if x)), 2)
    return float(mpmath.log(_enumerated_row_sum(n, d, spec, a), q))


def _binary_row_sum(n: int, d: int, support: int) -> Fraction:
    """Exact sum for F_2: a word contributes 2 or 1/2 as its overlap with the
    row is even or odd; overlaps are counted by Vandermonde convolution."""
    total = Fraction(0)
    for w in range(1, d):
        odd = sum(
            math.comb(support, j) * math.comb(n - support, w - j)
            for j in range(1, min(w, support) + 1, 2)
        )
        even = math.comb(n, w) - odd
        total += 2 * even + Fraction(odd, 2)
    return total


def _enumerated_row_sum(n: int, d: int, spec: FieldSpec, a: list[int]) -> mpmath.mpf:
    cos = cosine_table(spec.p)
    with mpmath.workprec(WORKPREC):
        terms = []
        for sigma in enumerate_low_weight(n, d - 1, spec):
            acc = 0
            for x, y in zip(a, sigma):
                if x and y:
                    acc = spec.add(acc, spec.mul(x, y))
            expo = mpmath.fsum(cos[c] for c in spec.coords(acc))
            terms.append(mpmath.power(spec.p, expo))
        return mpmath.fsum(terms)


def tightness_gap(n: int, d: int, q: int) -> float:
    """|gv_rate((d-1)/n) - (1 - rhs_5t_sum(n, d, 0) / n)| without the
    sub-exponential prefactor."""
    delta = (d - 1) / n
    if delta > (q - 1) / q:
        raise DomainError(f"(d-1)/n = {delta} beyond (q-1)/q")
    spec = field_from_order(q)
    return abs(gv_rate(delta, q) - (1.0 - rhs_5t_sum(n, d, spec) / n))


@dataclass(frozen=True)
class RatePoint:
    delta: float
    rate: float
    n: Optional[int] = None
    gap: Optional[float] = None

    def __post_init__(self):
        if not 0.0 <= self.delta <= 1.0:
            raise DomainError(f"delta {self.delta} outside [0, 1]")
        if not 0.0 <= self.rate <= 1.0:
            raise DomainError(f"rate {self.rate} outside [0, 1]")


@dataclass(frozen=True)
class BoundCurve:
    q: int
    label: str
    points: tuple[RatePoint, ...] = field(default_factory=tuple)

    @property
    def max_gap(self) -> float:
        return max((p.gap for p in self.points if p.gap is not None), default=0.0)


def _rhs_point(n: int, d: int, q: int, spec: FieldSpec) -> RatePoint:
    delta = (d - 1) / n
    if d == 1:
        rate = 1.0
    else:
        rate = 1.0 - rhs_5t_sum(n, d, spec) / n
    rate = min(1.0, max(0.0, rate))
    return RatePoint(delta, rate, n, abs(rate - gv_rate(delta, q)))


def curve_table(
    q: int, num_samples: int, n_finite: Optional[int] = None, greedy_n: Optional[int] = None
) -> list[BoundCurve]:
    """GV curve at ``num_samples`` equally spaced deltas in [0, (q-1)/q],
    plus the finite-n character-sum curve and greedy-code points on request.

    Finite-n rates are clamped to [0, 1]; the gap column is measured against
    the GV rate at the same delta.
    """
    if num_samples < 2:
        raise PreconditionError("num_samples must be >= 2")
    spec = field_from_order(q)
    top = Fraction(q - 1, q)
    deltas = [top * i / (num_samples - 1) for i in range(num_samples)]
    gv = BoundCurve(q, "gv", tuple(RatePoint(float(x), gv_rate(float(x), q)) for x in deltas))
    curves = [gv]
    if n_finite is not None:
        if n_finite < 1:
            raise PreconditionError("finite length must be >= 1")
        ds = sorted({int(round(x * n_finite)) + 1 for x in deltas})
        pts = tuple(_rhs_point(n_finite, d, q, spec) for d in ds if (d - 1) <= top * n_finite)
        curves.append(BoundCurve(q, "rhs5t", pts))
    if greedy_n is not None:
        pts = []
        for d in range(2, greedy_n + 1):
            delta = (d - 1) / greedy_n
            if delta > float(top):
                break
            H = gv_greedy_construct(greedy_n, d, spec)
            summary = min_distance(H)
            pts.append(RatePoint(delta, summary.rate, greedy_n, abs(summary.rate - gv_rate(delta, q))))
        curves.append(BoundCurve(q, "greedy-empirical", tuple(pts)))
    return curves


def _fmt(x: Optional[float]) -> str:
    return "" if x is None else format(x, ".12g")


def curves_to_csv(curves: Sequence[BoundCurve]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["q", "label", "n", "delta", "rate", "gap"])
    order = {label: i for i, label in enumerate(LABELS)}
    for curve in sorted(curves, key=lambda c: order.get(c.label, len(order))):
        for pt in sorted(curve.points, key=lambda p: p.delta):
            writer.writerow([curve.q, curve.label, "" if pt.n is None else pt.n,
                             _fmt(pt.delta), _fmt(pt.rate), _fmt(pt.gap)])
    return buf.getvalue()

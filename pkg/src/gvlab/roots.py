"""Upper bounds for positive polynomial roots, with an exact numeric oracle.

``stefanescu_bound`` pairs each negative term -b x^m with the nearest
preceding positive term c x^d and returns max (b/c)^(1/(d-m)).  For x above
that value every pair c x^d - b x^m is positive, so no positive root survives.

``largest_positive_root`` is the independent check: a float sign grid finds a
bracket, a Sturm chain over exact rationals certifies it, and bisection with
Sturm counts narrows it to the requested tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import mpmath
import numpy as np

from .errors import NoValidDecomposition, OddVariations, PreconditionError, ZeroConstantTerm
from .polynomial import Polynomial, squarefree_part

GRID_POINTS = 1 << 16
MIN_TOL = 2.0 ** -50


def sign_variations(poly: Polynomial) -> int:
    if poly.is_zero():
        raise PreconditionError("sign variations of the zero polynomial")
    signs = [c > 0 for _, c in poly.terms]
    return sum(a != b for a, b in zip(signs, signs[1:]))


@dataclass(frozen=True)
class StefanescuDecomposition:
    """``pairs`` holds (c_i, d_i, b_i, m_i) for the terms c_i x^d_i - b_i x^m_i."""

    pairs: tuple[tuple[Fraction, int, Fraction, int], ...]
    remainder: Polynomial

    def reassemble(self) -> Polynomial:
        out = self.remainder
        for c, d, b, m in self.pairs:
            out = out + Polynomial.from_dict({d: c, m: -b})
        return out


def stefanescu_decompose(poly: Polynomial) -> StefanescuDecomposition:
    """Canonical pairing: each negative term takes the nearest preceding
    positive term with its whole coefficient; other positive terms form g."""
    variations = sign_variations(poly)
    if poly.leading < 0:
        if variations % 2:
            raise OddVariations(f"{variations} sign variations and a negative leading term")
        raise NoValidDecomposition("negative leading term has no positive partner")
    pairs = []
    rest: dict[int, Fraction] = {}
    pending: Optional[tuple[int, Fraction]] = None
    for e, c in poly.terms:
        if c > 0:
            if pending is not None:
                rest[pending[0]] = pending[1]
            pending = (e, c)
        else:
            if pending is None:
                raise NoValidDecomposition(f"term {c}*x^{e} has no unpaired positive term above it")
            pairs.append((pending[1], pending[0], -c, e))
            pending = None
    if pending is not None:
        rest[pending[0]] = pending[1]
    for (_, d1, _, m1), (_, d2, _, _) in zip(pairs, pairs[1:]):
        if not d1 > m1 > d2:
            raise NoValidDecomposition("pairs do not interleave")
    return StefanescuDecomposition(tuple(pairs), Polynomial.from_dict(rest))


def root_up(x: Fraction, k: int) -> float:
    """Smallest float >= x**(1/k) for rational x > 0."""
    x = Fraction(x)
    with mpmath.workprec(128):
        f = float(mpmath.root(mpmath.mpf(x.numerator) / x.denominator, k))
    while Fraction(f) ** k < x:
        f = math.nextafter(f, math.inf)
    while f > 0:
        below = math.nextafter(f, -math.inf)
        if Fraction(below) ** k >= x:
            f = below
        else:
            break
    return f


def stefanescu_bound(poly: Polynomial) -> float:
    """Upper bound for all positive roots; 0.0 when no term is negative."""
    dec = stefanescu_decompose(poly)
    return max((root_up(b / c, d - m) for c, d, b, m in dec.pairs), default=0.0)


def cauchy_bound(poly: Polynomial) -> Fraction:
    """1 + max |a_i| / |a_lead|: every real root is at most this in absolute value."""
    if poly.is_zero():
        raise PreconditionError("Cauchy bound of the zero polynomial")
    lead = abs(poly.leading)
    return 1 + max((abs(c) / lead for _, c in poly.terms[1:]), default=Fraction(0))


def reciprocal_polynomial(poly: Polynomial) -> Polynomial:
    """y^deg * poly(1/y); maps each nonzero root rho to 1/rho."""
    if poly.is_zero() or poly.terms[-1][0] != 0:
        raise ZeroConstantTerm("reciprocal polynomial needs a nonzero constant term")
    deg = poly.degree
    return Polynomial(tuple((deg - e, c) for e, c in reversed(poly.terms)))


# --- Sturm chains over exact rationals ------------------------------------------

def _integer_dense(poly: Polynomial) -> list[int]:
    """Positive multiple of poly with integer coefficients, constant term first."""
    dense = poly.dense()
    lcm = 1
    for c in dense:
        lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    return [int(c * lcm) for c in dense]


def _sign_at(coeffs: list[int], x: Fraction) -> int:
    """Sign of the polynomial at x, via den^deg * p(num/den) in integers."""
    num, den = x.numerator, x.denominator
    deg = len(coeffs) - 1
    acc = 0
    dpow = [1]
    for _ in range(deg):
        dpow.append(dpow[-1] * den)
    for i in range(deg, -1, -1):
        acc = acc * num + coeffs[i] * dpow[deg - i]
    return (acc > 0) - (acc < 0)


class SturmChain:
    def __init__(self, poly: Polynomial):
        chain = [poly, poly.derivative()]
        while not chain[-1].is_zero() and chain[-1].degree > 0:
            rem = chain[-2].divmod(chain[-1])[1]
            if rem.is_zero():
                break
            chain.append(-rem)
        self.chain = [_integer_dense(p) for p in chain if not p.is_zero()]

    def variations(self, x: Fraction) -> int:
        signs = [s for s in (_sign_at(c, x) for c in self.chain) if s]
        return sum(a != b for a, b in zip(signs, signs[1:]))

    def count(self, a: Fraction, b: Fraction) -> int:
        """Distinct roots in (a, b] (for a squarefree input polynomial)."""
        return self.variations(a) - self.variations(b)


def _strip_zero_roots(poly: Polynomial) -> Polynomial:
    low = poly.terms[-1][0]
    if low == 0:
        return poly
    return Polynomial(tuple((e - low, c) for e, c in poly.terms))


def _grid_bracket(poly: Polynomial, bound: Fraction) -> Optional[int]:
    """Index i of the highest grid cell (i/N*bound, (i+1)/N*bound] where the
    float evaluation changes sign, or None."""
    coeffs = [float(c) for c in reversed(poly.dense())]
    if not all(math.isfinite(c) for c in coeffs):
        return None
    xs = np.arange(0, GRID_POINTS + 1, dtype=np.float64) * (float(bound) / GRID_POINTS)
    with np.errstate(all="ignore"):
        vals = np.polyval(coeffs, xs)
    if not np.all(np.isfinite(vals)):
        return None
    s = np.sign(vals)
    change = (s[:-1] * s[1:] < 0) | (s[1:] == 0)
    hits = np.flatnonzero(change)
    return int(hits[-1]) if hits.size else None


def largest_positive_root(poly: Polynomial, tol: float = 1e-12) -> Optional[float]:
    """Largest positive real root within +-tol, or None if there is none."""
    if tol < MIN_TOL:
        raise PreconditionError(f"tolerance {tol} below {MIN_TOL}")
    if poly.is_zero():
        raise PreconditionError("the zero polynomial has every number as a root")
    poly = _strip_zero_roots(poly)
    if poly.degree == 0:
        return None
    sf = squarefree_part(poly).monic()
    bound = cauchy_bound(sf)
    sturm = SturmChain(sf)
    if sturm.count(Fraction(0), bound) == 0:
        return None

    lo, hi = Fraction(0), bound
    cell = _grid_bracket(sf, bound)
    if cell is not None:
        a = bound * cell / GRID_POINTS
        b = bound * (cell + 1) / GRID_POINTS
        if sturm.count(b, bound) == 0 and sturm.count(a, b) >= 1:
            lo, hi = a, b

    # invariant: no root in (hi, bound], at least one root in (lo, hi]
    tol_q = Fraction(tol)
    while hi - lo > tol_q:
        mid = (lo + hi) / 2
        if sturm.count(mid, hi) >= 1:
            lo = mid
        else:
            hi = mid
    return float((lo + hi) / 2)

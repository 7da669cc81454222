"""Character-sum indicators of minimum distance.

For a check matrix H and a word s, every inner product <h(j), s> is split
into its F_p coordinates and each coordinate t contributes cos(2*pi*t/p).
The total E(H, s) reaches r*m exactly when H s = 0, so the factor
q^r - p^E vanishes precisely on codewords.  Multiplying the factor over all
words of weight 1 .. d-1 gives a number that is zero iff d_min < d, and
summing that product over every r x n matrix gives P_q(r, d).

For p = 2 every cosine is +-1 and all values are dyadic rationals, held
exactly as Fractions.  For odd p the cosines are evaluated with mpmath and
carry an absolute error bound.  Whether a factor is zero is always decided by
the syndrome, never by the numeric value.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Union

import mpmath

from .code import (
    CheckMatrix,
    ORACLE_LIMIT,
    enumerate_low_weight,
    matrix_from_index,
    random_entries,
)
from .errors import PreconditionError, SizeGuard, UnsupportedField
from .field import FieldSpec
from .parallel import ordered_map, split_range
from .polynomial import Polynomial

WORKPREC = 128
COS_ERROR = mpmath.mpf(2) ** -60
MAX_EXPANSION_FACTORS = 64

Number = Union[Fraction, mpmath.mpf]


@dataclass(frozen=True)
class ExactScalar:
    """A Fraction (err == 0) or an mpmath value with an absolute error bound."""

    value: Number
    err: Number = 0

    @classmethod
    def of(cls, x) -> ExactScalar:
        return cls(Fraction(x))

    @property
    def is_exact(self) -> bool:
        return isinstance(self.value, Fraction)

    def is_exact_zero(self) -> bool:
        return self.is_exact and self.value == 0

    def __add__(self, other: ExactScalar) -> ExactScalar:
        if self.is_exact and other.is_exact:
            return ExactScalar(self.value + other.value)
        with mpmath.workprec(WORKPREC):
            return ExactScalar(_mp(self.value) + _mp(other.value), _mp(self.err) + _mp(other.err))

    def __mul__(self, other: ExactScalar) -> ExactScalar:
        if self.is_exact_zero() or other.is_exact_zero():
            return ExactScalar(Fraction(0))
        if self.is_exact and other.is_exact:
            return ExactScalar(self.value * other.value)
        with mpmath.workprec(WORKPREC):
            a, b = _mp(self.value), _mp(other.value)
            ea, eb = _mp(self.err), _mp(other.err)
            return ExactScalar(a * b, abs(a) * eb + abs(b) * ea + ea * eb)

    def __float__(self) -> float:
        return float(self.value)

    def __str__(self) -> str:
        if self.is_exact:
            v = self.value
            return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
        return mpmath.nstr(self.value, 25)

    def to_json(self):
        if self.is_exact:
            return str(self)
        return {"value": str(self), "abs_error": mpmath.nstr(self.err, 5)}


def _mp(x) -> mpmath.mpf:
    if isinstance(x, Fraction):
        return mpmath.mpf(x.numerator) / x.denominator
    return mpmath.mpf(x)


@lru_cache(maxsize=None)
def cosine_table(p: int) -> tuple:
    with mpmath.workprec(WORKPREC):
        return tuple(mpmath.cos(2 * mpmath.pi * t / p) for t in range(p))


# --- per-word quantities --------------------------------------------------------

def _exponent_from_syndrome(spec: FieldSpec, syndrome) -> ExactScalar:
    digits = [c for s in syndrome for c in spec.coords(s)]
    if spec.p == 2:
        return ExactScalar(Fraction(len(digits) - 2 * sum(digits)))
    cos = cosine_table(spec.p)
    with mpmath.workprec(WORKPREC):
        total = mpmath.fsum(cos[t] for t in digits)
    return ExactScalar(total, COS_ERROR * len(digits))


def _factor_from_exponent(spec: FieldSpec, r: int, is_codeword: bool, e: ExactScalar) -> ExactScalar:
    if is_codeword:
        return ExactScalar(Fraction(0))
    top = spec.q ** r
    if e.is_exact:
        return ExactScalar(top - _dyadic_power(e.value))
    with mpmath.workprec(WORKPREC):
        t = mpmath.power(spec.p, e.value)
        # |d/dE p^E| = p^E ln p; doubled to cover the growth over the error interval
        t_err = 2 * t * mpmath.log(spec.p) * e.err
        return ExactScalar(top - t, t_err)


def _dyadic_power(e: Fraction) -> Fraction:
    k = int(e)
    return Fraction(2) ** k


def cosine_exponent(H: CheckMatrix, sigma) -> ExactScalar:
    """Sum over rows j and coordinates s of cos(2*pi*(h(j), sigma)_s / p)."""
    sigma = [H.spec.index(x) for x in sigma]
    return _exponent_from_syndrome(H.spec, H.syndrome(sigma))


def indicator_factor(H: CheckMatrix, sigma) -> ExactScalar:
    """q^r - p^E(H, sigma); exactly zero iff sigma lies in the null space."""
    sigma = [H.spec.index(x) for x in sigma]
    syn = H.syndrome(sigma)
    e = _exponent_from_syndrome(H.spec, syn)
    return _factor_from_exponent(H.spec, H.r, not any(syn), e)


def _binary_exponents(H: CheckMatrix, d: int) -> Iterator[int]:
    """E for every word of weight 1 .. d-1 over F_2, in enumeration order."""
    cols = H.columns
    r = H.r
    for w in range(1, d):
        for support in itertools.combinations(range(H.n), w):
            s = 0
            for i in support:
                s ^= cols[i]
            yield r - 2 * bin(s).count("1")


def word_exponents(H: CheckMatrix, d: int) -> Iterator[tuple[bool, ExactScalar]]:
    """(is_codeword, E) for each enumerated word of weight 1 .. d-1."""
    if H.spec.q == 2:
        top = H.r
        for e in _binary_exponents(H, d):
            yield e == top, ExactScalar(Fraction(e))
        return
    for sigma in enumerate_low_weight(H.n, d - 1, H.spec):
        syn = H.syndrome(sigma)
        yield not any(syn), _exponent_from_syndrome(H.spec, syn)


# --- products and sums ------------------------------------------------------------

@dataclass(frozen=True)
class IndicatorReport:
    matrix: CheckMatrix
    d: int
    factors: tuple[ExactScalar, ...]
    product: ExactScalar
    verdict: bool

    def to_json(self) -> dict:
        return {
            "n": self.matrix.n,
            "r": self.matrix.r,
            "d": self.d,
            "product": self.product.to_json(),
            "verdict": self.verdict,
            "factor_count": len(self.factors),
        }


def _check_d(n: int, d: int) -> None:
    # d = n + 1 asks for no nonzero codeword at all, i.e. a zero-dimensional code
    if not 2 <= d <= n + 1:
        raise PreconditionError(f"need 2 <= d <= n + 1, got d={d}, n={n}")


def indicator_product(H: CheckMatrix, d: int) -> IndicatorReport:
    """Product of indicator factors over all words of weight 1 .. d-1.

    The verdict is True iff no such word is a codeword, i.e. d_min >= d
    (a code of dimension zero counts as having no short codewords).
    """
    _check_d(H.n, d)
    enumerate_low_weight(H.n, d - 1, H.spec)  # size guard only
    factors = tuple(_factor_from_exponent(H.spec, H.r, zero, e) for zero, e in word_exponents(H, d))
    product = ExactScalar(Fraction(1))
    for f in factors:
        product = product * f
    verdict = not any(f.is_exact_zero() for f in factors)
    return IndicatorReport(H, d, factors, product, verdict)


def indicator_value(H: CheckMatrix, d: int) -> ExactScalar:
    """The product alone, stopping at the first zero factor."""
    product = ExactScalar(Fraction(1))
    if H.spec.q == 2:
        top = 2 ** H.r
        acc = Fraction(1)
        for e in _binary_exponents(H, d):
            if e == H.r:
                return ExactScalar(Fraction(0))
            acc *= top - Fraction(2) ** e
        return ExactScalar(acc)
    for zero, e in word_exponents(H, d):
        if zero:
            return ExactScalar(Fraction(0))
        product = product * _factor_from_exponent(H.spec, H.r, False, e)
    return product


def _matrix_count(n: int, r: int, spec: FieldSpec) -> int:
    total = spec.q ** (r * n)
    if total > ORACLE_LIMIT:
        raise SizeGuard(f"{total} matrices exceed the exhaustive limit {ORACLE_LIMIT}")
    return total


def _p_sum_chunk(job) -> ExactScalar:
    n, r, d, spec, start, stop = job
    acc = ExactScalar(Fraction(0))
    for idx in range(start, stop):
        acc = acc + indicator_value(matrix_from_index(spec, n, r, idx), d)
    return acc


def p_sum_exhaustive(n: int, r: int, d: int, spec: FieldSpec, workers: int = 1) -> ExactScalar:
    """P_q(r, d): the indicator product summed over all q^(rn) matrices.

    Matrices are visited in increasing row-major index; ranges are summed
    independently and then added in range order.
    """
    _check_d(n, d)
    total = _matrix_count(n, r, spec)
    enumerate_low_weight(n, d - 1, spec)
    jobs = [(n, r, d, spec, a, b) for a, b in split_range(total, max(1, workers) * 4)]
    acc = ExactScalar(Fraction(0))
    for part in ordered_map(_p_sum_chunk, jobs, workers):
        acc = acc + part
    return acc


@dataclass(frozen=True)
class MonteCarloEstimate:
    estimate: float
    stderr: float
    samples: int

    def to_json(self) -> dict:
        return {
            "estimate": self.estimate,
            "stderr": None if math.isnan(self.stderr) else self.stderr,
            "samples": self.samples,
        }


def _mc_chunk(job) -> list[float]:
    n, r, d, spec, block = job
    cache: dict[bytes, float] = {}
    out = []
    for mat in block:
        key = mat.tobytes()
        if key not in cache:
            H = CheckMatrix(spec, n, r, tuple(tuple(int(x) for x in row) for row in mat))
            cache[key] = float(indicator_value(H, d))
        out.append(cache[key])
    return out


def p_sum_monte_carlo(
    n: int, r: int, d: int, spec: FieldSpec, samples: int, seed: int, workers: int = 1
) -> MonteCarloEstimate:
    """Unbiased estimate of P_q(r, d) as q^(rn) times the mean product over
    uniformly random matrices (drawn exactly as :func:`random_matrix` draws)."""
    _check_d(n, d)
    if samples < 1:
        raise PreconditionError("samples must be >= 1")
    enumerate_low_weight(n, d - 1, spec)
    entries = random_entries(n, r, spec, seed, samples)
    jobs = [(n, r, d, spec, entries[a:b]) for a, b in split_range(samples, max(1, workers) * 4)]
    values = [v for part in ordered_map(_mc_chunk, jobs, workers) for v in part]
    scale = float(spec.q ** (r * n))
    mean = math.fsum(values) / samples
    if samples > 1:
        var = math.fsum((v - mean) ** 2 for v in values) / (samples - 1)
        stderr = scale * math.sqrt(var / samples)
    else:
        stderr = math.nan
    return MonteCarloEstimate(scale * mean, stderr, samples)


# --- expansion in X = q^r -------------------------------------------------------------

def indicator_roots(H: CheckMatrix, d: int) -> list[Fraction]:
    """t_s = 2^E(H, s) for every enumerated word s (binary-characteristic fields)."""
    if H.spec.p != 2:
        raise UnsupportedField(f"exact expansion needs characteristic 2, got p={H.spec.p}")
    _check_d(H.n, d)
    count = sum(math.comb(H.n, w) * (H.spec.q - 1) ** w for w in range(1, d))
    if count > MAX_EXPANSION_FACTORS:
        raise SizeGuard(f"{count} factors exceed {MAX_EXPANSION_FACTORS}")
    return [_dyadic_power(e.value) for _, e in word_exponents(H, d)]


def expand_indicator_product(H: CheckMatrix, d: int) -> Polynomial:
    """prod_s (X - t_s); at X = q^r it equals the indicator product."""
    roots = indicator_roots(H, d)
    out = Polynomial.constant(1)
    for t, mult in sorted(Counter(roots).items()):
        base = Polynomial.from_dict({1: 1, 0: -t})
        for _ in range(mult):
            out = out * base
    return out


"""Sparse univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import ParseError, PreconditionError


def _frac(x) -> Fraction:
    if isinstance(x, float):
        return Fraction(x)  # exact binary value of the float
    return Fraction(x)


@dataclass(frozen=True)
class Polynomial:
    """Terms ``(exponent, coefficient)`` sorted by strictly decreasing exponent.

    Zero coefficients are never stored, so the zero polynomial has no terms.
    """

    terms: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        prev = None
        for e, c in self.terms:
            if e < 0:
                raise PreconditionError(f"negative exponent {e}")
            if c == 0:
                raise PreconditionError("zero coefficient stored")
            if prev is not None and e >= prev:
                raise PreconditionError("exponents must be strictly decreasing")
            prev = e

    @classmethod
    def from_dict(cls, coeffs: Mapping[int, object]) -> Polynomial:
        acc: dict[int, Fraction] = {}
        for e, c in coeffs.items():
            acc[int(e)] = acc.get(int(e), Fraction(0)) + _frac(c)
        return cls(tuple((e, c) for e, c in sorted(acc.items(), reverse=True) if c != 0))

    @classmethod
    def from_terms(cls, terms: Iterable[tuple[int, object]]) -> Polynomial:
        acc: dict[int, Fraction] = {}
        for e, c in terms:
            acc[int(e)] = acc.get(int(e), Fraction(0)) + _frac(c)
        return cls.from_dict(acc)

    @classmethod
    def from_dense(cls, coeffs: Iterable[object]) -> Polynomial:
        """Coefficients listed from the constant term upwards."""
        return cls.from_dict(dict(enumerate(coeffs)))

    @classmethod
    def from_roots(cls, roots: Iterable[object]) -> Polynomial:
        """Monic product of (X - rho) over ``roots``."""
        out = cls.constant(1)
        for rho in roots:
            out = out * cls.from_dict({1: 1, 0: -_frac(rho)})
        return out

    @classmethod
    def constant(cls, c) -> Polynomial:
        return cls.from_dict({0: c})

    # --- basic queries ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def degree(self) -> int:
        if not self.terms:
            raise PreconditionError("zero polynomial has no degree")
        return self.terms[0][0]

    @property
    def leading(self) -> Fraction:
        return self.terms[0][1]

    def coeff(self, e: int) -> Fraction:
        for ee, c in self.terms:
            if ee == e:
                return c
        return Fraction(0)

    def as_dict(self) -> dict[int, Fraction]:
        return dict(self.terms)

    def dense(self) -> list[Fraction]:
        """Coefficients from the constant term up to the degree."""
        out = [Fraction(0)] * (self.degree + 1)
        for e, c in self.terms:
            out[e] = c
        return out

    # --- arithmetic ----------------------------------------------------------

    def __add__(self, other: Polynomial) -> Polynomial:
        acc = self.as_dict()
        for e, c in other.terms:
            acc[e] = acc.get(e, Fraction(0)) + c
        return Polynomial.from_dict(acc)

    def __neg__(self) -> Polynomial:
        return Polynomial(tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __mul__(self, other) -> Polynomial:
        if not isinstance(other, Polynomial):
            c = _frac(other)
            if c == 0:
                return Polynomial(())
            return Polynomial(tuple((e, a * c) for e, a in self.terms))
        acc: dict[int, Fraction] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                acc[e1 + e2] = acc.get(e1 + e2, Fraction(0)) + c1 * c2
        return Polynomial.from_dict(acc)

    __rmul__ = __mul__

    def __call__(self, x):
        """Exact Horner evaluation for Fraction/int input, float otherwise."""
        if not self.terms:
            return Fraction(0) if not isinstance(x, float) else 0.0
        acc = 0
        prev = self.terms[0][0]
        for e, c in self.terms:
            acc = acc * x ** (prev - e) + (c if not isinstance(x, float) else float(c))
            prev = e
        return acc * x ** prev

    def derivative(self) -> Polynomial:
        return Polynomial(tuple((e - 1, c * e) for e, c in self.terms if e > 0))

    def monic(self) -> Polynomial:
        return self * (1 / self.leading)

    def divmod(self, other: Polynomial) -> tuple[Polynomial, Polynomial]:
        if other.is_zero():
            raise ZeroDivisionError("division by the zero polynomial")
        rem = self.as_dict()
        quo: dict[int, Fraction] = {}
        dd, lead = other.degree, other.leading
        while rem:
            top = max(rem)
            if top < dd:
                break
            f = rem[top] / lead
            quo[top - dd] = f
            for e, c in other.terms:
                k = e + top - dd
                v = rem.get(k, Fraction(0)) - f * c
                if v:
                    rem[k] = v
                else:
                    rem.pop(k, None)
        return Polynomial.from_dict(quo), Polynomial.from_dict(rem)

    def __str__(self) -> str:
        return format_poly(self)


def poly_gcd(a: Polynomial, b: Polynomial) -> Polynomial:
    while not b.is_zero():
        a, b = b, a.divmod(b)[1]
    return a.monic() if not a.is_zero() else a


def squarefree_part(poly: Polynomial) -> Polynomial:
    """poly / gcd(poly, poly'): same roots, each simple."""
    g = poly_gcd(poly, poly.derivative())
    if g.is_zero() or g.degree == 0:
        return poly
    return poly.divmod(g)[0]


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(poly: Polynomial) -> str:
    """Text form ``"e1:c1 e2:c2 ..."``; the zero polynomial is ``"0:0"``."""
    if poly.is_zero():
        return "0:0"
    return " ".join(f"{e}:{_format_coeff(c)}" for e, c in poly.terms)


def parse_poly(text: str) -> Polynomial:
    """Parse ``"3:1 2:-2 0:1"``; coefficients may be ``num/den`` or decimals."""
    terms = []
    for tok in text.replace(",", " ").split():
        if ":" not in tok:
            raise ParseError(f"term {tok!r} is not of the form exponent:coefficient")
        e, c = tok.split(":", 1)
        try:
            exp = int(e)
            coef = Fraction(c)
        except (ValueError, ZeroDivisionError):
            raise ParseError(f"bad term {tok!r}") from None
        if exp < 0:
            raise ParseError(f"negative exponent in {tok!r}")
        terms.append((exp, coef))
    if not terms:
        raise ParseError("empty polynomial")
    return Polynomial.from_terms(terms)

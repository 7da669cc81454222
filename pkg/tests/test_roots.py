from fractions import Fraction

import numpy as np
import pytest

from gvlab.errors import NoValidDecomposition, OddVariations, PreconditionError, ZeroConstantTerm
from gvlab.polynomial import Polynomial, parse_poly
from gvlab.roots import (
    SturmChain,
    cauchy_bound,
    largest_positive_root,
    reciprocal_polynomial,
    root_up,
    sign_variations,
    stefanescu_bound,
    stefanescu_decompose,
)
from gvlab.verify import random_decomposable_polynomial


def numpy_largest_positive_root(poly):
    """Independent float oracle via companion-matrix eigenvalues."""
    dense = [float(c) for c in reversed(poly.dense())]
    roots = np.roots(dense)
    real = [z.real for z in roots if abs(z.imag) < 1e-7 and z.real > 0]
    return max(real) if real else None


def test_sign_variations():
    assert sign_variations(parse_poly("3:1 2:-2 0:1")) == 2
    assert sign_variations(parse_poly("2:1 0:-4")) == 1
    assert sign_variations(parse_poly("2:1 1:1")) == 0


def test_decomposition_example():
    poly = parse_poly("3:1 2:-2 0:1")
    dec = stefanescu_decompose(poly)
    assert dec.pairs == ((1, 3, 2, 2),)
    assert dec.reassemble() == poly
    assert stefanescu_bound(poly) == 2.0
    assert largest_positive_root(poly) == pytest.approx((1 + 5 ** 0.5) / 2, abs=1e-12)


def test_tight_case():
    poly = parse_poly("2:1 0:-4")
    bound = stefanescu_bound(poly)
    root = largest_positive_root(poly)
    assert bound == 2.0
    assert abs(bound - root) <= 1e-12


def test_no_positive_root():
    poly = parse_poly("4:1 3:-1 2:1 1:-1 0:1")
    assert largest_positive_root(poly) is None
    assert stefanescu_bound(poly) == 1.0


def test_no_negative_terms():
    poly = parse_poly("2:1 0:3")
    assert stefanescu_bound(poly) == 0.0
    assert largest_positive_root(poly) is None


def test_rejections():
    with pytest.raises(OddVariations):
        stefanescu_decompose(parse_poly("2:-1 0:1"))
    with pytest.raises(NoValidDecomposition):
        stefanescu_decompose(parse_poly("2:-1 1:1 0:-1"))
    with pytest.raises(NoValidDecomposition):
        stefanescu_decompose(parse_poly("3:1 2:-1 1:-1"))


def test_root_up_is_tight():
    for x, k in [(Fraction(2), 2), (Fraction(27), 3), (Fraction(1, 3), 5), (Fraction(10 ** 30), 7)]:
        f = root_up(x, k)
        assert Fraction(f) ** k >= x
        below = np.nextafter(f, 0.0)
        assert Fraction(float(below)) ** k < x
    assert root_up(Fraction(4), 2) == 2.0


def test_cauchy_bound():
    assert cauchy_bound(parse_poly("2:2 1:-6 0:4")) == 4


def test_reciprocal():
    poly = Polynomial.from_roots([2, 5])
    rec = reciprocal_polynomial(poly)
    assert rec(Fraction(1, 2)) == 0 and rec(Fraction(1, 5)) == 0
    with pytest.raises(ZeroConstantTerm):
        reciprocal_polynomial(parse_poly("2:1 1:1"))


def test_sturm_counts():
    poly = Polynomial.from_roots([1, 2, 3, Fraction(7, 2)])
    s = SturmChain(poly)
    assert s.count(Fraction(0), Fraction(10)) == 4
    assert s.count(Fraction(1), Fraction(3)) == 2  # (1, 3] holds 2 and 3
    assert s.count(Fraction(3), Fraction(7, 2)) == 1


def test_largest_root_with_repeats_and_zero():
    poly = Polynomial.from_roots([0, 0, 3, 3, 3, Fraction(1, 7)])
    assert largest_positive_root(poly) == pytest.approx(3.0, abs=1e-12)


def test_close_roots():
    poly = Polynomial.from_roots([Fraction(1), Fraction(1) + Fraction(1, 10 ** 9)])
    assert largest_positive_root(poly, tol=1e-13) == pytest.approx(1 + 1e-9, abs=1e-12)


def test_tolerance_floor():
    with pytest.raises(PreconditionError):
        largest_positive_root(parse_poly("1:1 0:-1"), tol=1e-20)


def test_rational_roots_recovered():
    rng = np.random.default_rng(11)
    for _ in range(200):
        roots = [Fraction(int(rng.integers(-30, 60)), int(rng.integers(1, 9))) for _ in range(int(rng.integers(1, 7)))]
        poly = Polynomial.from_roots(roots)
        positive = [r for r in roots if r > 0]
        got = largest_positive_root(poly, tol=1e-12)
        if not positive:
            assert got is None
        else:
            assert got == pytest.approx(float(max(positive)), abs=1e-11)


def test_against_numpy_oracle():
    rng = np.random.default_rng(12)
    for _ in range(300):
        deg = int(rng.integers(1, 7))
        coeffs = [int(x) for x in rng.integers(-9, 10, size=deg + 1)]
        coeffs[-1] = coeffs[-1] or 1
        poly = Polynomial.from_dense(coeffs)
        want = numpy_largest_positive_root(poly)
        got = largest_positive_root(poly)
        assert (want is None) == (got is None)
        if got is not None:
            assert got == pytest.approx(want, abs=1e-6)


def test_bound_dominates_random_decomposables():
    rng = np.random.default_rng(13)
    for _ in range(300):
        poly = random_decomposable_polynomial(rng)
        root = largest_positive_root(poly, tol=1e-12)
        if root is not None:
            assert stefanescu_bound(poly) >= root - 1e-12

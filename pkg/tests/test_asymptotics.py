import csv
import io
import math

import pytest

from gvlab.asymptotics import (
    RatePoint,
    ball_exponent,
    curve_table,
    curves_to_csv,
    entropy_q,
    gv_rate,
    log_q,
    rhs_5t_sum,
    tightness_gap,
)
from gvlab.code import ball_volume, enumerate_low_weight
from gvlab.errors import DomainError, PreconditionError
from gvlab.field import field_from_order, field_make


def test_entropy_anchors():
    assert entropy_q(0.5, 2) == pytest.approx(1.0, abs=1e-12)
    assert entropy_q(2 / 3, 3) == pytest.approx(1.0, abs=1e-12)
    assert entropy_q(0.0, 5) == 0.0
    assert entropy_q(0.11, 2) == pytest.approx(0.49992, abs=1e-4)


@pytest.mark.parametrize("q", [2, 3, 4, 7, 16])
def test_entropy_peak_and_endpoint(q):
    top = (q - 1) / q
    assert entropy_q(top, q) == pytest.approx(1.0, abs=1e-12)
    assert entropy_q(1.0, q) == pytest.approx(math.log(q - 1) / math.log(q), abs=1e-12)
    xs = [top * i / 50 for i in range(51)]
    values = [entropy_q(x, q) for x in xs]
    assert values == sorted(values)


def test_entropy_domain():
    with pytest.raises(DomainError):
        entropy_q(1.5, 2)
    with pytest.raises(DomainError):
        gv_rate(0.6, 2)


def test_gv_rate():
    assert gv_rate(0.0, 2) == 1.0
    assert gv_rate(0.5, 2) == 0.0
    assert gv_rate(0.11, 2) == pytest.approx(0.5000840, abs=1e-6)


def test_log_q_big_integers():
    assert log_q(3 ** 500, 3) == pytest.approx(500, rel=1e-15)
    assert log_q(2 ** 4000 + 1, 2) == pytest.approx(4000, rel=1e-15)


def test_ball_exponent_tends_to_entropy():
    prev = None
    for n in (100, 1000, 10000):
        gap = abs(ball_exponent(n, n // 10, 2) - entropy_q(0.1, 2))
        assert prev is None or gap < prev
        prev = gap
    assert prev < 1e-3


def test_rhs5t_zero_row():
    f2 = field_make(2)
    assert rhs_5t_sum(3, 2, f2) == pytest.approx(math.log2(6), abs=1e-12)
    assert rhs_5t_sum(3, 2, f2, a=[0, 0, 0]) == pytest.approx(math.log2(6), abs=1e-12)
    assert rhs_5t_sum(10, 4, f2) == pytest.approx(math.log2(2 * (ball_volume(10, 3, 2) - 1)), abs=1e-12)


def brute_row_sum(n, d, spec, a):
    total = 0.0
    for s in enumerate_low_weight(n, d - 1, spec):
        acc = 0
        for x, y in zip(a, s):
            acc = spec.add(acc, spec.mul(x, y))
        total += spec.p ** sum(math.cos(2 * math.pi * c / spec.p) for c in spec.coords(acc))
    return math.log(total, spec.q)


def test_rhs5t_all_ones_row():
    assert rhs_5t_sum(3, 2, field_make(2), a=[1, 1, 1]) == pytest.approx(math.log2(1.5), abs=1e-12)


@pytest.mark.parametrize("q,n,d,a", [
    (2, 6, 4, [1, 0, 1, 1, 0, 0]),
    (2, 7, 7, [1, 1, 1, 1, 1, 1, 1]),
    (3, 4, 3, [1, 2, 0, 1]),
    (4, 4, 3, [1, 2, 3, 0]),
    (5, 3, 4, [4, 0, 2]),
])
def test_rhs5t_rows_against_brute_force(q, n, d, a):
    spec = field_from_order(q)
    assert rhs_5t_sum(n, d, spec, a) == pytest.approx(brute_row_sum(n, d, spec, a), abs=1e-10)


def test_rhs5t_validation():
    with pytest.raises(PreconditionError):
        rhs_5t_sum(3, 1, field_make(2))
    with pytest.raises(PreconditionError):
        rhs_5t_sum(3, 2, field_make(2), a=[1, 0])


def test_tightness_gap_shrinks():
    gaps = [tightness_gap(n, n * 11 // 100 + 1, 2) for n in (100, 1000, 10000)]
    assert gaps[1] <= 0.02
    assert gaps[2] <= 0.005
    assert gaps[0] > gaps[1] > gaps[2]


def test_rate_point_validation():
    with pytest.raises(DomainError):
        RatePoint(0.2, 1.5)
    with pytest.raises(DomainError):
        RatePoint(-0.1, 0.5)


def test_curve_table_gv_only():
    (gv,) = curve_table(2, 11)
    assert gv.label == "gv" and len(gv.points) == 11
    assert gv.points[0].rate == 1.0 and gv.points[-1].rate == 0.0


def test_curve_table_with_finite_and_greedy():
    curves = curve_table(2, 11, n_finite=1000, greedy_n=10)
    labels = [c.label for c in curves]
    assert labels == ["gv", "rhs5t", "greedy-empirical"]
    rhs = curves[1]
    assert rhs.max_gap < 0.02
    for pt in rhs.points:
        assert 0.0 <= pt.rate <= 1.0
    for pt in curves[2].points:
        assert pt.n == 10


def test_csv_layout():
    text = curves_to_csv(curve_table(3, 5, n_finite=50))
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["q", "label", "n", "delta", "rate", "gap"]
    labels = [r[1] for r in rows[1:]]
    assert labels == sorted(labels, key=["gv", "rhs5t"].index)
    gv_deltas = [float(r[3]) for r in rows[1:] if r[1] == "gv"]
    assert gv_deltas == sorted(gv_deltas)
    assert text == curves_to_csv(curve_table(3, 5, n_finite=50))

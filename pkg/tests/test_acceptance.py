"""Acceptance gate: one PASS/FAIL line per criterion, at the stated tolerances.

Run with ``pytest tests/test_acceptance.py -v``; the verdict lines are
printed even when output capture is on.
"""

import math
import time

import pytest

from gvlab.asymptotics import entropy_q, gv_rate, rhs_5t_sum, tightness_gap
from gvlab.cli import run_cli
from gvlab.code import ball_volume
from gvlab.field import field_make
from gvlab.indicator import p_sum_exhaustive, p_sum_monte_carlo
from gvlab.polynomial import parse_poly
from gvlab.roots import largest_positive_root, stefanescu_bound
from gvlab.verify import verify_expansion, verify_greedy, verify_indicator, verify_lemma


@pytest.fixture
def verdict(capsys):
    def emit(number, ok, detail):
        with capsys.disabled():
            print(f"\nACCEPTANCE {number}: {'PASS' if ok else 'FAIL'} - {detail}")
        assert ok, detail
    return emit


def test_acceptance_1_indicator_equivalence(verdict):
    start = time.perf_counter()
    checked = mismatches = 0
    for n, r in [(3, 1), (3, 2), (4, 2), (4, 3), (5, 2)]:
        rep = verify_indicator(n, r, spec=field_make(2), exhaustive=True)
        checked += rep.checked
        mismatches += len(rep.mismatches)
    elapsed = time.perf_counter() - start
    verdict(1, mismatches == 0 and elapsed <= 60,
            f"{checked} matrices, {mismatches} mismatches, {elapsed:.1f} s (limit 60 s)")


def test_acceptance_2_existence_semantics(verdict):
    start = time.perf_counter()
    f2 = field_make(2)
    zero = p_sum_exhaustive(3, 1, 3, f2)
    pos = p_sum_exhaustive(3, 2, 3, f2)
    within = []
    for n, r, d, exact in [(3, 2, 3, pos), (3, 1, 3, zero), (4, 2, 3, p_sum_exhaustive(4, 2, 3, f2))]:
        est = p_sum_monte_carlo(n, r, d, f2, samples=100_000, seed=2024)
        exact_f = float(exact.value)
        # a zero sum has zero variance; the estimate must then be exactly zero
        within.append(abs(est.estimate - exact_f) <= 4 * est.stderr if est.stderr > 0
                      else est.estimate == exact_f)
    elapsed = time.perf_counter() - start
    ok = zero.is_exact_zero() and pos.value > 0 and all(within) and elapsed <= 10
    verdict(2, ok, f"P(3,1,3)={zero}, P(3,2,3)={pos}, MC within 4 SE: {within}, {elapsed:.1f} s (limit 10 s)")


def test_acceptance_3_root_bound_soundness(verdict):
    start = time.perf_counter()
    rep = verify_lemma(samples=10_000, seed=0, tol=1e-9)
    elapsed = time.perf_counter() - start
    poly = parse_poly("2:1 0:-4")
    tight = abs(stefanescu_bound(poly) - largest_positive_root(poly, 1e-13))
    ok = rep.ok and rep.checked == 10_000 and tight <= 1e-12 and elapsed <= 30
    verdict(3, ok, f"{rep.summary()}; x^2-4 gap {tight:.2e}; {elapsed:.1f} s (limit 30 s)")


def test_acceptance_4_expansion_consistency(verdict):
    rep = verify_expansion(samples=1000, seed=0, tol=1e-9)
    verdict(4, rep.ok and rep.checked == 1000 and rep.max_root_error <= 1e-9, rep.summary())


def test_acceptance_5_greedy_gv(verdict):
    start = time.perf_counter()
    rep = verify_greedy(n_max=12, qs=(2, 3, 4))
    elapsed = time.perf_counter() - start
    expected = 3 * sum(n - 1 for n in range(2, 13))
    ok = rep.ok and rep.checked == expected and elapsed <= 120
    verdict(5, ok, f"{rep.summary()}, {elapsed:.1f} s (limit 120 s)")


def test_acceptance_6_entropy_anchors(verdict):
    checks = {
        "H2(0.5)=1": abs(entropy_q(0.5, 2) - 1.0) <= 1e-12,
        "H2(0.11)=0.49992": abs(entropy_q(0.11, 2) - 0.49992) <= 1e-4,
    }
    for q in (2, 3, 4):
        checks[f"gv_rate(0,{q})=1"] = abs(gv_rate(0.0, q) - 1.0) <= 1e-12
        checks[f"gv_rate((q-1)/q,{q})=0"] = abs(gv_rate((q - 1) / q, q)) <= 1e-12
    failed = [k for k, v in checks.items() if not v]
    verdict(6, not failed, f"H2(0.11)={entropy_q(0.11, 2):.10f}; failed: {failed or 'none'}")


def test_acceptance_7_gap_convergence(verdict):
    start = time.perf_counter()
    ns = (100, 1000, 10000)
    gaps = [tightness_gap(n, n * 11 // 100 + 1, 2) for n in ns]
    # the ball sum behind the gap is an exact big integer
    n, d = 10000, 1101
    exact = rhs_5t_sum(n, d, field_make(2)) == math.log2(2 * (ball_volume(n, d - 1, 2) - 1))
    elapsed = time.perf_counter() - start
    ok = (gaps[1] <= 0.02 and gaps[2] <= 0.005 and gaps[0] >= gaps[1] >= gaps[2]
          and exact and elapsed <= 30)
    verdict(7, ok, f"gaps {[f'{g:.6f}' for g in gaps]} at n={list(ns)}, exact ball sum: {exact}, "
                   f"{elapsed:.1f} s (limit 30 s)")


DETERMINISM = [
    ["p-sum", "--n", "4", "--r", "2", "--d", "3"],
    ["p-sum", "--n", "3", "--r", "2", "--d", "3", "--method", "mc", "--samples", "20000", "--seed", "7"],
    ["verify-indicator", "--n", "4", "--r", "2", "--exhaustive"],
    ["verify-indicator", "--n", "6", "--r", "3", "--samples", "500", "--seed", "3"],
    ["verify-lemma", "--samples", "500", "--seed", "1", "--format", "json"],
    ["verify-expansion", "--samples", "100", "--seed", "1", "--format", "json"],
    ["verify-greedy", "--n", "8", "--format", "json"],
    ["gv-curve", "--samples", "21", "--n", "200", "--greedy-n", "8"],
]


def test_acceptance_8_determinism(verdict, tmp_path):
    differing = []
    for i, argv in enumerate(DETERMINISM):
        blobs = []
        for j, workers in enumerate(("1", "1", "4")):
            path = tmp_path / f"{i}-{j}"
            extra = ["--workers", workers] if argv[0] not in ("verify-expansion", "gv-curve") else []
            code = run_cli(argv + extra + ["--out", str(path)])
            blobs.append(path.read_bytes() if code == 0 else None)
        if blobs[0] is None or len(set(blobs)) != 1:
            differing.append(argv[0])
    verdict(8, not differing, f"{len(DETERMINISM)} seeded invocations x 3 runs (workers 1, 1, 4); "
                              f"differing: {differing or 'none'}")


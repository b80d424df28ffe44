"""Acceptance criteria 1-12.

Each test prints one ``PASS``/``FAIL`` line (also collected into the
terminal summary) and then asserts the same condition.
"""

import math
import time

import numpy as np
import pytest

from skewnum.counterexample import K1, K12, RHO1, RHO12, counterexample_instance, verify_counterexample
from skewnum.entropy import wy_entropy, wyd_entropy
from skewnum.inequalities import (BipartiteInstance, concavity_probe, embed_sa_as_ssa, sa_gap, ssa_gap,
                                  von_neumann_sa_gap)
from skewnum.linalg import eigh, sqrtm_psd
from skewnum.metric import lambda_entropy, mu_p_mass, wyd_via_quadrature
from skewnum.search import SearchConfig, p_sweep, search_sa_violation
from skewnum.tensor import MultipartiteOperator, kron, partial_trace

from conftest import ACCEPTANCE_LINES, random_hermitian, random_psd, random_state

SQRT17 = math.sqrt(17)
GAP = -725 + 81 * math.sqrt(69)


def record(n, title, ok, detail):
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}  ({detail})"
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_criterion_01_wy_value_and_runtime():
    start = time.perf_counter()
    report = verify_counterexample()
    seconds = time.perf_counter() - start
    s = wy_entropy(RHO12, K12)
    err = abs(s + 328)
    record(1, "S(rho12,k12) = -328", report.passed and err <= 1e-9 and seconds < 1.0,
           f"err={err:.2e}, verify {seconds * 1e3:.1f} ms")


def test_criterion_02_integer_square_root():
    target = np.array([[2, 1, 1, 1], [1, 2, 0, 1], [1, 0, 2, 1], [1, 1, 1, 2]], dtype=float)
    err = float(np.max(np.abs(sqrtm_psd(RHO12) - target)))
    record(2, "rho12^(1/2) is the integer matrix", err <= 1e-10, f"max err={err:.2e}")


def test_criterion_03_spectra():
    e12 = eigh(RHO12).eigenvalues
    ref12 = np.sort([(21 + 5 * SQRT17) / 2, 4, 1, (21 - 5 * SQRT17) / 2])
    e1 = eigh(RHO1).eigenvalues
    err = max(np.max(np.abs(e12 - ref12)), np.max(np.abs(e1 - [3, 23])))
    record(3, "eigenvalues of rho12 and rho1", err <= 1e-10, f"max err={err:.2e}")


def test_criterion_04_partial_traces_exact():
    op = MultipartiteOperator(RHO12, (2, 2))
    r1, r2 = partial_trace(op, {0}).matrix, partial_trace(op, {1}).matrix
    ok = np.array_equal(r1, [[13, 10], [10, 13]]) and np.array_equal(r2, [[13, 10], [10, 13]])
    record(4, "rho1 = rho2 = [[13,10],[10,13]] exactly", ok, "bitwise")


def test_criterion_05_marginal_entropy():
    expected = -81 / 4 * (math.sqrt(23) - math.sqrt(3)) ** 2
    rel = abs(wy_entropy(RHO1, K1) - expected) / abs(expected)
    record(5, "S(rho1,k1) = -(81/4)(sqrt23-sqrt3)^2", rel <= 1e-9, f"rel err={rel:.2e}")


def test_criterion_06_sa_gap():
    rep = sa_gap(counterexample_instance())
    err = abs(rep.gap - GAP)
    record(6, "SA gap = -725+81 sqrt69 and flagged", err <= 1e-9 and rep.violated,
           f"gap={rep.gap:.10f}, err={err:.2e}")


def test_criterion_07_ssa_embedding():
    inst = counterexample_instance()
    diff = abs(ssa_gap(embed_sa_as_ssa(inst)).gap - sa_gap(inst).gap)
    record(7, "embedded SSA gap equals SA gap", diff <= 1e-10, f"diff={diff:.2e}")


def test_criterion_08_quadrature():
    k12 = K12
    worst = 0.0
    for p in (0.3, 0.5, 0.7):
        closed = wyd_entropy(RHO12, k12, p)
        worst = max(worst, abs(wyd_via_quadrature(RHO12, k12, p) - closed) / abs(closed))
    mass_err = max(abs(mu_p_mass(p).value - 1) for p in (0.3, 0.5, 0.7))
    record(8, "integral representation and mu_p mass", worst <= 1e-6 and mass_err <= 1e-8,
           f"max rel err={worst:.2e}, mass err={mass_err:.2e}")


def test_criterion_09_property_suites():
    rng = np.random.default_rng(9)
    failures = []

    # product states: equality
    for _ in range(50):
        r1, r2 = random_state(rng, 2), random_state(rng, 2)
        inst = BipartiteInstance(MultipartiteOperator(kron(r1, r2), (2, 2)),
                                 random_hermitian(rng, 2), random_hermitian(rng, 2))
        rep = sa_gap(inst)
        if abs(rep.gap) > 1e-9 * max(1.0, abs(rep.terms["S12"])):
            failures.append("product")
    # k2 = 0: never violated
    for _ in range(500):
        inst = BipartiteInstance(MultipartiteOperator(random_psd(rng, 4), (2, 2)),
                                 random_hermitian(rng, 2), np.zeros((2, 2)))
        if sa_gap(inst).violated:
            failures.append("k2=0")
    # pure states at p = 1/2
    for _ in range(200):
        inst = BipartiteInstance(MultipartiteOperator(random_state(rng, 4, rank=1), (2, 2)),
                                 random_hermitian(rng, 2), random_hermitian(rng, 2))
        if sa_gap(inst).gap < -1e-8:
            failures.append("pure")
    # concavity midpoint
    for _ in range(200):
        ra, rb, k = random_psd(rng, 3), random_psd(rng, 3), random_hermitian(rng, 3)
        scale = (np.linalg.norm(ra) + np.linalg.norm(rb)) * np.linalg.norm(k) ** 2
        if concavity_probe(ra, rb, 0.5, k, 0.5) < -1e-9 * scale:
            failures.append("concavity")
    # commuting state and observable
    rho, k = np.diag([1.0, 2.0, 7.0]), np.diag([4.0, -2.0, 1.0])
    if any(lambda_entropy(rho, k, lam) != 0 for lam in (0.01, 0.5, 1.0)):
        failures.append("commuting E_lambda")
    if any(wyd_entropy(rho, k, p) != 0 for p in (0.1, 0.5, 0.9)):
        failures.append("commuting S_p")
    record(9, "property suites", not failures, f"failures={sorted(set(failures)) or 'none'}")


def test_criterion_10_p_sweep():
    grid = [round(0.1 * i, 10) for i in range(1, 10)]
    reports = p_sweep(counterexample_instance(), grid)
    gaps = ", ".join(f"{r.p:.1f}:{r.gap:.3f}" for r in reports)
    record(10, "gap < 0 for p = 0.1..0.9 (numerical evidence only, not a proof)",
           all(r.gap < 0 and r.violated for r in reports), gaps)


def test_criterion_11_search():
    warm = search_sa_violation(SearchConfig(restarts=1, seed=0), counterexample_instance(), workers=1)
    cfg = SearchConfig(dims=(2, 2), p=0.5, restarts=200, seed=2006)
    first = search_sa_violation(cfg, workers=1)
    second = search_sa_violation(cfg, workers=2)
    identical = (first.report.gap == second.report.gap
                 and first.start == second.start
                 and first.start_gaps == second.start_gaps
                 and np.array_equal(first.instance.rho12.matrix, second.instance.rho12.matrix)
                 and np.array_equal(first.instance.k1, second.instance.k1)
                 and np.array_equal(first.instance.k2, second.instance.k2))
    ok = warm.report.gap <= -52.1635 and first.report.violated and identical
    record(11, "warm start, 200-restart cold search, reproducibility", ok,
           f"warm gap={warm.report.gap:.4f}, cold gap={first.report.gap:.4f}, identical={identical}")


def test_criterion_12_von_neumann_contrast():
    gap = von_neumann_sa_gap(MultipartiteOperator(RHO12 / 26, (2, 2)))
    record(12, "von Neumann SA gap on the normalized state >= 0", gap >= 0, f"gap={gap:.6f}")

"""The two-qubit counterexample to Wigner-Yanase subadditivity.

``RHO12`` (trace 26) with ``K1``, ``K2`` gives a subadditivity gap of
``-725 + 81 sqrt(69) ~ -52.1635`` at ``p = 1/2``.  Every intermediate
matrix of the hand computation is listed here so it can be checked.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from .inequalities import BipartiteInstance, sa_gap, skew_entropy
from .linalg import commutator, eigh, sqrtm_psd
from .tensor import MultipartiteOperator, kron, partial_trace

RHO12 = np.array(
    [[7, 5, 5, 6],
     [5, 6, 2, 5],
     [5, 2, 6, 5],
     [6, 5, 5, 7]], dtype=float)
SQRT_RHO12 = np.array(
    [[2, 1, 1, 1],
     [1, 2, 0, 1],
     [1, 0, 2, 1],
     [1, 1, 1, 2]], dtype=float)
K1 = np.array([[10, 1], [1, 1]], dtype=float)
K2 = np.array([[1, 1], [1, 10]], dtype=float)
K1_LIFTED = np.array(
    [[10, 0, 1, 0],
     [0, 10, 0, 1],
     [1, 0, 1, 0],
     [0, 1, 0, 1]], dtype=float)
K2_LIFTED = np.array(
    [[1, 1, 0, 0],
     [1, 10, 0, 0],
     [0, 0, 1, 1],
     [0, 0, 1, 10]], dtype=float)
K12 = np.array(
    [[11, 1, 1, 0],
     [1, 20, 0, 1],
     [1, 0, 2, 1],
     [0, 1, 1, 11]], dtype=float)
COMMUTATOR12 = np.array(
    [[0, 10, -8, 0],
     [-10, 0, 0, -10],
     [8, 0, 0, 8],
     [0, 10, -8, 0]], dtype=float)
COMMUTATOR12_SQUARED = np.array(
    [[-164, 0, 0, -164],
     [0, -200, 160, 0],
     [0, 160, -128, 0],
     [-164, 0, 0, -164]], dtype=float)
RHO1 = np.array([[13, 10], [10, 13]], dtype=float)

SQRT17 = math.sqrt(17.0)
RHO12_EIGENVALUES = np.array([(21 - 5 * SQRT17) / 2, 1.0, 4.0, (21 + 5 * SQRT17) / 2])
RHO1_EIGENVALUES = np.array([3.0, 23.0])
_R3, _R23 = math.sqrt(3.0), math.sqrt(23.0)
SQRT_RHO1 = np.array([[_R3 + _R23, _R23 - _R3], [_R23 - _R3, _R3 + _R23]]) / 2
COMMUTATOR1 = np.array([[0.0, -4.5 * (_R23 - _R3)], [4.5 * (_R23 - _R3), 0.0]])
WY12 = -328.0
WY1 = -81.0 / 4.0 * (_R23 - _R3) ** 2
SA_GAP = -725.0 + 81.0 * math.sqrt(69.0)


def counterexample_instance(p: float = 0.5) -> BipartiteInstance:
    return BipartiteInstance(MultipartiteOperator(RHO12, (2, 2)), K1, K2, p)


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    error: float
    exact: bool = False


@dataclass
class VerificationReport:
    checks: list[Check] = field(default_factory=list)
    gap: float = float("nan")
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    @property
    def failures(self) -> list[Check]:
        return [c for c in self.checks if not c.passed]

    def add_close(self, name, value, expected, tol):
        err = float(np.max(np.abs(np.asarray(value) - np.asarray(expected))))
        self.checks.append(Check(name, err <= tol, err))

    def add_exact(self, name, value, expected):
        value = np.asarray(value)
        expected = np.asarray(expected)
        err = float(np.max(np.abs(value - expected)))
        self.checks.append(Check(name, bool(np.array_equal(value, expected)), err, exact=True))


def verify_counterexample(tol: float = 1e-9, p: float = 0.5) -> VerificationReport:
    """Recompute every step of the counterexample and compare with the stated values.

    Irrational quantities are compared within ``tol`` (absolute).  Integer
    matrix identities are compared exactly, independent of ``tol``.
    """
    start = time.perf_counter()
    report = VerificationReport()
    inst = counterexample_instance(p)
    rho = inst.rho12

    report.add_close("rho12 eigenvalues", eigh(RHO12).eigenvalues, RHO12_EIGENVALUES, tol)
    report.add_close("rho12^(1/2) numerical", sqrtm_psd(RHO12), SQRT_RHO12, tol)
    report.add_exact("rho12^(1/2) squared is rho12", SQRT_RHO12 @ SQRT_RHO12, RHO12)
    report.add_exact("k1 (x) 1", kron(K1, np.eye(2)), K1_LIFTED)
    report.add_exact("1 (x) k2", kron(np.eye(2), K2), K2_LIFTED)
    report.add_exact("k12", kron(K1, np.eye(2)) + kron(np.eye(2), K2), K12)
    c12 = commutator(SQRT_RHO12, K12)
    report.add_exact("[rho12^(1/2), k12]", c12, COMMUTATOR12)
    report.add_exact("[rho12^(1/2), k12]^2", c12 @ c12, COMMUTATOR12_SQUARED)
    report.add_exact("1/2 tr [rho12^(1/2), k12]^2 (exact)", 0.5 * np.trace(c12 @ c12), WY12)
    report.add_close("S(rho12, k12)", skew_entropy(RHO12, K12, p), WY12, tol)

    rho1 = partial_trace(rho, {0}).matrix
    rho2 = partial_trace(rho, {1}).matrix
    report.add_exact("rho1 partial trace", rho1, RHO1)
    report.add_exact("rho2 partial trace", rho2, RHO1)
    report.add_close("rho1 eigenvalues", eigh(rho1).eigenvalues, RHO1_EIGENVALUES, tol)
    report.add_close("rho1^(1/2)", sqrtm_psd(rho1), SQRT_RHO1, tol)
    report.add_close("[rho1^(1/2), k1]", commutator(sqrtm_psd(rho1), K1), COMMUTATOR1, tol)
    report.add_close("[rho2^(1/2), k2]", commutator(sqrtm_psd(rho2), K2), -COMMUTATOR1, tol)
    report.add_close("S(rho1, k1)", skew_entropy(rho1, K1, p), WY1, tol)
    report.add_close("S(rho2, k2)", skew_entropy(rho2, K2, p), WY1, tol)

    gap = sa_gap(inst)
    report.gap = gap.gap
    report.add_close("subadditivity gap", gap.gap, SA_GAP, tol)
    report.checks.append(Check("gap flagged as violation", gap.violated, 0.0, exact=True))
    report.seconds = time.perf_counter() - start
    return report

"""Subadditivity and strong subadditivity gaps for skew entropies.

A gap is the slack ``right-hand side - left-hand side`` of an inequality,
so a negative gap (beyond the tolerance) is a violation.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .entropy import _check_p, _skew, _skew_spectral, von_neumann_entropy, wy_entropy, wyd_entropy
from .errors import DimensionMismatchError
from .linalg import hermitian
from .tensor import MultipartiteOperator, local_sum, partial_trace

DEFAULT_RTOL = 1e-8


def skew_entropy(rho, k, p: float) -> float:
    """``S_p(rho, k)``, using the single-square-root form at ``p = 1/2``."""
    if p == 0.5:
        return wy_entropy(rho, k)
    return wyd_entropy(rho, k, p)


def _observables(ks, dims):
    out = []
    for i, (k, d) in enumerate(zip(ks, dims)):
        k = hermitian(k)
        if k.shape != (d, d):
            raise DimensionMismatchError(f"k{i + 1} has shape {k.shape}, factor {i + 1} has dimension {d}")
        k.setflags(write=False)
        out.append(k)
    return tuple(out)


@dataclass(frozen=True)
class BipartiteInstance:
    """State on ``H_1 (x) H_2`` with one local observable per factor."""

    rho12: MultipartiteOperator
    k1: np.ndarray
    k2: np.ndarray
    p: float = 0.5

    def __post_init__(self):
        if self.rho12.nfactors != 2:
            raise DimensionMismatchError("bipartite instance needs a two-factor state")
        k1, k2 = _observables((self.k1, self.k2), self.rho12.dims)
        object.__setattr__(self, "k1", k1)
        object.__setattr__(self, "k2", k2)
        object.__setattr__(self, "p", _check_p(self.p))

    @property
    def dims(self) -> tuple[int, ...]:
        return self.rho12.dims

    @property
    def observables(self) -> tuple[np.ndarray, ...]:
        return (self.k1, self.k2)

    def with_p(self, p: float) -> "BipartiteInstance":
        return BipartiteInstance(self.rho12, self.k1, self.k2, p)


@dataclass(frozen=True)
class TripartiteInstance:
    """State on ``H_1 (x) H_2 (x) H_3`` with one local observable per factor."""

    rho123: MultipartiteOperator
    k1: np.ndarray
    k2: np.ndarray
    k3: np.ndarray
    p: float = 0.5

    def __post_init__(self):
        if self.rho123.nfactors != 3:
            raise DimensionMismatchError("tripartite instance needs a three-factor state")
        ks = _observables((self.k1, self.k2, self.k3), self.rho123.dims)
        for name, k in zip(("k1", "k2", "k3"), ks):
            object.__setattr__(self, name, k)
        object.__setattr__(self, "p", _check_p(self.p))

    @property
    def dims(self) -> tuple[int, ...]:
        return self.rho123.dims

    @property
    def observables(self) -> tuple[np.ndarray, ...]:
        return (self.k1, self.k2, self.k3)


@dataclass(frozen=True)
class GapReport:
    """Outcome of one inequality check.

    ``terms`` holds every entropy entering the gap, keyed by the subsystem
    label (``"S12"``, ``"S1"``, ...).  ``violated`` is ``gap < -tolerance``.
    """

    kind: str
    terms: Mapping[str, float]
    gap: float
    tolerance: float
    p: float
    violated: bool = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "terms", dict(self.terms))
        object.__setattr__(self, "violated", bool(self.gap < -self.tolerance))

    def to_dict(self) -> dict:
        return {
            "kind": self.kind,
            "p": self.p,
            "terms": dict(self.terms),
            "gap": self.gap,
            "tolerance": self.tolerance,
            "violated": self.violated,
        }


def _tolerance(tolerance, reference: float) -> float:
    if tolerance is None:
        return DEFAULT_RTOL * max(1.0, abs(reference))
    if tolerance < 0:
        raise ValueError("tolerance must be nonnegative")
    return float(tolerance)


def _term(op: MultipartiteOperator, ks, p) -> float:
    k = local_sum(ks, op.dims).matrix
    return skew_entropy(op.matrix, k, p)


def sa_terms(rho: np.ndarray, k1: np.ndarray, k2: np.ndarray, p: float,
             spectral: bool = False) -> tuple[float, float, float]:
    """``(S12, S1, S2)`` for raw, already validated Hermitian arrays.

    This is the unchecked core of :func:`sa_gap`, exposed for hot loops.
    ``spectral=True`` evaluates each entropy in the eigenbasis of the state
    instead of through commutators; cheaper, and equal up to rounding.
    """
    skew = _skew_spectral if spectral else _skew
    d1, d2 = k1.shape[0], k2.shape[0]
    # k1 (x) 1 + 1 (x) k2 by broadcasting; np.kron is slow on tiny arrays
    k12 = (k1[:, None, :, None] * np.eye(d2)[None, :, None, :]
           + np.eye(d1)[:, None, :, None] * k2[None, :, None, :]).reshape(d1 * d2, d1 * d2)
    t = rho.reshape(d1, d2, d1, d2)
    rho1 = np.einsum("ijkj->ik", t)
    rho2 = np.einsum("jijk->ik", t)
    return skew(rho, k12, p), skew(rho1, k1, p), skew(rho2, k2, p)


def sa_gap(inst: BipartiteInstance, tolerance: float | None = None) -> GapReport:
    """``S_p(rho_1, k_1) + S_p(rho_2, k_2) - S_p(rho_12, k_12)``.

    Subadditivity asserts this is nonnegative.  The default tolerance is
    ``1e-8 * max(1, |S_p(rho_12, k_12)|)``.
    """
    s12, s1, s2 = sa_terms(inst.rho12.matrix, inst.k1, inst.k2, inst.p)
    gap = s1 + s2 - s12
    return GapReport("SA", {"S12": s12, "S1": s1, "S2": s2}, gap, _tolerance(tolerance, s12), inst.p)


def ssa_gap(inst: TripartiteInstance, tolerance: float | None = None) -> GapReport:
    """``S_p(rho_12, k_12) + S_p(rho_23, k_23) - S_p(rho_123, k_123) - S_p(rho_2, k_2)``."""
    rho = inst.rho123
    k1, k2, k3 = inst.observables
    s123 = _term(rho, (k1, k2, k3), inst.p)
    s12 = _term(partial_trace(rho, {0, 1}), (k1, k2), inst.p)
    s23 = _term(partial_trace(rho, {1, 2}), (k2, k3), inst.p)
    s2 = _term(partial_trace(rho, {1}), (k2,), inst.p)
    gap = s12 + s23 - s123 - s2
    terms = {"S123": s123, "S2": s2, "S12": s12, "S23": s23}
    return GapReport("SSA", terms, gap, _tolerance(tolerance, s123), inst.p)


def embed_sa_as_ssa(inst: BipartiteInstance) -> TripartiteInstance:
    """Read a bipartite instance as systems 1 and 3 of a tripartite one.

    The middle factor is one-dimensional with observable ``[[1]]``, so the
    strong subadditivity gap of the result equals the subadditivity gap of
    the input.
    """
    d1, d3 = inst.dims
    rho = MultipartiteOperator(inst.rho12.matrix, (d1, 1, d3))
    return TripartiteInstance(rho, inst.k1, np.eye(1), inst.k2, inst.p)


def concavity_probe(rho_a, rho_b, t: float, k, p: float) -> float:
    """``S_p(t rho_a + (1-t) rho_b, k) - t S_p(rho_a, k) - (1-t) S_p(rho_b, k)``.

    Concavity of ``S_p`` in the state means this is never negative.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError("t must lie in [0, 1]")
    rho_a = hermitian(rho_a)
    rho_b = hermitian(rho_b)
    sa = skew_entropy(rho_a, k, p)
    sb = sa if np.array_equal(rho_a, rho_b) else skew_entropy(rho_b, k, p)
    if t == 0.0:
        return sb - sb
    if t == 1.0 or np.array_equal(rho_a, rho_b):
        return sa - sa
    mixed = t * rho_a + (1.0 - t) * rho_b
    return skew_entropy(mixed, k, p) - t * sa - (1.0 - t) * sb


def von_neumann_sa_gap(rho12: MultipartiteOperator) -> float:
    """``S(rho_1) + S(rho_2) - S(rho_12)`` for the von Neumann entropy (always >= 0)."""
    if rho12.nfactors != 2:
        raise DimensionMismatchError("need a two-factor state")
    s1 = von_neumann_entropy(partial_trace(rho12, {0}).matrix)
    s2 = von_neumann_entropy(partial_trace(rho12, {1}).matrix)
    return s1 + s2 - von_neumann_entropy(rho12.matrix)

"""Random instances and Nelder-Mead search for subadditivity violations.

The search space is a flat parameter vector holding a lower-triangular
factor ``L`` of the state and the independent entries of the two local
observables.  Decoding normalises the candidate so the objective is
bounded below:

* ``rho12 = s * L L* + eps * I`` with ``s`` chosen so ``tr rho12 = trace``
  (26 by default, the trace of the reference counterexample).  The floor
  ``eps * I`` keeps every iterate positive definite.
* ``(k1, k2)`` is rescaled to combined Frobenius norm ``k_norm``
  (``sqrt(206)`` by default, again the reference value).

The gap is homogeneous of degree one in the state and of degree two in the
observables, so without this normalisation any violation could be scaled
to an arbitrarily negative gap.
"""

from __future__ import annotations

import math
import os
from functools import lru_cache
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np

from .errors import SkewnumError
from .inequalities import BipartiteInstance, GapReport, sa_gap, sa_terms
from .tensor import MultipartiteOperator

REFERENCE_TRACE = 26.0
REFERENCE_K_NORM = math.sqrt(206.0)
THREADS_ENV = "SKEWNUM_THREADS"


@dataclass(frozen=True)
class SearchConfig:
    dims: tuple[int, int] = (2, 2)
    p: float = 0.5
    restarts: int = 1
    seed: int = 0
    max_iters: int = 500
    reflection: float = 1.0
    expansion: float = 2.0
    contraction: float = 0.5
    shrink: float = 0.5
    epsilon: float = 1e-9
    complex_entries: bool = False
    k2_zero: bool = False
    trace: float = REFERENCE_TRACE
    k_norm: float = REFERENCE_K_NORM

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(int(d) for d in self.dims))
        if len(self.dims) != 2 or min(self.dims) < 1:
            raise ValueError(f"dims must be two positive integers, got {self.dims}")
        if not 0 < self.p < 1:
            raise ValueError("p must lie in (0, 1)")
        if self.restarts < 1 or self.max_iters < 1:
            raise ValueError("restarts and max_iters must be positive")
        for name in ("reflection", "expansion", "contraction", "shrink", "epsilon", "trace", "k_norm"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.trace <= self.epsilon * self.dims[0] * self.dims[1]:
            raise ValueError("trace must exceed epsilon * dimension")


# --- random instances -------------------------------------------------------

def _generator(seed: int, stream: int) -> np.random.Generator:
    # Philox is counter based: (seed, stream) keys an independent stream.
    key = np.array([seed % 2**64, stream % 2**64], dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


def _random_hermitian(rng, d: int, scale: float, complex_entries: bool) -> np.ndarray:
    a = rng.uniform(-scale, scale, size=(d, d))
    if complex_entries:
        a = a + 1j * rng.uniform(-scale, scale, size=(d, d))
        a = np.triu(a, 1) + np.triu(a, 1).conj().T + np.diag(a.diagonal().real)
    else:
        a = np.triu(a) + np.triu(a, 1).T
    return a


def random_instance(dims: Sequence[int], seed: int, p: float = 0.5, epsilon: float = 1e-9,
                    stream: int = 0, complex_entries: bool = False) -> BipartiteInstance:
    """``rho12 = G G* + eps I`` with ``G`` uniform on ``[-1, 1]``; ``k1, k2`` uniform on ``[-10, 10]``.

    Deterministic in ``(dims, seed, stream)``.
    """
    d1, d2 = (int(x) for x in dims)
    rng = _generator(seed, stream)
    d = d1 * d2
    g = rng.uniform(-1.0, 1.0, size=(d, d))
    if complex_entries:
        g = g + 1j * rng.uniform(-1.0, 1.0, size=(d, d))
    rho = g @ g.conj().T + epsilon * np.eye(d)
    k1 = _random_hermitian(rng, d1, 10.0, complex_entries)
    k2 = _random_hermitian(rng, d2, 10.0, complex_entries)
    return BipartiteInstance(MultipartiteOperator(rho, (d1, d2)), k1, k2, p)


# --- parameter vectors ------------------------------------------------------

def _tril_size(d: int, complex_entries: bool) -> int:
    return d * d if complex_entries else d * (d + 1) // 2


@lru_cache(maxsize=None)
def _tril(d: int):
    rows, cols = np.tril_indices(d)
    strict = rows != cols
    return rows, cols, rows[strict], cols[strict]


def parameter_length(cfg: SearchConfig) -> int:
    d1, d2 = cfg.dims
    n = _tril_size(d1 * d2, cfg.complex_entries) + _tril_size(d1, cfg.complex_entries)
    if not cfg.k2_zero:
        n += _tril_size(d2, cfg.complex_entries)
    return n


def _pack_lower(a: np.ndarray, complex_entries: bool) -> np.ndarray:
    rows, cols, srows, scols = _tril(a.shape[0])
    if not complex_entries:
        return a[rows, cols].real.astype(float)
    return np.concatenate([a.diagonal().real, a[srows, scols].real, a[srows, scols].imag])


def _unpack_lower(x: np.ndarray, d: int, complex_entries: bool) -> np.ndarray:
    rows, cols, srows, scols = _tril(d)
    if not complex_entries:
        out = np.zeros((d, d))
        out[rows, cols] = x
        return out
    m = srows.size
    out = np.zeros((d, d), dtype=complex)
    out.flat[:: d + 1] = x[:d]
    out[srows, scols] = x[d:d + m] + 1j * x[d + m:d + 2 * m]
    return out


def _hermitian_from_lower(low: np.ndarray) -> np.ndarray:
    strict = np.tril(low, -1)
    return np.diag(low.diagonal().real).astype(low.dtype) + strict + strict.conj().T


def _normalised_observables(k1, k2, k_norm: float):
    total = math.sqrt(float(np.sum(np.abs(k1) ** 2) + np.sum(np.abs(k2) ** 2)))
    if total == 0.0:
        return k1, k2
    return k1 * (k_norm / total), k2 * (k_norm / total)


def _decode_arrays(x: np.ndarray, cfg: SearchConfig):
    d1, d2 = cfg.dims
    d = d1 * d2
    c = cfg.complex_entries
    n0 = _tril_size(d, c)
    n1 = n0 + _tril_size(d1, c)
    lower = _unpack_lower(x[:n0], d, c)
    gram = lower @ lower.conj().T
    gram = (gram + gram.conj().T) / 2
    mass = float(np.trace(gram).real)
    if mass > 0.0:
        rho = gram * ((cfg.trace - d * cfg.epsilon) / mass) + cfg.epsilon * np.eye(d)
    else:
        rho = np.eye(d, dtype=gram.dtype) * (cfg.trace / d)
    k1 = _hermitian_from_lower(_unpack_lower(x[n0:n1], d1, c))
    if cfg.k2_zero:
        k2 = np.zeros((d2, d2), dtype=k1.dtype)
    else:
        k2 = _hermitian_from_lower(_unpack_lower(x[n1:], d2, c))
    k1, k2 = _normalised_observables(k1, k2, cfg.k_norm)
    return rho, k1, k2


def decode(x: np.ndarray, cfg: SearchConfig) -> BipartiteInstance:
    """Parameter vector to normalised instance; the state's smallest eigenvalue is at least ``epsilon``."""
    x = np.asarray(x, dtype=float)
    if x.shape != (parameter_length(cfg),):
        raise ValueError(f"expected {parameter_length(cfg)} parameters, got shape {x.shape}")
    rho, k1, k2 = _decode_arrays(x, cfg)
    return BipartiteInstance(MultipartiteOperator(rho, cfg.dims), k1, k2, cfg.p)


def encode(inst: BipartiteInstance, cfg: SearchConfig) -> np.ndarray:
    """Inverse of :func:`decode` on normalised instances.

    The state is scaled to trace ``cfg.trace`` and ``L`` is the Cholesky
    factor of ``rho - eps I``, which must be positive definite.
    """
    if tuple(inst.dims) != cfg.dims:
        raise ValueError(f"instance dims {inst.dims} do not match config dims {cfg.dims}")
    rho = inst.rho12.matrix
    rho = rho * (cfg.trace / float(np.trace(rho).real))
    try:
        lower = np.linalg.cholesky(rho - cfg.epsilon * np.eye(rho.shape[0]))
    except np.linalg.LinAlgError as exc:
        raise ValueError("state is too close to singular to encode with this epsilon") from exc
    k1, k2 = inst.k1, inst.k2
    if cfg.k2_zero:
        k2 = np.zeros_like(k2)
    k1, k2 = _normalised_observables(k1, k2, cfg.k_norm)
    c = cfg.complex_entries
    parts = [_pack_lower(lower, c), _pack_lower(k1, c)]
    if not cfg.k2_zero:
        parts.append(_pack_lower(k2, c))
    return np.concatenate(parts)


# --- Nelder-Mead --------------------------------------------------------------

@dataclass
class NelderMeadResult:
    x: np.ndarray
    fun: float
    nit: int
    nfev: int
    history: list[float] = field(default_factory=list)


def nelder_mead(f: Callable[[np.ndarray], float], x0: np.ndarray, max_iters: int = 500,
                reflection: float = 1.0, expansion: float = 2.0, contraction: float = 0.5,
                shrink: float = 0.5, xatol: float = 1e-10, fatol: float = 1e-12) -> NelderMeadResult:
    """Minimise ``f`` by the Nelder-Mead simplex method.

    The initial simplex is ``x0`` plus steps of ``0.05 * (1 + |x0_i|)``
    along each coordinate.  ``history[i]`` is the best value after
    iteration ``i``; it never increases.  Stops after ``max_iters``
    iterations or once both the simplex diameter and the spread of values
    fall below ``xatol`` and ``fatol * max(1, |best|)``.
    """
    x0 = np.asarray(x0, dtype=float)
    n = x0.size
    simplex = np.tile(x0, (n + 1, 1))
    simplex[1:] += np.diag(0.05 * (1.0 + np.abs(x0)))
    values = np.array([f(v) for v in simplex])
    nfev = n + 1
    history = []
    it = 0
    while it < max_iters:
        order = np.argsort(values, kind="stable")
        simplex, values = simplex[order], values[order]
        if (np.max(np.abs(simplex[1:] - simplex[0])) <= xatol
                and values[-1] - values[0] <= fatol * max(1.0, abs(values[0]))):
            break
        it += 1
        centroid = simplex[:-1].mean(axis=0)
        worst = simplex[-1]
        xr = centroid + reflection * (centroid - worst)
        fr = f(xr)
        nfev += 1
        if values[0] <= fr < values[-2]:
            simplex[-1], values[-1] = xr, fr
        elif fr < values[0]:
            xe = centroid + expansion * (xr - centroid)
            fe = f(xe)
            nfev += 1
            if fe < fr:
                simplex[-1], values[-1] = xe, fe
            else:
                simplex[-1], values[-1] = xr, fr
        else:
            if fr < values[-1]:
                xc = centroid + contraction * (xr - centroid)
                fc = f(xc)
                nfev += 1
                accept = fc <= fr
            else:
                xc = centroid + contraction * (worst - centroid)
                fc = f(xc)
                nfev += 1
                accept = fc < values[-1]
            if accept:
                simplex[-1], values[-1] = xc, fc
            else:
                simplex[1:] = simplex[0] + shrink * (simplex[1:] - simplex[0])
                values[1:] = [f(v) for v in simplex[1:]]
                nfev += n
        history.append(float(np.min(values)))
    best = int(np.argmin(values))
    return NelderMeadResult(simplex[best].copy(), float(values[best]), it, nfev, history)


# --- search -------------------------------------------------------------------

@dataclass(frozen=True)
class SearchResult:
    """Best report over all starts.  ``start`` is -1 for the warm start, else the restart index."""

    report: GapReport
    instance: BipartiteInstance
    start: int
    start_gaps: tuple[float, ...]
    history: tuple[float, ...]


def _objective(cfg: SearchConfig) -> Callable[[np.ndarray], float]:
    def gap(x):
        try:
            s12, s1, s2 = sa_terms(*_decode_arrays(x, cfg), cfg.p, spectral=True)
            value = s1 + s2 - s12
        except (SkewnumError, ArithmeticError, ValueError):
            return math.inf
        return value if math.isfinite(value) else math.inf
    return gap


def _run_start(cfg: SearchConfig, x0: np.ndarray) -> NelderMeadResult:
    return nelder_mead(_objective(cfg), x0, cfg.max_iters, cfg.reflection, cfg.expansion,
                       cfg.contraction, cfg.shrink)


def _restart_task(args):
    cfg, index = args
    inst = random_instance(cfg.dims, cfg.seed, cfg.p, cfg.epsilon, stream=index + 1,
                           complex_entries=cfg.complex_entries)
    return _run_start(cfg, encode(inst, cfg))


def worker_count(requested: int | None = None) -> int:
    """Worker processes for restarts: ``requested``, else ``$SKEWNUM_THREADS`` (0 or unset = CPU count)."""
    if requested is None:
        try:
            requested = int(os.environ.get(THREADS_ENV, "0"))
        except ValueError:
            requested = 0
    if requested <= 0:
        requested = os.cpu_count() or 1
    return requested


def search_sa_violation(cfg: SearchConfig, warm_start: BipartiteInstance | None = None,
                        workers: int | None = None) -> SearchResult:
    """Minimise the subadditivity gap from ``cfg.restarts`` random starts (and ``warm_start``).

    Start ``r`` draws its instance from the Philox stream keyed by
    ``(cfg.seed, r + 1)``, so the outcome does not depend on ``workers``.
    The best gap wins; ties go to the lowest start index.  The returned
    report uses the default tolerance, so ``violated`` is false when no
    violation was found.
    """
    runs: list[tuple[int, NelderMeadResult]] = []
    if warm_start is not None:
        runs.append((-1, _run_start(cfg, encode(warm_start.with_p(cfg.p), cfg))))
    tasks = [(cfg, r) for r in range(cfg.restarts)]
    nworkers = min(worker_count(workers), cfg.restarts)
    if nworkers > 1:
        with ProcessPoolExecutor(max_workers=nworkers) as pool:
            results = list(pool.map(_restart_task, tasks, chunksize=max(1, len(tasks) // (4 * nworkers))))
    else:
        results = [_restart_task(t) for t in tasks]
    runs.extend(zip(range(cfg.restarts), results))

    start, best = min(runs, key=lambda item: (item[1].fun, item[0]))
    inst = decode(best.x, cfg)
    return SearchResult(sa_gap(inst), inst, start, tuple(r.fun for _, r in runs), tuple(best.history))


def p_sweep(inst: BipartiteInstance, grid: Sequence[float]) -> list[GapReport]:
    """Subadditivity reports for each ``p`` in ``grid``, in grid order."""
    grid = list(grid)
    if not grid:
        raise ValueError("grid must not be empty")
    return [sa_gap(inst.with_p(p)) for p in grid]


"""Kronecker products, local observables and partial traces.

Factors are indexed from 0 in code.  Basis order follows ``kron``: the
basis vector ``e_i (x) f_j`` sits at row ``i * dim(f) + j``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .errors import DimensionMismatchError
from .linalg import hermitian


@dataclass(frozen=True)
class MultipartiteOperator:
    """A Hermitian matrix on ``H_1 (x) ... (x) H_n`` with factor dimensions ``dims``."""

    matrix: np.ndarray
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims or any(d < 1 for d in dims):
            raise DimensionMismatchError(f"factor dimensions must be positive, got {self.dims}")
        matrix = hermitian(self.matrix)
        if matrix.shape[0] != prod(dims):
            raise DimensionMismatchError(
                f"matrix of size {matrix.shape[0]} does not match factor dims {dims}"
            )
        matrix.setflags(write=False)
        object.__setattr__(self, "matrix", matrix)
        object.__setattr__(self, "dims", dims)

    @property
    def nfactors(self) -> int:
        return len(self.dims)

    def scaled(self, t: float) -> "MultipartiteOperator":
        return MultipartiteOperator(t * self.matrix, self.dims)


def kron(*factors) -> np.ndarray:
    """Kronecker product of one or more matrices, left factor most significant."""
    if not factors:
        raise ValueError("kron needs at least one factor")
    return reduce(np.kron, (np.asarray(f) for f in factors))


def lift(observable, index: int, dims: Sequence[int]) -> np.ndarray:
    """``1 (x) ... (x) k (x) ... (x) 1`` with ``k`` in slot ``index``."""
    k = np.asarray(observable)
    if k.shape != (dims[index], dims[index]):
        raise DimensionMismatchError(
            f"observable of shape {k.shape} does not fit factor {index} of dimension {dims[index]}"
        )
    left = prod(dims[:index])
    right = prod(dims[index + 1:])
    if left > 1:
        k = np.kron(np.eye(left), k)
    if right > 1:
        k = np.kron(k, np.eye(right))
    return k


def local_sum(observables: Iterable, dims: Sequence[int]) -> MultipartiteOperator:
    """Sum of the local observables, each lifted to the full tensor product."""
    observables = [hermitian(k) for k in observables]
    dims = tuple(int(d) for d in dims)
    if len(observables) != len(dims):
        raise DimensionMismatchError(
            f"{len(observables)} observables for {len(dims)} tensor factors"
        )
    total = sum(lift(k, i, dims) for i, k in enumerate(observables))
    return MultipartiteOperator(total, dims)


def partial_trace(op: MultipartiteOperator, keep: Iterable[int]) -> MultipartiteOperator:
    """Trace out every factor not listed in ``keep``.

    The result lives on the kept factors, in their original order.  For
    ``keep={0}`` on a bipartite operator this is the reduced operator on the
    first factor, ``(x|rho_1 y) = sum_i (x (x) e_i | rho (y (x) e_i))``.
    """
    keep = sorted(set(int(i) for i in keep))
    n = op.nfactors
    if not keep:
        raise ValueError("keep must name at least one factor")
    if keep[0] < 0 or keep[-1] >= n:
        raise IndexError(f"factor index out of range for {n} factors: {keep}")
    if len(keep) == n:
        return op

    # einsum subscripts: row index letters, then column letters; traced
    # factors share their row letter with their column letter.
    letters = "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ"
    rows = list(letters[:n])
    cols = [rows[i] if i not in keep else letters[n + i] for i in range(n)]
    out = [rows[i] for i in keep] + [cols[i] for i in keep]
    tensor = op.matrix.reshape(op.dims + op.dims)
    reduced = np.einsum("".join(rows + cols) + "->" + "".join(out), tensor)
    kept_dims = tuple(op.dims[i] for i in keep)
    d = prod(kept_dims)
    return MultipartiteOperator(reduced.reshape(d, d), kept_dims)

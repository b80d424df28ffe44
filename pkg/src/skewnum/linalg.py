"""Dense Hermitian linear algebra on small matrices.

Matrices are plain :class:`numpy.ndarray` objects.  Real input stays real;
complex input is handled with complex Jacobi rotations.  Nothing here
mutates its arguments.
"""

from __future__ import annotations

import math
from typing import Callable, NamedTuple

import numpy as np

from .errors import ConvergenceError, DimensionMismatchError, NotHermitianError, NotPositiveError

HERMITIAN_RTOL = 1e-12
JACOBI_TOL = 1e-14
JACOBI_MAX_SWEEPS = 100
CLAMP_RTOL = 1e-12
_SAFE_SCALE = (2.0**-400, 2.0**400)


class EigenDecomposition(NamedTuple):
    """Ascending real eigenvalues and the unitary matrix of eigenvectors (columns)."""

    eigenvalues: np.ndarray
    vectors: np.ndarray

    def reconstruct(self) -> np.ndarray:
        return (self.vectors * self.eigenvalues) @ self.vectors.conj().T


def hermitian(a, rtol: float = HERMITIAN_RTOL) -> np.ndarray:
    """Validate ``a`` as a Hermitian matrix and return ``(a + a*) / 2``.

    Integer input is promoted to float.  Raises :class:`NotHermitianError`
    if any entry differs from the conjugate of its transpose by more than
    ``rtol * max|a_ij|``.
    """
    a = np.asarray(a)
    if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
        raise DimensionMismatchError(f"expected a nonempty square matrix, got shape {a.shape}")
    if a.dtype.kind not in "fc":
        a = a.astype(float)
    scale = np.abs(a).max()
    if not math.isfinite(scale):
        raise NotHermitianError("matrix has non-finite entries")
    adj = a.conj().T
    if np.abs(a - adj).max() > rtol * scale:
        raise NotHermitianError("matrix is not Hermitian within tolerance")
    return (a + adj) / 2


def _jacobi(a: np.ndarray, tol: float, max_sweeps: int):
    # Rotations run on nested Python lists: for the tiny matrices used here
    # scalar arithmetic beats per-rotation numpy dispatch by a wide margin.
    # Only the upper triangle drives the iteration; the lower one is
    # mirrored so that ``m`` stays exactly Hermitian.
    n = a.shape[0]
    is_complex = np.iscomplexobj(a)
    m = a.tolist()
    zero, one = (0j, 1 + 0j) if is_complex else (0.0, 1.0)
    v = [[one if i == j else zero for j in range(n)] for i in range(n)]
    rows = range(n)
    pairs = [(p, q) for p in range(n - 1) for q in range(p + 1, n)]
    diag2 = sum(abs(m[i][i]) ** 2 for i in rows)

    def off_norm():
        return math.sqrt(2.0 * sum(abs(m[p][q]) ** 2 for p, q in pairs))

    threshold = tol * math.sqrt(diag2 + off_norm() ** 2)
    for _ in range(max_sweeps):
        if off_norm() <= threshold:
            break
        for p, q in pairs:
            apq = m[p][q]
            r = abs(apq)
            if r == 0.0:
                continue
            mp, mq = m[p], m[q]
            app = mp[p].real
            aqq = mq[q].real
            theta = (aqq - app) / (2.0 * r)
            if abs(theta) > 1e150:
                t = 0.5 / theta
            else:
                t = math.copysign(1.0, theta) / (abs(theta) + math.sqrt(theta * theta + 1.0))
            c = 1.0 / math.sqrt(t * t + 1.0)
            s = t * c
            # unitary (p, q) block: phase fix diag(1, e^{-i arg a_pq}) times a real rotation
            ph = (apq / r).conjugate() if is_complex else (1.0 if apq > 0 else -1.0)
            g10 = -s * ph
            g11 = c * ph
            for k in rows:
                vk = v[k]
                x, y = vk[p], vk[q]
                vk[p] = c * x + g10 * y
                vk[q] = s * x + g11 * y
                if k == p or k == q:
                    continue
                mk = m[k]
                x, y = mk[p], mk[q]
                x, y = c * x + g10 * y, s * x + g11 * y
                mk[p], mk[q] = x, y
                if is_complex:
                    mp[k], mq[k] = x.conjugate(), y.conjugate()
                else:
                    mp[k], mq[k] = x, y
            mp[q] = mq[p] = zero
            mp[p] = app - t * r
            mq[q] = aqq + t * r
    else:
        off = off_norm()
        if off > threshold:
            raise ConvergenceError(
                f"Jacobi did not converge in {max_sweeps} sweeps (off-diagonal norm {off:.3e})"
            )
    w = np.array([m[i][i].real for i in rows])
    return w, np.array(v, dtype=a.dtype)


def eigh(a, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> EigenDecomposition:
    """Eigendecomposition of a Hermitian matrix by cyclic Jacobi rotations.

    Sweeps stop once the off-diagonal Frobenius norm drops below
    ``tol * ||a||_F``.  Eigenvalues are returned in ascending order; ties
    keep the order the rotations left them in.

    Raises
    ------
    ConvergenceError
        If ``max_sweeps`` sweeps do not reach the threshold.
    """
    return _eigh(hermitian(a), tol, max_sweeps)


def _eigh(a: np.ndarray, tol: float = JACOBI_TOL, max_sweeps: int = JACOBI_MAX_SWEEPS) -> EigenDecomposition:
    # caller guarantees ``a`` is an exactly Hermitian float/complex array
    big = float(np.max(np.abs(a))) if a.size else 0.0
    if big and not _SAFE_SCALE[0] <= big <= _SAFE_SCALE[1]:
        # squared entries would under- or overflow; rescale by an exact power of two
        e = math.frexp(big)[1]
        w, v = _jacobi(a * 2.0**-e, tol, max_sweeps)
        w = w * 2.0**e
    else:
        w, v = _jacobi(a, tol, max_sweeps)
    order = np.argsort(w, kind="stable")
    return EigenDecomposition(w[order], v[:, order])


def apply_spectral_function(a, f: Callable[[np.ndarray], np.ndarray], decomposition: EigenDecomposition | None = None) -> np.ndarray:
    """Return ``V f(D) V*`` for ``a = V D V*``.

    ``f`` receives the whole eigenvalue array.  A precomputed
    ``decomposition`` of ``a`` may be passed to skip the eigensolve.
    """
    dec = eigh(a) if decomposition is None else decomposition
    with np.errstate(invalid="ignore", divide="ignore"):
        fw = np.asarray(f(dec.eigenvalues))
    if fw.shape != dec.eigenvalues.shape:
        raise DimensionMismatchError("spectral function must map the eigenvalue array elementwise")
    if not np.all(np.isfinite(fw)):
        raise ValueError("spectral function is undefined at an eigenvalue of the matrix")
    if np.iscomplexobj(fw):
        raise ValueError("spectral function must be real valued")
    out = (dec.vectors * fw) @ dec.vectors.conj().T
    return (out + out.conj().T) / 2


def clamp_psd(eigenvalues: np.ndarray, rtol: float = CLAMP_RTOL) -> np.ndarray:
    """Zero out rounding-level negative eigenvalues, reject genuinely negative ones."""
    top = max(float(eigenvalues[-1]), 0.0)
    floor = -rtol * top
    if eigenvalues[0] < floor:
        raise NotPositiveError(
            f"matrix is indefinite: eigenvalue {eigenvalues[0]:.6g} below {floor:.3g}"
        )
    return np.where(eigenvalues < 0.0, 0.0, eigenvalues)


def psd_eigh(a, checked: bool = True) -> EigenDecomposition:
    """Eigendecomposition of a positive semi-definite matrix, negatives clamped.

    ``checked=False`` skips Hermitian validation for input that already
    passed through :func:`hermitian`.
    """
    dec = eigh(a) if checked else _eigh(a)
    return EigenDecomposition(clamp_psd(dec.eigenvalues), dec.vectors)


def fractional_power(a, t: float, decomposition: EigenDecomposition | None = None) -> np.ndarray:
    """``a**t`` for positive semi-definite ``a`` and ``t > 0``."""
    if not t > 0:
        raise ValueError("fractional_power needs a positive exponent")
    dec = psd_eigh(a) if decomposition is None else decomposition
    dec = EigenDecomposition(clamp_psd(dec.eigenvalues), dec.vectors)
    return apply_spectral_function(a, lambda x: x**t, dec)


def sqrtm_psd(a, checked: bool = True) -> np.ndarray:
    dec = psd_eigh(a, checked)
    return apply_spectral_function(a, np.sqrt, dec)


def commutator(a, b) -> np.ndarray:
    """``ab - ba``; anti-Hermitian when both arguments are Hermitian."""
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape or a.ndim != 2:
        raise DimensionMismatchError(f"commutator of shapes {a.shape} and {b.shape}")
    return a @ b - b @ a

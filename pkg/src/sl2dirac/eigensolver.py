"""Cyclic Jacobi eigensolver for dense real symmetric matrices.

Deliberately independent of any closed-form knowledge: it sees only a
symmetric matrix.  Rotations are skipped for entries that are already below
the sweep threshold, which is the usual threshold-Jacobi strategy.
"""

from __future__ import annotations

import numpy as np

OFF_TOL = 1e-12
MAX_SWEEPS = 50


class ConvergenceFailure(RuntimeError):
    pass


def off_norm(a: np.ndarray) -> float:
    """Frobenius norm of the strictly off-diagonal part."""
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotate(a: np.ndarray, v: np.ndarray, p: int, q: int) -> None:
    apq = a[p, q]
    theta = (a[q, q] - a[p, p]) / (2.0 * apq)
    t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1.0)) if theta != 0.0 else 1.0
    c = 1.0 / np.sqrt(t * t + 1.0)
    s = t * c

    ap = a[:, p].copy()
    aq = a[:, q].copy()
    a[:, p] = c * ap - s * aq
    a[:, q] = s * ap + c * aq
    rp = a[p, :].copy()
    rq = a[q, :].copy()
    a[p, :] = c * rp - s * rq
    a[q, :] = s * rp + c * rq
    a[p, q] = a[q, p] = 0.0

    vp = v[:, p].copy()
    vq = v[:, q].copy()
    v[:, p] = c * vp - s * vq
    v[:, q] = s * vp + c * vq


def jacobi_eigh(matrix: np.ndarray, tol: float = OFF_TOL, max_sweeps: int = MAX_SWEEPS):
    """Eigenvalues (ascending) and orthonormal eigenvectors (columns) of ``matrix``.

    Iterates cyclic sweeps until the off-diagonal Frobenius norm is ``<= tol``
    (absolute).  Raises ConvergenceFailure when the sweep budget runs out.
    """
    a = np.array(matrix, dtype=float, copy=True)
    n = a.shape[0]
    if a.shape != (n, n):
        raise ValueError("matrix must be square")
    if not np.allclose(a, a.T, rtol=0.0, atol=1e-13 * max(1.0, np.abs(a).max(initial=0.0))):
        raise ValueError("matrix must be symmetric")
    a = 0.5 * (a + a.T)
    v = np.eye(n)

    for _ in range(max_sweeps):
        if off_norm(a) <= tol:
            break
        # entries below this cannot matter for the stopping test
        threshold = tol / max(n, 1) / 4.0
        iu, ju = np.nonzero(np.triu(np.abs(a) > threshold, 1))
        for p, q in zip(iu.tolist(), ju.tolist()):
            if abs(a[p, q]) > threshold:
                _rotate(a, v, p, q)
    else:
        if off_norm(a) > tol:
            raise ConvergenceFailure(
                f"off-diagonal norm {off_norm(a):.3e} > {tol:.1e} after {max_sweeps} sweeps"
            )

    w = np.diag(a).copy()
    order = np.argsort(w, kind="stable")
    return w[order], v[:, order]

"""Eigenline bundles over the line of representations, and spectral flow.

The line is ``{q < 1/4}`` (discrete series) glued to ``{(q, 1/2) : q >= 1/4}``.
Over it the field V + V splits into line bundles L(k, +/-) on which HH acts by
scalar functions: ``omega`` and ``epsilon`` for k = 0, and
``1/2 +/- sqrt(discriminant(k, q))`` for k != 0.  Only ``omega`` changes sign,
which is the computable shadow of the K-theory generator.

Every eigenvalue function here is for HH.  D = -HH flips all signs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence

import numpy as np
from scipy.optimize import brentq, linear_sum_assignment

from .eigensolver import jacobi_eigh
from .operators import TruncationWindow, build_H_block, invariant_block
from .param_space import QUARTER, Principal, line_point
from .spectral import Branch


class AmbiguousCrossing(ValueError):
    """An eigenvalue curve touches zero at a sample without changing sign."""


def _result(x):
    x = np.asarray(x)
    return float(x) if x.ndim == 0 else x


def omega(q):
    """Eigenvalue of HH on the distinguished bundle L(0, -); decreasing, zero at q = 1/2."""
    q = np.asarray(q, dtype=float)
    d = np.sqrt(np.abs(q - QUARTER))
    return _result(np.where(q <= QUARTER, 0.5 + d, 0.5 - d))


def epsilon(q):
    """Eigenvalue of HH on L(0, +); at least 1/2, with minimum at q = 1/4."""
    q = np.asarray(q, dtype=float)
    return _result(0.5 + np.sqrt(np.abs(q - QUARTER)))


def m_of_q(k: int, q: float) -> float:
    """H0-weight of the plane carrying the rank-2 bundle N(k) over q."""
    if k == 0:
        raise ValueError("k = 0 is carried by L(0, +/-), not by a plane N(k)")
    if q >= QUARTER:
        return 0.5 + k
    a = math.sqrt(QUARTER - q)
    return 0.5 + a + k if k > 0 else 0.5 - a + k


def discriminant(k: int, q):
    q = np.asarray(q, dtype=float)
    a = np.sqrt(np.abs(QUARTER - q))
    below = QUARTER - q + 2.0 * (k * k + 2.0 * abs(k) * a)
    above = q - QUARTER + 2.0 * k * k
    return _result(np.where(q <= QUARTER, below, above))


def lambda_pm(k: int, q):
    """``(lambda_plus, lambda_minus)`` on L(k, +) and L(k, -), ``k != 0``."""
    if k == 0:
        raise ValueError("lambda_pm needs k != 0; use omega/epsilon for k = 0")
    r = np.sqrt(discriminant(k, q))
    return _result(0.5 + r), _result(0.5 - r)


@dataclass(frozen=True)
class BundleId:
    k: int
    branch: Branch

    @property
    def name(self) -> str:
        return f"L{self.k}{self.branch.value}"


L0_MINUS = BundleId(0, Branch.MINUS)
L0_PLUS = BundleId(0, Branch.PLUS)


def bundle_eigenvalue(b: BundleId, q):
    if b.k == 0:
        return omega(q) if b.branch is Branch.MINUS else epsilon(q)
    plus, minus = lambda_pm(b.k, q)
    return plus if b.branch is Branch.PLUS else minus


@dataclass(frozen=True)
class EigenCurveSample:
    """Unit eigenvector of a bundle at ``q`` in plane coordinates.

    For k != 0 the coordinates are w.r.t. ``(f_m, 0), (0, f_{m-1})`` with
    ``m = m_of_q(k, q)``.  For k = 0 they are w.r.t. ``(f_l, 0), (0, f_{-l})``
    below 1/4 (``extremal`` is True) and ``(f_{1/2}, 0), (0, f_{-1/2})`` above,
    which coincide at q = 1/4.
    """

    q: float
    eigenvalue: float
    vector: np.ndarray
    m: Optional[float]
    extremal: bool
    residual: float


def _block_matrix(b: BundleId, q: float) -> tuple[np.ndarray, Optional[float]]:
    if b.k == 0:
        if q < QUARTER:
            ell = 0.5 + math.sqrt(QUARTER - q)
            return np.diag([ell, ell]), None
        return invariant_block(Principal(q, 0.5), 0.5), 0.5
    m = m_of_q(b.k, q)
    return invariant_block(line_point(q), m), m


def bundle_vector(b: BundleId, q: float) -> EigenCurveSample:
    lam = float(bundle_eigenvalue(b, q))
    block, m = _block_matrix(b, q)
    if b.k == 0:
        v = np.array([1.0, -1.0 if b.branch is Branch.MINUS else 1.0]) / math.sqrt(2.0)
    else:
        # first row of (block - lam) v = 0; s > 0 off k = 0 so the first entry is positive
        s = block[0, 1]
        v = np.array([s, lam - m])
        v /= np.linalg.norm(v)
    residual = float(np.linalg.norm(block @ v - lam * v))
    return EigenCurveSample(float(q), lam, v, m, b.k == 0 and q < QUARTER, residual)


def bundle_curve(b: BundleId, qs: Sequence[float]) -> list[EigenCurveSample]:
    """Samples along ``qs`` with eigenvector signs kept continuous."""
    out: list[EigenCurveSample] = []
    for q in qs:
        s = bundle_vector(b, q)
        if out and float(out[-1].vector @ s.vector) < 0.0:
            s = EigenCurveSample(s.q, s.eigenvalue, -s.vector, s.m, s.extremal, s.residual)
        out.append(s)
    return out


@dataclass(frozen=True)
class SpectralFlowReport:
    crossings: tuple[tuple[float, int], ...]
    net_flow: int

    def __post_init__(self):
        if self.net_flow != sum(d for _, d in self.crossings):
            raise ValueError("net flow must equal the sum of crossing directions")


ZERO_TOL = 1e-12
ENDPOINT_GAP = 0.1


def _flow_from_samples(qs: np.ndarray, vals: np.ndarray, locate) -> SpectralFlowReport:
    n = len(qs)
    crossings: list[tuple[float, int]] = []
    i = 0
    while i < n - 1:
        a, b = vals[i], vals[i + 1]
        if abs(b) < ZERO_TOL:
            # sample sits on the zero: look past it for the sign on the far side
            j = i + 1
            while j < n and abs(vals[j]) < ZERO_TOL:
                j += 1
            if j == n or np.sign(vals[j]) == np.sign(a):
                raise AmbiguousCrossing(f"eigenvalue touches 0 at q={qs[i + 1]!r} without changing sign")
            crossings.append((float(qs[i + 1]), int(np.sign(vals[j]))))
            i = j
            continue
        if np.sign(a) != np.sign(b):
            crossings.append((locate(qs[i], qs[i + 1], a, b), 1 if b > a else -1))
        i += 1
    return SpectralFlowReport(tuple(crossings), sum(d for _, d in crossings))


def spectral_flow(
    family: Callable[[float], float],
    q_range: tuple[float, float],
    samples: int,
    xtol: float = 1e-12,
) -> SpectralFlowReport:
    """Signed count of zero crossings of an eigenvalue curve over ``q_range``.

    A crossing from negative to positive counts +1.  Crossings are bracketed
    on a uniform grid and refined with Brent's method.
    """
    qmin, qmax = q_range
    if not qmax > qmin or samples < 2:
        raise ValueError("need a nonempty range and at least 2 samples")
    qs = np.linspace(qmin, qmax, samples)
    vals = np.array([float(family(q)) for q in qs])
    if abs(vals[0]) < ENDPOINT_GAP or abs(vals[-1]) < ENDPOINT_GAP:
        raise ValueError(f"family must stay at least {ENDPOINT_GAP} away from 0 at the endpoints")

    def locate(lo, hi, flo, fhi):
        return float(brentq(lambda x: float(family(x)), lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps))

    return _flow_from_samples(qs, vals, locate)


def sampled_flow(qs: Sequence[float], values: Sequence[float]) -> SpectralFlowReport:
    """Spectral flow of a tabulated curve; crossings placed by linear interpolation."""
    qs = np.asarray(qs, dtype=float)
    vals = np.asarray(values, dtype=float)

    def locate(lo, hi, flo, fhi):
        return float(lo + (hi - lo) * flo / (flo - fhi))

    return _flow_from_samples(qs, vals, locate)


def line_operator(q: float, kmax: int) -> np.ndarray:
    """HH over the line point ``q`` with blocks ordered by k = -kmax..kmax.

    On the discrete side the extremal pair occupies the k = 0 slot, so basis
    vectors on both sides of q = 1/4 correspond and eigenvectors can be
    compared across the gluing point.
    """
    op = build_H_block(line_point(q), TruncationWindow(kmax))
    order = np.argsort(op.blocks, kind="stable")
    return op.matrix[np.ix_(order, order)]


@dataclass(frozen=True)
class TrackedSpectrum:
    qs: np.ndarray
    values: np.ndarray  # shape (len(qs), n_curves)


def _clusters(vals: np.ndarray, tol: float) -> list[slice]:
    out = []
    start = 0
    for i in range(1, len(vals) + 1):
        if i == len(vals) or vals[i] - vals[i - 1] > tol:
            out.append(slice(start, i))
            start = i
    return out


def track_line_spectrum(qs: Sequence[float], kmax: int, cluster_tol: float = 1e-8) -> TrackedSpectrum:
    """Follow every eigenvalue of HH along ``qs`` by maximal eigenvector overlap.

    Degenerate eigenspaces are handled by projecting the previous vectors into
    the cluster and re-orthonormalising, so curves keep their identity through
    exact degeneracies such as the merge of omega and epsilon below q = 1/4.
    """
    qs = np.asarray(qs, dtype=float)
    vals, vecs = jacobi_eigh(line_operator(qs[0], kmax))
    n = len(vals)
    out = np.empty((len(qs), n))
    out[0] = vals
    prev = vecs
    for step in range(1, len(qs)):
        w, v = jacobi_eigh(line_operator(qs[step], kmax))
        clusters = _clusters(w, cluster_tol)
        cluster_of = np.empty(n, dtype=int)
        for ci, sl in enumerate(clusters):
            cluster_of[sl] = ci
        # weight of each previous vector inside each cluster
        proj = (prev.T @ v) ** 2
        weight = np.stack([proj[:, sl].sum(axis=1) for sl in clusters], axis=1)
        score = weight[:, cluster_of]
        rows, cols = linear_sum_assignment(score, maximize=True)
        new = np.empty_like(prev)
        for ci, sl in enumerate(clusters):
            members = rows[np.isin(cols, np.arange(n)[sl])]
            basis = v[:, sl]
            if len(members) == 1:
                new[:, members[0]] = basis[:, 0]
                continue
            projected = basis @ (basis.T @ prev[:, members])
            q_, r_ = np.linalg.qr(projected)
            if np.min(np.abs(np.diag(r_))) < 1e-8:
                q_ = basis
            # keep the orientation of each projected vector
            q_ = q_ * np.where(np.sum(q_ * projected, axis=0) < 0.0, -1.0, 1.0)
            new[:, members] = q_
        flips = np.sum(new * prev, axis=0) < 0.0
        new[:, flips] *= -1.0
        out[step, rows] = w[cols]
        prev = new
    return TrackedSpectrum(qs, out)


def analytic_curves(kmax: int) -> dict[str, Callable[[float], float]]:
    """All bundle eigenvalue functions with ``|k| <= kmax`` (k and -k agree)."""
    curves: dict[str, Callable[[float], float]] = {"omega": omega, "epsilon": epsilon}
    for k in range(1, kmax + 1):
        curves[f"lambda+{k}"] = lambda q, k=k: lambda_pm(k, q)[0]
        curves[f"lambda-{k}"] = lambda q, k=k: lambda_pm(k, q)[1]
    return curves

"""Localised spectra of the Dirac operator: closed forms and a brute-force oracle.

All spectra here are spectra of D = -HH.  Multiplicity of a closed-form entry
is decided by exact coincidence of the algebraic values over all k, never by
numerical proximity; the oracle groups eigenvalues with a clustering tolerance.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Optional, Union

import numpy as np

from .eigensolver import jacobi_eigh
from .operators import TruncationWindow, build_D_hat
from .param_space import QUARTER, Discrete, ParamPoint, Principal

CLUSTER_TOL = 1e-8


class Branch(Enum):
    PLUS = "+"
    MINUS = "-"

    @property
    def sign(self) -> int:
        return 1 if self is Branch.PLUS else -1


@dataclass(frozen=True, order=True)
class BranchLabel:
    k: int
    branch: Branch = field(compare=False)

    def __str__(self):
        return f"k={self.k}{self.branch.value}"


EXTREMAL = "extremal"
COALESCED = "coalesced"

Label = Union[BranchLabel, str, None]


@dataclass(frozen=True)
class SpectrumEntry:
    """One eigenvalue of the localised operator.

    ``multiplicity`` is the multiplicity of the value in the whole localised
    spectrum.  ``copies`` is how many eigenvectors this entry itself accounts
    for: a principal-series entry ``(k, +/-)`` is a single vector even when
    another k produces the same value, whereas discrete-series entries carry
    one vector over each of the two representations.
    """

    eigenvalue: float
    multiplicity: int
    label: Label = None
    copies: int = 1

    def __post_init__(self):
        if not math.isfinite(self.eigenvalue):
            raise ValueError("eigenvalue must be finite")
        if self.multiplicity < 1 or self.copies < 0:
            raise ValueError("multiplicity must be positive and copies nonnegative")


@dataclass(frozen=True)
class LocalSpectrum:
    point: ParamPoint
    entries: tuple[SpectrumEntry, ...]
    kmax: int
    # oracle only: eigenvalues outside the compared part of the window
    excluded: tuple[float, ...] = ()

    def values(self) -> np.ndarray:
        """Eigenvalues repeated once per eigenvector, ascending."""
        vals = [e.eigenvalue for e in self.entries for _ in range(e.copies)]
        return np.sort(np.array(vals, dtype=float))

    def __len__(self):
        return len(self.entries)


def _sort_key(e: SpectrumEntry):
    lab = e.label
    if isinstance(lab, BranchLabel):
        return (e.eigenvalue, 0, lab.k, lab.branch.value)
    return (e.eigenvalue, 1, 0, str(lab))


def dirac_eigenvalue(q: float, m: float, branch: Branch) -> float:
    """Eigenvalue ``-1/2 +/- sqrt(1/4 + q + 2 m (m - 1))`` of D on the plane E_m."""
    return -0.5 + branch.sign * math.sqrt(QUARTER + q + 2.0 * m * (m - 1.0))


def closed_form_spectrum(p: ParamPoint, kmax: int) -> LocalSpectrum:
    if int(kmax) != kmax or kmax < 0:
        raise ValueError(f"kmax must be a nonnegative integer, got {kmax!r}")
    kmax = int(kmax)
    entries: list[SpectrumEntry] = []

    if isinstance(p, Principal):
        q, tau = p.q, p.tau
        for k in range(-kmax, kmax + 1):
            if p.is_limit_of_discrete_series and k == 0:
                entries.append(SpectrumEntry(-0.5, 2, COALESCED, copies=2))
                continue
            m = tau + k
            root = math.sqrt(QUARTER + q + 2.0 * m * (m - 1.0))
            if tau == 0.0:
                mult = 2  # k and 1 - k give the same value
            elif tau == 0.5:
                mult = 1 if k == 0 else 2  # k and -k give the same value
            else:
                mult = 1
            for br in Branch:
                entries.append(SpectrumEntry(-0.5 + br.sign * root, mult, BranchLabel(k, br)))
    else:
        ell = p.ell
        entries.append(SpectrumEntry(-ell, 2, EXTREMAL, copies=2))
        for k in range(1, kmax + 1):
            root = math.sqrt(QUARTER + ell * (1.0 - ell) + 2.0 * (ell + k) * (ell + k - 1.0))
            for br in Branch:
                entries.append(SpectrumEntry(-0.5 + br.sign * root, 2, BranchLabel(k, br), copies=2))

    entries.sort(key=_sort_key)
    return LocalSpectrum(p, tuple(entries), kmax)


def oracle_spectrum(
    p: ParamPoint,
    w: TruncationWindow,
    interior_kmax: Optional[int] = None,
    cluster_tol: float = CLUSTER_TOL,
) -> LocalSpectrum:
    """Eigenvalues of the truncated D by brute-force Jacobi diagonalisation.

    The solver sees only the dense matrix.  Afterwards each eigenvalue cluster
    is split by how much of its eigenspace lives on blocks ``|k| <=
    interior_kmax`` (default ``w.kmax - 2``); that part is returned as entries,
    the rest goes to ``excluded``.  The count is the trace of the product of
    the two projectors, so it does not depend on how the solver chose a basis
    inside a degenerate eigenspace.
    """
    if interior_kmax is None:
        interior_kmax = max(w.kmax - 2, 0)
    op = build_D_hat(p, w)
    vals, vecs = jacobi_eigh(op.matrix)
    interior = np.abs(op.blocks) <= interior_kmax

    entries: list[SpectrumEntry] = []
    excluded: list[float] = []
    start = 0
    n = len(vals)
    while start < n:
        stop = start + 1
        while stop < n and vals[stop] - vals[stop - 1] <= cluster_tol:
            stop += 1
        cluster = vecs[:, start:stop]
        per_vector = np.sum(cluster[interior, :] ** 2, axis=0)
        n_int = int(round(float(per_vector.sum())))
        size = stop - start
        # a near-degenerate cluster keeps its individual values; which ones count
        # as interior is decided by per-vector mass
        order = np.argsort(-per_vector, kind="stable")
        kept = vals[start:stop][np.sort(order[:n_int])]
        dropped = vals[start:stop][np.sort(order[n_int:])]
        if n_int and kept.max() - kept.min() <= 1e-12 * max(1.0, float(np.abs(kept).max())):
            entries.append(SpectrumEntry(float(np.mean(kept)), size, None, copies=n_int))
        else:
            entries.extend(SpectrumEntry(float(v), size, None) for v in kept)
        excluded.extend(float(v) for v in dropped)
        start = stop
    return LocalSpectrum(p, tuple(entries), interior_kmax, tuple(excluded))


@dataclass(frozen=True)
class ComparisonReport:
    ok: bool
    max_deviation: float
    n_compared: int
    unmatched_oracle: tuple[float, ...] = ()
    unmatched_reference: tuple[float, ...] = ()

    def __bool__(self):
        return self.ok

    @property
    def is_mismatch(self) -> bool:
        return not self.ok


def compare_spectra(a: LocalSpectrum, b: LocalSpectrum, tol: float) -> ComparisonReport:
    """Match the multiset of ``b`` (oracle) into ``a`` (reference) within ``tol``.

    Greedy matching of sorted values is optimal for this 1-D interval
    matching.  When both spectra cover the same kmax every reference value
    must be used as well.
    """
    ref = a.values()
    orc = b.values()
    used = np.zeros(len(ref), dtype=bool)
    unmatched_b: list[float] = []
    worst = 0.0
    j0 = 0
    for x in orc:
        while j0 < len(ref) and (used[j0] or ref[j0] < x - tol):
            j0 += 1
        j = j0
        while j < len(ref) and used[j]:
            j += 1
        if j < len(ref) and abs(ref[j] - x) <= tol:
            used[j] = True
            worst = max(worst, abs(ref[j] - x))
        else:
            unmatched_b.append(float(x))
    unmatched_a = tuple(float(x) for x in ref[~used]) if a.kmax == b.kmax else ()
    ok = not unmatched_b and not unmatched_a
    return ComparisonReport(ok, worst, len(orc), tuple(unmatched_b), unmatched_a)

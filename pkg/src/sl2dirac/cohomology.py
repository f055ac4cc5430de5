"""Localised Dirac cohomology: the kernel of D at a point of the tempered dual.

Zero is an eigenvalue only on the principal series, only in the plane
``E_tau`` (k = 0), and exactly on the parabolic arc ``q + 2 tau (tau - 1) = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

import numpy as np

from .operators import invariant_block
from .param_space import ParamPoint, Principal

ARC_TOL = 1e-9
SPINOR_RESIDUAL_TOL = 1e-10
ARC_HALF_WIDTH = 1.0 / math.sqrt(8.0)


def arc_polynomial(q: float, tau: float) -> float:
    return q + 2.0 * tau * (tau - 1.0)


def on_arc_exact(q: Fraction, tau: Fraction) -> bool:
    """Exact arc membership for rational ``(q, tau)``."""
    q, tau = Fraction(q), Fraction(tau)
    # tau in [1/2 - 1/sqrt 8, 1/2 + 1/sqrt 8]  <=>  (tau - 1/2)^2 <= 1/8
    return q + 2 * tau * (tau - 1) == 0 and (tau - Fraction(1, 2)) ** 2 <= Fraction(1, 8)


def on_arc(p: ParamPoint, tol: float = ARC_TOL) -> bool:
    if not isinstance(p, Principal):
        return False
    if abs(arc_polynomial(p.q, p.tau)) > tol:
        return False
    return abs(p.tau - 0.5) <= ARC_HALF_WIDTH + tol


def kernel_spinor(tau: float) -> np.ndarray:
    """Unit null vector ``(sqrt(1 - tau), -sqrt(tau))`` of the block on ``E_tau``."""
    return np.array([math.sqrt(1.0 - tau), -math.sqrt(tau)])


@dataclass(frozen=True)
class CohomologyResult:
    point: ParamPoint
    dimension: int
    kernel_spinor: Optional[np.ndarray] = None
    residual: Optional[float] = None

    def __post_init__(self):
        if self.dimension not in (0, 1):
            raise ValueError("localised Dirac cohomology has dimension 0 or 1")
        if (self.kernel_spinor is not None) != (self.dimension == 1):
            raise ValueError("a spinor is present exactly when the dimension is 1")


def dirac_cohomology(p: ParamPoint, tol: float = ARC_TOL) -> CohomologyResult:
    if not on_arc(p, tol):
        return CohomologyResult(p, 0)
    spinor = kernel_spinor(p.tau)
    # exactly on the arc this is rounding noise; within tol of it, O(tol)
    residual = float(np.linalg.norm(invariant_block(p, p.tau) @ spinor))
    return CohomologyResult(p, 1, spinor, residual)

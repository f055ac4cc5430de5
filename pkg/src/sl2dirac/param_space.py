"""Tempered-dual parameter space, its compact disc model, and Plancherel weights.

Points of the tempered dual of the universal cover of SL(2, R) are either a
discrete-series Casimir value ``q < 1/4`` (the pair of representations with
``q = l(1 - l)``) or a principal-series pair ``(q, tau)`` with ``q >= 1/4`` and
``tau`` on the circle ``[0, 1)``.  The two branches are glued at the
limit-of-discrete-series ``(1/4, 1/2)``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Union

QUARTER = 0.25


def _canonical_tau(tau: float) -> float:
    t = math.fmod(float(tau), 1.0)
    if t < 0.0:
        t += 1.0
    # fmod of a tiny negative number can round up to exactly 1.0
    if t >= 1.0:
        t = 0.0
    return t


@dataclass(frozen=True)
class Discrete:
    """Discrete-series point: Casimir value ``q < 1/4``."""

    q: float

    def __post_init__(self):
        q = float(self.q)
        if not math.isfinite(q) or q >= QUARTER:
            raise ValueError(f"discrete-series point needs finite q < 1/4, got {self.q!r}")
        object.__setattr__(self, "q", q)

    @property
    def ell(self) -> float:
        """Lowest H0-weight ``l = 1/2 + sqrt(1/4 - q)``; always ``> 1/2``."""
        return 0.5 + math.sqrt(QUARTER - self.q)

    @classmethod
    def from_ell(cls, ell: float) -> "Discrete":
        if ell <= 0.5:
            raise ValueError(f"discrete series needs l > 1/2, got {ell!r}")
        return cls(ell * (1.0 - ell))


@dataclass(frozen=True)
class Principal:
    """Principal-series point ``(q, tau)``; ``tau`` is stored modulo 1."""

    q: float
    tau: float

    def __post_init__(self):
        q = float(self.q)
        if not math.isfinite(q) or q < QUARTER:
            raise ValueError(f"principal-series point needs finite q >= 1/4, got {self.q!r}")
        if not math.isfinite(float(self.tau)):
            raise ValueError(f"tau must be finite, got {self.tau!r}")
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "tau", _canonical_tau(self.tau))

    @property
    def sigma(self) -> float:
        return math.sqrt(self.q - QUARTER)

    @property
    def is_limit_of_discrete_series(self) -> bool:
        return self.q == QUARTER and self.tau == 0.5


ParamPoint = Union[Discrete, Principal]

LIMIT_OF_DISCRETE_SERIES = Principal(QUARTER, 0.5)


def line_point(q: float) -> ParamPoint:
    """Point of the real line inside the parameter space (tau = 1/2 above 1/4)."""
    if q < QUARTER:
        return Discrete(q)
    return Principal(q, 0.5)


def approx_equal(a: ParamPoint, b: ParamPoint, tol: float) -> bool:
    """Compare two points up to ``tol``, treating tau as a circle coordinate."""
    if type(a) is not type(b):
        return False
    if abs(a.q - b.q) > tol:
        return False
    if isinstance(a, Principal):
        d = abs(a.tau - b.tau)
        return min(d, 1.0 - d) <= tol
    return True


@dataclass(frozen=True)
class DiscPoint:
    """Point of the compact model: the closed unit disc glued to the segment [1, 2]."""

    z: complex

    def __post_init__(self):
        z = complex(self.z)
        object.__setattr__(self, "z", z)
        # small slack: images of the formulas can overshoot |z| = 1 by rounding
        in_disc = abs(z) <= 1.0 + 1e-12
        in_segment = z.imag == 0.0 and 1.0 <= z.real <= 2.0
        if not (in_disc or in_segment):
            raise ValueError(f"{z!r} is not in the unit disc or on [1, 2]")

    @property
    def on_segment(self) -> bool:
        return self.z.imag == 0.0 and 1.0 <= self.z.real <= 2.0


def to_compact_model(p: ParamPoint) -> DiscPoint:
    if isinstance(p, Discrete):
        return DiscPoint(complex(2.0 - 1.0 / (1.25 - p.q), 0.0))
    r = 1.0 / (p.q + 0.75)
    return DiscPoint(r * cmath.exp(2j * math.pi * (p.tau - 0.5)))


def homotopy_h(t: float, y: DiscPoint) -> DiscPoint:
    """Contraction of the compact model onto the point 2.

    The first half kills the imaginary part, the second slides the real axis
    to 2; the segment [1, 2] is mapped into itself throughout.
    """
    if not 0.0 <= t <= 1.0:
        raise ValueError(f"homotopy parameter must lie in [0, 1], got {t!r}")
    x, v = y.z.real, y.z.imag
    if t <= 0.5:
        return DiscPoint(complex(x, (1.0 - 2.0 * t) * v))
    s = 2.0 * t - 1.0
    # x + (2 - x) s, arranged so that t = 1 lands exactly on 2
    return DiscPoint(complex(min(x * (1.0 - s) + 2.0 * s, 2.0), 0.0))


def helix_coordinates(p: Principal, eigenvalue: float) -> tuple[float, float, float]:
    """Cylindrical coordinates ``(r, theta, z)`` of a principal-series spectral point."""
    if not isinstance(p, Principal):
        raise TypeError("helix coordinates are defined on the principal series only")
    r = 1.0 / (p.q + 0.75)
    theta = 2.0 * math.pi * (p.tau - 0.5)
    return r, theta, float(eigenvalue)


def plancherel_density(p: ParamPoint) -> float:
    """Plancherel weight: ``sigma * Re tanh(pi (sigma + i tau))`` or ``l - 1/2``.

    ``Re tanh(a + ib) = sinh 2a / (cosh 2a + cos 2b)`` and the denominator is
    rewritten as ``2 (sinh^2 a + cos^2 b)`` to stay accurate near its zero.
    At the limit-of-discrete-series the expression is ``0 * inf``; it is set to
    0 there, the value of the discrete-series weight at ``l = 1/2``.
    """
    if isinstance(p, Discrete):
        return p.ell - 0.5
    sigma = p.sigma
    if sigma == 0.0:
        return 0.0
    a = math.pi * sigma
    b = math.pi * p.tau
    denom = 2.0 * (math.sinh(a) ** 2 + math.cos(b) ** 2)
    return sigma * math.sinh(2.0 * a) / denom

"""Generators H0, H+, H- and the block operator on a truncated H0-eigenbasis.

The block operator

    HH = [[H0, H+], [H-, -H0]]

acts on V + V.  It leaves each plane ``E_m = span{(f_m, 0), (0, f_{m-1})}``
invariant, so truncating by whole planes gives an exactly block-diagonal
matrix.  The Dirac operator on the Fourier side is ``-HH``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from .param_space import Discrete, ParamPoint, Principal

RADICAND_TOL = 1e-12


class NegativeRadicand(ValueError):
    """A ladder coefficient was requested outside the unitary range."""


class InadmissibleIndex(ValueError):
    """An H0-weight that does not label an invariant plane at this point."""


class Direction(Enum):
    UP = "up"
    DOWN = "down"


class Component(Enum):
    TOP = "top"
    BOTTOM = "bottom"


@dataclass(frozen=True)
class BasisIndex:
    m: float
    component: Component


def ladder_coefficient(q: float, m: float, direction: Direction) -> float:
    """Matrix element of H+ (``f_m -> f_{m+1}``) or H- (``f_m -> f_{m-1}``).

    The coefficient is ``sqrt(q + m(m +/- 1))``.  Radicands in
    ``[-RADICAND_TOL, 0)`` are clamped to zero; these occur at the ends of the
    discrete-series ladders, where the coefficient vanishes.
    """
    if direction is Direction.UP:
        radicand = q + m * (m + 1.0)
    else:
        radicand = q + m * (m - 1.0)
    if radicand < -RADICAND_TOL:
        raise NegativeRadicand(f"q + m(m{'+' if direction is Direction.UP else '-'}1) = {radicand!r} < 0 "
                               f"at q={q!r}, m={m!r}")
    return math.sqrt(max(radicand, 0.0))


@dataclass(frozen=True)
class TruncationWindow:
    """Keep the invariant planes with block index ``|k| <= kmax``.

    On the principal series block k is ``E_{tau + k}``.  On the discrete series
    block ``k >= 1`` is ``E_{l + k}`` (inside ``W_{l,+}``), block ``k <= -1`` is
    ``E_{1 - l + k}`` (inside ``W_{l,-}``), and block 0 is the pair of
    extremal vectors ``(f_l, 0)`` and ``(0, f_{-l})``.
    """

    kmax: int

    def __post_init__(self):
        if int(self.kmax) != self.kmax or self.kmax < 1:
            raise ValueError(f"kmax must be an integer >= 1, got {self.kmax!r}")


@dataclass(frozen=True)
class TruncatedOperator:
    matrix: np.ndarray
    basis: tuple[BasisIndex, ...]
    point: ParamPoint
    # block index k of every basis vector, parallel to ``basis``
    blocks: np.ndarray = field(repr=False)

    def __post_init__(self):
        n = len(self.basis)
        if self.matrix.shape != (n, n):
            raise ValueError("matrix dimension does not match basis length")
        if not np.allclose(self.matrix, self.matrix.T, rtol=0.0, atol=1e-14):
            raise ValueError("truncated operator is not symmetric")
        self.matrix.setflags(write=False)
        self.blocks.setflags(write=False)

    def __neg__(self) -> "TruncatedOperator":
        return TruncatedOperator(-self.matrix, self.basis, self.point, self.blocks.copy())

    @property
    def dim(self) -> int:
        return len(self.basis)


def block_weight(p: ParamPoint, k: int) -> float:
    """H0-weight ``m`` labelling block ``k`` (the plane ``E_m``); ``k != 0`` on the discrete series."""
    if isinstance(p, Principal):
        return p.tau + k
    if k == 0:
        raise InadmissibleIndex("block 0 of a discrete-series point is the extremal pair, not a plane")
    if k > 0:
        return p.ell + k
    return 1.0 - p.ell + k


def _is_admissible(p: ParamPoint, m: float) -> bool:
    if isinstance(p, Principal):
        return abs((m - p.tau) - round(m - p.tau)) <= 1e-12
    ell = p.ell
    up = m - ell
    down = -ell - m
    return (up >= 1 - 1e-12 and abs(up - round(up)) <= 1e-12) or (
        down >= -1e-12 and abs(down - round(down)) <= 1e-12
    )


def invariant_block(p: ParamPoint, m: float) -> np.ndarray:
    """The 2x2 restriction of HH to ``E_m`` in the basis ``(f_m, 0), (0, f_{m-1})``."""
    if not _is_admissible(p, m):
        raise InadmissibleIndex(f"m={m!r} does not label an invariant plane at {p!r}")
    s = ladder_coefficient(p.q, m, Direction.DOWN)
    return np.array([[m, s], [s, -(m - 1.0)]])


def _block_ks(p: ParamPoint, w: TruncationWindow) -> list[int]:
    if isinstance(p, Principal):
        return list(range(-w.kmax, w.kmax + 1))
    # ascending in m: the W_- ladder sits at negative weights
    return list(range(-w.kmax, 0)) + list(range(1, w.kmax + 1))


def build_H_block(p: ParamPoint, w: TruncationWindow) -> TruncatedOperator:
    """HH truncated to whole invariant planes.

    Basis order: ``(TOP, m), (BOTTOM, m - 1)`` pairs with m ascending, then on
    the discrete series the two extremal vectors ``(TOP, l)``, ``(BOTTOM, -l)``.
    """
    ks = _block_ks(p, w)
    n = 2 * len(ks) + (2 if isinstance(p, Discrete) else 0)
    mat = np.zeros((n, n))
    basis: list[BasisIndex] = []
    blocks: list[int] = []
    for i, k in enumerate(ks):
        m = block_weight(p, k)
        top, bot = 2 * i, 2 * i + 1
        s = ladder_coefficient(p.q, m, Direction.DOWN)
        mat[top, top] = m
        mat[bot, bot] = -(m - 1.0)
        mat[top, bot] = mat[bot, top] = s
        basis += [BasisIndex(m, Component.TOP), BasisIndex(m - 1.0, Component.BOTTOM)]
        blocks += [k, k]
    if isinstance(p, Discrete):
        ell = p.ell
        mat[n - 2, n - 2] = ell
        mat[n - 1, n - 1] = ell
        basis += [BasisIndex(ell, Component.TOP), BasisIndex(-ell, Component.BOTTOM)]
        blocks += [0, 0]
    return TruncatedOperator(mat, tuple(basis), p, np.array(blocks, dtype=int))


def build_D_hat(p: ParamPoint, w: TruncationWindow) -> TruncatedOperator:
    """Fourier-side Dirac operator, ``-HH``, on the same basis."""
    return -build_H_block(p, w)


@dataclass(frozen=True)
class CliffordGenerators:
    c0: np.ndarray
    c1: np.ndarray
    c2: np.ndarray

    def __iter__(self):
        return iter((self.c0, self.c1, self.c2))


PAULI = (
    np.array([[1, 0], [0, -1]], dtype=complex),
    np.array([[0, 1], [1, 0]], dtype=complex),
    np.array([[0, 1j], [-1j, 0]], dtype=complex),
)


def clifford_generators() -> CliffordGenerators:
    """Clifford multiplication ``c(X_k) = i sigma_k`` with the sign conventions above."""
    return CliffordGenerators(*(1j * s for s in PAULI))

import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sl2dirac.operators import (
    Component,
    Direction,
    InadmissibleIndex,
    NegativeRadicand,
    TruncationWindow,
    block_weight,
    build_D_hat,
    build_H_block,
    clifford_generators,
    invariant_block,
    ladder_coefficient,
)
from sl2dirac.param_space import LIMIT_OF_DISCRETE_SERIES, Discrete, Principal

points = st.one_of(
    st.builds(Principal, st.floats(0.25, 50), st.floats(0, 1, exclude_max=True)),
    st.builds(Discrete, st.floats(-50, 0.25, exclude_max=True)),
)
windows = st.builds(TruncationWindow, st.integers(1, 6))


def test_ladder_examples():
    ell = 1.7
    assert ladder_coefficient(ell * (1 - ell), ell, Direction.DOWN) == 0.0
    assert ladder_coefficient(ell * (1 - ell), -ell, Direction.UP) == 0.0
    assert ladder_coefficient(0.25, 0.5, Direction.DOWN) == 0.0
    assert ladder_coefficient(2.0, 0.5, Direction.UP) == pytest.approx(math.sqrt(11) / 2, abs=1e-15)


def test_ladder_clamps_and_rejects():
    assert ladder_coefficient(-0.75 - 1e-13, 1.5, Direction.DOWN) == 0.0
    with pytest.raises(NegativeRadicand):
        ladder_coefficient(-1.0, 0.5, Direction.DOWN)


@given(st.floats(0.25, 100), st.floats(-30, 30))
def test_up_down_describe_one_matrix_element(q, m):
    assert ladder_coefficient(q, m, Direction.UP) == pytest.approx(
        ladder_coefficient(q, m + 1, Direction.DOWN), rel=1e-12, abs=1e-12)


def test_invariant_block_examples():
    np.testing.assert_allclose(invariant_block(Principal(0.5, 0.5), 0.5), [[0.5, 0.5], [0.5, 0.5]], atol=1e-15)
    np.testing.assert_array_equal(invariant_block(LIMIT_OF_DISCRETE_SERIES, 0.5), 0.5 * np.eye(2))
    np.testing.assert_allclose(invariant_block(Principal(2.0, 0.0), 1.0),
                               [[1, math.sqrt(2)], [math.sqrt(2), 0]], atol=1e-15)


def test_invariant_block_admissibility():
    with pytest.raises(InadmissibleIndex):
        invariant_block(Principal(2.0, 0.3), 0.5)
    d = Discrete(0.0)  # l = 1
    invariant_block(d, 2.0)
    invariant_block(d, -1.0)
    with pytest.raises(InadmissibleIndex):
        invariant_block(d, 1.0)  # l itself is an extremal vector, not a plane
    with pytest.raises(InadmissibleIndex):
        invariant_block(d, 0.0)


def test_H_block_coalescence_block():
    op = build_H_block(LIMIT_OF_DISCRETE_SERIES, TruncationWindow(2))
    i = [j for j, b in enumerate(op.basis) if b.m == 0.5 and b.component is Component.TOP][0]
    np.testing.assert_array_equal(op.matrix[i:i + 2, i:i + 2], 0.5 * np.eye(2))


def test_H_block_discrete_extremal_rows():
    op = build_H_block(Discrete(0.0), TruncationWindow(3))
    top = op.basis.index(next(b for b in op.basis if b.m == 1.0 and b.component is Component.TOP))
    bot = op.basis.index(next(b for b in op.basis if b.m == -1.0 and b.component is Component.BOTTOM))
    for i in (top, bot):
        row = op.matrix[i].copy()
        assert row[i] == 1.0
        row[i] = 0.0
        assert not row.any()
    # extremal singletons come last
    assert {top, bot} == {op.dim - 2, op.dim - 1}


def test_H_block_spot_entry():
    op = build_H_block(Principal(2.0, 0.5), TruncationWindow(2))
    i = op.basis.index(next(b for b in op.basis if b.m == 1.5 and b.component is Component.TOP))
    assert op.basis[i + 1].m == 0.5 and op.basis[i + 1].component is Component.BOTTOM
    assert op.matrix[i, i + 1] == pytest.approx(math.sqrt(2.75), abs=1e-15)
    assert op.matrix[i, i] == 1.5 and op.matrix[i + 1, i + 1] == -0.5


@given(points, windows)
def test_H_block_is_block_diagonal_with_invariant_blocks(p, w):
    op = build_H_block(p, w)
    a = op.matrix
    assert np.array_equal(a, a.T)
    n_pairs = (op.dim - (2 if isinstance(p, Discrete) else 0)) // 2
    mask = np.zeros_like(a, dtype=bool)
    for i in range(n_pairs):
        sl = slice(2 * i, 2 * i + 2)
        mask[sl, sl] = True
        m = op.basis[2 * i].m
        assert op.basis[2 * i + 1].m == m - 1
        np.testing.assert_array_equal(a[sl, sl], invariant_block(p, m))
    for j in range(2 * n_pairs, op.dim):
        mask[j, j] = True
    assert not a[~mask].any()


@given(st.floats(-50, 0.25, exclude_max=True), windows)
def test_discrete_never_couples_the_two_ladders(q, w):
    p = Discrete(q)
    op = build_H_block(p, w)
    plus = np.array([b.m > 0 for b in op.basis])
    assert not op.matrix[np.ix_(plus, ~plus)].any()


@given(points, windows)
def test_D_hat_is_negation(p, w):
    h, d = build_H_block(p, w), build_D_hat(p, w)
    assert np.array_equal(d.matrix, -h.matrix)
    assert d.basis == h.basis


def test_D_hat_examples():
    d = build_D_hat(LIMIT_OF_DISCRETE_SERIES, TruncationWindow(1))
    i = 2  # blocks k = -1, 0, 1; k = 0 is E_{1/2}
    np.testing.assert_array_equal(d.matrix[i:i + 2, i:i + 2], -0.5 * np.eye(2))
    d = build_D_hat(Discrete(0.0), TruncationWindow(2))
    assert d.matrix[-1, -1] == -1.0 and d.matrix[-2, -2] == -1.0


def test_block_weights():
    assert block_weight(Principal(1.0, 0.3), -2) == pytest.approx(-1.7)
    d = Discrete(-0.75)  # l = 3/2
    assert block_weight(d, 1) == 2.5 and block_weight(d, -1) == -1.5
    with pytest.raises(InadmissibleIndex):
        block_weight(d, 0)


def test_truncation_window_contract():
    with pytest.raises(ValueError):
        TruncationWindow(0)


def test_clifford_relations():
    c = clifford_generators()
    eye = np.eye(2)
    for ck in c:
        np.testing.assert_array_equal(ck @ ck, -eye)
    for a in range(3):
        for b in range(3):
            if a != b:
                np.testing.assert_array_equal(list(c)[a] @ list(c)[b] + list(c)[b] @ list(c)[a], 0 * eye)
    # i s0 . i s1 . i s2 multiplied out by hand: s0 s1 s2 = -i I, so the product is -I
    np.testing.assert_array_equal(c.c0 @ c.c1 @ c.c2, -eye)

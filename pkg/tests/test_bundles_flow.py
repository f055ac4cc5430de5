import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from sl2dirac.bundles_flow import (
    L0_MINUS,
    L0_PLUS,
    AmbiguousCrossing,
    BundleId,
    bundle_curve,
    bundle_vector,
    discriminant,
    epsilon,
    lambda_pm,
    line_operator,
    m_of_q,
    omega,
    sampled_flow,
    spectral_flow,
    track_line_spectrum,
)
from sl2dirac.operators import TruncationWindow
from sl2dirac.param_space import line_point
from sl2dirac.spectral import Branch, oracle_spectrum

ks = st.integers(-12, 12).filter(lambda k: k != 0)
line_q = st.floats(-100, 100, allow_nan=False)


def test_m_of_q_examples():
    assert m_of_q(1, 0.25) == 1.5
    assert m_of_q(1, 0.25 - 1e-300) == 1.5
    assert m_of_q(1, 0.0) == 2.0
    assert m_of_q(-1, 0.0) == -1.0
    with pytest.raises(ValueError):
        m_of_q(0, 1.0)


@given(ks)
def test_m_of_q_continuous_at_quarter(k):
    assert abs(m_of_q(k, 0.25 - 1e-12) - m_of_q(k, 0.25)) < 1e-5


def test_discriminant_examples():
    assert discriminant(1, 0.25) == 2.0
    assert discriminant(0, 0.5) == 0.25
    assert discriminant(2, -0.75) == 17.0


@given(ks, line_q)
def test_discriminant_is_the_block_discriminant(k, q):
    m = m_of_q(k, q)
    assert discriminant(k, q) == pytest.approx(0.25 + q + 2 * m * (m - 1), rel=1e-10, abs=1e-10)


@given(ks, line_q)
def test_discriminant_at_least_two(k, q):
    assert discriminant(k, q) >= 2.0


def test_omega_epsilon_examples():
    assert omega(0.5) == 0.0
    assert omega(0.25) == epsilon(0.25) == 0.5
    assert lambda_pm(1, 0.25)[1] == pytest.approx(0.5 - math.sqrt(2), abs=1e-15)
    with pytest.raises(ValueError):
        lambda_pm(0, 1.0)


def test_omega_strictly_decreasing_and_epsilon_bounded():
    q = np.linspace(-100, 100, 20001)
    assert np.all(np.diff(omega(q)) < 0)
    assert np.all(epsilon(q) >= 0.5)
    assert np.argmin(epsilon(q)) == np.argmin(np.abs(q - 0.25))


@given(ks, line_q)
def test_lambda_bounds(k, q):
    plus, minus = lambda_pm(k, q)
    assert plus >= 0.5 + math.sqrt(2) and minus <= 0.5 - math.sqrt(2)


def test_bifurcation_only_at_quarter():
    q = np.concatenate([np.linspace(-50, 0.2499, 2000), np.linspace(0.2501, 50, 2000)])
    q_below = q[q < 0.25]
    # below 1/4 omega and epsilon coincide as functions; the bundles differ by their vectors
    assert np.all(omega(q_below) == epsilon(q_below))
    assert np.all(omega(q[q > 0.25]) != epsilon(q[q > 0.25]))
    assert omega(0.25) == epsilon(0.25)


def test_lambda_minus_at_k0_differs_from_omega():
    assert 0.5 - math.sqrt(discriminant(0, 0.0)) != omega(0.0)


def test_bundle_vector_examples():
    s = bundle_vector(L0_MINUS, 1.0)
    np.testing.assert_allclose(s.vector, [1 / math.sqrt(2), -1 / math.sqrt(2)])
    assert s.eigenvalue == pytest.approx(0.5 - math.sqrt(3) / 2, abs=1e-15)
    s = bundle_vector(L0_PLUS, 1.0)
    np.testing.assert_allclose(s.vector, [1 / math.sqrt(2), 1 / math.sqrt(2)])
    assert s.eigenvalue == epsilon(1.0)
    s = bundle_vector(L0_MINUS, 0.0)
    assert s.extremal and s.eigenvalue == 1.0 == omega(0.0)
    np.testing.assert_allclose(s.vector, [1 / math.sqrt(2), -1 / math.sqrt(2)])


@given(st.integers(-8, 8), st.sampled_from(list(Branch)), line_q)
def test_bundle_vector_is_eigenvector(k, br, q):
    s = bundle_vector(BundleId(k, br), q)
    assert abs(np.linalg.norm(s.vector) - 1) < 1e-14
    assert s.residual <= 1e-12 * max(1.0, abs(s.eigenvalue))


@pytest.mark.parametrize("bundle", [L0_MINUS, L0_PLUS, BundleId(1, Branch.PLUS), BundleId(-3, Branch.MINUS)])
def test_eigenvector_continuity(bundle):
    qs = np.arange(-5.0, 5.0, 1e-3)
    samples = bundle_curve(bundle, qs)
    dots = [float(a.vector @ b.vector) for a, b in zip(samples, samples[1:])]
    assert min(dots) >= 0.999


@given(st.floats(-30, 30))
def test_decomposition_completeness(q):
    kmax = 5
    expected = [omega(q), epsilon(q)]
    for k in range(1, kmax + 1):
        for kk in (k, -k):
            expected += list(lambda_pm(kk, q))
    orc = oracle_spectrum(line_point(q), TruncationWindow(kmax + 2), interior_kmax=kmax)
    np.testing.assert_allclose(np.sort(-orc.values()), np.sort(expected), atol=1e-9)


def test_flow_examples():
    r = spectral_flow(omega, (-50, 50), 1000)
    assert r.net_flow == -1 and len(r.crossings) == 1
    assert abs(r.crossings[0][0] - 0.5) <= 1e-9 and r.crossings[0][1] == -1
    assert spectral_flow(epsilon, (-50, 50), 1000).crossings == ()
    assert spectral_flow(lambda q: lambda_pm(3, q)[1], (-50, 50), 1000).net_flow == 0
    assert spectral_flow(lambda q: -omega(q), (-50, 50), 1000).net_flow == 1


def test_flow_with_zero_on_a_sample():
    # 101 samples on [-49.5, 50.5] put a grid point exactly on q = 0.5
    r = spectral_flow(omega, (-49.5, 50.5), 101)
    assert r.crossings == ((0.5, -1),)


def test_flow_tangency_is_ambiguous():
    with pytest.raises(AmbiguousCrossing):
        spectral_flow(lambda x: x * x, (-1.0, 1.0), 3)


def test_flow_preconditions():
    with pytest.raises(ValueError):
        spectral_flow(omega, (0.5, 10.0), 100)  # starts on the zero
    with pytest.raises(ValueError):
        spectral_flow(omega, (10.0, 0.0), 100)
    with pytest.raises(ValueError):
        spectral_flow(omega, (0.0, 10.0), 1)


def test_sampled_flow():
    q = np.linspace(-3, 3, 61)
    assert sampled_flow(q, omega(q)).net_flow == -1


def test_line_operator_basis_matches_across_gluing():
    a = line_operator(0.25, 3)
    b = line_operator(0.25 - 1e-14, 3)
    np.testing.assert_allclose(a, b, atol=1e-6)


def test_tracking_follows_analytic_curves():
    qs = np.linspace(10, -10, 201)
    tr = track_line_spectrum(qs, 2)
    table = [omega(qs), epsilon(qs)] + [v for k in (1, 2) for v in lambda_pm(k, qs)]
    for j in range(tr.values.shape[1]):
        assert min(np.max(np.abs(tr.values[:, j] - t)) for t in table) < 1e-9

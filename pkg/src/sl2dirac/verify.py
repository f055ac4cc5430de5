"""Invariant suites shared by ``sl2dirac verify`` and the acceptance tests.

Each suite returns a SuiteResult; none of them raise on failure.  ``perturb``
shifts the parameter fed to the independently computed side (oracle,
sampled family, spinor) so that a run with a nonzero perturbation must fail.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .bundles_flow import (
    AmbiguousCrossing,
    analytic_curves,
    discriminant,
    epsilon,
    lambda_pm,
    omega,
    sampled_flow,
    spectral_flow,
    track_line_spectrum,
)
from .cohomology import SPINOR_RESIDUAL_TOL, arc_polynomial, dirac_cohomology, kernel_spinor
from .operators import TruncationWindow, invariant_block
from .param_space import (
    LIMIT_OF_DISCRETE_SERIES,
    QUARTER,
    Discrete,
    DiscPoint,
    Principal,
    homotopy_h,
    line_point,
    to_compact_model,
)
from .spectral import COALESCED, closed_form_spectrum, compare_spectra, oracle_spectrum

SEED = 20240601


@dataclass
class SuiteResult:
    name: str
    passed: bool
    detail: str
    metrics: dict = field(default_factory=dict)

    def line(self) -> str:
        return f"[{'PASS' if self.passed else 'FAIL'}] {self.name}: {self.detail}"


def _shift(p, delta: float):
    if delta == 0.0:
        return p
    if isinstance(p, Principal):
        return Principal(p.q + delta, p.tau + delta)
    return Discrete(min(p.q + delta, QUARTER - 1e-9))


def random_points(n: int, seed: int = SEED):
    """Half principal (q in [1/4, 50], tau in [0, 1)), half discrete (q in [-50, 1/4))."""
    rng = np.random.default_rng(seed)
    pts = []
    for i in range(n):
        if i % 2 == 0:
            pts.append(Principal(rng.uniform(QUARTER, 50.0), rng.uniform(0.0, 1.0)))
        else:
            pts.append(Discrete(rng.uniform(-50.0, QUARTER)))
    return pts


def suite_oracle(perturb: float = 0.0, n: int = 200, kmax: int = 8, tol: float = 1e-9,
                 time_limit: float = 10.0) -> SuiteResult:
    t0 = time.perf_counter()
    worst = 0.0
    failures = 0
    for p in random_points(n):
        ref = closed_form_spectrum(p, kmax)
        orc = oracle_spectrum(_shift(p, perturb), TruncationWindow(kmax + 2), interior_kmax=kmax)
        rep = compare_spectra(ref, orc, tol)
        worst = max(worst, rep.max_deviation)
        failures += not rep.ok
    elapsed = time.perf_counter() - t0
    ok = failures == 0 and elapsed < time_limit
    return SuiteResult(
        "oracle agreement", ok,
        f"{n} points, {failures} mismatches, max deviation {worst:.2e} (tol {tol:g}), {elapsed:.2f}s",
        {"failures": failures, "max_deviation": worst, "elapsed": elapsed},
    )


def suite_coalescence(perturb: float = 0.0) -> SuiteResult:
    p = LIMIT_OF_DISCRETE_SERIES
    cf = closed_form_spectrum(p, 0)
    k0 = [e for e in cf.entries if e.label == COALESCED]
    exact = len(k0) == 1 and k0[0].eigenvalue == -0.5 and k0[0].multiplicity == 2 and len(cf.entries) == 1
    orc = oracle_spectrum(_shift(p, perturb), TruncationWindow(3), interior_kmax=1)
    vals = orc.values()
    near = int(np.sum(np.abs(vals + 0.5) <= 1e-10))
    ok = exact and near == 2
    return SuiteResult("coalescence at (1/4, 1/2)", ok,
                       f"closed form exact={exact}, oracle eigenvalues within 1e-10 of -1/2: {near}",
                       {"oracle_count": near})


def suite_discriminant(perturb: float = 0.0, kmax: int = 10) -> SuiteResult:
    qs = np.linspace(-100.0, 100.0, 10_000)
    best = (math.inf, 0, 0.0)
    for k in range(1, kmax + 1):
        for kk in (k, -k):
            vals = discriminant(kk, qs + perturb)
            i = int(np.argmin(vals))
            if vals[i] < best[0]:
                best = (float(vals[i]), kk, float(qs[i]))
    at_quarter = float(discriminant(1, QUARTER + perturb))
    ok = best[0] >= 2.0 and abs(best[1]) == 1 and abs(at_quarter - 2.0) <= 1e-12
    return SuiteResult("discriminant bound", ok,
                       f"grid min {best[0]!r} at k={best[1]}, q={best[2]:.4f}; value at (1, 1/4) = {at_quarter!r}",
                       {"grid_min": best[0], "at_quarter": at_quarter})


def suite_flow(perturb: float = 0.0, q_range=(-50.0, 50.0), samples: int = 1000,
               kmax: int = 10) -> SuiteResult:
    problems = []

    def shifted(f: Callable) -> Callable:
        return lambda q: f(q + perturb)

    try:
        rep = spectral_flow(shifted(omega), q_range, samples)
        if rep.net_flow != -1 or len(rep.crossings) != 1 or abs(rep.crossings[0][0] - 0.5) > 1e-9:
            problems.append(f"omega: {rep}")
        rep_d = spectral_flow(lambda q: -omega(q + perturb), q_range, samples)
        if rep_d.net_flow != 1:
            problems.append(f"-omega (D flow): {rep_d.net_flow}")
        others = {"epsilon": epsilon}
        for k in range(1, kmax + 1):
            for kk in (k, -k):
                others[f"lambda+({kk})"] = lambda q, kk=kk: lambda_pm(kk, q)[0]
                others[f"lambda-({kk})"] = lambda q, kk=kk: lambda_pm(kk, q)[1]
        for name, f in others.items():
            r = spectral_flow(shifted(f), q_range, samples)
            if r.net_flow != 0 or r.crossings:
                problems.append(f"{name}: {r}")
    except (AmbiguousCrossing, ValueError) as exc:
        problems.append(str(exc))

    # the analytic curves must be what the brute-force eigenvalues actually do
    qs = np.linspace(q_range[1], q_range[0], 401)
    tracked = track_line_spectrum(qs + perturb, 3)
    curves = analytic_curves(3)
    table = {name: np.array([f(q) for q in qs]) for name, f in curves.items()}
    worst = 0.0
    omega_col = None
    for j in range(tracked.values.shape[1]):
        dev = {name: float(np.max(np.abs(tracked.values[:, j] - v))) for name, v in table.items()}
        name = min(dev, key=dev.get)
        worst = max(worst, dev[name])
        if name == "omega":
            omega_col = j
    if worst > 1e-9:
        problems.append(f"tracked eigenvalues leave the analytic curves by {worst:.2e}")
    if omega_col is None or sampled_flow(qs[::-1], tracked.values[::-1, omega_col]).net_flow != -1:
        problems.append("tracked omega curve does not carry flow -1")

    ok = not problems
    detail = "omega: one zero at q=0.5, H-flow -1, D-flow +1; epsilon and lambda: flow 0"
    return SuiteResult("spectral flow witness", ok, detail if ok else "; ".join(problems),
                       {"tracking_deviation": worst})


def suite_decomposition(perturb: float = 0.0, n: int = 50, kmax: int = 6, tol: float = 1e-9) -> SuiteResult:
    rng = np.random.default_rng(SEED + 5)
    qs = np.concatenate([rng.uniform(-30.0, QUARTER, n // 2), rng.uniform(QUARTER, 30.0, n - n // 2)])
    worst = 0.0
    bad = 0
    for q in qs:
        expected = [omega(q), epsilon(q)]
        for k in range(1, kmax + 1):
            for kk in (k, -k):
                expected.extend(lambda_pm(kk, q))
        expected = np.sort(expected)
        p = line_point(q)
        orc = oracle_spectrum(_shift(p, perturb), TruncationWindow(kmax + 2), interior_kmax=kmax)
        got = np.sort(-orc.values())  # oracle diagonalises D = -HH
        if len(got) != len(expected):
            bad += 1
            continue
        dev = float(np.max(np.abs(got - expected)))
        worst = max(worst, dev)
        bad += dev > tol
    ok = bad == 0
    return SuiteResult("decomposition completeness", ok,
                       f"{n} line points, {bad} mismatches, max deviation {worst:.2e}",
                       {"max_deviation": worst})


def arc_points(n: int = 100):
    taus = np.linspace(0.5 - 1.0 / math.sqrt(8.0), 0.5 + 1.0 / math.sqrt(8.0), n)
    return [Principal(max(2.0 * t * (1.0 - t), QUARTER), t) for t in taus]


def suite_cohomology(perturb: float = 0.0, grid: int = 300, tol: float = 1e-9) -> SuiteResult:
    qs = np.linspace(QUARTER, 3.0, grid)
    taus = np.arange(grid) / grid
    pts = [Principal(q, t) for q in qs for t in taus] + arc_points()
    false_pos = false_neg = 0
    for p in pts:
        cf = closed_form_spectrum(p, 0)
        has_zero = any(abs(e.eigenvalue) <= tol for e in cf.entries)
        dim = dirac_cohomology(p, tol).dimension
        false_pos += dim == 1 and not has_zero
        false_neg += dim == 0 and has_zero
    worst = 0.0
    arc_dims_ok = True
    for p in arc_points():
        res = dirac_cohomology(p, tol)
        arc_dims_ok &= res.dimension == 1
        spinor = kernel_spinor(p.tau + perturb)
        worst = max(worst, float(np.linalg.norm(invariant_block(p, p.tau) @ spinor)))
    ok = false_pos == 0 and false_neg == 0 and arc_dims_ok and worst <= SPINOR_RESIDUAL_TOL
    return SuiteResult("Dirac cohomology on the arc", ok,
                       f"{len(pts)} points, false +/-: {false_pos}/{false_neg}; "
                       f"max spinor residual on 100 arc points {worst:.2e}",
                       {"false_pos": false_pos, "false_neg": false_neg, "residual": worst})


def suite_param_space(perturb: float = 0.0) -> SuiteResult:
    problems = []
    z0 = to_compact_model(Principal(1.0, 0.0 + perturb)).z
    z1 = to_compact_model(Principal(1.0, 1.0 - 1e-15)).z
    if abs(z0 - z1) > 1e-12:
        problems.append("tau=0 and tau=1 images differ")
    if Principal(1.0, 1.0) != Principal(1.0, 0.0):
        problems.append("(q,1) is not identified with (q,0)")
    if to_compact_model(LIMIT_OF_DISCRETE_SERIES).z != 1.0:
        problems.append("limit-of-discrete-series does not map to 1")
    eps = 1e-6
    left = to_compact_model(Discrete(QUARTER - eps)).z
    right = to_compact_model(Principal(QUARTER + perturb, 0.5)).z
    if abs(left - right) > 1e-5 or abs(to_compact_model(Principal(QUARTER + eps, 0.5)).z - 1.0) > 1e-5:
        problems.append("gluing at q=1/4 is discontinuous")
    rng = np.random.default_rng(SEED + 7)
    ys = [DiscPoint(complex(x, 0.0)) for x in np.linspace(1.0, 2.0, 21)]
    ys += [DiscPoint(r * np.exp(1j * a)) for r, a in zip(rng.uniform(0, 1, 50), rng.uniform(-np.pi, np.pi, 50))]
    for y in ys:
        if abs(homotopy_h(1.0, y).z - 2.0) > 0.0:
            problems.append(f"h_1({y.z}) != 2")
            break
    for t in np.linspace(0.0, 1.0, 11):
        for y in ys[:21]:
            if not homotopy_h(float(t), y).on_segment:
                problems.append(f"h_{t:.1f} leaves B at {y.z}")
                break
    ok = not problems
    return SuiteResult("parameter-space model", ok,
                       "identifications, gluing, h_1 = 2 and h_t(B) in B" if ok else "; ".join(problems))


def suite_discrete_kernel(perturb: float = 0.0, n: int = 100, kmax: int = 8) -> SuiteResult:
    rng = np.random.default_rng(SEED + 11)
    bound = min(0.5, math.sqrt(2.0) - 0.5) - 1e-12
    worst = math.inf
    for q in rng.uniform(-50.0, QUARTER, n):
        p = Discrete(q)
        cf = closed_form_spectrum(p, kmax)
        orc = oracle_spectrum(_shift(p, perturb), TruncationWindow(kmax + 2), interior_kmax=kmax)
        m = min(min(abs(e.eigenvalue) for e in cf.entries), float(np.min(np.abs(orc.values()))))
        worst = min(worst, m)
        if perturb and not compare_spectra(cf, orc, 1e-9).ok:
            worst = -math.inf
            break
    ok = worst >= bound
    return SuiteResult("no discrete-series kernel", ok,
                       f"min |eigenvalue| over {n} discrete points = {worst:.6f} (bound {bound:.6f})",
                       {"min_abs": worst})


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "oracle": suite_oracle,
    "coalescence": suite_coalescence,
    "discriminant": suite_discriminant,
    "flow": suite_flow,
    "decomposition": suite_decomposition,
    "cohomology": suite_cohomology,
    "param-space": suite_param_space,
    "discrete-kernel": suite_discrete_kernel,
}


def run_suites(names=None, perturb: float = 0.0) -> list[SuiteResult]:
    names = list(SUITES) if not names else names
    return [SUITES[n](perturb=perturb) for n in names]

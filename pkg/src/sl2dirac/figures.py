"""Row generators for the figure CSVs, and the CSV writer.

Floats are written with ``repr``: the shortest decimal string that parses
back to the same double, so files round-trip exactly and are deterministic.
"""

from __future__ import annotations

import csv
import io
from typing import Iterable, Sequence

import numpy as np

from .bundles_flow import analytic_curves, spectral_flow
from .cohomology import dirac_cohomology
from .param_space import QUARTER, Discrete, Principal, helix_coordinates
from .spectral import COALESCED, EXTREMAL, BranchLabel, closed_form_spectrum

SPECTRUM_HEADER = ("q", "tau", "k", "branch", "eigenvalue", "multiplicity")
LINE_HEADER = ("q", "label", "eigenvalue")
HELIX_HEADER = ("r", "theta", "z", "k", "branch")
FLOW_HEADER = ("family", "operator", "net_flow", "q_cross", "direction")
COHOMOLOGY_HEADER = ("q", "tau", "dimension", "spinor_top", "spinor_bottom")

_BRANCH_RANK = {EXTREMAL: 0, COALESCED: 1, "-": 2, "+": 3}


def fmt(x) -> str:
    if x is None or x == "":
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    return repr(float(x))


def _label_fields(label) -> tuple[str, str]:
    if isinstance(label, BranchLabel):
        return str(label.k), label.branch.value
    if label == COALESCED:
        return "0", COALESCED
    return "", EXTREMAL


def _entry_rows(spec) -> list[tuple]:
    rows = []
    for e in spec.entries:
        k, br = _label_fields(e.label)
        rows.append((k, br, e))
    rows.sort(key=lambda r: (int(r[0]) if r[0] else -10**9, _BRANCH_RANK[r[1]]))
    return rows


def spectrum_rows(qs: Sequence[float], taus: Sequence[float], kmax: int) -> Iterable[tuple]:
    """One row per spectrum entry, ordered by (q, tau sample, k, branch).

    The tau column holds the sampled value; the spectrum is that of the
    canonical point, so tau = 1 reproduces tau = 0.  Discrete-series q get a
    single block of rows with an empty tau.
    """
    for q in qs:
        if q < QUARTER:
            for k, br, e in _entry_rows(closed_form_spectrum(Discrete(q), kmax)):
                yield fmt(q), "", k, br, fmt(e.eigenvalue), fmt(e.multiplicity)
            continue
        for tau in taus:
            for k, br, e in _entry_rows(closed_form_spectrum(Principal(q, tau), kmax)):
                yield fmt(q), fmt(tau), k, br, fmt(e.eigenvalue), fmt(e.multiplicity)


def line_rows(qs: Sequence[float], kmax: int, operator: str = "H") -> Iterable[tuple]:
    """Bundle eigenvalue curves over the line; ``operator='D'`` negates them."""
    sign = -1.0 if operator == "D" else 1.0
    curves = analytic_curves(kmax)
    for q in qs:
        for name, f in curves.items():
            yield fmt(q), name, fmt(sign * float(f(q)))


def helix_rows(qs: Sequence[float], taus: Sequence[float], kmax: int) -> Iterable[tuple]:
    for q in qs:
        for tau in taus:
            p = Principal(q, tau)
            for k, br, e in _entry_rows(closed_form_spectrum(p, kmax)):
                r, theta, z = helix_coordinates(p, e.eigenvalue)
                yield fmt(r), fmt(theta), fmt(z), k, br


def flow_rows(q_range: tuple[float, float], samples: int, kmax: int) -> Iterable[tuple]:
    curves = analytic_curves(kmax)
    for name, f in curves.items():
        for op, sign in (("H", 1.0), ("D", -1.0)):
            rep = spectral_flow(lambda q, f=f, sign=sign: sign * float(f(q)), q_range, samples)
            if not rep.crossings:
                yield name, op, str(rep.net_flow), "", ""
            for qc, d in rep.crossings:
                yield name, op, str(rep.net_flow), fmt(qc), str(d)


def cohomology_rows(points: Iterable, tol: float) -> Iterable[tuple]:
    for p in points:
        res = dirac_cohomology(p, tol)
        tau = p.tau if isinstance(p, Principal) else ""
        if res.dimension:
            top, bottom = res.kernel_spinor
            yield fmt(p.q), fmt(tau), "1", fmt(top), fmt(bottom)
        else:
            yield fmt(p.q), fmt(tau), "0", "", ""


def write_csv(header: Sequence[str], rows: Iterable[tuple], stream) -> int:
    w = csv.writer(stream, lineterminator="\n")
    w.writerow(header)
    n = 0
    for row in rows:
        w.writerow(row)
        n += 1
    return n


def csv_text(header: Sequence[str], rows: Iterable[tuple]) -> str:
    buf = io.StringIO()
    write_csv(header, rows, buf)
    return buf.getvalue()


def read_csv(text: str) -> list[dict[str, str]]:
    return list(csv.DictReader(io.StringIO(text)))

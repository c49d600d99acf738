"""Acceptance criteria 1-11, each reported as one PASS/FAIL line."""

import time

import numpy as np
import pytest

from iho import freewave as fw
from iho import nonstationary as ns
from iho import oracle as orc
from iho import scaledyn as sd
from iho import stationary as st
from iho import verify
from iho.fields import GridSpec, WaveField, derivative, l2_norm

from conftest import ACCEPTANCE

P = sd.NATURAL
INVERTED = orc.PotentialSpec("inverted", P)
BOX = {
    1.0: (4.793, 19.579, 44.250, 78.791),
    2.0: (0.632, 4.305, 10.454, 19.082),
    3.0: (-1.151, 0.883, 3.535, 7.332),
}


def _report(n, ok, detail):
    line = f"criterion {n:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE[n] = line
    print(line)
    assert ok, line


class _Clock:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.t0


def test_criterion_01_box_spectrum():
    with _Clock() as c:
        dev = max(np.max(np.abs(st.box_spectrum(st.BoxProblem(d), 4).eigenvalues.real - ref)) for d, ref in BOX.items())
    _report(1, dev <= 0.005 and c.elapsed < 30, f"max |E - table| = {dev:.2e} (tol 5e-3), {c.elapsed:.1f} s")


def test_criterion_02_box_critical_length():
    with _Clock() as c:
        d = st.box_critical_length()
    _report(2, abs(d - 2.36) <= 0.01 and c.elapsed < 60, f"d'_c = {d:.4f} (2.36 +- 0.01), {c.elapsed:.1f} s")


def test_criterion_03_halfline_well():
    with _Clock() as c:
        d = st.halfline_critical_length(lo=3.0, hi=4.0, tol=2e-3)
        b = st.halfline_spectrum(st.HalfLineProblem(d)).bounded_eigenvalues
    e = b[0] if len(b) else complex("nan")
    ok = abs(d - 3.51) <= 0.01 and len(b) == 1 and abs(e.real + 2.32) <= 0.01 and abs(e.imag) < 1e-6 and c.elapsed < 120
    _report(3, ok, f"d'_c = {d:.4f} (3.51 +- 0.01), E = {e.real:.4f}{e.imag:+.1e}i, {len(b)} bounded, {c.elapsed:.1f} s")


def test_criterion_04_small_box_limit():
    r = st.box_spectrum(st.BoxProblem(0.5), 4).eigenvalues.real
    free = np.array([st.free_box_approx(n, 0.5) for n in range(1, 5)])
    dev = np.max(np.abs(r / free - 1))
    _report(4, dev < 0.02, f"max relative deviation = {dev:.2e} (tol 2e-2)")


def test_criterion_05_degeneracy(grid):
    e0 = max(
        abs(ns.energy_expectation_quadrature(ns.eval_psi_n(n, sd.reference_scale(t), P, grid), P))
        for t in (0.0, 1.0)
        for n in range(9)
    )
    s = sd.ScaleState(0.0, 1.0, 1.0, 0.0)
    e1 = max(
        abs(ns.energy_expectation_quadrature(ns.eval_psi_n(n, s, P, grid), P) - (n + 0.5) / 2) for n in range(9)
    )
    _report(5, e0 < 1e-5 and e1 < 1e-5, f"max |E| = {e0:.2e}, max |E - (n+1/2)/2| = {e1:.2e} (tol 1e-5)")


def test_criterion_06_orthonormality(grid):
    dev = max(np.max(np.abs(ns.gram_matrix(10, sd.reference_scale(t), P, grid) - np.eye(11))) for t in (0.0, 0.5, 1.0))
    _report(6, dev < 1e-8, f"max |G - I| = {dev:.2e} (tol 1e-8)")


def _psi0_error(g, dt):
    start = ns.eval_psi_n(0, sd.reference_scale(0.0), P, g)
    out = orc.propagate(start, INVERTED, orc.PropagatorConfig(dt=dt), 1.0)[-1]
    return l2_norm(out.values - ns.eval_psi_n(0, sd.reference_scale(1.0), P, g).values, g)


@pytest.mark.slow
def test_criterion_07_analytic_vs_oracle(grid):
    coarse = _psi0_error(grid, 1e-3)
    fine = _psi0_error(GridSpec(grid.x_min, grid.x_max, 2 * grid.n_points - 1), 5e-4)
    ratio = coarse / fine
    _report(7, coarse < 1e-4 and ratio >= 3, f"L2 error {coarse:.2e} (tol 1e-4), refinement ratio {ratio:.2f} (>= 3)")


def test_criterion_08_ladder_algebra(grid):
    worst, comm = 0.0, 0.0
    for t in (0.0, 0.7):
        s = sd.reference_scale(t)
        psi = [ns.eval_psi_n(n, s, P, grid, with_phase=False) for n in range(6)]
        for n in range(1, 6):
            lo = ns.apply_lowering(psi[n], s, P)
            worst = max(worst, l2_norm(lo.values - np.sqrt(n) * psi[n - 1].values, grid))
        ab = ns.apply_lowering(ns.apply_raising(psi[2], s, P), s, P)
        ba = ns.apply_raising(ns.apply_lowering(psi[2], s, P), s, P)
        comm = max(comm, l2_norm(ab.values - ba.values - psi[2].values, grid))
    _report(8, worst < 1e-5 and comm < 1e-5, f"lowering {worst:.2e}, commutator {comm:.2e} (tol 1e-5)")


@pytest.mark.slow
def test_criterion_09_airy_packet():
    g = GridSpec(-60.0, 40.0, 12001)
    A = fw.AiryParams(0.5)
    times = np.linspace(0.0, 0.7, 8)
    f0 = WaveField(g, fw.airy_packet(g.x, 0.0, A))
    snaps = orc.propagate(f0, INVERTED, orc.PropagatorConfig(dt=5e-4), 0.7, times)
    errs, peaks = [], []
    for s in snaps:
        ref = fw.airy_packet_abs(g.x, s.t, A)
        errs.append(l2_norm(np.abs(s.values) - ref, g) / l2_norm(ref, g))
        peaks.append(np.max(np.abs(s.values)))
    rising = bool(np.all(np.diff(peaks) > 0))
    err = max(errs)
    _report(9, err < 1e-3 and rising, f"max relative L2 = {err:.2e} (tol 1e-3), peak increasing: {rising}")


def test_criterion_10_self_focusing():
    g = GridSpec(-12, 12, 4801)
    m = np.abs(g.x) <= 10
    dt = 1e-5
    res = 0.0
    for branch, t in (("F1", 0.2), ("F2", 0.3)):
        for parity in ("even", "odd"):
            spec = fw.BeamSpec(1.0, parity, branch)
            a, b, c = (fw.self_focusing_beam(spec, sd.focusing_scale(branch, s), P, g) for s in (t - dt, t, t + dt))
            kin = -0.5 * derivative(b.values, g.h, 2, "fd4")
            r = 1j * (c.values - a.values) / (2 * dt) - kin
            res = max(res, np.sqrt(np.sum(np.abs(r[m]) ** 2) / np.sum(np.abs(kin[m]) ** 2)))
    tc = sd.focal_time("F1")
    t, peak, _ = fw.focusing_trace(fw.BeamSpec(1.0, "even", "F1"), np.linspace(0, 2.4 * tc, 97))
    tp = t[int(np.argmax(peak))]
    off = abs(tp / tc - 1)
    _report(10, res < 1e-3 and off <= 0.15, f"TDSE residual {res:.2e} (tol 1e-3), t_peak/t_c = {tp / tc:.3f} (+-15%)")


def test_criterion_11_special_functions():
    recs = verify.suite_specfun(seed=11, n=400)
    worst = max(recs, key=lambda r: r["value"] / r["threshold"])
    ok = all(r["passed"] for r in recs)
    _report(11, ok, f"{len(recs)} identity suites, worst {worst['name']} = {worst['value']:.2e} (tol {worst['threshold']:.0e})")

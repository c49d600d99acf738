"""Invariant suites run by ``iho verify``.

Each check returns a record {name, value, threshold, passed}; a suite is a
list of such records. The suites are short versions of the test suite,
sized to finish in seconds.
"""

from __future__ import annotations

import warnings

import numpy as np

from . import freewave as fw
from . import nonstationary as ns
from . import oracle as orc
from . import scaledyn as sd
from . import specfun as sf
from . import stationary as st
from .errors import CoverageWarning
from .fields import GridSpec, WaveField, l2_norm

SUITES = ("specfun", "scaledyn", "states", "spectra", "freewave")


def _rec(name, value, threshold, passed=None):
    value = float(value)
    if passed is None:
        passed = bool(value < threshold)
    return {"name": name, "value": value, "threshold": float(threshold), "passed": bool(passed)}


def _rand_complex(rng, n, radius):
    r = radius * np.sqrt(rng.uniform(0, 1, n))
    return r * np.exp(1j * rng.uniform(-np.pi, np.pi, n))


def suite_specfun(seed: int = 0, n: int = 200):
    rng = np.random.default_rng(seed)
    tol = 10 * sf.DEFAULT_OPTIONS.rel_tol
    out = []
    a = rng.uniform(-3, 3, n) + 1j * rng.uniform(-3, 3, n)
    b = rng.uniform(0.3, 4, n) + 1j * rng.uniform(-2, 2, n)
    z = _rand_complex(rng, n, 20.0)
    m = sf.kummer_m(a, b, z)
    out.append(_rec("kummer_transformation", np.max(np.abs(m - np.exp(z) * sf.kummer_m(b - a, b, -z)) / np.abs(m)), tol))
    terms = [(b - a) * sf.kummer_m(a - 1, b, z), (2 * a - b + z) * m, -a * sf.kummer_m(a + 1, b, z)]
    scale = sum(np.abs(t) for t in terms)
    out.append(_rec("kummer_contiguous", np.max(np.abs(sum(terms)) / scale), tol))
    nu = rng.uniform(-4, 4, n) + 1j * rng.uniform(-3, 3, n)
    terms = [sf.parabolic_cylinder_d(nu + 1, z), -z * sf.parabolic_cylinder_d(nu, z), nu * sf.parabolic_cylinder_d(nu - 1, z)]
    scale = sum(np.abs(t) for t in terms)
    out.append(_rec("cylinder_recurrence", np.max(np.abs(sum(terms)) / scale), tol))
    x = np.linspace(-4, 4, 81)
    err = 0.0
    for k in range(7):
        ref = 2 ** (-k / 2) * np.exp(-x * x / 4) * sf.hermite_poly(k, x / np.sqrt(2))
        err = max(err, np.max(np.abs(sf.parabolic_cylinder_d(k, x) - ref)) / np.max(np.abs(ref)))
    out.append(_rec("integer_order_reduction", err, tol))
    out.append(_rec("airy_ode_residual", airy_ode_residual(_rand_complex(rng, n, 20.0)).max(), tol))
    return out


# 8th-order central stencil for the second derivative
_D2_8 = np.array([-1 / 560, 8 / 315, -1 / 5, 8 / 5, -205 / 72, 8 / 5, -1 / 5, 8 / 315, -1 / 560])


def airy_ode_residual(z, step=0.1):
    """|Ai''(z) - z Ai(z)| / |z Ai(z)|, Ai'' from an 8th-order stencil.

    The step scales like |z|**-1/2, the local wavelength of Ai.
    """
    z = np.asarray(z, dtype=complex)
    h = step / np.sqrt(np.maximum(1.0, np.abs(z)))
    d2 = sum(c * sf.airy_ai(z + (k - 4) * h) for k, c in enumerate(_D2_8)) / h**2
    ai = sf.airy_ai(z)
    return np.abs(d2 - z * ai) / np.maximum(np.abs(z * ai), np.abs(ai))


def suite_scaledyn():
    p = sd.NATURAL
    out = []
    traj = sd.solve_scale_ode(sd.ScaleState(0.0, 1.0, 0.0, 0.0), p, 3.0, 0.05)
    dev = max(
        max(abs(s.L - r.L), abs(s.tau - r.tau))
        for s in traj
        for r in [sd.reference_scale(s.t, p)]
    )
    out.append(_rec("ode_vs_reference", dev, 1e-8))
    drift = max(abs(float(sd.first_integral(s, p))) for s in traj)
    out.append(_rec("first_integral_drift", drift, 1e-8))
    res = max(float(np.max(sd.focusing_residual(b, np.linspace(0.0, 0.4, 9), p))) for b in ("F1", "F2"))
    out.append(_rec("focusing_residual", res, 1e-6 * 10))
    t = np.linspace(0.1, 2.0, 20)
    h = 1e-5
    s0 = sd.reference_scale(t, p)
    dtau = (sd.reference_scale(t + h, p).tau - sd.reference_scale(t - h, p).tau) / (2 * h)
    out.append(_rec("tau_rate", np.max(np.abs(dtau * s0.L**2 - 1)), 1e-6))
    return out


def suite_states():
    p = sd.NATURAL
    g = GridSpec()
    out = []
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", CoverageWarning)
        dev = max(np.max(np.abs(ns.gram_matrix(10, sd.reference_scale(t), p, g) - np.eye(11))) for t in (0.0, 0.5, 1.0))
        out.append(_rec("orthonormality", dev, 1e-8))
        e = max(
            abs(ns.energy_expectation_quadrature(ns.eval_psi_n(n, sd.reference_scale(t), p, g), p))
            for n in range(9)
            for t in (0.0, 1.0)
        )
        out.append(_rec("degeneracy", e, 1e-5))
        s = sd.ScaleState(0.0, 1.0, p.omega, 0.0)
        e = max(abs(ns.energy_expectation_quadrature(ns.eval_psi_n(n, s, p, g), p) - (n + 0.5) / 2) for n in range(9))
        out.append(_rec("energy_gap_c1", e, 1e-5))
        err = 0.0
        for t in (0.0, 0.7):
            s = sd.reference_scale(t)
            for n in range(1, 6):
                lo = ns.apply_lowering(ns.eval_psi_n(n, s, p, g, False), s, p)
                ref = ns.eval_psi_n(n - 1, s, p, g, False)
                err = max(err, l2_norm(lo.values - np.sqrt(n) * ref.values, g))
        out.append(_rec("ladder_lowering", err, 1e-5))
        f0 = ns.eval_psi_n(0, sd.reference_scale(0.0), p, g)
        snap = orc.propagate(f0, orc.PotentialSpec("inverted", p), orc.PropagatorConfig(), 1.0)[-1]
        err = l2_norm(snap.values - ns.eval_psi_n(0, sd.reference_scale(1.0), p, g).values, g)
        out.append(_rec("oracle_psi0_t1", err, 1e-4))
    return out


TABLE_BOX = {
    1.0: (4.793, 19.579, 44.250, 78.791),
    2.0: (0.632, 4.305, 10.454, 19.082),
    3.0: (-1.151, 0.883, 3.535, 7.332),
}


def suite_spectra():
    out = []
    for d, ref in TABLE_BOX.items():
        ev = st.box_spectrum(st.BoxProblem(d), 4).eigenvalues.real
        out.append(_rec(f"box_d{d:g}", np.max(np.abs(ev - np.array(ref))), 0.005 + 1e-12))
    ev = st.box_spectrum(st.BoxProblem(0.5), 4).eigenvalues.real
    free = np.array([st.free_box_approx(n, 0.5) for n in range(1, 5)])
    out.append(_rec("small_box_limit", np.max(np.abs(ev / free - 1)), 0.02))
    sp = st.halfline_spectrum(st.HalfLineProblem(3.51))
    bnd = sp.bounded_eigenvalues
    out.append(_rec("halfline_count_3.51", len(bnd), 1, passed=len(bnd) == 1))
    if len(bnd):
        out.append(_rec("halfline_energy_3.51", abs(bnd[0].real + 2.32), 0.01 + 1e-12))
    sp = st.halfline_spectrum(st.HalfLineProblem(3.0))
    out.append(_rec("halfline_count_3.0", int(sp.bounded.sum()), 0, passed=int(sp.bounded.sum()) == 0))
    return out


def suite_freewave():
    out = []
    res = fw.chirp_exponent_residuals()
    out.append(_rec("chirp_exponent_selected", res[fw.select_chirp_exponent()], 1e-4))
    res = fw.beam_chirp_residuals()
    out.append(_rec("beam_chirp_selected", res[fw.select_beam_chirp()], 1e-3))
    p = sd.NATURAL
    A = fw.AiryParams(0.5)
    g = GridSpec(-60.0, 40.0, 12001)
    f0 = WaveField(g, fw.airy_packet(g.x, 0.0, A, p))
    snaps = orc.propagate(f0, orc.PotentialSpec("inverted", p), orc.PropagatorConfig(dt=5e-4), 0.7,
                          snapshot_times=np.linspace(0, 0.7, 8))
    err = 0.0
    peaks = []
    for s in snaps:
        ref = fw.airy_packet_abs(g.x, s.t, A, p)
        err = max(err, l2_norm(np.abs(s.values) - ref, g) / l2_norm(ref, g))
        peaks.append(ref.max())
    out.append(_rec("airy_vs_oracle", err, 1e-3))
    out.append(_rec("airy_peak_increasing", float(np.all(np.diff(peaks) > 0)), 1, passed=bool(np.all(np.diff(peaks) > 0))))
    t, peak, _ = fw.focusing_trace(fw.BeamSpec(1.0, "even", "F1"), np.linspace(0, 1.2, 121), p)
    tc = sd.focal_time("F1", p)
    out.append(_rec("focus_time_rel_error", abs(t[np.argmax(peak)] / tc - 1), 0.15))
    return out


def run(suite: str) -> dict:
    names = SUITES if suite == "all" else (suite,)
    if any(n not in SUITES for n in names):
        raise ValueError(f"unknown suite {suite!r}")
    report = {}
    for n in names:
        report[n] = globals()[f"suite_{n}"]()
    passed = all(r["passed"] for recs in report.values() for r in recs)
    return {"passed": passed, "suites": report}

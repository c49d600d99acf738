import warnings

import numpy as np
import pytest

from iho import freewave as fw
from iho import oracle as orc
from iho import scaledyn as sd
from iho.errors import CoverageWarning, DomainError
from iho.fields import GridSpec, WaveField, derivative, l2_norm, moments
from iho.nonstationary import hamiltonian_action
from iho.specfun import airy_ai

P = sd.NATURAL
SYM = sd.FreeScaleCoefficients(0.5, 0.5)


def _free_residual(triple, window=10.0):
    a, b, c = triple
    g = b.grid
    kin = -0.5 * derivative(b.values, g.h, 2, "fd4")
    r = 1j * (c.values - a.values) / (c.t - a.t) - kin
    m = np.abs(g.x) <= window
    return np.sqrt(np.sum(np.abs(r[m]) ** 2) / np.sum(np.abs(kin[m]) ** 2))


# ---------------------------------------------------------------- conventions


def test_chirp_exponent_selection():
    res = fw.chirp_exponent_residuals()
    assert fw.select_chirp_exponent() == "unit"
    assert res["unit"] < 1e-4
    assert res["omega_sq"] > 1e-2


def test_beam_chirp_selection():
    res = fw.beam_chirp_residuals()
    assert fw.select_beam_chirp() == "scaled"
    assert res["scaled"] < 1e-3
    assert res["printed"] > 1e-1


# ---------------------------------------------------------------- spectral packets


def test_spectral_amplitude_validation():
    with pytest.raises(DomainError):
        fw.SpectralAmplitude(np.linspace(-1, 2, 11), np.ones(11))
    with pytest.raises(DomainError):
        fw.SpectralAmplitude(np.linspace(-1, 1, 11), np.ones(10))
    with pytest.raises(DomainError):
        fw.SpectralAmplitude(np.array([-1.0, -0.5, 0.7, 1.0]), np.ones(4))


def test_symmetric_scale_at_zero_is_inverse_fourier_transform():
    g = GridSpec(-15, 15, 601)
    f = fw.propagate_spectral(fw.SpectralAmplitude.gaussian(), sd.free_scale(SYM, 0.0), P, g)
    ref = np.pi**-0.25 * np.exp(-g.x**2 / 2)
    assert np.max(np.abs(f.values - ref)) < 1e-12
    assert f.norm() == pytest.approx(1.0, abs=1e-12)


def test_shifted_gaussian_inverse_transform():
    g = GridSpec(-15, 15, 601)
    f = fw.propagate_spectral(fw.SpectralAmplitude.gaussian(0.7, 1.5), sd.free_scale(SYM, 0.0), P, g)
    # the x-space partner of a Gaussian in k with centre k0 carries the plane wave e^{i k0 x}
    ref = (0.49 / np.pi) ** 0.25 * np.exp(-0.49 * g.x**2 / 2 + 1.5j * g.x)
    assert np.max(np.abs(f.values - ref)) < 1e-12


def test_spectral_matches_oracle():
    g = GridSpec(-20, 20, 2001)
    amp = fw.SpectralAmplitude.gaussian(1.0, 0.5)
    f0 = fw.propagate_spectral(amp, sd.free_scale(SYM, 0.0), P, g)
    f1 = fw.propagate_spectral(amp, sd.free_scale(SYM, 0.5), P, g)
    cn = orc.propagate(f0, orc.PotentialSpec("inverted", P), orc.PropagatorConfig(dt=5e-4), 0.5)[-1]
    assert l2_norm(cn.values - f1.values, g) < 1e-4
    assert moments(f1)[1] / moments(f0)[1] == pytest.approx(moments(cn)[1] / moments(f0)[1], rel=1e-3)


def test_spectral_norm_drift():
    g = GridSpec(-30, 30, 2001)
    amp = fw.SpectralAmplitude.gaussian(1.2, -0.4)
    c = sd.FreeScaleCoefficients(0.8, 0.2)
    norms = [fw.propagate_spectral(amp, sd.free_scale(c, t), P, g).norm() for t in np.linspace(0, 1, 6)]
    assert np.max(np.abs(np.array(norms) - norms[0])) < 1e-6


def test_spectral_solves_schroedinger_with_general_omega():
    p = sd.PhysicalParams(omega=1.7)
    g = GridSpec(-12, 12, 1201)
    amp = fw.SpectralAmplitude.gaussian(1.0, 0.3, k_max=12.0, n=1201)
    c = sd.FreeScaleCoefficients(0.6, 0.4)
    dt = 1e-4
    tr = [fw.propagate_spectral(amp, sd.free_scale(c, s, p), p, g) for s in (0.3 - dt, 0.3, 0.3 + dt)]
    assert orc.tdse_residual(tr, orc.PotentialSpec("inverted", p)) < 1e-4


def test_k_coverage_warning():
    amp = fw.SpectralAmplitude.gaussian(5.0, k_max=6.0, n=101)
    with warnings.catch_warnings(record=True) as rec:
        warnings.simplefilter("always", CoverageWarning)
        f = fw.propagate_spectral(amp, sd.free_scale(SYM, 0.0), P, GridSpec(-5, 5, 101))
    assert any(issubclass(w.category, CoverageWarning) for w in rec)
    assert f.notes


# ---------------------------------------------------------------- Airy packet


def test_airy_initial_profile():
    x = np.linspace(-20, 5, 51)
    A = fw.AiryParams(0.1)
    assert np.allclose(fw.airy_packet_abs(x, 0.0, A), np.exp(0.1 * x) * np.abs(airy_ai(x)), rtol=1e-14, atol=0)


def test_airy_complex_and_modulus_agree():
    x = np.linspace(-20, 5, 101)
    A = fw.AiryParams(0.3)
    for t in (0.0, 0.4, 1.0):
        assert np.allclose(np.abs(fw.airy_packet(x, t, A)), fw.airy_packet_abs(x, t, A), rtol=1e-12, atol=1e-300)


def test_airy_solves_schroedinger():
    g = GridSpec(-40, 20, 6001)
    A = fw.AiryParams(0.4)
    dt = 1e-4
    tr = [WaveField(g, fw.airy_packet(g.x, s, A), s) for s in (0.5 - dt, 0.5, 0.5 + dt)]
    assert orc.tdse_residual(tr, orc.PotentialSpec("inverted", P)) < 1e-5


def test_airy_peak_grows():
    x = np.linspace(-60, 10, 14001)
    A = fw.AiryParams(0.1)
    peaks = [fw.airy_packet_abs(x, t, A).max() for t in (0.0, 0.5, 1.0)]
    assert peaks[0] < peaks[1] < peaks[2]


def test_airy_norm_tracks_oracle():
    g = GridSpec(-60, 40, 8001)
    A = fw.AiryParams(0.5)
    f0 = WaveField(g, fw.airy_packet(g.x, 0.0, A))
    cn = orc.propagate(f0, orc.PotentialSpec("inverted", P), orc.PropagatorConfig(dt=1e-3), 0.5)[-1]
    ref = fw.airy_packet_abs(g.x, 0.5, A)
    assert cn.norm() == pytest.approx(f0.norm(), rel=1e-3)
    assert l2_norm(ref, g) == pytest.approx(cn.norm(), rel=1e-3)
    printed = fw.airy_packet_abs(g.x, 0.5, A, convention="printed")
    assert l2_norm(np.abs(cn.values) - printed, g) / l2_norm(ref, g) > 0.1


def test_airy_requires_natural_mass_and_action():
    with pytest.raises(DomainError):
        fw.airy_packet_abs(0.0, 0.1, fw.AiryParams(0.1), sd.PhysicalParams(m=2.0))
    with pytest.raises(DomainError):
        fw.AiryParams(0.0)
    with pytest.raises(DomainError):
        fw.airy_packet_abs(0.0, -0.1, fw.AiryParams(0.1))


# ---------------------------------------------------------------- beams


@pytest.mark.parametrize("parity", ["odd", "even"])
@pytest.mark.parametrize("branch", ["F1", "F2"])
def test_beam_parity(parity, branch):
    g = GridSpec(-8, 8, 801)
    spec = fw.BeamSpec(1.0, parity, branch)
    s = sd.focusing_scale(branch, 0.3 * sd.focal_time(branch))
    v = fw.self_focusing_beam(spec, s, P, g).values
    sign = -1 if parity == "odd" else 1
    assert np.max(np.abs(v[::-1] - sign * v)) <= 1e-12 * np.max(np.abs(v))


@pytest.mark.parametrize("branch,t", [("F2", 0.3), ("F1", 0.2)])
@pytest.mark.parametrize("parity", ["odd", "even"])
def test_beam_free_residual(branch, t, parity):
    g = GridSpec(-12, 12, 4801)
    spec = fw.BeamSpec(1.0, parity, branch)
    dt = 1e-5
    tr = [fw.self_focusing_beam(spec, sd.focusing_scale(branch, s), P, g) for s in (t - dt, t, t + dt)]
    assert _free_residual(tr) < 1e-3


def test_beam_beyond_focus_is_rejected():
    with pytest.raises(DomainError):
        sd.focusing_scale("F1", 0.5)
    spec = fw.BeamSpec(1.0, "even", "F1")
    fake = sd.ScaleState(0.6, 0.1, -1.0, 1.0)
    with pytest.raises(DomainError):
        fw.self_focusing_beam(spec, fake, P, GridSpec(-5, 5, 101))


def test_truncation_window():
    g = GridSpec(-30, 30, 3001)
    base = WaveField(g, np.exp(-g.x**2 / 8) * (1 + 0.1j))
    wide = fw.truncate_window(base, 1e4)
    assert np.max(np.abs(wide.values - base.normalized().values)) < 1e-12
    flat = WaveField(g, np.ones(g.n_points))
    box = fw.truncate_window(flat, 10.0, order=64)
    inside = np.abs(g.x) < 9
    assert np.ptp(np.abs(box.values[inside])) < 1e-2 * np.max(np.abs(box.values))
    assert np.max(np.abs(box.values[np.abs(g.x) > 11])) < 1e-3 * np.max(np.abs(box.values))
    with pytest.raises(DomainError):
        fw.truncate_window(base, 5.0, order=3)


def test_truncated_beam_has_finite_energy():
    g = GridSpec(-60, 60, 12001)
    spec = fw.BeamSpec(1.0, "even", "F1")
    f = fw.truncate_window(fw.self_focusing_beam(spec, sd.focusing_scale("F1", 0.0), P, g), 20.0)
    assert f.norm() == pytest.approx(1.0, abs=1e-12)
    Hpsi = hamiltonian_action(f.values, g, P, potential=np.zeros(g.n_points))
    e = np.real(np.sum(np.conj(f.values) * Hpsi) * g.h)
    assert np.isfinite(e) and e > 0


def test_truncated_beam_focuses_near_focal_time():
    spec = fw.BeamSpec(1.0, "even", "F1")
    tc = sd.focal_time("F1")
    t, peak, fwhm = fw.focusing_trace(spec, np.linspace(0, 2.4 * tc, 97))
    i = int(np.argmax(peak))
    assert abs(t[i] / tc - 1) < 0.15
    assert peak[i] > 3 * peak[0] and peak[-1] < peak[i]
    assert fwhm[i] < fwhm[0]

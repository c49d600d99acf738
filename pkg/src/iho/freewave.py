"""Spectral packets, the shrinking Airy packet and self-focusing free beams.

Two conventions in these solutions are ambiguous as usually printed: the
exponent gamma of the quadratic phase exp(i gamma m Ldot x**2 / 2 hbar L)
in the k-space representation, and the sign and scale of the chirp in the
focusing beams. Both are settled here by evaluating every candidate in a
probe configuration with omega != 1 and keeping the one whose
Schroedinger residual vanishes; see :func:`select_chirp_exponent` and
:func:`select_beam_chirp`.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache

import numpy as np

from .errors import CoverageWarning, DomainError
from .fields import GridSpec, WaveField, derivative, integrate
from .oracle import free_propagate_fft
from .scaledyn import (
    NATURAL,
    FocusingBranch,
    FreeScaleCoefficients,
    PhysicalParams,
    ScaleState,
    focal_time,
    focusing_scale,
    free_scale,
)
from .specfun import airy_ai, kummer_m

# quadratic-phase exponents tried for the k-space representation
CHIRP_EXPONENTS = {
    "unit": lambda p: 1.0,
    "omega_sq": lambda p: p.omega**2,
}

# chirp coefficients c in exp(i c x**2 / 2 hbar) tried for the beams
BEAM_CHIRPS = {
    "printed": lambda p, B: -p.m * p.omega * B,
    "scaled": lambda p, B: p.m * B,
}

_PROBE = PhysicalParams(omega=0.7)


@dataclass(frozen=True, eq=False)
class SpectralAmplitude:
    """Samples psi(k) on a uniform wavenumber grid symmetric about zero."""

    k_grid: np.ndarray
    values: np.ndarray

    def __post_init__(self):
        k = np.asarray(self.k_grid, dtype=float)
        v = np.asarray(self.values, dtype=complex)
        if k.shape != v.shape or k.ndim != 1 or k.size < 3:
            raise DomainError("k_grid and values must be matching 1-d arrays")
        if not np.all(np.isfinite(v)):
            raise DomainError("amplitude must be finite")
        dk = np.diff(k)
        if not np.allclose(dk, dk[0], rtol=1e-9, atol=0) or dk[0] <= 0:
            raise DomainError("k_grid must be uniform and increasing")
        if not np.isclose(k[0], -k[-1], rtol=1e-12, atol=1e-12 * abs(k[-1])):
            raise DomainError("k_grid must be symmetric about 0")
        object.__setattr__(self, "k_grid", k)
        object.__setattr__(self, "values", v)

    @classmethod
    def from_function(cls, fn, k_max: float = 40.0, n: int = 4096) -> "SpectralAmplitude":
        k = np.linspace(-k_max, k_max, n)
        return cls(k, fn(k))

    @classmethod
    def gaussian(cls, sigma_k: float = 1.0, k0: float = 0.0, k_max: float = 40.0, n: int = 4096):
        """Unit-norm Gaussian (pi sigma_k**2)**(-1/4) exp(-(k - k0)**2 / 2 sigma_k**2)."""
        return cls.from_function(
            lambda k: (np.pi * sigma_k**2) ** -0.25 * np.exp(-((k - k0) ** 2) / (2 * sigma_k**2)), k_max, n
        )


def _spectral_field(amp: SpectralAmplitude, scale: ScaleState, params: PhysicalParams, grid: GridSpec, gamma, chunk=256):
    k = amp.k_grid
    w = np.full(k.size, k[1] - k[0])
    w[0] *= 0.5
    w[-1] *= 0.5
    E = params.hbar * k * k / (2 * params.m)
    coef = w * amp.values * np.exp(-1j * E * scale.tau)
    x = grid.x
    out = np.empty(x.size, dtype=complex)
    for i in range(0, x.size, chunk):
        xs = x[i : i + chunk]
        out[i : i + chunk] = np.exp(1j * np.outer(xs / scale.L, k)) @ coef
    chirp = np.exp(1j * gamma * params.m * scale.Ldot * x * x / (2 * params.hbar * scale.L))
    return chirp * out / np.sqrt(2 * np.pi * scale.L)


def _residual_window(triple, params, potential, window):
    a, b, c = triple
    g = b.grid
    dt = c.t - a.t
    H = -(params.hbar**2) / (2 * params.m) * derivative(b.values, g.h, 2, "fd4") + potential * b.values
    r = 1j * params.hbar * (c.values - a.values) / dt - H
    m = np.abs(g.x) <= window
    return float(np.sqrt(np.sum(np.abs(r[m]) ** 2) / np.sum(np.abs(H[m]) ** 2)))


@lru_cache(maxsize=None)
def chirp_exponent_residuals(t: float = 0.4, delta: float = 1e-4) -> dict:
    """Schroedinger residual of each candidate exponent in the probe setup."""
    p = _PROBE
    grid = GridSpec(-15.0, 15.0, 1201)
    amp = SpectralAmplitude.gaussian(1.0, 0.5, k_max=10.0, n=801)
    coeffs = FreeScaleCoefficients(0.7, 0.3)
    V = -0.5 * p.m * p.omega**2 * grid.x**2
    out = {}
    for name, g in CHIRP_EXPONENTS.items():
        triple = []
        for s in (t - delta, t, t + delta):
            sc = free_scale(coeffs, s, p)
            triple.append(WaveField(grid, _spectral_field(amp, sc, p, grid, g(p)), s))
        out[name] = _residual_window(triple, p, V, 10.0)
    return out


def select_chirp_exponent() -> str:
    """Name of the exponent in CHIRP_EXPONENTS that solves the equation."""
    res = chirp_exponent_residuals()
    best = min(res, key=res.get)
    if res[best] > 1e-4:
        raise ArithmeticError(f"no chirp exponent solves the Schroedinger equation: {res}")
    return best


def propagate_spectral(amp: SpectralAmplitude, scale: ScaleState, params: PhysicalParams, grid: GridSpec) -> WaveField:
    """Psi(x, t) = (2 pi L)**(-1/2) e^{i gamma m Ldot x**2 / 2 hbar L} int e^{i(k x / L - E tau / hbar)} psi(k) dk.

    ``scale`` must come from :func:`iho.scaledyn.free_scale`. With
    L+ = L- = 1/2 and t = 0 this is the unitary inverse Fourier transform
    of psi(k). The integral is a trapezoid sum over ``amp.k_grid``.
    """
    edge = max(abs(amp.values[0]), abs(amp.values[-1])) / max(np.max(np.abs(amp.values)), 1e-300)
    notes = ()
    if edge >= 1e-12:
        msg = f"psi(k) at the k-grid edge is {edge:.2e} of its peak"
        warnings.warn(msg, CoverageWarning, stacklevel=2)
        notes = (msg,)
    gamma = CHIRP_EXPONENTS[select_chirp_exponent()](params)
    return WaveField(grid, _spectral_field(amp, scale, params, grid, gamma), scale.t, notes)


# --- truncated Airy packet -------------------------------------------------


@dataclass(frozen=True)
class AiryParams:
    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise DomainError("alpha must be positive")


def _airy_scale(t, params, convention):
    w = params.omega
    L = np.exp(-w * t)
    if convention == "derived":
        tau = np.expm1(2 * w * t) / (2 * w) if w > 0 else t
    elif convention == "printed":
        tau = np.expm1(2 * w * t) / w if w > 0 else 2 * t
    else:
        raise ValueError("convention must be 'derived' or 'printed'")
    return L, tau


def _check_units(params):
    if params.m != 1.0 or params.hbar != 1.0:
        raise DomainError("the Airy packet is defined for m = hbar = 1")


def airy_packet(x, t, airy: AiryParams, params: PhysicalParams = NATURAL) -> np.ndarray:
    """Complex shrinking Airy packet for m = hbar = 1.

    With L = e^{-omega t}, tau = (e^{2 omega t} - 1) / (2 omega), u = x / L:
    Psi = L**-1/2 e^{-i omega x**2 / 2} Ai(u - tau**2/4 + i a tau)
          exp(a u - a tau**2/2 + i a**2 tau/2 + i u tau/2 - i tau**3/12).
    """
    _check_units(params)
    x = np.asarray(x, dtype=float)
    L, tau = _airy_scale(t, params, "derived")
    a = airy.alpha
    u = x / L
    ai = airy_ai(u - tau * tau / 4 + 1j * a * tau)
    ph = a * u - a * tau * tau / 2 + 1j * (a * a * tau / 2 + u * tau / 2 - tau**3 / 12)
    chirp = np.exp(-1j * params.omega * x * x / 2)
    return L**-0.5 * chirp * ai * np.exp(ph)


def airy_packet_abs(x, t, airy: AiryParams, params: PhysicalParams = NATURAL, convention: str = "derived"):
    """|Psi(x, t)| of the shrinking Airy packet (m = hbar = 1).

    ``convention="derived"`` uses tau = (e^{2 omega t} - 1)/(2 omega) and
    Ai(u - tau**2/4 + i a tau), the pair that solves the Schroedinger
    equation. ``"printed"`` evaluates the commonly printed variant with
    tau = (e^{2 omega t} - 1)/omega and Ai(u - tau**2/2 + i a tau), kept for
    comparison only.
    """
    if t < 0:
        raise DomainError("t must be non-negative")
    _check_units(params)
    x = np.asarray(x, dtype=float)
    L, tau = _airy_scale(t, params, convention)
    a = airy.alpha
    u = x / L
    shift = tau * tau / 4 if convention == "derived" else tau * tau / 2
    return L**-0.5 * np.exp(a * (u - tau * tau / 2)) * np.abs(airy_ai(u - shift + 1j * a * tau))


# --- self-focusing beams ---------------------------------------------------


class Parity(str, Enum):
    ODD = "odd"
    EVEN = "even"


@dataclass(frozen=True)
class BeamSpec:
    """Energy eps = E / hbar omega, parity and focusing branch of a free beam."""

    epsilon: float
    parity: Parity = Parity.EVEN
    branch: FocusingBranch = FocusingBranch.F1

    def __post_init__(self):
        object.__setattr__(self, "parity", Parity(self.parity))
        object.__setattr__(self, "branch", FocusingBranch(self.branch))
        if not np.isfinite(self.epsilon):
            raise DomainError("epsilon must be finite")

    def B_F(self, scale: ScaleState, params: PhysicalParams) -> float:
        """Chirp rate Ldot/L - omega/L**2."""
        return scale.Ldot / scale.L - params.omega / scale.L**2


def _beam_values(spec: BeamSpec, scale: ScaleState, params: PhysicalParams, x, chirp_name):
    L = scale.L
    B = spec.B_F(scale, params)
    c = BEAM_CHIRPS[chirp_name](params, B)
    z = 1j * params.m * params.omega * x * x / (params.hbar * L * L)
    eps = spec.epsilon
    if spec.parity is Parity.ODD:
        env = x * L**-1.5 * kummer_m(0.5j * eps + 0.75, 1.5, z)
    else:
        env = L**-0.5 * kummer_m(0.5j * eps + 0.25, 0.5, z)
    phase = np.exp(1j * c * x * x / (2 * params.hbar) - 1j * eps * params.omega * scale.tau)
    return env * phase


@lru_cache(maxsize=None)
def beam_chirp_residuals(t: float = 0.3, delta: float = 1e-4) -> dict:
    """Free-particle residual of each beam chirp in the probe setup."""
    p = _PROBE
    grid = GridSpec(-12.0, 12.0, 2401)
    spec = BeamSpec(1.0, Parity.EVEN, FocusingBranch.F2)
    out = {}
    for name in BEAM_CHIRPS:
        triple = [
            WaveField(grid, _beam_values(spec, focusing_scale(spec.branch, s, p), p, grid.x, name), s)
            for s in (t - delta, t, t + delta)
        ]
        out[name] = _residual_window(triple, p, 0.0, 10.0)
    return out


def select_beam_chirp() -> str:
    res = beam_chirp_residuals()
    best = min(res, key=res.get)
    if res[best] > 1e-3:
        raise ArithmeticError(f"no beam chirp solves the free equation: {res}")
    return best


def self_focusing_beam(spec: BeamSpec, scale: ScaleState, params: PhysicalParams, grid: GridSpec) -> WaveField:
    """Non-normalisable free-particle beam focusing at t_c.

    Odd: x L**-3/2 e^{i c x**2/2 hbar - i eps omega tau} M(i eps/2 + 3/4, 3/2, i m omega x**2 / hbar L**2);
    even: L**-1/2 (...) M(i eps/2 + 1/4, 1/2, ...), with the chirp c chosen by
    :func:`select_beam_chirp`. ``scale`` comes from
    :func:`iho.scaledyn.focusing_scale` on ``spec.branch``.
    """
    if scale.t >= focal_time(spec.branch, params):
        raise DomainError("beam requested at or beyond the focal time")
    v = _beam_values(spec, scale, params, grid.x, select_beam_chirp())
    return WaveField(grid, v, scale.t)


def truncate_window(field: WaveField, half_width: float, order: int = 8) -> WaveField:
    """Multiply by exp(-(x/half_width)**order) and renormalise to unit norm."""
    if not half_width > 0:
        raise DomainError("half_width must be positive")
    if int(order) != order or order < 2 or order % 2:
        raise DomainError("order must be a positive even integer")
    with np.errstate(over="ignore"):
        win = np.exp(-((field.x / half_width) ** int(order)))
    v = field.values * win
    n = np.sqrt(integrate(np.abs(v) ** 2, field.grid))
    if not n > 0:
        raise DomainError("window removes the whole field")
    return field.replace(values=v / n)


def peak_and_fwhm(field: WaveField):
    """Peak intensity and full width at half maximum of the main lobe."""
    I = np.abs(field.values) ** 2
    i = int(np.argmax(I))
    half = 0.5 * I[i]
    lo = i
    while lo > 0 and I[lo] > half:
        lo -= 1
    hi = i
    while hi < I.size - 1 and I[hi] > half:
        hi += 1
    return float(I[i]), float((hi - lo) * field.grid.h)


def focusing_trace(spec: BeamSpec, times, params: PhysicalParams = NATURAL, grid: GridSpec | None = None,
                   half_width: float = 20.0, order: int = 8):
    """Truncate the beam at t = 0 and follow it with the exact free propagator.

    Returns arrays (t, peak_intensity, fwhm).
    """
    grid = grid or GridSpec(-80.0, 80.0, 16384)
    f0 = truncate_window(self_focusing_beam(spec, focusing_scale(spec.branch, 0.0, params), params, grid), half_width, order)
    peaks, widths = [], []
    for t in times:
        p, w = peak_and_fwhm(free_propagate_fft(f0, float(t), params))
        peaks.append(p)
        widths.append(w)
    return np.asarray(times, dtype=float), np.array(peaks), np.array(widths)

"""Square-integrable non-stationary states of the inverted oscillator.

With a scale function L(t) from :mod:`iho.scaledyn`,

    Psi_n(x, t) = L**-1/2 exp(i m Ldot x**2 / (2 hbar L) - i (n + 1/2) Omega tau) phi_n(x / L)

solves the Schroedinger equation for H = p**2/2m - m omega**2 x**2 / 2,
where phi_n is the n-th eigenfunction of an oscillator of frequency Omega.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from math import lgamma

import numpy as np

from .errors import CoverageWarning, DomainError, ResolutionWarning
from .fields import GridSpec, WaveField, derivative, inner_product, integrate
from .scaledyn import PhysicalParams, ScaleState
from .specfun import hermite_poly

__all__ = [
    "GridSpec",
    "WaveField",
    "QuantumIndex",
    "normalization_constant",
    "eval_psi_n",
    "inner_product",
    "apply_lowering",
    "apply_raising",
    "energy_expectation_analytic",
    "energy_expectation_quadrature",
    "coherent_state",
    "gram_matrix",
]

# grid half-width needed, in units of L sqrt(hbar (n+1) / (m Omega))
COVERAGE_FACTOR = 8.0


@dataclass(frozen=True)
class QuantumIndex:
    n: int

    def __post_init__(self):
        if int(self.n) != self.n or self.n < 0:
            raise DomainError("quantum number must be a non-negative integer")


def _index(n) -> int:
    return int(QuantumIndex(n.n if isinstance(n, QuantumIndex) else n).n)


def normalization_constant(n, params: PhysicalParams) -> float:
    """N_n = (m Omega / (pi hbar))**(1/4) / sqrt(2**n n!)."""
    n = _index(n)
    base = 0.25 * np.log(params.m * params.Omega / (np.pi * params.hbar))
    return float(np.exp(base - 0.5 * (n * np.log(2.0) + lgamma(n + 1))))


def oscillator_eigenfunction(n, xi, params: PhysicalParams):
    """phi_n(xi) of the oscillator with frequency Omega."""
    n = _index(n)
    y = np.sqrt(params.m * params.Omega / params.hbar) * np.asarray(xi, dtype=float)
    with np.errstate(over="ignore", invalid="ignore"):
        v = normalization_constant(n, params) * hermite_poly(n, y) * np.exp(-0.5 * y * y)
    return np.where(np.isfinite(v), v, 0.0)


def _coverage_notes(grid: GridSpec, L: float, n: int, params: PhysicalParams, shift=0.0):
    need = COVERAGE_FACTOR * L * np.sqrt(params.hbar * (n + 1) / (params.m * params.Omega))
    if grid.x_max < shift + need or grid.x_min > shift - need:
        msg = f"grid [{grid.x_min:g}, {grid.x_max:g}] does not cover {need:.3g} around {shift:.3g}"
        warnings.warn(msg, CoverageWarning, stacklevel=3)
        return (msg,)
    return ()


def _scale_phase(x, scale: ScaleState, params: PhysicalParams):
    return np.exp(1j * params.m * scale.Ldot * x * x / (2 * params.hbar * scale.L))


def eval_psi_n(n, scale: ScaleState, params: PhysicalParams, grid: GridSpec, with_phase=True) -> WaveField:
    """Sample Psi_n on ``grid`` at the state ``scale``.

    ``with_phase=False`` drops the factor exp(-i (n + 1/2) Omega tau) and
    returns the phase-stripped psi_n that the ladder operators act on.
    """
    n = _index(n)
    x = grid.x
    v = scale.L**-0.5 * _scale_phase(x, scale, params) * oscillator_eigenfunction(n, x / scale.L, params)
    if with_phase:
        v = v * np.exp(-1j * (n + 0.5) * params.Omega * scale.tau)
    notes = _coverage_notes(grid, scale.L, n, params)
    return WaveField(grid, v, scale.t, notes)


def gram_matrix(n_max: int, scale: ScaleState, params: PhysicalParams, grid: GridSpec):
    """Matrix of <Psi_n|Psi_m> for n, m = 0..n_max."""
    states = [eval_psi_n(n, scale, params, grid) for n in range(n_max + 1)]
    G = np.empty((n_max + 1, n_max + 1), dtype=complex)
    for i, a in enumerate(states):
        for j, b in enumerate(states):
            G[i, j] = inner_product(a, b)
    return G


def _ladder_parts(field: WaveField, scale: ScaleState, params: PhysicalParams, convention: str, method: str):
    if convention == "omega":
        w = params.omega
    elif convention == "scaled":
        w = params.Omega
    else:
        raise ValueError("convention must be 'omega' or 'scaled'")
    h = field.grid.h
    if method == "fd4" and h > 0.05 * np.sqrt(params.hbar / (params.m * params.Omega)) * scale.L:
        warnings.warn("grid too coarse for the momentum stencil", ResolutionWarning, stacklevel=3)
    x = field.x
    psi = field.values
    p_psi = -1j * params.hbar * derivative(psi, h, 1, method)
    pref = np.sqrt(params.m * w / (2 * params.hbar))
    q = (1 - 1j * scale.L * scale.Ldot / w) * x / scale.L * psi
    pp = 1j * scale.L * p_psi / (params.m * w)
    return pref, q, pp


def apply_lowering(field, scale, params, convention="omega", method="fd4") -> WaveField:
    """A psi with A = sqrt(m w / 2 hbar)[(1 - i L Ldot / w) x / L + i L p / (m w)].

    ``convention="omega"`` uses w = omega throughout; ``"scaled"`` uses
    w = Omega, which differs only when Omega != omega.
    """
    pref, q, pp = _ladder_parts(field, scale, params, convention, method)
    return field.replace(values=pref * (q + pp))


def apply_raising(field, scale, params, convention="omega", method="fd4") -> WaveField:
    """A^dagger psi, the adjoint of :func:`apply_lowering`."""
    w = params.omega if convention == "omega" else params.Omega
    pref, _, _ = _ladder_parts(field, scale, params, convention, method)
    x = field.x
    psi = field.values
    p_psi = -1j * params.hbar * derivative(psi, field.grid.h, 1, method)
    q = (1 + 1j * scale.L * scale.Ldot / w) * x / scale.L * psi
    pp = -1j * scale.L * p_psi / (params.m * w)
    return field.replace(values=pref * (q + pp))


def energy_expectation_analytic(n, L0: float, L0dot: float, params: PhysicalParams) -> float:
    """<H> in Psi_n for initial scale data (L0, L0dot).

    hbar (n + 1/2) [Omega / (2 L0**2) + L0dot**2 / (2 Omega) - omega**2 L0**2 / (2 Omega)],
    which for Omega = omega is (1/(2 L0**2) - L0**2/2 + L0dot**2/(2 omega**2)) (n + 1/2) hbar omega.
    """
    n = _index(n)
    if not L0 > 0:
        raise DomainError("L0 must be positive")
    W, w = params.Omega, params.omega
    return float(params.hbar * (n + 0.5) * (W / (2 * L0**2) + L0dot**2 / (2 * W) - w**2 * L0**2 / (2 * W)))


def hamiltonian_action(values, grid: GridSpec, params: PhysicalParams, potential=None, method="spectral"):
    """H psi with H = p**2/2m + V(x); V defaults to the inverted oscillator."""
    x = grid.x
    V = -0.5 * params.m * params.omega**2 * x * x if potential is None else potential
    return -(params.hbar**2) / (2 * params.m) * derivative(values, grid.h, 2, method) + V * values


def energy_expectation_quadrature(field: WaveField, params: PhysicalParams, method="spectral") -> float:
    """<psi|H psi> / <psi|psi> with the second derivative by FFT or 4th-order stencil."""
    Hpsi = hamiltonian_action(field.values, field.grid, params, method=method)
    num = integrate(np.conj(field.values) * Hpsi, field.grid)
    den = integrate(np.abs(field.values) ** 2, field.grid)
    return float(np.real(num / den))


def coherent_state(alpha, scale: ScaleState, params: PhysicalParams, grid: GridSpec, evolve=False) -> WaveField:
    """Eigenstate of the lowering operator with eigenvalue ``alpha``.

    The oscillator coherent state
    (m Omega / pi hbar)**(1/4) exp(-|a|**2/2 - a**2/2 + sqrt(2) a y - y**2/2),
    y = sqrt(m Omega / hbar) x / L, dressed with the scale factor and chirp.
    With ``evolve=True`` the time dependence of the coherent superposition
    of Psi_n is included: alpha -> alpha e^{-i Omega tau} and an overall
    phase e^{-i Omega tau / 2}.
    """
    a = complex(alpha)
    phase = 1.0
    if evolve:
        a = a * np.exp(-1j * params.Omega * scale.tau)
        phase = np.exp(-0.5j * params.Omega * scale.tau)
    x = grid.x
    y = np.sqrt(params.m * params.Omega / params.hbar) * x / scale.L
    amp = (params.m * params.Omega / (np.pi * params.hbar)) ** 0.25
    expo = -0.5 * abs(a) ** 2 - 0.5 * a * a + np.sqrt(2.0) * a * y - 0.5 * y * y
    v = phase * amp * scale.L**-0.5 * _scale_phase(x, scale, params) * np.exp(expo)
    shift = np.sqrt(2.0) * a.real * scale.L * np.sqrt(params.hbar / (params.m * params.Omega))
    notes = _coverage_notes(grid, scale.L, 0, params, shift)
    return WaveField(grid, v, scale.t, notes)

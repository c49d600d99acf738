"""Grid-based Schroedinger propagators used as ground truth.

The primary oracle is Crank-Nicolson,

    (1 + i H dt / 2 hbar) psi_{k+1} = (1 - i H dt / 2 hbar) psi_k,

with a 5-point (4th-order) Laplacian, Dirichlet walls and an optional
quadratic complex absorbing potential (CAP) at the grid edges. For free
motion an exact FFT propagator serves as a cross-oracle.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import splu

from .errors import DomainError, GridMismatchError
from .fields import GridSpec, WaveField, check_same_grid, derivative, integrate, l2_norm
from .scaledyn import PhysicalParams


class Boundary(str, Enum):
    DIRICHLET = "dirichlet"
    ABSORBING = "absorbing"


class PotentialKind(str, Enum):
    INVERTED = "inverted"
    HARMONIC = "harmonic"
    FREE = "free"
    INVERTED_WITH_WALL = "inverted_with_wall"


@dataclass(frozen=True)
class PropagatorConfig:
    """Time step, boundary treatment and CAP shape.

    ``cap_sides`` selects which edges absorb: "both", "left" or "right".
    """

    dt: float = 1e-3
    boundary: Boundary = Boundary.DIRICHLET
    cap_strength: float = 20.0
    cap_width: float = 0.2
    cap_sides: str = "both"
    laplacian: str = "5pt"

    def __post_init__(self):
        object.__setattr__(self, "boundary", Boundary(self.boundary))
        if not self.dt > 0:
            raise DomainError("dt must be positive")
        if not 0 <= self.cap_width < 0.4:
            raise DomainError("cap_width must lie in [0, 0.4)")
        if self.cap_strength < 0:
            raise DomainError("cap_strength must be non-negative")
        if self.cap_sides not in ("both", "left", "right"):
            raise DomainError("cap_sides must be 'both', 'left' or 'right'")
        if self.laplacian not in ("3pt", "5pt"):
            raise DomainError("laplacian must be '3pt' or '5pt'")


@dataclass(frozen=True)
class PotentialSpec:
    """Potential on the real line; ``wall`` is the position -d of a hard wall."""

    kind: PotentialKind
    params: PhysicalParams = PhysicalParams()
    wall: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "kind", PotentialKind(self.kind))
        if self.kind is PotentialKind.INVERTED_WITH_WALL and self.wall is None:
            raise DomainError("inverted_with_wall needs a wall position")

    def values(self, x):
        p = self.params
        if self.kind is PotentialKind.FREE:
            return np.zeros_like(x)
        if self.kind is PotentialKind.HARMONIC:
            return 0.5 * p.m * p.Omega**2 * x * x
        return -0.5 * p.m * p.omega**2 * x * x

    def interior(self, x):
        """Mask of nodes where psi is free to evolve (strictly right of a wall)."""
        if self.kind is PotentialKind.INVERTED_WITH_WALL:
            return x > self.wall
        return np.ones(x.shape, dtype=bool)


def cap_profile(grid: GridSpec, config: PropagatorConfig):
    """Quadratic CAP eta ((|x| - x_s) / (x_e - x_s))**2 over the outer cap_width of each side."""
    x = grid.x
    W = np.zeros_like(x)
    if config.boundary is not Boundary.ABSORBING or config.cap_width == 0:
        return W
    span = grid.x_max - grid.x_min
    width = config.cap_width * span
    if config.cap_sides in ("both", "right"):
        xs = grid.x_max - width
        m = x > xs
        W[m] += config.cap_strength * ((x[m] - xs) / width) ** 2
    if config.cap_sides in ("both", "left"):
        xs = grid.x_min + width
        m = x < xs
        W[m] += config.cap_strength * ((xs - x[m]) / width) ** 2
    return W


def _laplacian(n, h, kind):
    if kind == "3pt":
        return sp.diags([1.0, -2.0, 1.0], [-1, 0, 1], shape=(n, n)) / h**2
    return sp.diags([-1.0, 16.0, -30.0, 16.0, -1.0], [-2, -1, 0, 1, 2], shape=(n, n)) / (12 * h**2)


def hamiltonian_matrix(grid: GridSpec, potential: PotentialSpec, config: PropagatorConfig):
    """Sparse H on the interior nodes (complex if a CAP is present) and the interior mask."""
    p = potential.params
    x = grid.x
    mask = potential.interior(x)
    xi = x[mask]
    V = potential.values(xi) - 1j * cap_profile(grid, config)[mask]
    lap = _laplacian(xi.size, grid.h, config.laplacian).astype(complex)
    H = -(p.hbar**2) / (2 * p.m) * lap + sp.diags(V.astype(complex))
    return H.tocsc(), mask


class CrankNicolson:
    """Reusable CN stepper; the left-hand matrix is factorised once."""

    def __init__(self, grid: GridSpec, potential: PotentialSpec, config: PropagatorConfig, dt=None):
        self.grid = grid
        self.potential = potential
        self.config = config
        self.dt = config.dt if dt is None else dt
        H, self.mask = hamiltonian_matrix(grid, potential, config)
        c = 0.5j * self.dt / potential.params.hbar
        eye = sp.identity(H.shape[0], dtype=complex, format="csc")
        self._rhs = (eye - c * H).tocsr()
        try:
            self._lu = splu((eye + c * H).tocsc())
        except RuntimeError as exc:  # singular factor
            raise ArithmeticError(f"Crank-Nicolson factorisation failed: {exc}") from exc

    def step(self, psi, n=1):
        v = psi[self.mask]
        for _ in range(n):
            v = self._lu.solve(self._rhs @ v)
        out = np.zeros_like(psi)
        out[self.mask] = v
        return out


def propagate(
    initial: WaveField,
    potential: PotentialSpec,
    config: PropagatorConfig,
    t_end: float,
    snapshot_times=None,
) -> list[WaveField]:
    """Evolve ``initial`` to ``t_end`` and return snapshots.

    Snapshots are taken at ``snapshot_times`` (rounded to the step grid;
    default: the start and end). The step is shrunk slightly so that an
    integer number of steps reaches ``t_end``.
    """
    span = float(t_end) - initial.t
    if span < 0:
        raise DomainError("t_end precedes the initial time")
    nsteps = max(1, int(np.ceil(span / config.dt - 1e-9))) if span > 0 else 0
    dt = span / nsteps if nsteps else config.dt
    if snapshot_times is None:
        marks = [0, nsteps]
    else:
        marks = sorted({int(round((float(t) - initial.t) / dt)) for t in snapshot_times})
        if marks and (marks[0] < 0 or marks[-1] > nsteps):
            raise DomainError("snapshot time outside [t0, t_end]")
    cn = CrankNicolson(initial.grid, potential, config, dt)
    psi = np.array(initial.values)
    out = []
    k = 0
    for mk in marks:
        psi = cn.step(psi, mk - k)
        k = mk
        if not np.all(np.isfinite(psi)):
            raise ArithmeticError("non-finite values during propagation")
        out.append(WaveField(initial.grid, psi, initial.t + mk * dt))
    return out


def free_propagate_fft(initial: WaveField, t: float, params: PhysicalParams = PhysicalParams()) -> WaveField:
    """Exact free evolution over time ``t`` on the periodic grid by FFT."""
    g = initial.grid
    k = 2 * np.pi * np.fft.fftfreq(g.n_points, d=g.h)
    phase = np.exp(-1j * params.hbar * k * k * t / (2 * params.m))
    v = np.fft.ifft(phase * np.fft.fft(initial.values))
    return WaveField(g, v, initial.t + t)


def split_step(initial: WaveField, potential: PotentialSpec, t_end: float, dt: float) -> WaveField:
    """Strang split-step Fourier propagation (cross-oracle, no walls)."""
    if potential.kind is PotentialKind.INVERTED_WITH_WALL:
        raise DomainError("split-step oracle does not support walls")
    g = initial.grid
    p = potential.params
    span = float(t_end) - initial.t
    n = max(1, int(np.ceil(span / dt - 1e-9)))
    dt = span / n
    k = 2 * np.pi * np.fft.fftfreq(g.n_points, d=g.h)
    kin = np.exp(-1j * p.hbar * k * k * dt / (2 * p.m))
    half = np.exp(-0.5j * potential.values(g.x) * dt / p.hbar)
    v = np.array(initial.values)
    for _ in range(n):
        v = half * np.fft.ifft(kin * np.fft.fft(half * v))
    return WaveField(g, v, t_end)


def tdse_residual(fields, potential: PotentialSpec, method="fd4") -> float:
    """Relative residual of i hbar d/dt psi = H psi from a (t-d, t, t+d) triple."""
    a, b, c = fields
    g = check_same_grid(a, b, c)
    d1, d2 = b.t - a.t, c.t - b.t
    if not d1 > 0 or not np.isclose(d1, d2, rtol=1e-9, atol=0):
        raise GridMismatchError("snapshots must be equally spaced in time")
    p = potential.params
    V = potential.values(g.x)
    H = -(p.hbar**2) / (2 * p.m) * derivative(b.values, g.h, 2, method) + V * b.values
    dt_psi = 1j * p.hbar * (c.values - a.values) / (2 * d1)
    return l2_norm(dt_psi - H, g) / l2_norm(H, g)


@dataclass(frozen=True)
class LeakageResult:
    """Decay rate of the in-well norm with fit diagnostics."""

    rate: float
    r_squared: float
    low_confidence: bool
    times: np.ndarray
    norms: np.ndarray


def leakage_rate(
    initial: WaveField,
    problem,
    config: PropagatorConfig,
    t_end: float,
    params: PhysicalParams = PhysicalParams(),
    n_samples: int = 41,
    fit_fraction: float = 0.5,
) -> LeakageResult:
    """Fit the late-time decay of the norm held in [-d, 0] behind a hard wall.

    ``problem`` is a HalfLineProblem (anything with ``d_prime``). The wall
    sits at x = -d' sqrt(hbar / m omega); the +x edge absorbs. Returns
    the slope -d log N / dt in units of omega over the last
    ``fit_fraction`` of the run.
    """
    config = replace(config, boundary=Boundary.ABSORBING, cap_sides="right")
    d = problem.d_prime * params.length
    pot = PotentialSpec(PotentialKind.INVERTED_WITH_WALL, params, wall=-d)
    times = initial.t + np.linspace(0.0, t_end - initial.t, n_samples)
    snaps = propagate(initial, pot, config, t_end, snapshot_times=times)
    x = initial.grid.x
    well = (x >= -d) & (x <= 0)
    norms = np.array([np.sum(np.abs(s.values[well]) ** 2) * initial.grid.h for s in snaps])
    ts = np.array([s.t for s in snaps])
    late = ts >= ts[0] + (1 - fit_fraction) * (ts[-1] - ts[0])
    y = np.log(norms[late])
    slope, icpt = np.polyfit(ts[late], y, 1)
    resid = y - (slope * ts[late] + icpt)
    ss_tot = np.sum((y - y.mean()) ** 2)
    r2 = 1.0 - np.sum(resid**2) / ss_tot if ss_tot > 0 else 1.0
    rate = -slope / params.omega
    return LeakageResult(float(rate), float(r2), bool(r2 < 0.9), ts, norms)


def norm_history(snapshots, rule: str = "simpson") -> np.ndarray:
    """Squared norms of the snapshots.

    ``rule="sum"`` gives h * sum |psi|**2, the quantity Crank-Nicolson
    conserves exactly with Dirichlet walls; ``"simpson"`` is the quadrature
    used elsewhere in the package.
    """
    if rule == "sum":
        return np.array([np.sum(np.abs(s.values) ** 2) * s.grid.h for s in snapshots])
    if rule == "simpson":
        return np.array([integrate(np.abs(s.values) ** 2, s.grid) for s in snapshots])
    raise ValueError("rule must be 'simpson' or 'sum'")

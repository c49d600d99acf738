"""Uniform grids, sampled wavefunctions, quadrature and derivatives."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from scipy.integrate import simpson

from .errors import DomainError, GridMismatchError


@dataclass(frozen=True)
class GridSpec:
    """Uniform grid of ``n_points`` nodes on [x_min, x_max] (endpoints included)."""

    x_min: float = -40.0
    x_max: float = 40.0
    n_points: int = 8192

    def __post_init__(self):
        if not self.x_max > self.x_min:
            raise DomainError("x_max must exceed x_min")
        if int(self.n_points) != self.n_points or self.n_points < 16:
            raise DomainError("n_points must be an integer >= 16")

    @classmethod
    def symmetric(cls, half_width: float, n_points: int) -> "GridSpec":
        return cls(-float(half_width), float(half_width), int(n_points))

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.n_points - 1)

    @property
    def x(self) -> np.ndarray:
        return np.linspace(self.x_min, self.x_max, self.n_points)

    def to_dict(self) -> dict:
        return {"x_min": self.x_min, "x_max": self.x_max, "n_points": self.n_points}


@dataclass(frozen=True, eq=False)
class WaveField:
    """Complex samples of a wavefunction on ``grid`` at time ``t``.

    ``values`` is stored read-only; operations return new fields.
    ``notes`` collects diagnostics such as coverage warnings.
    """

    grid: GridSpec
    values: np.ndarray
    t: float = 0.0
    notes: tuple = field(default_factory=tuple)

    def __post_init__(self):
        v = np.array(self.values, dtype=complex)
        if v.shape != (self.grid.n_points,):
            raise GridMismatchError(f"expected {self.grid.n_points} samples, got {v.shape}")
        if not np.all(np.isfinite(v)):
            raise DomainError("wave field contains non-finite values")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def x(self) -> np.ndarray:
        return self.grid.x

    def replace(self, values=None, t=None, notes=None) -> "WaveField":
        return WaveField(
            self.grid,
            self.values if values is None else values,
            self.t if t is None else t,
            self.notes if notes is None else notes,
        )

    def norm(self) -> float:
        return float(np.sqrt(integrate(np.abs(self.values) ** 2, self.grid)))

    def normalized(self) -> "WaveField":
        return self.replace(values=self.values / self.norm())

    # CSV with a one-line JSON header ------------------------------------
    def to_csv(self, path, meta: dict | None = None) -> None:
        header = {"grid": self.grid.to_dict(), "t": self.t}
        if meta:
            header.update(meta)
        lines = ["# " + json.dumps(header, sort_keys=False), "x,re,im"]
        for xi, vi in zip(self.x, self.values):
            lines.append(f"{xi:.17g},{vi.real:.17g},{vi.imag:.17g}")
        Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")

    @classmethod
    def from_csv(cls, path) -> "WaveField":
        text = Path(path).read_text(encoding="utf-8").splitlines()
        header = json.loads(text[0][1:].strip())
        data = np.loadtxt(text[2:], delimiter=",", ndmin=2)
        grid = GridSpec(**header["grid"])
        return cls(grid, data[:, 1] + 1j * data[:, 2], float(header["t"]))


def check_same_grid(*fields: WaveField, same_time=False) -> GridSpec:
    g = fields[0].grid
    for f in fields[1:]:
        if f.grid != g:
            raise GridMismatchError("fields live on different grids")
        if same_time and f.t != fields[0].t:
            raise GridMismatchError("fields carry different time stamps")
    return g


def integrate(values, grid: GridSpec):
    """Composite Simpson quadrature over the grid."""
    return simpson(values, dx=grid.h)


def inner_product(a: WaveField, b: WaveField) -> complex:
    """<a|b> by composite Simpson quadrature of conj(a) b."""
    g = check_same_grid(a, b, same_time=True)
    return complex(integrate(np.conj(a.values) * b.values, g))


def l2_norm(values, grid: GridSpec) -> float:
    return float(np.sqrt(integrate(np.abs(values) ** 2, grid)))


def moments(f: WaveField):
    """(<x>, Delta x) of |psi|**2 normalised on the grid."""
    rho = np.abs(f.values) ** 2
    n = integrate(rho, f.grid)
    mean = integrate(f.x * rho, f.grid) / n
    var = integrate((f.x - mean) ** 2 * rho, f.grid) / n
    return float(mean), float(np.sqrt(var))


# 4th-order central stencils; samples beyond the grid are taken as zero
_D1 = np.array([1.0, -8.0, 0.0, 8.0, -1.0]) / 12.0
_D2 = np.array([-1.0, 16.0, -30.0, 16.0, -1.0]) / 12.0


def _stencil(v, coef):
    p = np.concatenate([np.zeros(2, v.dtype), v, np.zeros(2, v.dtype)])
    n = v.size
    return sum(c * p[k : k + n] for k, c in enumerate(coef) if c != 0.0)


def derivative(values, h: float, order: int = 1, method: str = "fd4"):
    """First or second derivative on a uniform grid.

    ``fd4`` uses 4th-order central differences with zero padding,
    ``spectral`` differentiates by FFT (periodic continuation).
    """
    v = np.asarray(values, dtype=complex)
    if order not in (1, 2):
        raise ValueError("order must be 1 or 2")
    if method == "fd4":
        return _stencil(v, _D1 if order == 1 else _D2) / h**order
    if method == "spectral":
        k = 2 * np.pi * np.fft.fftfreq(v.size, d=h)
        return np.fft.ifft((1j * k) ** order * np.fft.fft(v))
    raise ValueError(f"unknown derivative method {method!r}")

"""Stationary eigenfunctions and the two boundary-value spectra.

Energies are written E = eps hbar omega and lengths x' = x / sqrt(hbar / m omega).
For real eps the energy eigenfunctions are

* parity form:  psi_odd  = x e^{-i x'^2/2} M(i eps/2 + 3/4, 3/2, i x'^2),
                psi_even =   e^{-i x'^2/2} M(i eps/2 + 1/4, 1/2, i x'^2);
* Weber form:   psi_1 = D_{i eps - 1/2}((-1 + i) x'),  psi_2 = D_{-i eps - 1/2}((1 + i) x'),

with the principal branch sqrt(2 i) = 1 + i. A box [0, d] quantises eps
through psi_odd(d) = 0; a hard wall at x = -d bounding the potential from
the left quantises it through psi_2(-d) = 0, whose roots are complex.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from .errors import ConvergenceError, DomainError
from .scaledyn import NATURAL, PhysicalParams
from .specfun import kummer_m, parabolic_cylinder_d

SQRT_2I = 1 + 1j
# |Im eps| below this marks a bounded half-line eigenstate
BOUND_TOL = 1e-6


@dataclass(frozen=True)
class BoxProblem:
    d_prime: float

    def __post_init__(self):
        if not self.d_prime > 0:
            raise DomainError("d_prime must be positive")


@dataclass(frozen=True)
class HalfLineProblem:
    d_prime: float

    def __post_init__(self):
        if not self.d_prime > 0:
            raise DomainError("d_prime must be positive")


@dataclass
class SpectrumResult:
    """Eigenvalues eps (units of hbar omega) sorted by real part.

    ``residuals`` are |f(eps)| relative to |f| at the bracket midpoint
    (box) or at the Newton seed (half-line). ``bounded`` flags the
    half-line roots with |Im eps| < bound_tol.
    """

    d_prime: float
    eigenvalues: np.ndarray
    residuals: np.ndarray
    brackets: list = field(default_factory=list)
    method: str = ""
    complete: bool = True
    bounded: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    @property
    def bounded_eigenvalues(self) -> np.ndarray:
        if self.bounded is None:
            return self.eigenvalues
        return self.eigenvalues[self.bounded]

    def to_dict(self) -> dict:
        out = {
            "d_prime": float(self.d_prime),
            "eigenvalues": [
                {"re": float(e.real), "im": float(e.imag), "residual": float(r)}
                for e, r in zip(self.eigenvalues, self.residuals)
            ],
            "method": self.method,
            "complete": self.complete,
        }
        if self.bounded is not None:
            out["bounded"] = [bool(b) for b in self.bounded]
        out["brackets"] = [[float(a), float(b)] for a, b in self.brackets]
        out.update(self.meta)
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _xprime(x, params):
    return np.asarray(x, dtype=float) / params.length


def eval_cylinder_eigenstates(E, x, params: PhysicalParams = NATURAL):
    """(psi_1, psi_2) at positions x for energy E = eps hbar omega."""
    eps = complex(E)
    xp = _xprime(x, params)
    psi1 = parabolic_cylinder_d(1j * eps - 0.5, 1j * SQRT_2I * xp)
    psi2 = parabolic_cylinder_d(-1j * eps - 0.5, SQRT_2I * xp)
    return psi1, psi2


def eval_parity_eigenstates(E, x, params: PhysicalParams = NATURAL):
    """(psi_odd, psi_even) at positions x; psi_odd'(0) = 1, psi_even(0) = 1."""
    eps = complex(E)
    x = np.asarray(x, dtype=float)
    xp = _xprime(x, params)
    z = 1j * xp * xp
    g = np.exp(-0.5 * z)
    odd = x * g * kummer_m(0.5j * eps + 0.75, 1.5, z)
    even = g * kummer_m(0.5j * eps + 0.25, 0.5, z)
    return odd, even


def free_box_approx(n: int, d_prime: float) -> float:
    """Infinite-square-well level n**2 pi**2 / (2 d'**2)."""
    if int(n) != n or n < 1:
        raise DomainError("n must be a positive integer")
    if not d_prime > 0:
        raise DomainError("d_prime must be positive")
    return float(n * n * np.pi**2 / (2 * d_prime**2))


def _box_function(eps, d_prime):
    """psi_odd at x' = d' (dimensionless), vectorised over real eps."""
    eps = np.asarray(eps, dtype=float)
    z = 1j * d_prime**2
    return d_prime * np.exp(-0.5 * z) * kummer_m(0.5j * eps + 0.75, 1.5, z)


def _real_part_along_phase(f):
    """Rotate samples by their common phase; return real part and imaginary leakage."""
    theta = 0.5 * np.angle(np.sum(f * f))
    g = f * np.exp(-1j * theta)
    leak = np.max(np.abs(g.imag)) / max(np.max(np.abs(g)), 1e-300)
    return g.real, theta, leak


def box_spectrum(
    problem: BoxProblem,
    count: int,
    params: PhysicalParams = NATURAL,
    step: float = 0.05,
    xtol: float = 1e-10,
    max_eps: float = 1e5,
) -> SpectrumResult:
    """Lowest ``count`` eigenvalues of the box [0, d].

    The even solution cannot vanish at x = 0, so only psi_odd enters and
    eps solves psi_odd(d) = 0. For real eps that boundary value is real up
    to a constant phase; the phase is removed, sign changes on a grid of
    spacing ``step`` bracket the roots and Brent's method polishes them.
    If the rotated samples are not real (leakage > 1e-6) the roots are
    taken instead from local minima of |psi_odd(d)|**2.
    """
    if int(count) != count or count < 1:
        raise DomainError("count must be a positive integer")
    d = problem.d_prime
    lo = -0.5 * d * d
    hi = min(max(1.3 * free_box_approx(count + 1, d), lo + 10.0), max_eps)
    roots, brackets, resid = [], [], []
    method = "phase-rotated sign change + brentq"
    while True:
        grid = np.arange(lo, hi + step, step)
        f = _box_function(grid, d)
        g, theta, leak = _real_part_along_phase(f)
        roots, brackets, resid = [], [], []
        if leak <= 1e-6:
            rot = np.exp(-1j * theta)

            def fr(e):
                return float((_box_function(np.array([e]), d)[0] * rot).real)

            s = np.sign(g)
            idx = np.flatnonzero(s[:-1] * s[1:] < 0)
            exact = np.flatnonzero(g == 0)
            for i in idx:
                r = brentq(fr, grid[i], grid[i + 1], xtol=xtol, rtol=4 * np.finfo(float).eps)
                mid = abs(_box_function(np.array([0.5 * (grid[i] + grid[i + 1])]), d)[0])
                roots.append(r)
                brackets.append((grid[i], grid[i + 1]))
                resid.append(abs(_box_function(np.array([r]), d)[0]) / mid)
            for i in exact:
                roots.append(grid[i])
                brackets.append((grid[i], grid[i]))
                resid.append(0.0)
        else:
            method = "local minima of |psi_odd(d)|^2"
            a2 = np.abs(f) ** 2
            idx = np.flatnonzero((a2[1:-1] < a2[:-2]) & (a2[1:-1] < a2[2:])) + 1
            for i in idx:
                res = minimize_scalar(
                    lambda e: abs(_box_function(np.array([e]), d)[0]) ** 2,
                    bracket=(grid[i - 1], grid[i], grid[i + 1]),
                    tol=1e-12,
                )
                mid = abs(f[i])
                roots.append(res.x)
                brackets.append((grid[i - 1], grid[i + 1]))
                resid.append(np.sqrt(res.fun) / max(mid, 1e-300))
        if len(roots) >= count or hi >= max_eps:
            break
        hi = min(2 * hi + 10.0, max_eps)
    order = np.argsort(roots)
    roots = np.asarray(roots)[order][:count]
    resid = np.asarray(resid)[order][:count]
    brackets = [brackets[i] for i in order][:count]
    return SpectrumResult(
        d_prime=d,
        eigenvalues=roots.astype(complex),
        residuals=resid,
        brackets=brackets,
        method=method,
        complete=len(roots) >= count,
        meta={"scan": {"lo": lo, "hi": float(hi), "step": step}},
    )


def box_critical_length(params: PhysicalParams = NATURAL, lo: float = 1.0, hi: float = 4.0, tol: float = 1e-4) -> float:
    """Box width at which the ground level crosses zero (bisection)."""

    def e0(d):
        return box_spectrum(BoxProblem(d), 1, params).eigenvalues[0].real

    flo, fhi = e0(lo), e0(hi)
    if flo * fhi > 0:
        raise ConvergenceError("ground level does not change sign in the window")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        fm = e0(mid)
        if fm * flo > 0:
            lo, flo = mid, fm
        else:
            hi = mid
    return 0.5 * (lo + hi)


def halfline_boundary(eps, d_prime):
    """psi_2 at the wall x' = -d', vectorised over complex eps."""
    eps = np.asarray(eps, dtype=complex)
    return parabolic_cylinder_d(-1j * eps - 0.5, np.full(eps.shape, -SQRT_2I * d_prime))


def _newton(f, z0, h=1e-6, tol=1e-13, maxit=60):
    z = complex(z0)
    fz = f(z)
    for _ in range(maxit):
        df = (f(z + h) - f(z - h)) / (2 * h)
        if df == 0 or not np.isfinite(df):
            return z, fz, False
        dz = fz / df
        z -= dz
        fz = f(z)
        if abs(dz) <= tol * max(1.0, abs(z)):
            return z, fz, True
    return z, fz, False


def halfline_spectrum(
    problem: HalfLineProblem,
    params: PhysicalParams = NATURAL,
    bound_tol: float = BOUND_TOL,
    re_max: float = 20.0,
    im_range: tuple = (-1.0, 0.1),
    re_step: float = 0.1,
    im_step: float = 0.05,
) -> SpectrumResult:
    """Complex roots of psi_2(-d) = 0 in Re eps in [-d'**2/2, re_max], Im eps in im_range.

    Local minima of |f| on a coarse grid seed a complex Newton iteration
    (central-difference derivative, step 1e-6). Roots with
    |Im eps| < ``bound_tol`` are flagged as bounded eigenstates.
    """
    d = problem.d_prime
    re_lo = -0.5 * d * d
    re = np.arange(re_lo, re_max + re_step / 2, re_step)
    im = np.arange(im_range[0], im_range[1] + im_step / 2, im_step)
    E = re[None, :] + 1j * im[:, None]
    F = np.abs(halfline_boundary(E.ravel(), d)).reshape(E.shape)
    with np.errstate(divide="ignore"):
        logF = np.log(F)
    pad = np.pad(logF, 1, constant_values=np.inf)
    core = pad[1:-1, 1:-1]
    is_min = np.ones_like(core, dtype=bool)
    for di in (-1, 0, 1):
        for dj in (-1, 0, 1):
            if di or dj:
                is_min &= core <= pad[1 + di : pad.shape[0] - 1 + di, 1 + dj : pad.shape[1] - 1 + dj]
    seeds = E[is_min]

    def f(e):
        return complex(halfline_boundary(np.array([e]), d)[0])

    found, resid = [], []
    for s in seeds:
        z, fz, ok = _newton(f, s)
        if not ok:
            continue
        if not (re_lo - 0.5 <= z.real <= re_max + 0.5 and im_range[0] - 0.1 <= z.imag <= im_range[1] + 0.1):
            continue
        if any(abs(z - w) < 1e-6 * max(1.0, abs(z)) for w in found):
            continue
        found.append(z)
        resid.append(abs(fz) / max(abs(f(s)), 1e-300))
    if not found and seeds.size:
        meta = {"scan": {"re": [float(re[0]), float(re[-1])], "im": [float(im[0]), float(im[-1])]}}
    else:
        meta = {}
    order = np.argsort([z.real for z in found])
    eig = np.asarray(found, dtype=complex)[order] if found else np.zeros(0, complex)
    res = np.asarray(resid)[order] if found else np.zeros(0)
    bounded = np.abs(eig.imag) < bound_tol
    meta.update({"bound_tol": bound_tol, "n_bounded": int(bounded.sum())})
    return SpectrumResult(
        d_prime=d,
        eigenvalues=eig,
        residuals=res,
        brackets=[(float(re_lo), float(re_max))],
        method="grid minima of |psi_2(-d)| + complex Newton",
        complete=bool(found),
        bounded=bounded,
        meta=meta,
    )


def count_bounded(d_prime: float, params: PhysicalParams = NATURAL, bound_tol: float = BOUND_TOL) -> int:
    return int(halfline_spectrum(HalfLineProblem(d_prime), params, bound_tol).bounded.sum())


def halfline_critical_length(
    params: PhysicalParams = NATURAL,
    lo: float = 2.0,
    hi: float = 5.0,
    tol: float = 1e-3,
    bound_tol: float = BOUND_TOL,
) -> float:
    """Smallest wall distance d' with a bounded eigenstate (bisection)."""
    if count_bounded(lo, params, bound_tol) > 0 or count_bounded(hi, params, bound_tol) == 0:
        raise ConvergenceError("no onset of bounded states inside the window")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if count_bounded(mid, params, bound_tol) > 0:
            hi = mid
        else:
            lo = mid
    return 0.5 * (lo + hi)

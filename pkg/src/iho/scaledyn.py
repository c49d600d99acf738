"""Scale-function dynamics for the inverted oscillator.

The width of every non-stationary state is carried by a scale function
``L(t)`` obeying

    L'' = omega**2 L + Omega**2 / L**3,        d tau / dt = 1 / L**2.

Three families are used elsewhere in the package: the reference solution
``L = sqrt(cosh 2 omega t)`` (Omega = omega), the free solutions
``L = L+ e^{omega t} + L- e^{-omega t}`` (Omega = 0) and the two focusing
branches with ``L'' = -omega**2 / L**3`` used for the free-particle beams.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np
from scipy.integrate import quad, solve_ivp

from .errors import DomainError, SingularityError

# integrator tolerances for the scale ODE
RTOL = 1e-10
ATOL = 1e-12
# L below this value counts as a collapse of the scale function
L_FLOOR = 1e-6


@dataclass(frozen=True)
class PhysicalParams:
    """Mass, frequencies and action scale.

    ``Omega=None`` means Omega = omega, the choice that makes the
    reference scale function ``sqrt(cosh 2 omega t)`` available.
    """

    m: float = 1.0
    omega: float = 1.0
    hbar: float = 1.0
    Omega: float | None = None

    def __post_init__(self):
        if self.Omega is None:
            object.__setattr__(self, "Omega", float(self.omega))
        for name in ("m", "omega", "hbar", "Omega"):
            v = getattr(self, name)
            if not np.isfinite(v):
                raise DomainError(f"{name} must be finite")
        if self.m <= 0 or self.hbar <= 0:
            raise DomainError("m and hbar must be positive")
        if self.omega < 0 or self.Omega < 0:
            raise DomainError("frequencies must be non-negative")

    @property
    def length(self) -> float:
        """Natural length sqrt(hbar / (m omega))."""
        return float(np.sqrt(self.hbar / (self.m * self.omega)))

    @property
    def energy(self) -> float:
        return self.hbar * self.omega

    def to_dict(self) -> dict:
        return {"m": self.m, "omega": self.omega, "hbar": self.hbar, "Omega": self.Omega}


NATURAL = PhysicalParams()


@dataclass(frozen=True)
class ScaleState:
    """Instantaneous scale-function state (t, L, dL/dt, tau)."""

    t: float
    L: float
    Ldot: float
    tau: float

    def __post_init__(self):
        if not np.all(np.asarray(self.L) > 0):
            raise DomainError("scale function must be positive")


@dataclass(frozen=True)
class FreeScaleCoefficients:
    """Coefficients of L = L_plus e^{omega t} + L_minus e^{-omega t}."""

    L_plus: float
    L_minus: float

    def __post_init__(self):
        if not self.L_plus + self.L_minus > 0:
            raise DomainError("L_plus + L_minus must be positive")


@dataclass(frozen=True)
class ClassicalState:
    x0: float
    v0: float

    def __post_init__(self):
        if not (np.isfinite(self.x0) and np.isfinite(self.v0)):
            raise DomainError("classical state must be finite")


class FocusingBranch(str, Enum):
    F1 = "F1"
    F2 = "F2"


def first_integral(state: ScaleState, params: PhysicalParams, Omega_sq=None, omega_sq=None):
    """I = Ldot**2 - omega**2 L**2 + Omega**2 / L**2, conserved by the scale ODE."""
    w2 = params.omega**2 if omega_sq is None else omega_sq
    W2 = params.Omega**2 if Omega_sq is None else Omega_sq
    L = np.asarray(state.L)
    return np.asarray(state.Ldot) ** 2 - w2 * L**2 + W2 / L**2


def reference_scale(t, params: PhysicalParams = NATURAL) -> ScaleState:
    """Closed-form solution with L(0) = 1, L'(0) = 0 and Omega = omega.

    ``tan(omega tau) = tanh(omega t)``, so omega tau tends to pi/4.
    """
    if not np.isclose(params.Omega, params.omega, rtol=1e-14, atol=0.0):
        raise DomainError("reference scale requires Omega == omega")
    w = params.omega
    t = np.asarray(t, dtype=float)
    c = np.cosh(2 * w * t)
    L = np.sqrt(c)
    Ldot = w * np.sinh(2 * w * t) / L
    tau = np.arctan(np.tanh(w * t)) / w if w > 0 else t.copy()
    return ScaleState(_scalar(t), _scalar(L), _scalar(Ldot), _scalar(tau))


def _scalar(v):
    v = np.asarray(v)
    return float(v) if v.ndim == 0 else v


def solve_scale_ode(
    initial: ScaleState,
    params: PhysicalParams,
    t_end: float,
    dt_max: float,
    *,
    omega_sq: float | None = None,
    Omega_sq: float | None = None,
) -> list[ScaleState]:
    """Integrate (L, L', tau) from ``initial`` to ``t_end``.

    States are returned on a uniform output grid of spacing at most
    ``dt_max`` (the last point is exactly ``t_end``). ``omega_sq`` and
    ``Omega_sq`` override the squared frequencies, e.g. ``Omega_sq=-1``
    with ``omega_sq=0`` gives the focusing equation ``L'' = -1 / L**3``.

    Raises
    ------
    SingularityError
        If L drops to ``L_FLOOR``; ``t_cross`` holds the located time.
    """
    if dt_max <= 0:
        raise DomainError("dt_max must be positive")
    if not initial.L > 0:
        raise DomainError("initial L must be positive")
    w2 = params.omega**2 if omega_sq is None else float(omega_sq)
    W2 = params.Omega**2 if Omega_sq is None else float(Omega_sq)
    t0 = float(initial.t)
    span = float(t_end) - t0
    n = max(1, int(np.ceil(abs(span) / dt_max - 1e-12)))
    t_eval = t0 + span * np.arange(n + 1) / n

    def rhs(_t, y):
        L, Ld, _ = y
        return [Ld, w2 * L + W2 / L**3, 1.0 / L**2]

    def collapse(_t, y):
        return y[0] - L_FLOOR

    collapse.terminal = True
    collapse.direction = -1

    sol = solve_ivp(
        rhs,
        (t0, float(t_end)),
        [initial.L, initial.Ldot, initial.tau],
        method="RK45",
        t_eval=t_eval,
        rtol=RTOL,
        atol=ATOL,
        max_step=dt_max,
        events=collapse,
    )
    if sol.status == 1 and sol.t_events[0].size:
        raise SingularityError("scale function collapsed", float(sol.t_events[0][0]))
    if not sol.success:
        raise SingularityError(f"integration failed: {sol.message}", float(sol.t[-1]))
    return [ScaleState(float(t), float(L), float(Ld), float(tau)) for t, (L, Ld, tau) in zip(sol.t, sol.y.T)]


def invariant_scale(initial: ScaleState, t, params: PhysicalParams, tau_quadrature=True) -> ScaleState:
    """Closed form through y = L**2, which obeys y'' = 4 omega**2 y + 2 I.

    An independent route to the same trajectories as ``solve_scale_ode``;
    tau is obtained by quadrature of 1/L**2.
    """
    w = params.omega
    I = float(first_integral(initial, params))
    y0 = initial.L**2
    yd0 = 2 * initial.L * initial.Ldot

    def y_of(s):
        s = s - initial.t
        if w == 0:
            return y0 + yd0 * s + I * s**2, yd0 + 2 * I * s
        a = y0 + I / (2 * w**2)
        y = -I / (2 * w**2) + a * np.cosh(2 * w * s) + yd0 / (2 * w) * np.sinh(2 * w * s)
        yd = 2 * w * a * np.sinh(2 * w * s) + yd0 * np.cosh(2 * w * s)
        return y, yd

    t = float(t)
    y, yd = y_of(t)
    if y <= 0:
        raise SingularityError("scale function collapsed", float("nan"))
    L = np.sqrt(y)
    tau = initial.tau
    if tau_quadrature and t != initial.t:
        val, _ = quad(lambda s: 1.0 / y_of(s)[0], initial.t, t, epsabs=ATOL, epsrel=RTOL, limit=200)
        tau += val
    return ScaleState(t, float(L), float(yd / (2 * L)), float(tau))


def _free_crossing(coeffs: FreeScaleCoefficients, omega: float) -> float | None:
    """Time at which L+ e^{2 omega t} + L- = 0, if any."""
    Lp, Lm = coeffs.L_plus, coeffs.L_minus
    if omega == 0 or Lp == 0 or Lm == 0 or np.sign(Lp) == np.sign(Lm):
        return None
    return float(np.log(-Lm / Lp) / (2 * omega))


def free_scale(coeffs: FreeScaleCoefficients, t, params: PhysicalParams = NATURAL) -> ScaleState:
    """Omega = 0 scale function L = L+ e^{omega t} + L- e^{-omega t}.

    tau has the closed form
    ``(e^{2 omega t} - 1) / (2 omega (L+ + L-)(L+ e^{2 omega t} + L-))``,
    which reduces to ``(e^{2 omega t} - 1) / (2 omega)`` for (L+, L-) = (0, 1).
    """
    w = params.omega
    Lp, Lm = coeffs.L_plus, coeffs.L_minus
    t = np.asarray(t, dtype=float)
    tc = _free_crossing(coeffs, w)
    if tc is not None and np.any(np.where(tc > 0, t >= tc, t <= tc)):
        raise SingularityError(f"scale function vanishes at t = {tc:.6g}", tc)
    ep, em = np.exp(w * t), np.exp(-w * t)
    L = Lp * ep + Lm * em
    Ldot = w * (Lp * ep - Lm * em)
    if w > 0:
        g = np.expm1(2 * w * t) / (2 * w)
    else:
        g = t.copy()
    tau = g / ((Lp + Lm) * (Lp * np.exp(2 * w * t) + Lm))
    return ScaleState(_scalar(t), _scalar(L), _scalar(Ldot), _scalar(tau))


def tau_by_quadrature(L_of_t, t0: float, t1: float) -> float:
    """Adaptive Gauss-Kronrod quadrature of 1/L(t)**2."""
    val, _ = quad(lambda s: 1.0 / L_of_t(s) ** 2, t0, t1, epsabs=ATOL, epsrel=RTOL, limit=200)
    return float(val)


def focal_time(branch, params: PhysicalParams = NATURAL) -> float:
    """Time at which a focusing scale function reaches zero."""
    branch = FocusingBranch(branch)
    w = params.omega
    if w <= 0:
        return float("inf")
    return 1.0 / (2 * w) if branch is FocusingBranch.F1 else 1.0 / w


def focusing_scale(branch, t, params: PhysicalParams = NATURAL) -> ScaleState:
    """Focusing solutions of ``L'' = -omega**2 / L**3``.

    F1: ``L = sqrt(1 - 2 omega t)``, ``tau = -log(1 - 2 omega t) / (2 omega)``.
    F2: ``L = sqrt(1 - omega**2 t**2)``, ``tau = artanh(omega t) / omega``.
    """
    branch = FocusingBranch(branch)
    w = params.omega
    t = np.asarray(t, dtype=float)
    tc = focal_time(branch, params)
    if np.any(t >= tc) or (branch is FocusingBranch.F2 and np.any(t <= -tc)):
        raise DomainError(f"t must stay below the focal time t_c = {tc:.12g}")
    if branch is FocusingBranch.F1:
        s = 1 - 2 * w * t
        L = np.sqrt(s)
        Ldot = -w / L
        tau = -np.log(s) / (2 * w) if w > 0 else t.copy()
    else:
        L = np.sqrt(1 - (w * t) ** 2)
        Ldot = -(w**2) * t / L
        tau = np.arctanh(w * t) / w if w > 0 else t.copy()
    return ScaleState(_scalar(t), _scalar(L), _scalar(Ldot), _scalar(tau))


def focusing_residual(branch, t, params: PhysicalParams = NATURAL, h=1e-4):
    """|L'' + omega**2 / L**3| with L'' from central differences."""
    Lm = focusing_scale(branch, t - h, params).L
    L0 = focusing_scale(branch, t, params).L
    Lp = focusing_scale(branch, t + h, params).L
    Ldd = (Lp - 2 * L0 + Lm) / h**2
    return np.abs(Ldd + params.omega**2 / L0**3)


def classical_trajectory(state: ClassicalState, t, params: PhysicalParams = NATURAL):
    """x(t) = x0 cosh(omega t) + (v0 / omega) sinh(omega t).

    For v0 = -omega x0 this is the decelerating orbit x0 e^{-omega t}.
    """
    w = params.omega
    t = np.asarray(t, dtype=float)
    if w == 0:
        return _scalar(state.x0 + state.v0 * t)
    # exact exponential form avoids cancellation on the special orbits
    a = 0.5 * (state.x0 + state.v0 / w)
    b = 0.5 * (state.x0 - state.v0 / w)
    return _scalar(a * np.exp(w * t) + b * np.exp(-w * t))

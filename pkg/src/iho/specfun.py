"""Special functions with complex parameters and arguments.

Everything here is vectorised over numpy broadcasting and returns a
Python complex (or float) when called with scalars.

Kummer's M and Weber's D are evaluated by one of three routes, chosen per
element:

* Maclaurin series, when the cancellation between terms is mild,
* large-argument asymptotic expansions, when the optimally truncated
  series meets the tolerance,
* Taylor-series continuation of the defining ODE along a ray, for the
  intermediate band where neither of the above is accurate.
"""

from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, DomainError

__all__ = [
    "SeriesOptions",
    "DEFAULT_OPTIONS",
    "hermite_poly",
    "loggamma",
    "gamma",
    "rgamma",
    "kummer_m",
    "parabolic_cylinder_d",
    "airy_ai",
]

_EPS = np.finfo(float).eps
_SQRT_PI = np.sqrt(np.pi)
_LOG_2PI_HALF = 0.5 * np.log(2 * np.pi)

# series whose largest term exceeds the sum by more than this are re-routed
_MAX_LOSS = 1e5


@dataclass(frozen=True)
class SeriesOptions:
    """Accuracy controls shared by the series evaluators."""

    rel_tol: float = 1e-10
    max_terms: int = 1000
    asymptotic_switch_radius: float = 30.0

    def __post_init__(self):
        if not self.rel_tol > 0:
            raise ValueError("rel_tol must be positive")
        if self.max_terms < 32:
            raise ValueError("max_terms must be at least 32")
        if not self.asymptotic_switch_radius > 0:
            raise ValueError("asymptotic_switch_radius must be positive")


DEFAULT_OPTIONS = SeriesOptions()


def _prep(*args):
    arrs = np.broadcast_arrays(*[np.asarray(a, dtype=complex) for a in args])
    shape = arrs[0].shape
    return shape, [a.ravel().copy() for a in arrs]


def _finish(out, shape, real=False):
    out = out.reshape(shape)
    if real:
        out = out.real
    if shape == ():
        return out.item()
    return out


def _is_nonpos_int(v):
    v = np.asarray(v, dtype=complex)
    return (v.imag == 0) & (v.real <= 0) & (v.real == np.round(v.real))


# ---------------------------------------------------------------------------
# Hermite polynomials


def hermite_poly(n, x):
    """Physicists' Hermite polynomial H_n(x) by three-term recurrence."""
    if n < 0:
        raise ValueError("n must be non-negative")
    x = np.asarray(x, dtype=float)
    h_prev = np.ones_like(x)
    if n == 0:
        return h_prev if x.ndim else float(h_prev)
    h = 2.0 * x
    for k in range(1, n):
        h_prev, h = h, 2.0 * x * h - 2.0 * k * h_prev
    return h if x.ndim else float(h)


# ---------------------------------------------------------------------------
# Gamma function (Lanczos, g = 7, n = 9)

_LANCZOS_G = 7.0
_LANCZOS_P = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)


def _loggamma_right(z):
    # valid for Re z >= 0.5
    z = z - 1.0
    acc = np.full_like(z, _LANCZOS_P[0])
    for i in range(1, len(_LANCZOS_P)):
        acc = acc + _LANCZOS_P[i] / (z + i)
    t = z + _LANCZOS_G + 0.5
    return _LOG_2PI_HALF + (z + 0.5) * np.log(t) - t + np.log(acc)


def _log_sin_pi(z):
    out = np.empty_like(z)
    up = z.imag >= 1.0
    dn = z.imag <= -1.0
    mid = ~(up | dn)
    zu, zd = z[up], z[dn]
    out[up] = -1j * np.pi * zu + np.log(1.0 - np.exp(2j * np.pi * zu)) - np.log(-2j)
    out[dn] = 1j * np.pi * zd + np.log(1.0 - np.exp(-2j * np.pi * zd)) - np.log(2j)
    # reduce to |Re z| <= 1/2 so zeros of sin(pi z) stay exact
    zm = z[mid]
    n = np.round(zm.real)
    sign = np.where(n % 2 == 0, 1.0, -1.0)
    out[mid] = np.log(sign * np.sin(np.pi * (zm - n)))
    return out


def _loggamma_flat(z):
    out = np.empty_like(z)
    pole = _is_nonpos_int(z)
    left = (z.real < 0.5) & ~pole
    right = ~left & ~pole
    out[right] = _loggamma_right(z[right])
    zl = z[left]
    out[left] = np.log(np.pi) - _log_sin_pi(zl) - _loggamma_right(1.0 - zl)
    out[pole] = np.inf
    return out


def loggamma(z):
    """log Gamma(z) for complex z (some branch; only exp() of it is meaningful)."""
    shape, (z,) = _prep(z)
    return _finish(_loggamma_flat(z), shape)


def _lrgamma(z):
    # log(1/Gamma(z)), -inf at the poles of Gamma
    out = -_loggamma_flat(z)
    pole = _is_nonpos_int(z)
    out[pole] = complex(-np.inf, 0.0)
    return out


def rgamma(z):
    """Reciprocal gamma function 1/Gamma(z); entire, zero at non-positive integers."""
    shape, (z,) = _prep(z)
    with np.errstate(invalid="ignore", over="ignore"):
        out = np.exp(_lrgamma(z))
    out[_is_nonpos_int(z)] = 0.0
    return _finish(out, shape)


def gamma(z):
    """Gamma function for complex z."""
    shape, (z,) = _prep(z)
    if np.any(_is_nonpos_int(z)):
        raise DomainError("Gamma has a pole at non-positive integers")
    return _finish(np.exp(_loggamma_flat(z)), shape)


# ---------------------------------------------------------------------------
# Shared machinery


def _neumaier_add(s, c, term):
    t = s + term
    big = np.abs(s) >= np.abs(term)
    c = c + np.where(big, (s - t) + term, (term - t) + s)
    return t, c


def _taylor_ray_poly(u, du, z_from, z_to, qcoef, max_step, kmax=400):
    """Integrate u'' = q(z) u along straight lines z_from -> z_to.

    ``qcoef(z0)`` returns the Taylor coefficients (c0, c1, c2) of the
    quadratic q about z0.  Steps are bounded by ``max_step(z0)``.
    """
    u = u.copy()
    du = du.copy()
    z0 = z_from.copy()
    total = np.abs(z_to - z_from)
    direction = np.where(total > 0, (z_to - z_from) / np.where(total > 0, total, 1), 0)
    done = np.zeros(total.shape)
    while True:
        remaining = total - done
        active = remaining > 1e-14 * np.maximum(total, 1.0)
        if not active.any():
            break
        step = np.where(active, np.minimum(max_step(z0), remaining), 0.0)
        h = direction * step
        c0, c1, c2 = qcoef(z0)
        # Taylor coefficients of u(z0 + s)
        coef = [u, du]
        s_val = u + du * h
        s_der = du.copy()
        hp = h.copy()
        quiet = np.zeros(u.shape, dtype=int)
        for k in range(kmax):
            nxt = c0 * coef[k]
            if k >= 1:
                nxt = nxt + c1 * coef[k - 1]
            if k >= 2:
                nxt = nxt + c2 * coef[k - 2]
            nxt = nxt / ((k + 2) * (k + 1))
            coef.append(nxt)
            term_d = (k + 2) * nxt * hp
            hp = hp * h
            term = nxt * hp
            s_val = s_val + term
            s_der = s_der + term_d
            small = (np.abs(term) <= _EPS * np.abs(s_val)) & (np.abs(term_d) <= _EPS * np.abs(s_der))
            quiet = np.where(small, quiet + 1, 0)
            if np.all((quiet >= 3) | ~active):
                break
        else:
            raise ConvergenceError("Taylor continuation did not converge", partial=s_val)
        u = np.where(active, s_val, u)
        du = np.where(active, s_der, du)
        z0 = np.where(active, z0 + h, z0)
        done = done + step
    return u, du


# ---------------------------------------------------------------------------
# Kummer M(a, b, z)


def _kummer_maclaurin(a, b, z, opts, strict=True):
    """Return (value, converged, loss) of the Maclaurin series."""
    term = np.ones_like(z)
    s = np.ones_like(z)
    c = np.zeros_like(z)
    biggest = np.ones(z.shape)
    quiet = np.zeros(z.shape, dtype=int)
    done = np.zeros(z.shape, dtype=bool)
    absz = np.abs(z)
    for k in range(opts.max_terms):
        term = term * (a + k) / (b + k) * z / (k + 1)
        s, c = _neumaier_add(s, c, np.where(done, 0, term))
        at = np.abs(term)
        biggest = np.maximum(biggest, np.where(done, 0, at))
        # terms must be small and past the turning point of the ratio
        ratio = np.abs(a + k + 1) * absz / (np.abs(b + k + 1) * (k + 2))
        small = (at <= 0.25 * _EPS * np.abs(s + c)) & (ratio < 0.5)
        quiet = np.where(small | (term == 0), quiet + 1, 0)
        done |= quiet >= 2
        if done.all():
            break
    total = s + c
    loss = biggest / np.maximum(np.abs(total), np.finfo(float).tiny)
    if strict and not done.all():
        raise ConvergenceError(
            f"Kummer series did not converge in {opts.max_terms} terms", partial=total
        )
    return total, done, loss


def _asymptotic_sum(p, q, x, kmax):
    """Sum_k (p)_k (q)_k x^k / k!, optimally truncated. Returns (sum, error)."""
    term = np.ones_like(x)
    s = np.ones_like(x)
    err = np.zeros(x.shape)
    active = np.ones(x.shape, dtype=bool)
    for k in range(kmax):
        nxt = term * (p + k) * (q + k) / (k + 1) * x
        grow = np.abs(nxt) > np.abs(term)
        stop = active & (grow | (np.abs(nxt) <= _EPS * np.abs(s)))
        err = np.where(stop, np.abs(nxt), err)
        active &= ~stop
        s = s + np.where(active, nxt, 0)
        term = nxt
        if not active.any():
            break
    err = np.where(active, np.inf, err)
    return s, err


def _kummer_asymptotic(a, b, z, opts):
    logz = np.log(z)
    sgn = np.where(z.imag >= 0, 1.0, -1.0)
    lgb = _loggamma_flat(b)
    kmax = int(min(opts.max_terms, 2 * np.max(np.abs(z)) + 20))
    s1, e1 = _asymptotic_sum(b - a, 1 - a, 1 / z, kmax)
    s2, e2 = _asymptotic_sum(a, a - b + 1, -1 / z, kmax)
    with np.errstate(invalid="ignore", over="ignore"):
        t1 = np.exp(lgb + _lrgamma(a) + z + (a - b) * logz)
        t2 = np.exp(lgb + _lrgamma(b - a) + sgn * 1j * np.pi * a - a * logz)
    t1 = np.where(_is_nonpos_int(a), 0, t1)
    t2 = np.where(_is_nonpos_int(b - a), 0, t2)
    val = t1 * s1 + t2 * s2
    err = np.abs(t1) * e1 + np.abs(t2) * e2
    with np.errstate(invalid="ignore"):
        ok = np.isfinite(val) & (err <= 0.1 * opts.rel_tol * np.abs(val))
    return val, ok


def _kummer_continue(a, b, z, opts, r0=1.0):
    absz = np.abs(z)
    w0 = z * (r0 / absz)
    m0, _, _ = _kummer_maclaurin(a, b, w0, opts)
    dm0, _, _ = _kummer_maclaurin(a + 1, b + 1, w0, opts)
    dm0 = dm0 * a / b
    direction = z / absz
    m, dm, w = m0, dm0, w0
    remaining = absz - r0
    while True:
        active = remaining > 1e-14 * absz
        if not active.any():
            break
        step = np.where(active, np.minimum(np.minimum(0.5 * np.abs(w), 2.0), remaining), 0.0)
        h = direction * step
        m, dm = _kummer_taylor_step(a, b, w, m, dm, h, active)
        w = w + h
        remaining = remaining - step
    return m


def _kummer_taylor_step(a, b, w, m, dm, h, active, kmax=400):
    # z M'' + (b - z) M' - a M = 0 expanded about w
    ck, ck1 = m, dm
    s = m + dm * h
    ds = dm.copy()
    hp = h.copy()
    quiet = np.zeros(m.shape, dtype=int)
    for k in range(kmax):
        ck2 = ((a + k) * ck - (k + 1) * (k + b - w) * ck1) / (w * (k + 2) * (k + 1))
        term_d = (k + 2) * ck2 * hp
        hp = hp * h
        term = ck2 * hp
        s = s + term
        ds = ds + term_d
        small = (np.abs(term) <= _EPS * np.abs(s)) & (np.abs(term_d) <= _EPS * np.abs(ds))
        quiet = np.where(small, quiet + 1, 0)
        if np.all((quiet >= 3) | ~active):
            break
        ck, ck1 = ck1, ck2
    else:
        raise ConvergenceError("Kummer continuation step did not converge", partial=s)
    return np.where(active, s, m), np.where(active, ds, dm)


def _kummer_core(a, b, z, opts):
    # assumes Re z >= 0
    out = np.full(z.shape, np.nan + 0j)
    todo = np.ones(z.shape, dtype=bool)
    absz = np.abs(z)
    big = absz > opts.asymptotic_switch_radius
    if big.any():
        idx = np.flatnonzero(big)
        v, ok = _kummer_asymptotic(a[idx], b[idx], z[idx], opts)
        out[idx[ok]] = v[ok]
        todo[idx[ok]] = False
    small = todo & (absz <= 1.0)
    if small.any():
        idx = np.flatnonzero(small)
        out[idx], _, _ = _kummer_maclaurin(a[idx], b[idx], z[idx], opts)
        todo[idx] = False
    if todo.any():
        idx = np.flatnonzero(todo)
        # Maclaurin is cheap; only keep it where cancellation is harmless
        near = absz[idx] <= 60.0
        if near.any():
            jdx = idx[near]
            v, conv, loss = _kummer_maclaurin(a[jdx], b[jdx], z[jdx], opts, strict=False)
            ok = conv & (loss * _EPS * 10 <= 0.1 * opts.rel_tol)
            out[jdx[ok]] = v[ok]
            todo[jdx[ok]] = False
    if todo.any():
        idx = np.flatnonzero(todo)
        out[idx] = _kummer_continue(a[idx], b[idx], z[idx], opts)
    return out


def kummer_m(a, b, z, opts=None):
    """Kummer's confluent hypergeometric function M(a, b, z) = 1F1(a; b; z).

    Parameters
    ----------
    a, b, z : complex or array_like
        Broadcast against each other.  ``b`` must not be zero or a
        negative integer.
    opts : SeriesOptions, optional

    Returns
    -------
    complex or ndarray
    """
    opts = opts or DEFAULT_OPTIONS
    shape, (a, b, z) = _prep(a, b, z)
    if np.any(_is_nonpos_int(b)):
        raise DomainError("M(a, b, z) is undefined for b = 0, -1, -2, ...")
    if not (np.all(np.isfinite(a)) and np.all(np.isfinite(z))):
        raise DomainError("non-finite argument")
    flip = z.real < 0
    ae = np.where(flip, b - a, a)
    ze = np.where(flip, -z, z)
    val = _kummer_core(ae, b, ze, opts)
    val = np.where(flip, np.exp(z) * val, val)
    return _finish(val, shape)


# ---------------------------------------------------------------------------
# Parabolic cylinder function D_nu(z)


def _pcf_kummer(nu, z, opts):
    """Two-Kummer representation; returns (value, ok) with a cancellation check."""
    w = 0.5 * z * z
    m1 = kummer_m(-0.5 * nu, 0.5, w, opts)
    m2 = kummer_m(0.5 * (1 - nu), 1.5, w, opts)
    t1 = _SQRT_PI * rgamma(0.5 * (1 - nu)) * m1
    t2 = np.sqrt(2 * np.pi) * rgamma(-0.5 * nu) * z * m2
    diff = t1 - t2
    scale = np.abs(t1) + np.abs(t2)
    with np.errstate(divide="ignore", invalid="ignore"):
        ok = scale * 1e3 * _EPS <= 0.1 * opts.rel_tol * np.abs(diff)
    val = np.exp(0.5 * nu * np.log(2.0) - 0.25 * z * z) * diff
    return val, ok & np.isfinite(val)


def _pcf_asymptotic(nu, z, opts):
    """Large-|z| expansion z^nu e^{-z^2/4} sum, valid for |arg z| < 3 pi / 4."""
    x = 1.0 / (2.0 * z * z)
    term = np.ones_like(z)
    s = np.ones_like(z)
    err = np.zeros(z.shape)
    active = np.ones(z.shape, dtype=bool)
    kmax = min(opts.max_terms, int(np.max(np.abs(z)) ** 2) + 20)
    for k in range(1, kmax):
        nxt = -term * (nu - 2 * k + 2) * (nu - 2 * k + 1) / k * x
        stop = active & ((np.abs(nxt) > np.abs(term)) | (np.abs(nxt) <= _EPS * np.abs(s)))
        err = np.where(stop, np.abs(nxt), err)
        active &= ~stop
        s = s + np.where(active, nxt, 0)
        term = nxt
        if not active.any():
            break
    err = np.where(active, np.inf, err)
    with np.errstate(over="ignore", invalid="ignore"):
        pref = np.exp(nu * np.log(z) - 0.25 * z * z)
        val = pref * s
        ok = np.isfinite(val) & (err <= 0.1 * opts.rel_tol * np.abs(s))
    return val, ok


def _pcf_far(nu, z, opts):
    """D_nu for large |z| using asymptotics plus connection formulas."""
    out = np.full(z.shape, np.nan + 0j)
    ok = np.zeros(z.shape, dtype=bool)
    right = z.real >= 0
    if right.any():
        idx = np.flatnonzero(right)
        v, good = _pcf_asymptotic(nu[idx], z[idx], opts)
        out[idx] = v
        ok[idx] = good
    if (~right).any():
        idx = np.flatnonzero(~right)
        n, zz = nu[idx], z[idx]
        y = -zz
        upper = zz.imag >= 0
        # upper-left: D(z) = e^{i pi nu}[D(y) - sqrt(2pi)/G(-nu) e^{-i pi (nu+1)/2} D_{-nu-1}(iy)]
        # lower-left: D(z) = e^{-i pi nu}[D(y) - sqrt(2pi)/G(-nu) e^{i pi (nu+1)/2} D_{-nu-1}(-iy)]
        s = np.where(upper, 1.0, -1.0)
        d1, g1 = _pcf_asymptotic(n, y, opts)
        d2, g2 = _pcf_asymptotic(-n - 1, s * 1j * y, opts)
        coef = np.sqrt(2 * np.pi) * rgamma(-n) * np.exp(-s * 1j * np.pi * (n + 1) / 2)
        out[idx] = np.exp(s * 1j * np.pi * n) * (d1 - coef * d2)
        ok[idx] = g1 & g2
    return out, ok


def _weber_qcoef(nu):
    def qcoef(z0):
        return 0.25 * z0 * z0 - nu - 0.5, 0.5 * z0, 0.25

    def max_step(z0):
        q = np.abs(0.25 * z0 * z0 - nu - 0.5)
        return np.minimum(0.5, 0.8 / np.sqrt(np.maximum(q, 1.0)))

    return qcoef, max_step


def _pcf_path(nu, z, opts):
    """Integrate the Weber equation to z from a point where D is known.

    * |arg z| <= pi/4: inward along the ray from the asymptotic region,
    * |arg z| >= 3pi/4: from the asymptotic region of the opposite ray,
      through the origin,
    * otherwise: outward from z = 0, where D and D' are Gamma ratios.
    """
    out = np.full(z.shape, np.nan + 0j)
    ang = np.abs(np.angle(z))
    inward = ang <= np.pi / 4 + 1e-9
    through = ang >= 3 * np.pi / 4 - 1e-9
    outward = ~(inward | through)
    if outward.any():
        idx = np.flatnonzero(outward)
        n = nu[idx]
        d0 = np.exp(0.5 * n * np.log(2.0)) * _SQRT_PI * rgamma(0.5 * (1 - n))
        dp0 = -np.exp(0.5 * (n + 1) * np.log(2.0)) * _SQRT_PI * rgamma(-0.5 * n)
        qcoef, max_step = _weber_qcoef(n)
        out[idx], _ = _taylor_ray_poly(d0, dp0, np.zeros_like(z[idx]), z[idx], qcoef, max_step)
    pend = np.flatnonzero(inward | through)
    if pend.size:
        n, zz = nu[pend], z[pend]
        unit = np.where(through[pend], -1.0, 1.0) * zz / np.abs(zz)
        r = np.maximum(np.sqrt(2.0 * opts.asymptotic_switch_radius) + 0.5, 2.0 * np.sqrt(np.abs(n)) + 4.0)
        r = np.maximum(r, np.where(through[pend], 0.0, np.abs(zz) + 0.5))
        d0 = np.zeros_like(zz)
        dp = np.zeros_like(zz)
        start = np.zeros_like(zz)
        have = np.zeros(zz.shape, dtype=bool)
        for _ in range(30):
            todo = ~have
            za = unit[todo] * r[todo]
            v0, ok0 = _pcf_asymptotic(n[todo], za, opts)
            v1, ok1 = _pcf_asymptotic(n[todo] + 1, za, opts)
            good = ok0 & ok1
            sel = np.flatnonzero(todo)[good]
            d0[sel] = v0[good]
            dp[sel] = 0.5 * za[good] * v0[good] - v1[good]
            start[sel] = za[good]
            have[sel] = True
            if have.all():
                break
            r = np.where(have, r, 1.2 * r)
        else:
            raise ConvergenceError("no valid asymptotic starting point for D_nu")
        qcoef, max_step = _weber_qcoef(n)
        out[pend], _ = _taylor_ray_poly(d0, dp, start, zz, qcoef, max_step)
    return out


def parabolic_cylinder_d(nu, z, opts=None):
    """Weber's parabolic cylinder function D_nu(z) for complex nu and z.

    Solves u'' + (nu + 1/2 - z**2/4) u = 0 and behaves like
    z**nu * exp(-z**2/4) for large |z| with |arg z| < 3*pi/4.

    The two-Kummer representation is used where it does not cancel;
    elsewhere the Weber equation is integrated from the asymptotic region.
    Accuracy is best on and between the diagonals arg z = +-pi/4, +-3pi/4,
    where all the eigenfunctions of the inverted oscillator live; for
    |Im nu| >~ 5 well off those lines expect some loss of digits.
    """
    opts = opts or DEFAULT_OPTIONS
    shape, (nu, z) = _prep(nu, z)
    if not (np.all(np.isfinite(nu)) and np.all(np.isfinite(z))):
        raise DomainError("non-finite argument")
    out = np.full(z.shape, np.nan + 0j)
    todo = np.ones(z.shape, dtype=bool)
    w = 0.5 * z * z
    far = np.abs(w) > opts.asymptotic_switch_radius
    if far.any():
        idx = np.flatnonzero(far)
        v, ok = _pcf_far(nu[idx], z[idx], opts)
        out[idx[ok]] = v[ok]
        todo[idx[ok]] = False
    near = todo & ~far
    if near.any():
        idx = np.flatnonzero(near)
        v, ok = _pcf_kummer(nu[idx], z[idx], opts)
        out[idx[ok]] = v[ok]
        todo[idx[ok]] = False
    if todo.any():
        idx = np.flatnonzero(todo)
        out[idx] = _pcf_path(nu[idx], z[idx], opts)
    return _finish(out, shape)


# ---------------------------------------------------------------------------
# Airy Ai(z)

_AI0 = 0.355028053887817239260
_AIP0 = -0.258819403792806798405
_ZETA_ASYM = 13.0


def _airy_maclaurin(z, opts):
    z3 = z ** 3
    f = np.ones_like(z)
    g = z.copy()
    tf = np.ones_like(z)
    tg = z.copy()
    cf = np.zeros_like(z)
    cg = np.zeros_like(z)
    for k in range(1, opts.max_terms):
        tf = tf * z3 / ((3 * k - 1) * (3 * k))
        tg = tg * z3 / ((3 * k) * (3 * k + 1))
        f, cf = _neumaier_add(f, cf, tf)
        g, cg = _neumaier_add(g, cg, tg)
        if np.all(np.abs(tf) <= _EPS * np.abs(f + cf)) and np.all(
            np.abs(tg) <= _EPS * np.maximum(np.abs(g + cg), np.finfo(float).tiny)
        ):
            break
    else:
        raise ConvergenceError("Airy Maclaurin series did not converge", partial=_AI0 * f + _AIP0 * g)
    return _AI0 * (f + cf) + _AIP0 * (g + cg)


def _airy_asymptotic(z, want_derivative=False):
    """Ai (and Ai') from the exponential asymptotic form, |arg z| < pi."""
    zeta = (2.0 / 3.0) * np.exp(1.5 * np.log(z))
    x = -1.0 / zeta
    u = np.ones_like(z)
    su = np.ones_like(z)
    sv = np.ones_like(z)
    active = np.ones(z.shape, dtype=bool)
    uk = 1.0
    xp = np.ones_like(z)
    for k in range(1, 200):
        uk = uk * (6 * k - 5) * (6 * k - 3) * (6 * k - 1) / ((2 * k - 1) * 216 * k)
        vk = -(6 * k + 1) / (6 * k - 1) * uk
        xp = xp * x
        tu = uk * xp
        tv = vk * xp
        stop = active & ((np.abs(tu) > np.abs(u)) | (np.abs(tu) <= _EPS * np.abs(su)))
        active &= ~stop
        su = su + np.where(active, tu, 0)
        sv = sv + np.where(active, tv, 0)
        u = tu
        if not active.any():
            break
    quarter = np.exp(0.25 * np.log(z))
    e = np.exp(-zeta) / (2 * _SQRT_PI)
    ai = e / quarter * su
    if want_derivative:
        return ai, -quarter * e * sv
    return ai


def _airy_far(z, want_derivative=False):
    """Asymptotic Ai (and Ai'), via Ai(z) = -w Ai(wz) - w^2 Ai(w^2 z) when |arg z| > 2pi/3."""
    out = np.empty_like(z)
    dout = np.empty_like(z)
    wide = np.abs(np.angle(z)) > 2 * np.pi / 3
    if (~wide).any():
        out[~wide], dout[~wide] = _airy_asymptotic(z[~wide], want_derivative=True)
    if wide.any():
        om = np.exp(2j * np.pi / 3)
        zw = z[wide]
        a1, d1 = _airy_asymptotic(om * zw, want_derivative=True)
        a2, d2 = _airy_asymptotic(om * om * zw, want_derivative=True)
        out[wide] = -om * a1 - om * om * a2
        dout[wide] = -om * om * d1 - om * d2
    if want_derivative:
        return out, dout
    return out


def airy_ai(z, opts=None):
    """Airy function Ai(z) for complex z."""
    opts = opts or DEFAULT_OPTIONS
    shape, (z,) = _prep(z)
    if not np.all(np.isfinite(z)):
        raise DomainError("non-finite argument")
    out = np.empty_like(z)
    with np.errstate(divide="ignore", invalid="ignore"):
        zeta = (2.0 / 3.0) * np.exp(1.5 * np.log(z))
    zeta = np.where(z == 0, 0, zeta)
    loss = np.abs(zeta) + zeta.real
    mac = loss <= np.log(_MAX_LOSS)
    far = ~mac & (np.abs(zeta) >= _ZETA_ASYM)
    mid = ~mac & ~far
    if mac.any():
        out[mac] = _airy_maclaurin(z[mac], opts)
    if far.any():
        out[far] = _airy_far(z[far])
    if mid.any():
        zm = z[mid]
        r_start = (1.5 * _ZETA_ASYM) ** (2.0 / 3.0)
        z_a = zm * (r_start / np.abs(zm))
        ai, aip = _airy_far(z_a, want_derivative=True)

        def qcoef(z0):
            return z0, np.ones_like(z0), 0.0

        def max_step(z0):
            return np.minimum(0.5, 1.0 / np.sqrt(np.maximum(np.abs(z0), 1.0)))

        out[mid], _ = _taylor_ray_poly(ai, aip, z_a, zm, qcoef, max_step)
    return _finish(out, shape)

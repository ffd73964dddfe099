"""Special functions for the decay integrals.

Three things live here:

* K_{i nu}(x), the modified Bessel function of the second kind with purely
  imaginary order (real-valued for real nu and x > 0).  No mainstream float
  library evaluates it, so it is built from three methods with disjoint
  comfort zones and a common selection front end:

  - power-series: the ascending series of I_{+-i nu} rearranged so every term
    is real with bounded trig factors.  With the 1/sinh(pi nu) prefactor
    absorbed analytically the summation is overflow-free for any order, and
    in the oscillatory region x < nu it is nearly cancellation-free.
  - asymptotic: Debye expansions continued to imaginary order, one branch for
    the monotonic regime x > nu and one (Airy-free, away from the turning
    point) for the oscillatory regime x < nu.  Coefficient polynomials u_k
    are generated exactly from the standard recurrence at import time.
  - integral-representation: trapezoidal sum of int_0^inf cos(nu t)
    e^{-x cosh t} dt in extended precision.  The integrand is even, analytic
    and double-exponentially decaying, so the trapezoid converges
    geometrically; accuracy is limited only by cancellation, which the
    method reports via its error estimate.

  Every method self-estimates its relative error; the front end returns the
  first method meeting the requested tolerance (series, asymptotic, integral
  order) or the best available estimate otherwise.  Magnitudes reach
  e^{-pi nu/2}, far below double range for the orders the accelerated-clock
  integrals need, so log/sign and e^{pi nu/2}-scaled variants are the
  primary internal currency.

* |Gamma(i y)|^2 = pi / (y sinh(pi y)), in plain and log form.

* The resonance kernel sin^2(x t / 2) / x^2 with its removable singularity.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

import numpy as np
from scipy.special import loggamma

from .errors import SpecialFunctionRangeError

EULER_GAMMA = 0.5772156649015328606
DEFAULT_BESSEL_TOL = 1e-10
CROSS_CHECK_TOL = 1e-8

_LOG_MAX = math.log(np.finfo(float).max)          # ~709.78
_LOG_MIN = math.log(np.finfo(float).tiny)         # ~-708.40
_EPS = float(np.finfo(float).eps)
_EPS_LONG = float(np.finfo(np.longdouble).eps)


class BesselMethod(enum.Enum):
    POWER_SERIES = "power-series"
    ASYMPTOTIC = "asymptotic"
    INTEGRAL_REPRESENTATION = "integral-representation"


# ----------------------------------------------------------------------
# Debye coefficient polynomials
# u_0 = 1,  u_{k+1}(t) = t^2 (1 - t^2) u_k'(t) / 2 + (1/8) int_0^t (1 - 5 s^2) u_k(s) ds
# u_k(t) = sum_j c[k][j] t^(k + 2j), j = 0..k
# ----------------------------------------------------------------------

def _debye_coefficients(kmax: int) -> list[list[float]]:
    polys: list[dict[int, Fraction]] = [{0: Fraction(1)}]
    for _ in range(kmax):
        u = polys[-1]
        new: dict[int, Fraction] = {}
        for m, c in u.items():
            if m >= 1:
                new[m + 1] = new.get(m + 1, Fraction(0)) + c * m / 2
                new[m + 3] = new.get(m + 3, Fraction(0)) - c * m / 2
            new[m + 1] = new.get(m + 1, Fraction(0)) + c / (8 * (m + 1))
            new[m + 3] = new.get(m + 3, Fraction(0)) - 5 * c / (8 * (m + 3))
        polys.append({m: c for m, c in new.items() if c != 0})
    return [[float(p.get(k + 2 * j, Fraction(0))) for j in range(k + 1)]
            for k, p in enumerate(polys)]


_CKJ = _debye_coefficients(10)
_DEBYE_TERMS = 9


@dataclass(frozen=True)
class LogBesselEval:
    """K_{i nu}(x) as sign * exp(log_abs), with a relative error estimate."""
    log_abs: float
    sign: float
    rel_error_estimate: float
    method: BesselMethod


@dataclass(frozen=True)
class BesselEval:
    value: float
    error_estimate: float
    method: BesselMethod


@lru_cache(maxsize=4096)
def _series_setup(nu: float) -> tuple[float, float]:
    """(arg of 1/Gamma(1+i nu), log of scaled prefactor) for the power series."""
    theta0 = -loggamma(complex(1.0, nu)).imag
    lpref = 0.5 * (math.log(2.0 * math.pi) - math.log(nu)
                   - math.log1p(-math.exp(-2.0 * math.pi * nu)))
    return theta0, lpref


def _series_region(nu: float, x: float) -> bool:
    # monotone-ish term growth; beyond this the runtime estimate still guards
    return x * x <= 12.0 * math.sqrt(1.0 + nu * nu) or x < nu


def _k_power_series(nu: float, x: float) -> tuple[float, float, float] | None:
    """Scaled log form: returns (log_abs + pi nu/2, sign, rel_est)."""
    L = math.log(0.5 * x)
    if nu < 1e-8:
        # K_0 limit of the rearranged series
        r = 1.0
        total = -(L + EULER_GAMMA)
        abssum = abs(total)
        hk = 0.0
        for k in range(1, 400):
            r *= (0.25 * x * x) / (k * k)
            hk += 1.0 / k
            term = -r * (L + EULER_GAMMA - hk)
            total += term
            abssum += abs(term)
            if r < 1e-18 * abssum and k > 3:
                break
        else:
            return None
        if total == 0.0:
            return None
        est = 4.0 * _EPS * abssum / abs(total) + 1e-15
        return math.log(abs(total)), math.copysign(1.0, total), est
    theta0, lpref = _series_setup(nu)
    phi = nu * L
    r = 1.0
    th = theta0
    total = math.sin(phi + th)
    abssum = abs(total)
    for k in range(1, 600):
        r *= (0.25 * x * x) / (k * math.hypot(k, nu))
        th -= math.atan2(nu, k)
        total += r * math.sin(phi + th)
        abssum += r
        if r < 1e-18 * abssum and k > 3:
            break
    else:
        return None
    if total == 0.0:
        return None
    est = 4.0 * _EPS * abssum / abs(total) + 1e-15
    return lpref + math.log(abs(total)), -math.copysign(1.0, total), est


def _k_debye_monotonic(nu: float, x: float) -> tuple[float, float, float] | None:
    """x > nu regime: K = sqrt(pi/2W') e^{-W' - nu asin(nu/x)} * series.
    Returns the scaled log form (log_abs + pi nu/2, sign, rel_est)."""
    if x <= nu:
        return None
    wp = math.sqrt((x - nu) * (x + nu))
    if wp < 8.0:
        return None
    beta = math.asin(min(1.0, nu / x))
    pt2 = (nu / wp) ** 2
    total = 0.0
    last = 1.0
    for k in range(_DEBYE_TERMS):
        s = 0.0
        for j in range(k, -1, -1):
            s = s * pt2 + _CKJ[k][j] * (1.0 if j % 2 == 0 else -1.0)
        term = (-1.0 if k % 2 else 1.0) * s / wp**k
        total += term
        last = abs(term)
    if total == 0.0:
        return None
    est = 4.0 * last / abs(total) + 1e-15
    log_abs = 0.5 * math.log(math.pi / (2.0 * wp)) - wp - nu * beta + math.log(abs(total))
    return log_abs + 0.5 * math.pi * nu, math.copysign(1.0, total), est


def _k_debye_oscillatory(nu: float, x: float) -> tuple[float, float, float] | None:
    """x < nu regime, away from the turning point:
    e^{pi nu/2} K = sqrt(2 pi/W) [S_even cos(Psi) - S_odd sin(Psi)],
    Psi = nu arccosh(nu/x) - W - pi/4.  Scaled log form returned."""
    if x >= nu:
        return None
    w = math.sqrt((nu - x) * (nu + x))
    if w < 8.0:
        return None
    theta = math.acosh(nu / x)
    p2 = (nu / w) ** 2
    s_even = 0.0
    s_odd = 0.0
    last = 1.0
    for k in range(_DEBYE_TERMS):
        s = 0.0
        for j in range(k, -1, -1):
            s = s * p2 + _CKJ[k][j]
        uk = s / w**k
        if k % 2 == 0:
            s_even += (-1.0 if (k // 2) % 2 else 1.0) * uk
        else:
            s_odd += (-1.0 if ((k - 1) // 2) % 2 else 1.0) * uk
        last = abs(uk)
    psi = nu * theta - w - 0.25 * math.pi
    val = s_even * math.cos(psi) - s_odd * math.sin(psi)
    if val == 0.0:
        return None
    est = 4.0 * last / abs(val) + 1e-15
    return (0.5 * math.log(2.0 * math.pi / w) + math.log(abs(val)),
            math.copysign(1.0, val), est)


def _trapezoid_grid(nu: float, x: float) -> tuple[float, int]:
    tmax = math.acosh(760.0 / x) + 1.0 if x < 700.0 else 1.0
    h = 2.0 * math.pi / (2.0 * nu + 0.7 * x + 60.0)
    return h, int(tmax / h) + 1


def _k_trapezoid(nu: float, x: float) -> tuple[float, float, float] | None:
    """Extended-precision trapezoid of the defining integral; scaled log form."""
    h, n = _trapezoid_grid(nu, x)
    dt = np.longdouble
    t = np.arange(n + 1, dtype=dt) * dt(h)
    f = np.cos(dt(nu) * t) * np.exp(-dt(x) * np.cosh(t))
    f[0] *= dt(0.5)
    s = float(f.sum() * dt(h))
    absint = float(np.abs(f).sum() * dt(h))
    if s == 0.0:
        return None
    est = 8.0 * _EPS_LONG * absint / abs(s) + 1e-16
    return math.log(abs(s)) + 0.5 * math.pi * nu, math.copysign(1.0, s), est


_METHOD_ORDER: tuple[tuple[BesselMethod, Callable], ...] = (
    (BesselMethod.POWER_SERIES, _k_power_series),
    (BesselMethod.ASYMPTOTIC, _k_debye_monotonic),
    (BesselMethod.ASYMPTOTIC, _k_debye_oscillatory),
    (BesselMethod.INTEGRAL_REPRESENTATION, _k_trapezoid),
)

#: Documented comfort zones; the union covers every (nu >= 0, x > 0) because
#: the integral representation applies everywhere (with an honest estimate).
BESSEL_METHOD_RANGES: dict[BesselMethod, dict] = {
    BesselMethod.POWER_SERIES: {
        "description": "x^2 <= 12 sqrt(1 + nu^2), or any x < nu (oscillatory side)",
        "applies": _series_region,
    },
    BesselMethod.ASYMPTOTIC: {
        "description": "Debye regime: |x^2 - nu^2|^(1/2) >= 8, away from x = nu",
        "applies": lambda nu, x: abs(x * x - nu * nu) >= 64.0,
    },
    BesselMethod.INTEGRAL_REPRESENTATION: {
        "description": "all nu >= 0, x > 0; accuracy limited by cancellation "
                       "~ eps * e^(pi nu/2 - x), reported in the estimate",
        "applies": lambda nu, x: True,
    },
}


def _k_log_scaled(nu: float, x: float, tol: float) -> tuple[float, float, float, BesselMethod]:
    """(log|e^{pi nu/2} K|, sign, rel_est, method) via first-fit selection."""
    best = None
    for method, fn in _METHOD_ORDER:
        if fn is _k_power_series and not _series_region(nu, x):
            continue
        out = fn(nu, x)
        if out is None:
            continue
        log_abs, sign, est = out
        if est <= tol:
            return log_abs, sign, est, method
        if best is None or est < best[2]:
            best = (log_abs, sign, est, method)
    if best is None:
        # integrand vanished identically (x so large that e^{-x cosh t} underflows)
        return -math.inf, 0.0, 1e-15, BesselMethod.INTEGRAL_REPRESENTATION
    return best


def bessel_k_imag_order_log(nu: float, x: float,
                            tol: float = DEFAULT_BESSEL_TOL) -> LogBesselEval:
    """K_{i nu}(x) in log/sign form, usable at any representable order.

    log_abs may be -inf with sign 0 when the function underflows entirely.
    """
    if not x > 0:
        raise ValueError("x must be positive")
    nu = abs(float(nu))
    log_scaled, sign, est, method = _k_log_scaled(nu, x, tol)
    return LogBesselEval(log_scaled - 0.5 * math.pi * nu, sign, est, method)


def bessel_k_imag_order(nu: float, x: float, tol: float = DEFAULT_BESSEL_TOL) -> BesselEval:
    """K_{i nu}(x) as a plain float; raises SpecialFunctionRangeError when the
    value leaves double range (the log variant then still works)."""
    ev = bessel_k_imag_order_log(nu, x, tol)
    if ev.sign == 0.0:
        raise SpecialFunctionRangeError(
            f"K_(i {nu})({x}) underflows double precision; use bessel_k_imag_order_log")
    if ev.log_abs > _LOG_MAX or ev.log_abs < _LOG_MIN:
        raise SpecialFunctionRangeError(
            f"K_(i {nu})({x}) has log-magnitude {ev.log_abs:.1f}, outside double "
            "range; use bessel_k_imag_order_log")
    value = ev.sign * math.exp(ev.log_abs)
    return BesselEval(value, abs(value) * ev.rel_error_estimate, ev.method)


def bessel_k_scaled_values(nu: float, x: np.ndarray,
                           tol: float = DEFAULT_BESSEL_TOL) -> tuple[np.ndarray, float]:
    """Vectorized e^{pi nu/2} K_{i nu}(x) over an array of arguments, one order.

    Used by the spatial-overlap quadratures where one panel shares nu.  Points
    outside the vectorizable comfort zones fall back to the scalar selector.
    Returns (values, worst relative error estimate).
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("x must be positive")
    nu = abs(float(nu))
    out = np.empty_like(x)
    worst = 1e-15

    # large orders: the oscillatory Debye branch wherever it exists (series
    # cancellation grows with x there); otherwise the series covers x < nu
    # and the small-x region, everything else goes through the scalar selector
    if nu >= 60.0:
        osc = (x < nu) & ((nu - x) * (nu + x) >= 64.0)
        ser = (~osc) & (x * x <= 12.0 * np.sqrt(1.0 + nu * nu))
    else:
        osc = np.zeros(x.shape, dtype=bool)
        ser = (x * x <= 12.0 * np.sqrt(1.0 + nu * nu)) | (x < nu)
    rest = ~(ser | osc)

    if ser.any():
        xs = x[ser]
        if nu < 1e-8:
            L = np.log(0.5 * xs)
            r = np.ones_like(xs)
            total = -(L + EULER_GAMMA)
            abssum = np.abs(total).copy()
            hk = 0.0
            for k in range(1, 400):
                r *= (0.25 * xs * xs) / (k * k)
                hk += 1.0 / k
                term = -r * (L + EULER_GAMMA - hk)
                total += term
                abssum += np.abs(term)
                if r.max() < 1e-18:
                    break
            out[ser] = total
        else:
            theta0, lpref = _series_setup(nu)
            L = np.log(0.5 * xs)
            phi = nu * L
            r = np.ones_like(xs)
            th = theta0
            total = np.sin(phi + th)
            abssum = np.ones_like(xs)
            for k in range(1, 600):
                r *= (0.25 * xs * xs) / (k * math.hypot(k, nu))
                th -= math.atan2(nu, k)
                total += r * np.sin(phi + th)
                abssum += r
                if r.max() < 1e-17 and k > 3:
                    break
            out[ser] = -math.exp(lpref) * total
            denom = np.maximum(np.abs(total), 1e-300)
            worst = max(worst, float((4.0 * _EPS * abssum / denom).max()))
    if osc.any():
        xs = x[osc]
        w = np.sqrt((nu - xs) * (nu + xs))
        theta = np.arccosh(nu / xs)
        p2 = (nu / w) ** 2
        s_even = np.zeros_like(xs)
        s_odd = np.zeros_like(xs)
        last = np.ones_like(xs)
        for k in range(_DEBYE_TERMS):
            s = np.zeros_like(xs)
            for j in range(k, -1, -1):
                s = s * p2 + _CKJ[k][j]
            uk = s / w**k
            if k % 2 == 0:
                s_even += (-1.0 if (k // 2) % 2 else 1.0) * uk
            else:
                s_odd += (-1.0 if ((k - 1) // 2) % 2 else 1.0) * uk
            last = np.abs(uk)
        psi = nu * theta - w - 0.25 * math.pi
        val = s_even * np.cos(psi) - s_odd * np.sin(psi)
        out[osc] = np.sqrt(2.0 * math.pi / w) * val
        denom = np.maximum(np.abs(val), 1e-300)
        worst = max(worst, float((4.0 * last / denom).max()))
    if rest.any():
        for i in np.flatnonzero(rest):
            log_scaled, sign, est, _m = _k_log_scaled(nu, float(x[i]), tol)
            out[i] = sign * math.exp(min(log_scaled, _LOG_MAX)) if sign else 0.0
            worst = max(worst, est)
    return out, worst


# ----------------------------------------------------------------------
# |Gamma(i y)|^2 and the resonance kernel
# ----------------------------------------------------------------------

def gamma_abs_sq_imag(y: float) -> float:
    """|Gamma(i y)|^2 = pi / (y sinh(pi y)) for y > 0."""
    if not y > 0:
        raise ValueError("y must be positive")
    if math.pi * y > 700.0:
        raise SpecialFunctionRangeError(
            f"|Gamma(i {y})|^2 underflows double precision; use gamma_abs_sq_imag_log")
    return 2.0 * math.pi * math.exp(-math.pi * y) / (y * -math.expm1(-2.0 * math.pi * y))


def gamma_abs_sq_imag_log(y: float) -> float:
    """log of |Gamma(i y)|^2, stable for any positive y."""
    if not y > 0:
        raise ValueError("y must be positive")
    return (math.log(2.0 * math.pi) - math.log(y) - math.pi * y
            - math.log1p(-math.exp(-2.0 * math.pi * y)))


def resonance_kernel(x, t):
    """sin^2(x t / 2) / x^2 with the x -> 0 limit t^2/4.  Accepts arrays in x."""
    if np.any(np.asarray(t) < 0):
        raise ValueError("duration t must be nonnegative")
    if np.ndim(x) == 0:
        x = float(x)
        u = 0.5 * x * t
        if abs(u) < 1e-8:  # series limit; also dodges subnormal squaring
            return 0.25 * t * t * (1.0 - u * u / 3.0)
        s = math.sin(u)
        return (s * s) / (x * x)
    x = np.asarray(x, dtype=float)
    u = 0.5 * x * t
    tiny = np.abs(u) < 1e-8
    safe = np.where(tiny, 1.0, x)
    s = np.sin(u)
    return np.where(tiny, 0.25 * t * t * (1.0 - u * u / 3.0), (s * s) / (safe * safe))

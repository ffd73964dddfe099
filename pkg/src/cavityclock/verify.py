"""Self-contained verification checks behind the CLI `verify` subcommand.

Five groups: the gamma identity against an independent complex-gamma oracle,
the imaginary-order Bessel against a brute-force integral oracle, the Rindler
mode against its differential equation, the long-time consistency of the
stationary probability, and the small-acceleration recovery of the resting
rate.  Each check returns a CheckResult; the CLI renders them as a table.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.special import loggamma

from .accelerated import AveragingWindow, averaged_decay_rate, rindler_mode_spatial
from .core import FieldParams
from .kinematics import cavity_geometry
from .quadrature import QuadratureConfig
from .specialfn import bessel_k_imag_order, gamma_abs_sq_imag
from .stationary import decay_probability_stationary, decay_rate_stationary_longtime

CHECK_GROUPS = ("gamma", "bessel", "ode", "longtime", "recovery")


@dataclass(frozen=True)
class CheckResult:
    group: str
    passed: bool
    worst: float
    bound: float
    detail: str


def _oracle_bessel_k(nu: float, x: float) -> float:
    """Brute-force int_0^inf cos(nu t) e^{-x cosh t} dt on a fixed fine grid in
    extended precision; independent of the adaptive method selection."""
    dt = np.longdouble
    tmax = float(np.arccosh(dt(2400.0) / dt(min(x, 2400.0)))) + 1.5
    n = max(int(tmax * 640), 1200)
    t = np.linspace(dt(0), dt(tmax), n + 1)
    f = np.cos(dt(nu) * t) * np.exp(-dt(x) * np.cosh(t))
    f[0] *= dt(0.5)
    f[-1] *= dt(0.5)
    return float(f.sum() * (t[1] - t[0]))


def check_gamma(perturbation: float = 0.0) -> CheckResult:
    ys = np.geomspace(0.05, 20.0, 200)
    worst = 0.0
    for y in ys:
        mine = gamma_abs_sq_imag(float(y)) * (1.0 + perturbation)
        ref = math.exp(2.0 * loggamma(complex(0.0, y)).real)
        worst = max(worst, abs(mine / ref - 1.0))
    return CheckResult("gamma", worst < 1e-10, worst, 1e-10,
                       "|Gamma(iy)|^2 vs complex-loggamma oracle, y in [0.05, 20]")


def check_bessel() -> CheckResult:
    worst = 0.0
    for nu in np.linspace(0.0, 10.0, 20):
        for x in np.geomspace(0.1, 20.0, 20):
            mine = bessel_k_imag_order(float(nu), float(x)).value
            ref = _oracle_bessel_k(float(nu), float(x))
            worst = max(worst, abs(mine / ref - 1.0))
    return CheckResult("bessel", worst < 1e-8, worst, 1e-8,
                       "K_{i nu}(x) vs brute-force integral, 20x20 grid")


def check_ode() -> CheckResult:
    """Central-difference residual of F'' + (Om^2 - M^2 e^{2 alpha xi}) F = 0."""
    Om, alpha, M = 1.0, 0.5, 1.0
    h = 1e-3
    worst = 0.0
    for xi in np.linspace(-1.0, 1.0, 41):
        f0 = rindler_mode_spatial(Om, float(xi), M, alpha)
        fp = rindler_mode_spatial(Om, float(xi) + h, M, alpha)
        fm = rindler_mode_spatial(Om, float(xi) - h, M, alpha)
        second = (fp - 2.0 * f0 + fm) / (h * h)
        term = (Om**2 - M**2 * math.exp(2.0 * alpha * xi)) * f0
        denom = max(abs(Om**2 * f0), abs(M**2 * math.exp(2.0 * alpha * xi) * f0))
        worst = max(worst, abs(second + term) / denom)
    return CheckResult("ode", worst < 1e-4, worst, 1e-4,
                       "Rindler mode vs its wave equation (Om=1, alpha=0.5, M=1)")


def check_longtime() -> CheckResult:
    geom = cavity_geometry(1.0, 0.0)
    fields = FieldParams(M=1.0, lam=1.0)
    cfg = QuadratureConfig(rel_tol=1e-7, abs_tol=1e-9)
    ts = np.array([50.0, 100.0, 200.0])
    ps = np.array([decay_probability_stationary(geom, fields, float(t), cfg).value
                   for t in ts])
    slope = float(np.polyfit(ts, ps, 1)[0])
    rate = decay_rate_stationary_longtime(geom, fields).value
    err = abs(slope / rate - 1.0)
    return CheckResult("longtime", err < 0.02, err, 0.02,
                       f"P(t) slope {slope:.6g} vs rate {rate:.6g} (l=1, M=1)")


def check_recovery() -> CheckResult:
    fields = FieldParams(M=1.0, lam=1.0)
    geom = cavity_geometry(1.0, 0.02)
    acc = averaged_decay_rate(geom, fields, AveragingWindow(0.02)).value
    stat = decay_rate_stationary_longtime(cavity_geometry(1.0, 0.0), fields).value
    err = abs(acc / stat - 1.0)
    return CheckResult("recovery", err < 0.10, err, 0.10,
                       f"averaged rate {acc:.6g} at alpha=0.02 vs resting {stat:.6g}")


def run_checks(only: str | None = None, gamma_perturbation: float = 0.0) -> list[CheckResult]:
    table = {
        "gamma": lambda: check_gamma(gamma_perturbation),
        "bessel": check_bessel,
        "ode": check_ode,
        "longtime": check_longtime,
        "recovery": check_recovery,
    }
    if only is not None:
        if only not in table:
            raise ValueError(f"unknown check group {only!r}; choose from {CHECK_GROUPS}")
        return [table[only]()]
    return [table[g]() for g in CHECK_GROUPS]

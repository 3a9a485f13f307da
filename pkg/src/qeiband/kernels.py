"""Closed-form constants and worldline kernels entering the bounds.

Everything here is dimensionless or carries explicit powers of the
worldline scale; no scenario logic lives in this module.
"""
from __future__ import annotations

import math
from functools import cache
from typing import Callable

from .errors import DomainError, UnsupportedDimension
from .numerics import DEFAULT_QUAD_RTOL, find_root, integrate


def sphere_area(k: int) -> float:
    """Surface area of the unit k-sphere, 2 pi^((k+1)/2) / Gamma((k+1)/2)."""
    if k < 0:
        raise DomainError(f"sphere dimension must be >= 0, got {k}")
    return 2.0 * math.pi ** ((k + 1) / 2) / math.gamma((k + 1) / 2)


def kernel_constant(d: int) -> float:
    """Normalization constant of the inertial-worldline mode integral in
    d spacetime dimensions: sphere_area(d-2) / (2 d (2 pi)^(d-1))."""
    if d < 2:
        raise UnsupportedDimension(f"need d >= 2, got {d}")
    return sphere_area(d - 2) / (2.0 * d * (2.0 * math.pi) ** (d - 1))


def kernel_constant_improved(d: int) -> float:
    """kernel_constant with the d = 2 case tightened by the factor 6/5
    coming from the maximum of the d = 2 mass profile (< 1.2)."""
    if d == 2:
        return 1.2 * kernel_constant(2)
    return kernel_constant(d)


def mass_profile(x: float, d: int, rel_tol: float = DEFAULT_QUAD_RTOL) -> float:
    """Dimensionless profile (d / x^d) * integral_1^x y^2 (y^2-1)^((d-3)/2) dy.

    Evaluated with the substitution y = cosh(s), which removes the endpoint
    singularity at y = 1 for every d >= 2.  Tends to 1 from below as x grows
    for d >= 3; for d = 2 it peaks slightly below 1.2.
    """
    if d < 2:
        raise UnsupportedDimension(f"need d >= 2, got {d}")
    if x < 1.0:
        raise DomainError(f"profile argument must be >= 1, got {x}")
    if x == 1.0:
        return 0.0
    smax = math.acosh(x)

    def integrand(s: float) -> float:
        return math.cosh(s) ** 2 * math.sinh(s) ** (d - 2)

    return d / x**d * integrate(integrand, (0.0, smax), rel_tol)


def _mass_profile_2d_closed(alpha: float) -> float:
    # d = 2 profile at x = cosh(alpha): tanh(a) + a * (1 - tanh(a)^2)
    t = math.tanh(alpha)
    return t + alpha * (1.0 - t * t)


@cache
def mass_profile_2d_max() -> tuple[float, float]:
    """Location (as alpha with x = cosh(alpha)) and value of the d = 2
    profile maximum.  The stationarity condition is alpha*tanh(alpha) = 1,
    at which point the closed form collapses to the value alpha itself."""
    alpha0 = find_root(lambda a: a * math.tanh(a) - 1.0, (0.5, 2.0), tol=1e-12)
    return alpha0, _mass_profile_2d_closed(alpha0)


def massive_tail(
    x: float,
    g0_hat_sq: Callable[[float], float],
    d: int,
    rel_tol: float = DEFAULT_QUAD_RTOL,
) -> float:
    """Mass correction (1/pi) * integral_x^inf y^d g0_hat_sq(y) dy.

    g0_hat_sq must be nonnegative and decay at least exponentially, so the
    result is finite and non-increasing in x.
    """
    if d < 2:
        raise UnsupportedDimension(f"need d >= 2, got {d}")
    if x < 0.0:
        raise DomainError(f"mass threshold must be >= 0, got {x}")
    return integrate(lambda y: y**d * g0_hat_sq(y), (x, math.inf), rel_tol) / math.pi


def _exp_ratio(x: float) -> float:
    """x / (1 - exp(-x)), continuous through x = 0."""
    if abs(x) < 1e-3:
        # series with error below 1e-22 at this threshold
        x2 = x * x
        return 1.0 + x / 2.0 + x2 / 12.0 - x2 * x2 / 720.0
    if x < -700.0:
        return 0.0
    return x / (1.0 - math.exp(-x))


def accel_spectral_density(u: float, xi: float) -> float:
    """Fourier-side worldline kernel for proper acceleration 1/xi.

    Equals (xi^2 u^2 + 1) * r(2 pi xi u) / (4 pi^2 xi^3) with
    r(x) = x/(1 - e^(-x)); strictly positive, value 1/(4 pi^2 xi^3) at
    u = 0, and exponentially suppressed on the negative axis:
    density(-u)/density(u) = exp(-2 pi xi u) exactly.  Scales as
    density(u; xi) = xi^-3 * density(xi*u; 1).
    """
    if not xi > 0.0:
        raise DomainError(f"xi must be positive, got {xi}")
    if not math.isfinite(u):
        raise DomainError("u must be finite")
    return (xi * xi * u * u + 1.0) * _exp_ratio(2.0 * math.pi * xi * u) / (
        4.0 * math.pi**2 * xi**3
    )


def accel_cumulative(u: float, xi: float, rel_tol: float = DEFAULT_QUAD_RTOL) -> float:
    """Running integral (1/(2 pi^2)) * integral_(-inf)^u of the spectral
    density.  Positive, increasing, with 2 pi^2 * d/du recovering the
    density itself."""
    if not xi > 0.0:
        raise DomainError(f"xi must be positive, got {xi}")
    if not math.isfinite(u):
        raise DomainError("u must be finite")
    cut = min(u, -1.0 / xi)
    # exponentially damped tail, flipped onto (|cut|, inf)
    total = integrate(
        lambda w: accel_spectral_density(-w, xi), (-cut, math.inf), rel_tol
    )
    if u > cut:
        total += integrate(
            lambda v: accel_spectral_density(v, xi), (cut, u), rel_tol
        )
    return total / (2.0 * math.pi**2)


def accel_cumulative_zero(xi: float) -> float:
    """Closed form of accel_cumulative at u = 0: 11 / (960 pi^3 xi^4)."""
    if not xi > 0.0:
        raise DomainError(f"xi must be positive, got {xi}")
    return 11.0 / (960.0 * math.pi**3 * xi**4)

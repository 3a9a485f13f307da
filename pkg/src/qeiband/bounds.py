"""Scenario catalog and the lower/upper bounds attached to each scenario.

Bound values are energy densities (or worldline averages of them) in the
natural units of each scenario.  The op functions return plain floats;
bounds_for wraps them as labeled BoundResult records for the CLI and the
consistency checker.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cache
from typing import Union

from . import eigen, kernels
from .errors import DomainError, UnsupportedDimension, UnsupportedScenario
from .numerics import integrate


def _require_positive(name: str, value: float, allow_inf: bool = False) -> None:
    if not value > 0.0:
        raise DomainError(f"{name} must be positive, got {value}")
    if not allow_inf and math.isinf(value):
        raise DomainError(f"{name} must be finite, got {value}")


@dataclass(frozen=True)
class MinkowskiInertial:
    d: int
    tau0: float

    def __post_init__(self):
        if self.d not in (2, 4):
            raise UnsupportedDimension(f"d must be 2 or 4, got {self.d}")
        _require_positive("tau0", self.tau0, allow_inf=True)


@dataclass(frozen=True)
class MinkowskiNull:
    tau0: float
    uk: float

    def __post_init__(self):
        _require_positive("tau0", self.tau0, allow_inf=True)
        if not (math.isfinite(self.uk) and self.uk != 0.0):
            raise DomainError(f"uk must be finite and nonzero, got {self.uk}")


@dataclass(frozen=True)
class UniformAccel:
    alpha: float
    tau0: float

    def __post_init__(self):
        _require_positive("alpha", self.alpha)
        _require_positive("tau0", self.tau0, allow_inf=True)


@dataclass(frozen=True)
class Conformal2D:
    s_shift: float
    tau0: float

    def __post_init__(self):
        if not math.isfinite(self.s_shift):
            raise DomainError("s_shift must be finite")
        _require_positive("tau0", self.tau0, allow_inf=True)


@dataclass(frozen=True)
class LinearAccel2D:
    p: float

    def __post_init__(self):
        if not (math.isfinite(self.p) and self.p != 0.0):
            raise DomainError(f"p must be finite and nonzero, got {self.p}")


@dataclass(frozen=True)
class Cylinder:
    L: float
    beta: float = math.inf

    def __post_init__(self):
        _require_positive("L", self.L)
        _require_positive("beta", self.beta, allow_inf=True)


@dataclass(frozen=True)
class Torus:
    lengths: tuple[float, ...]

    def __post_init__(self):
        j = len(self.lengths)
        if not 1 <= j <= 3:
            raise DomainError(f"torus needs 1 to 3 compact lengths, got {j}")
        for L in self.lengths:
            _require_positive("length", L)
        if list(self.lengths) != sorted(self.lengths):
            raise DomainError("lengths must be sorted ascending")

    @property
    def j(self) -> int:
        return len(self.lengths)


@dataclass(frozen=True)
class Misner:
    a: float
    t: float = 1.0

    def __post_init__(self):
        _require_positive("a", self.a)
        _require_positive("t", self.t)


@dataclass(frozen=True)
class Rindler:
    xi: float
    zeta: float = 0.0

    def __post_init__(self):
        _require_positive("xi", self.xi)
        if not math.isfinite(self.zeta):
            raise DomainError("zeta must be finite")


@dataclass(frozen=True)
class StaticBall:
    d: int
    r: float

    def __post_init__(self):
        if self.d not in (2, 4):
            raise UnsupportedDimension(f"d must be 2 or 4, got {self.d}")
        _require_positive("r", self.r)


Scenario = Union[
    MinkowskiInertial,
    MinkowskiNull,
    UniformAccel,
    Conformal2D,
    LinearAccel2D,
    Cylinder,
    Torus,
    Misner,
    Rindler,
    StaticBall,
]


@dataclass(frozen=True)
class BoundResult:
    """One bound attached to a scenario; direction is 'lower' or 'upper'
    and label records which construction produced the value."""

    scenario: Scenario
    direction: str
    value: float
    label: str

    def __post_init__(self):
        if self.direction not in ("lower", "upper"):
            raise DomainError(f"bad direction {self.direction!r}")
        if not math.isfinite(self.value):
            raise DomainError("bound value must be finite")
        if not self.label:
            raise DomainError("label must be non-empty")


# ---------------------------------------------------------------------------
# bound values
# ---------------------------------------------------------------------------


@cache
def inertial_coefficient(d: int) -> float:
    """Sampling-interval coefficient C_d: the unit-interval ground
    eigenvalue times the improved kernel constant.  C_2 = 3 pi / 10,
    C_4 = beta^4 / (16 pi^2)."""
    if d == 2:
        return eigen.dirichlet_min_eig(1.0) * kernels.kernel_constant_improved(2)
    if d == 4:
        return eigen.clamped_min_eig(1.0) * kernels.kernel_constant_improved(4)
    raise UnsupportedDimension(f"d must be 2 or 4, got {d}")


def inertial_bound(d: int, tau0: float) -> float:
    """Lower bound -C_d / tau0^d for an inertial worldline sampled over a
    window of width tau0.  tau0 = inf gives 0."""
    if d not in (2, 4):
        raise UnsupportedDimension(f"d must be 2 or 4, got {d}")
    _require_positive("tau0", tau0, allow_inf=True)
    if math.isinf(tau0):
        return 0.0
    return -inertial_coefficient(d) / tau0**d


def null_bound(tau0: float, uk: float) -> float:
    """Lower bound for null-contracted averages in d = 4:
    -(4/3) C_4 (u.k)^2 / tau0^4."""
    _require_positive("tau0", tau0, allow_inf=True)
    if not (math.isfinite(uk) and uk != 0.0):
        raise DomainError(f"uk must be finite and nonzero, got {uk}")
    if math.isinf(tau0):
        return 0.0
    return -(4.0 / 3.0) * inertial_coefficient(4) * uk**2 / tau0**4


def accel_bound(alpha: float, tau0: float) -> float:
    """Lower bound -(20 lam0^2 - 9) alpha^4 / (320 pi^2) along a uniformly
    accelerated worldline, lam0 the characteristic-equation ground value at
    chi = alpha * tau0.  tau0 = inf uses lam0 = 1."""
    _require_positive("alpha", alpha)
    _require_positive("tau0", tau0, allow_inf=True)
    lam0 = eigen.accel_min_eigenvalue(alpha * tau0)
    return -(20.0 * lam0 * lam0 - 9.0) * alpha**4 / (320.0 * math.pi**2)


def accel_awec_bound(alpha: float) -> float:
    """Optimal infinite-duration bound -11 alpha^4 / (480 pi^2), equal to
    2/3 of the tau0 -> inf limit of accel_bound."""
    _require_positive("alpha", alpha)
    return -11.0 * alpha**4 / (480.0 * math.pi**2)


def conformal2d_bound(s_shift: float, tau0: float) -> float:
    """Lower bound -(S + pi^2/tau0^2) / (6 pi) on a 2D conformal static
    worldline with curvature shift S."""
    _require_positive("tau0", tau0, allow_inf=True)
    return -eigen.conformal2d_min_eig(s_shift, tau0) / (6.0 * math.pi)


def linear_accel_2d_bound(p: float) -> float:
    """Infinite-duration bound -|p| / (6 pi) for 2D linear acceleration p,
    through the harmonic ground eigenvalue."""
    if not (math.isfinite(p) and p != 0.0):
        raise DomainError(f"p must be finite and nonzero, got {p}")
    return -eigen.harmonic_min_eig(p) / (6.0 * math.pi)


def cylinder_band(L: float, beta: float = math.inf) -> tuple[float, float]:
    """(lower, upper) band for the energy density on a spatial circle of
    circumference L at inverse temperature beta.

    The lower bound -pi/(6 L^2) is the conformal vacuum value; the upper
    bound is a mode-sum envelope that tends to pi/(2 L^2) as beta -> inf.
    """
    _require_positive("L", L)
    _require_positive("beta", beta, allow_inf=True)
    lower = -math.pi / (6.0 * L * L)
    base = math.pi / (2.0 * L * L)
    if math.isinf(beta):
        return lower, base
    # exp(-2x) form keeps the envelope stable for large beta/L
    e = math.exp(-2.0 * math.pi * beta / L)
    upper = base / (1.0 - e) + base * 8.0 * e / (1.0 - e) ** 3
    return lower, upper


def misner_max_diamond(a: float, tau_obs: float) -> float:
    """Widest causal-diamond width 2 tau_obs tanh(a/2) available to an
    observer at proper time tau_obs for identification boost a."""
    _require_positive("a", a)
    _require_positive("tau_obs", tau_obs)
    return 2.0 * tau_obs * math.tanh(0.5 * a)


def misner_crude_bound(a: float) -> float:
    """Envelope bound -pi^2 C_4 (2 + coth(a/2))^4 on the dimensionless
    prefactor, from the widest diamond alone.  Tends to -pi^2 C_4 * 81
    as a -> inf."""
    _require_positive("a", a)
    return -math.pi**2 * inertial_coefficient(4) * (
        2.0 + 1.0 / math.tanh(0.5 * a)
    ) ** 4


def misner_eigen_bound(a: float) -> float:
    """Variational bound -lam(a) on the dimensionless prefactor, from the
    weighted quartic problem on the diamond chart.  Tighter than
    misner_crude_bound for every a."""
    return -eigen.misner_min_eigenvalue(a)


def static_ball_bound(d: int, r: float) -> float:
    """Lower bound at the center of a static ball of radius r: the
    inertial bound with the window limited by the light-crossing time 2r."""
    if d not in (2, 4):
        raise UnsupportedDimension(f"d must be 2 or 4, got {d}")
    _require_positive("r", r)
    return inertial_bound(d, 2.0 * r)


def rindler_lower(xi: float, zeta: float = 0.0) -> float:
    """Wedge bound -(11 - 60 zeta) / (480 pi^2 xi^4) at distance xi from
    the horizon with curvature coupling zeta."""
    _require_positive("xi", xi)
    if not math.isfinite(zeta):
        raise DomainError("zeta must be finite")
    return -(11.0 - 60.0 * zeta) / (480.0 * math.pi**2 * xi**4)


@cache
def _beam_ratios() -> tuple[float, float]:
    # I1/I0 and I2/I0 for the clamped-beam ground mode on (-1/2, 1/2);
    # the curvature ratio reproduces beta^4.
    b = eigen.clamped_beam_beta()
    c = math.cosh(0.5 * b) / math.cos(0.5 * b)

    def g(t: float) -> float:
        return math.cosh(b * t) - c * math.cos(b * t)

    def gp(t: float) -> float:
        return b * (math.sinh(b * t) + c * math.sin(b * t))

    def gpp(t: float) -> float:
        return b * b * (math.cosh(b * t) + c * math.cos(b * t))

    i0 = integrate(lambda t: g(t) ** 2, (-0.5, 0.5), 1e-12)
    i1 = integrate(lambda t: gp(t) ** 2, (-0.5, 0.5), 1e-12)
    i2 = integrate(lambda t: gpp(t) ** 2, (-0.5, 0.5), 1e-12)
    return i1 / i0, i2 / i0


def rindler_upper_scaled(xi: float, alpha_scale: float) -> float:
    """Upper envelope on the averaged wedge density from the fixed
    clamped-beam trial profile stretched by alpha_scale:
    (r2 + 2 alpha^2 r1 / xi^2) / (16 pi^2 alpha^4), decreasing in the
    stretch and bounded by value(1)/alpha^2 for alpha >= 1."""
    _require_positive("xi", xi)
    _require_positive("alpha_scale", alpha_scale)
    r1, r2 = _beam_ratios()
    a2 = alpha_scale * alpha_scale
    return (r2 + 2.0 * a2 * r1 / (xi * xi)) / (16.0 * math.pi**2 * a2 * a2)


# ---------------------------------------------------------------------------
# scenario dispatch
# ---------------------------------------------------------------------------


def bounds_for(scenario: Scenario) -> list[BoundResult]:
    """All bounds the catalog attaches to a scenario, lower bounds first."""
    if isinstance(scenario, MinkowskiInertial):
        label = "dirichlet-mode" if scenario.d == 2 else "clamped-mode"
        return [
            BoundResult(
                scenario, "lower", inertial_bound(scenario.d, scenario.tau0), label
            )
        ]
    if isinstance(scenario, MinkowskiNull):
        return [
            BoundResult(
                scenario,
                "lower",
                null_bound(scenario.tau0, scenario.uk),
                "clamped-mode-null",
            )
        ]
    if isinstance(scenario, UniformAccel):
        out = [
            BoundResult(
                scenario,
                "lower",
                accel_bound(scenario.alpha, scenario.tau0),
                "characteristic-mode"
                if math.isfinite(scenario.tau0)
                else "duration-limit",
            )
        ]
        if math.isinf(scenario.tau0):
            out.append(
                BoundResult(
                    scenario,
                    "lower",
                    accel_awec_bound(scenario.alpha),
                    "awec-optimal",
                )
            )
        return out
    if isinstance(scenario, Conformal2D):
        return [
            BoundResult(
                scenario,
                "lower",
                conformal2d_bound(scenario.s_shift, scenario.tau0),
                "conformal-mode",
            )
        ]
    if isinstance(scenario, LinearAccel2D):
        return [
            BoundResult(
                scenario, "lower", linear_accel_2d_bound(scenario.p), "harmonic-mode"
            )
        ]
    if isinstance(scenario, Cylinder):
        lower, upper = cylinder_band(scenario.L, scenario.beta)
        return [
            BoundResult(scenario, "lower", lower, "conformal-vacuum"),
            BoundResult(
                scenario,
                "upper",
                upper,
                "mode-sum-envelope"
                if math.isinf(scenario.beta)
                else "thermal-mode-envelope",
            ),
        ]
    if isinstance(scenario, Torus):
        return [
            BoundResult(
                scenario,
                "lower",
                inertial_bound(4, scenario.lengths[0]),
                "inertial-worldline",
            )
        ]
    if isinstance(scenario, Misner):
        t4 = 16.0 * math.pi**2 * scenario.t**4
        return [
            BoundResult(
                scenario,
                "lower",
                misner_eigen_bound(scenario.a) / t4,
                "diamond-eigen-mode",
            ),
            BoundResult(
                scenario,
                "lower",
                misner_crude_bound(scenario.a) / t4,
                "diamond-envelope",
            ),
        ]
    if isinstance(scenario, Rindler):
        return [
            BoundResult(
                scenario,
                "lower",
                rindler_lower(scenario.xi, scenario.zeta),
                "awec-limit",
            ),
            BoundResult(scenario, "upper", 0.0, "scaling-limit"),
        ]
    if isinstance(scenario, StaticBall):
        return [
            BoundResult(
                scenario,
                "lower",
                static_ball_bound(scenario.d, scenario.r),
                "light-crossing-window",
            )
        ]
    raise UnsupportedScenario(f"no bounds for {type(scenario).__name__}")

"""Minimum eigenvalues of the variational problems behind each bound.

Closed forms and transcendental characteristic equations are the primary
route; every problem also has a builder returning the equivalent
EigenProblem1D so the finite-difference oracle in numerics can cross-check
the values on a grid.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cache

from .errors import BracketFailure, DomainError, NoSignChange
from .numerics import EigenProblem1D, Interval, find_root, fd_min_eigenvalue


@dataclass(frozen=True)
class EigenSolution:
    """An eigenvalue from a characteristic equation, with the branch index
    and the normalized residual of the equation at the returned value."""

    value: float
    branch: int
    residual: float


def dirichlet_min_eig(tau0: float) -> float:
    """Ground eigenvalue (pi/tau0)^2 of -g'' on an interval of width tau0.

    tau0 = inf is allowed and gives 0.
    """
    if not tau0 > 0.0:
        raise DomainError(f"tau0 must be positive, got {tau0}")
    if math.isinf(tau0):
        return 0.0
    return (math.pi / tau0) ** 2


@cache
def clamped_beam_beta() -> float:
    """Frequency parameter of the clamped-beam ground mode on unit width:
    the root of tan(x/2) + tanh(x/2) in (pi, 2 pi)."""
    return find_root(
        lambda x: math.tan(0.5 * x) + math.tanh(0.5 * x),
        (math.pi + 1e-6, 2.0 * math.pi - 1e-6),
        tol=1e-13,
    )


def clamped_min_eig(tau0: float) -> float:
    """Ground eigenvalue beta^4 / tau0^4 of g'''' with clamped ends.

    tau0 = inf gives 0.
    """
    if not tau0 > 0.0:
        raise DomainError(f"tau0 must be positive, got {tau0}")
    if math.isinf(tau0):
        return 0.0
    return clamped_beam_beta() ** 4 / tau0**4


def beam_eigenfunction(tau: float) -> float:
    """Clamped-beam ground mode on (-1/2, 1/2), unnormalized:
    cosh(beta tau) - (cosh(beta/2)/cos(beta/2)) cos(beta tau)."""
    b = clamped_beam_beta()
    return math.cosh(b * tau) - math.cosh(0.5 * b) / math.cos(0.5 * b) * math.cos(
        b * tau
    )


def _accel_branch(chi: float, branch: int) -> EigenSolution:
    # Parameterize by s = sqrt(lam - 1) * chi / 2, which confines branch j
    # of the even characteristic equation to (pi/2 + j pi, pi + j pi).
    def lam_of(s: float) -> float:
        return 1.0 + (2.0 * s / chi) ** 2

    def residual_terms(s: float) -> tuple[float, float]:
        lam = lam_of(s)
        rp = math.sqrt(lam + 1.0)
        t1 = rp * math.tanh(0.5 * rp * chi)
        t2 = (2.0 * s / chi) * math.tan(s)
        return t1, t2

    lo = 0.5 * math.pi + branch * math.pi
    hi = (branch + 1) * math.pi
    pad = 1e-9 * (1.0 + branch)
    s = find_root(
        lambda x: sum(residual_terms(x)), (lo + pad, hi - pad), tol=1e-12
    )
    t1, t2 = residual_terms(s)
    res = abs(t1 + t2) / (abs(t1) + abs(t2))
    return EigenSolution(value=lam_of(s), branch=branch, residual=res)


def accel_min_eigenvalue(chi: float) -> float:
    """Smallest eigenvalue of the accelerated-worldline quartic problem as
    a function of chi = tau0 / xi.  Behaves like (beta/chi)^2 for small chi
    and decreases toward 1 as chi grows; chi = inf returns exactly 1."""
    if not chi > 0.0:
        raise DomainError(f"chi must be positive, got {chi}")
    if math.isinf(chi):
        return 1.0
    return _accel_branch(chi, 0).value


def accel_eigenvalue_branches(chi: float, k: int) -> list[EigenSolution]:
    """The k lowest branches of the even-mode characteristic equation,
    strictly increasing in branch index.

    These interleave with an odd-mode family; against the grid oracle the
    branch-j value lands at oracle index 2j.
    """
    if not (chi > 0.0 and math.isfinite(chi)):
        raise DomainError(f"chi must be positive and finite, got {chi}")
    if not 1 <= k <= 64:
        raise DomainError(f"k must be in [1, 64], got {k}")
    return [_accel_branch(chi, j) for j in range(k)]


def accel_eigenfunction(tau: float, lam: float, tau0: float, xi: float) -> float:
    """Even eigenfunction cosh(sqrt(lam+1) tau/xi) + A cos(sqrt(lam-1) tau/xi)
    on (-tau0/2, tau0/2), with A fixed by the clamped derivative condition.

    At an eigenvalue of the characteristic equation both the value and the
    derivative vanish at the endpoints.
    """
    if not (xi > 0.0 and tau0 > 0.0):
        raise DomainError("tau0 and xi must be positive")
    if not lam > 1.0:
        raise DomainError(f"need lam > 1, got {lam}")
    a = math.sqrt(lam + 1.0) / xi
    b = math.sqrt(lam - 1.0) / xi
    sin_half = math.sin(0.5 * b * tau0)
    if abs(sin_half) < 1e-12:
        raise DomainError("eigenfunction amplitude is singular at this lam")
    amp = a * math.sinh(0.5 * a * tau0) / (b * sin_half)
    return math.cosh(a * tau) + amp * math.cos(b * tau)


# ---------------------------------------------------------------------------
# problem builders for the grid oracle
# ---------------------------------------------------------------------------

_ONE = lambda t: 1.0
_ZERO = lambda t: 0.0


def dirichlet_problem(tau0: float) -> EigenProblem1D:
    if not (tau0 > 0.0 and math.isfinite(tau0)):
        raise DomainError(f"tau0 must be positive and finite, got {tau0}")
    return EigenProblem1D(
        order=2,
        p2=_ONE,
        v0=_ZERO,
        weight=_ONE,
        interval=Interval(-0.5 * tau0, 0.5 * tau0),
    )


def beam_problem() -> EigenProblem1D:
    return EigenProblem1D(
        order=4,
        q4=_ONE,
        p2=_ZERO,
        v0=_ZERO,
        weight=_ONE,
        interval=Interval(-0.5, 0.5),
    )


def accel_problem(chi: float) -> EigenProblem1D:
    """Quartic problem g'''' - 2 g'' + (11/20) g = mu g on (-chi/2, chi/2)
    in units xi = 1.  Its eigenvalues relate to the characteristic-equation
    family by mu = (20 lam^2 - 9) / 20."""
    if not (chi > 0.0 and math.isfinite(chi)):
        raise DomainError(f"chi must be positive and finite, got {chi}")
    return EigenProblem1D(
        order=4,
        q4=_ONE,
        p2=lambda t: 2.0,
        v0=lambda t: 0.55,
        weight=_ONE,
        interval=Interval(-0.5 * chi, 0.5 * chi),
    )


def accel_mu(lam: float) -> float:
    """Map a characteristic-equation eigenvalue to the quartic-problem
    eigenvalue mu = (20 lam^2 - 9) / 20."""
    return lam * lam - 0.45


def misner_problem(a: float) -> EigenProblem1D:
    """Weighted quartic problem for the closed-universe prefactor bound:
    integral g''^2 over integral t^-4 g^2 on the diamond chart
    (1 - tanh(a/2), 1 + tanh(a/2)).  Depends only on a; rescaling the chart
    leaves the eigenvalue unchanged."""
    if not (a > 0.0 and math.isfinite(a)):
        raise DomainError(f"a must be positive and finite, got {a}")
    th = math.tanh(0.5 * a)
    return EigenProblem1D(
        order=4,
        q4=_ONE,
        p2=_ZERO,
        v0=_ZERO,
        weight=lambda t: t**-4,
        interval=Interval(1.0 - th, 1.0 + th),
    )


def harmonic_problem(p: float, halfwidth: float = 20.0) -> EigenProblem1D:
    if p == 0.0:
        raise DomainError("p must be nonzero")
    p2 = float(p) ** 2
    return EigenProblem1D(
        order=2,
        p2=_ONE,
        v0=lambda t: p2 * t * t,
        weight=_ONE,
        interval=Interval(-halfwidth, halfwidth),
    )


def conformal_problem(s_shift: float, tau0: float) -> EigenProblem1D:
    if not (tau0 > 0.0 and math.isfinite(tau0)):
        raise DomainError(f"tau0 must be positive and finite, got {tau0}")
    return EigenProblem1D(
        order=2,
        p2=_ONE,
        v0=lambda t: s_shift,
        weight=_ONE,
        interval=Interval(-0.5 * tau0, 0.5 * tau0),
    )


# ---------------------------------------------------------------------------
# transcendental problems
# ---------------------------------------------------------------------------


def _misner_residual_terms(lam: float, a: float) -> tuple[float, float]:
    rp = math.sqrt(lam + 1.0)
    theta = 0.5 * a * math.sqrt(4.0 * rp - 5.0)
    phi = 0.5 * a * math.sqrt(4.0 * rp + 5.0)
    t1 = math.sin(theta) * math.sinh(phi)
    t2 = (math.sqrt(16.0 * lam - 9.0) / 5.0) * (
        math.cos(theta) * math.cosh(phi) - 1.0
    )
    return t1, t2


def misner_eigen_solution(a: float, n_est: int = 512) -> EigenSolution:
    """Ground eigenvalue of the closed-universe quartic problem.

    The characteristic equation has spurious roots (lam = 9/16 among them),
    so the grid oracle supplies an estimate first and the transcendental
    residual is polished inside a bracket grown around it.
    """
    est = fd_min_eigenvalue(misner_problem(a), n_grid=n_est)

    def f(lam: float) -> float:
        t1, t2 = _misner_residual_terms(lam, a)
        return t1 - t2

    floor = 9.0 / 16.0 * (1.0 + 1e-9)
    r = 0.02
    while r <= 0.5:
        lo = max(est * (1.0 - r), floor)
        hi = est * (1.0 + r)
        try:
            lam = find_root(f, (lo, hi), tol=1e-12 * max(1.0, est))
        except NoSignChange:
            r *= 2.0
            continue
        t1, t2 = _misner_residual_terms(lam, a)
        res = abs(t1 - t2) / (abs(t1) + abs(t2))
        return EigenSolution(value=lam, branch=0, residual=res)
    raise BracketFailure(
        f"no sign change around the grid estimate {est} for a={a}"
    )


def misner_min_eigenvalue(a: float, n_est: int = 512) -> float:
    return misner_eigen_solution(a, n_est).value


def conformal2d_min_eig(s_shift: float, tau0: float) -> float:
    """Ground eigenvalue S + (pi/tau0)^2 of -g'' + S g; the shift enters
    additively.  tau0 = inf gives S."""
    if not tau0 > 0.0:
        raise DomainError(f"tau0 must be positive, got {tau0}")
    if math.isinf(tau0):
        return float(s_shift)
    return s_shift + (math.pi / tau0) ** 2


def harmonic_min_eig(p: float) -> float:
    """Ground eigenvalue |p| of -g'' + p^2 t^2 g on the line."""
    return abs(float(p))

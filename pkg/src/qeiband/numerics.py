"""Foundation layer: bracketed root finding, adaptive quadrature, series
summation with tail bounds, and a finite-difference generalized-eigenvalue
oracle for 1D variational problems.

All routines are pure functions of their inputs and are safe to call
concurrently.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.linalg import eig_banded, solve_banded, LinAlgError

from .errors import (
    DomainError,
    NoSignChange,
    NonConvergent,
    NonFinite,
    SingularDiscretization,
)

# Default tolerances, overridable per call (and via QEI_TOL in the CLI).
DEFAULT_ROOT_TOL = 1e-10
DEFAULT_SERIES_RTOL = 1e-8
DEFAULT_QUAD_RTOL = 1e-9
DEFAULT_ORACLE_GRID = 4000

DEFAULT_TOLERANCES = {
    "root_abs": DEFAULT_ROOT_TOL,
    "series_rel": DEFAULT_SERIES_RTOL,
    "quad_rel": DEFAULT_QUAD_RTOL,
    "oracle_grid": DEFAULT_ORACLE_GRID,
}


@dataclass(frozen=True)
class Interval:
    """A finite interval lo < hi."""

    lo: float
    hi: float

    def __post_init__(self):
        if not (math.isfinite(self.lo) and math.isfinite(self.hi)):
            raise DomainError("interval endpoints must be finite")
        if not self.lo < self.hi:
            raise DomainError(f"empty interval ({self.lo}, {self.hi})")

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class SeriesResult:
    """A summed series with its term count and a rigorous tail bound."""

    value: float
    n_terms: int
    tail_bound: float


@dataclass(frozen=True)
class GridFunction:
    """Uniformly sampled function values on an interval, endpoints included."""

    grid: np.ndarray
    values: np.ndarray

    @property
    def spacing(self) -> float:
        return (self.grid[-1] - self.grid[0]) / (len(self.grid) - 1)


@dataclass(frozen=True)
class EigenProblem1D:
    """Self-adjoint 1D eigenvalue problem in variational form.

    The quadratic form is integral of q4*g''^2 + p2*g'^2 + v0*g^2 against
    the eigenvalue times integral of weight*g^2.  Boundary conditions are
    Dirichlet (g=0) for order 2 and clamped (g=g'=0) for order 4.
    """

    order: int
    p2: Callable[[float], float]
    v0: Callable[[float], float]
    weight: Callable[[float], float]
    interval: Interval
    q4: Callable[[float], float] | None = None

    def __post_init__(self):
        if self.order not in (2, 4):
            raise DomainError(f"order must be 2 or 4, got {self.order}")
        if self.order == 4 and self.q4 is None:
            raise DomainError("order-4 problems need a q4 coefficient")


def find_root(
    f: Callable[[float], float],
    bracket: Interval | tuple[float, float],
    tol: float = DEFAULT_ROOT_TOL,
) -> float:
    """Root of f inside a sign-changing bracket.

    Bisects until the bracket shrinks to 1e-3 of its initial width, then
    switches to secant steps guarded by the bracket.  The returned point is
    always inside the input bracket, within tol (absolute) of the root.
    """
    if tol <= 0:
        raise DomainError("tol must be positive")
    a, b = (bracket.lo, bracket.hi) if isinstance(bracket, Interval) else bracket
    if not (math.isfinite(a) and math.isfinite(b) and a < b):
        raise DomainError(f"bad bracket ({a}, {b})")
    fa, fb = f(a), f(b)
    if not (math.isfinite(fa) and math.isfinite(fb)):
        raise NonFinite("f is not finite at a bracket endpoint")
    if fa * fb >= 0.0:
        raise NoSignChange(f"f({a})={fa} and f({b})={fb} do not straddle zero")

    width0 = b - a
    x_prev, f_prev = a, fa
    x_cur, f_cur = b, fb
    for _ in range(400):
        if b - a <= tol:
            return 0.5 * (a + b)
        if b - a > 1e-3 * width0:
            x = 0.5 * (a + b)
        else:
            # secant step, falling back to bisection when it degenerates
            # or leaves the bracket
            denom = f_cur - f_prev
            if denom != 0.0:
                x = x_cur - f_cur * (x_cur - x_prev) / denom
            else:
                x = 0.5 * (a + b)
            if not (a < x < b):
                x = 0.5 * (a + b)
        fx = f(x)
        if not math.isfinite(fx):
            raise NonFinite(f"f({x}) is not finite")
        if fx == 0.0:
            return x
        x_prev, f_prev = x_cur, f_cur
        x_cur, f_cur = x, fx
        if fa * fx < 0.0:
            b, fb = x, fx
        else:
            a, fa = x, fx
    return 0.5 * (a + b)


_GL_NODES, _GL_WEIGHTS = leggauss(15)


def _gauss_panel(f, a: float, b: float) -> float:
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    total = 0.0
    for x, w in zip(_GL_NODES, _GL_WEIGHTS):
        y = f(mid + half * x)
        if not math.isfinite(y):
            raise NonFinite(f"integrand not finite at {mid + half * x}")
        total += w * y
    return half * total


def _adaptive_finite(f, a: float, b: float, rel_tol: float, max_panels: int) -> float:
    # Each queue entry holds a panel's coarse value, its two-child refinement,
    # and the disagreement between them as the error estimate.  The worst
    # panel is split until the summed error estimate meets the tolerance.
    def make(lo, hi, counter):
        coarse = _gauss_panel(f, lo, hi)
        mid = 0.5 * (lo + hi)
        fine = _gauss_panel(f, lo, mid) + _gauss_panel(f, mid, hi)
        return (-abs(coarse - fine), counter, lo, hi, fine)

    counter = 0
    heap = [make(a, b, counter)]
    total = heap[0][4]
    total_err = -heap[0][0]
    while total_err > rel_tol * max(abs(total), 1e-300):
        if len(heap) >= max_panels:
            raise NonConvergent(
                f"quadrature did not reach rel_tol={rel_tol} within "
                f"{max_panels} panels"
            )
        neg_err, _, lo, hi, fine = heapq.heappop(heap)
        total -= fine
        total_err += neg_err
        mid = 0.5 * (lo + hi)
        for piece in ((lo, mid), (mid, hi)):
            counter += 1
            entry = make(piece[0], piece[1], counter)
            heapq.heappush(heap, entry)
            total += entry[4]
            total_err -= entry[0]
    return total


def integrate(
    f: Callable[[float], float],
    interval: Interval | tuple[float, float],
    rel_tol: float = DEFAULT_QUAD_RTOL,
    max_panels: int = 4096,
) -> float:
    """Adaptive Gauss quadrature of f over an interval.

    Endpoints may be infinite; a semi-infinite range (a, inf) is mapped to
    (0, 1] by x = a - ln(t), which requires the integrand to decay at least
    exponentially (rate 1) at infinity.  Doubly infinite ranges are split
    at zero.  Finite-interval results on polynomials of degree <= 3 are
    exact to roundoff.
    """
    if rel_tol <= 0:
        raise DomainError("rel_tol must be positive")
    a, b = (interval.lo, interval.hi) if isinstance(interval, Interval) else interval
    if math.isnan(a) or math.isnan(b):
        raise DomainError("interval endpoints must not be NaN")
    if a == b:
        return 0.0
    if a > b:
        raise DomainError(f"interval endpoints out of order ({a}, {b})")

    neg_inf = math.isinf(a)
    pos_inf = math.isinf(b)
    if neg_inf and pos_inf:
        return integrate(f, (a, 0.0), rel_tol, max_panels) + integrate(
            f, (0.0, b), rel_tol, max_panels
        )
    if pos_inf:
        return _adaptive_finite(
            lambda t: f(a - math.log(t)) / t, 0.0, 1.0, rel_tol, max_panels
        )
    if neg_inf:
        return _adaptive_finite(
            lambda t: f(b + math.log(t)) / t, 0.0, 1.0, rel_tol, max_panels
        )
    return _adaptive_finite(f, a, b, rel_tol, max_panels)


def sum_series(
    term: Callable[[int], float],
    tail_bound: Callable[[int], float],
    rel_tol: float = DEFAULT_SERIES_RTOL,
    max_terms: int = 100_000,
) -> SeriesResult:
    """Sum term(1) + term(2) + ... until the caller-supplied tail bound
    drops below rel_tol times the partial sum."""
    if rel_tol <= 0:
        raise DomainError("rel_tol must be positive")
    partial = 0.0
    for n in range(1, max_terms + 1):
        t = term(n)
        if not math.isfinite(t):
            raise NonFinite(f"term({n}) is not finite")
        partial += t
        tb = tail_bound(n)
        if tb <= rel_tol * abs(partial):
            return SeriesResult(value=partial, n_terms=n, tail_bound=tb)
    raise NonConvergent(f"series tail bound not met within {max_terms} terms")


# ---------------------------------------------------------------------------
# finite-difference eigenvalue oracle
# ---------------------------------------------------------------------------


def _sample(fn, points) -> np.ndarray:
    vals = np.array([fn(float(t)) for t in points], dtype=float)
    if not np.all(np.isfinite(vals)):
        raise NonFinite("coefficient function returned a non-finite value")
    return vals


class _Discretization:
    """Banded assembly of the variational form on a uniform interior grid.

    With m interior unknowns and h = width/(m+1), second differences sample
    every node including the boundary, where the clamped condition g'=0 is
    imposed by ghost-point reflection and the endpoint curvature rows carry
    trapezoid half-weights.  First differences live on midpoints.  The
    assembled A is symmetric pentadiagonal; B is the diagonal weight.
    """

    def __init__(self, problem: EigenProblem1D, m: int):
        iv = problem.interval
        h = iv.width / (m + 1)
        t_int = iv.lo + h * np.arange(1, m + 1)
        w = _sample(problem.weight, t_int)
        if np.any(w <= 0.0):
            raise SingularDiscretization("weight must be positive on the grid")

        v0 = _sample(problem.v0, t_int)
        diag = v0.copy()
        sub1 = np.zeros(m - 1)
        sub2 = np.zeros(max(m - 2, 0))

        t_mid = iv.lo + h * (np.arange(m + 1) + 0.5)
        wp = _sample(problem.p2, t_mid) / h**2
        diag += wp[:-1] + wp[1:]
        sub1 -= wp[1:-1]

        wq = None
        if problem.order == 4:
            t_all = iv.lo + h * np.arange(m + 2)
            wq = _sample(problem.q4, t_all) / h**4
            wq[0] *= 0.5
            wq[-1] *= 0.5
            # boundary curvature rows: ghost reflection gives c_0 = 2 g_1
            diag[0] += 4.0 * wq[0]
            diag[m - 1] += 4.0 * wq[m + 1]
            # rows next to the boundary: c_1 = -2 g_1 + g_2 (g_0 = 0)
            diag[0] += 4.0 * wq[1]
            diag[m - 1] += 4.0 * wq[m]
            if m >= 2:
                sub1[0] -= 2.0 * wq[1]
                diag[1] += wq[1]
                sub1[m - 2] -= 2.0 * wq[m]
                diag[m - 2] += wq[m]
            # interior rows j = 2..m-1 with stencil (1, -2, 1)
            c = wq[2:m]
            diag[0 : m - 2] += c
            diag[1 : m - 1] += 4.0 * c
            diag[2:m] += c
            sub1[0 : m - 2] -= 2.0 * c
            sub1[1 : m - 1] -= 2.0 * c
            sub2[0 : m - 2] += c

        self.problem = problem
        self.m = m
        self.h = h
        self.t_int = t_int
        self.diag = diag
        self.sub1 = sub1
        self.sub2 = sub2
        self.weight = w
        self.wp = wp
        self.wq = wq
        self.v0 = v0

    def lowest_pairs(self, k: int) -> tuple[np.ndarray, np.ndarray]:
        """The k lowest eigenvalues and starting vectors for refinement,
        in original (unsymmetrized) coordinates.

        For k = 1 only the eigenvalue is taken from LAPACK (the bisection
        path is a couple of hundred times cheaper than the eigenvector
        path on fine grids) and a flat positive start vector is returned;
        the ground gap of every cataloged problem is wide enough that the
        inverse-iteration refinement scrubs it clean.  For k > 1 the
        LAPACK eigenvectors are kept so that refinement of clustered
        interior modes starts from the right member of the cluster.
        """
        s = 1.0 / np.sqrt(self.weight)
        band = np.zeros((3, self.m))
        band[0] = self.diag * s * s
        if self.m > 1:
            band[1, : self.m - 1] = self.sub1 * s[:-1] * s[1:]
        if self.m > 2:
            band[2, : self.m - 2] = self.sub2 * s[:-2] * s[2:]
        try:
            if k == 1:
                vals = eig_banded(
                    band,
                    lower=True,
                    eigvals_only=True,
                    select="i",
                    select_range=(0, 0),
                )
                vecs = np.ones((self.m, 1))
            else:
                vals, vecs = eig_banded(
                    band, lower=True, select="i", select_range=(0, k - 1)
                )
                vecs = vecs * s[:, None]
        except LinAlgError as exc:
            raise NonConvergent(f"banded eigensolver failed: {exc}") from exc
        if not np.all(np.isfinite(vals)):
            raise NonConvergent("banded eigensolver returned non-finite values")
        return vals, vecs

    def _solve_shifted(self, shift: float, rhs: np.ndarray) -> np.ndarray:
        m = self.m
        ab = np.zeros((5, m))
        ab[2] = self.diag - shift * self.weight
        if m > 1:
            ab[1, 1:] = self.sub1
            ab[3, : m - 1] = self.sub1
        if m > 2:
            ab[0, 2:] = self.sub2
            ab[4, : m - 2] = self.sub2
        return solve_banded((2, 2), ab, rhs)

    def quadratic_form(self, g: np.ndarray) -> float:
        """The assembled form evaluated as a sum of squares.

        This factored evaluation has no cancellation between the huge h^-4
        stencil entries, unlike g.(A g), so its relative rounding error stays
        near machine precision even on fine grids.
        """
        m = self.m
        full = np.zeros(m + 2)
        full[1:-1] = g
        total = float(np.sum(self.v0 * g * g))
        d = np.diff(full)
        total += float(np.sum(self.wp * d * d))
        if self.problem.order == 4:
            c = full[:-2] - 2.0 * full[1:-1] + full[2:]
            total += float(np.sum(self.wq[1 : m + 1] * c * c))
            total += self.wq[0] * (2.0 * g[0]) ** 2
            total += self.wq[m + 1] * (2.0 * g[m - 1]) ** 2
        return float(total)

    def rayleigh(self, g: np.ndarray) -> float:
        return self.quadratic_form(g) / float(np.sum(self.weight * g * g))

    def refine_pair(self, lam: float, vec: np.ndarray, floor: float | None) -> tuple[float, np.ndarray]:
        """Shifted inverse iteration from a banded-solver eigenpair.

        The raw solver's eigenvalues carry absolute error of order
        eps * norm(A), which is h^-4 scaled; a few inverse-iteration steps
        plus the factored Rayleigh quotient restore discretization-limited
        accuracy.
        """
        shift = lam - 0.01 * max(abs(lam), 1.0)
        if floor is not None and shift < floor:
            shift = 0.5 * (lam + floor)
        g = vec / np.max(np.abs(vec))
        for attempt in range(2):
            try:
                cur = g
                rq = math.inf
                for _ in range(8):
                    cur = self._solve_shifted(shift, self.weight * cur)
                    nrm = np.max(np.abs(cur))
                    if not (math.isfinite(nrm) and nrm > 0.0):
                        raise NonConvergent("inverse iteration degenerated")
                    cur = cur / nrm
                    prev, rq = rq, self.rayleigh(cur)
                    if abs(rq - prev) <= 1e-13 * max(abs(rq), 1.0):
                        break
                return rq, cur
            except LinAlgError:
                # shift landed on a discrete eigenvalue; nudge once
                shift = shift - 0.013 * max(abs(lam), 1.0)
        raise NonConvergent("shifted solve failed twice")


def _check_grid(problem: EigenProblem1D, n_grid: int) -> None:
    if n_grid < 64:
        raise DomainError(f"n_grid must be at least 64, got {n_grid}")


def fd_eigenvalues(
    problem: EigenProblem1D, n_grid: int = DEFAULT_ORACLE_GRID, k: int = 1
) -> list[float]:
    """The k lowest eigenvalues of the discretized problem (n_grid interior
    points), each refined by shifted inverse iteration.  Converges to the
    continuum values at rate O(n_grid^-2)."""
    _check_grid(problem, n_grid)
    if not 1 <= k <= n_grid:
        raise DomainError(f"k must be in [1, n_grid], got {k}")
    disc = _Discretization(problem, n_grid)
    vals, vecs = disc.lowest_pairs(k)
    out: list[float] = []
    for i in range(k):
        floor = out[-1] if out else None
        lam, _ = disc.refine_pair(float(vals[i]), vecs[:, i], floor)
        out.append(lam)
    return out


def fd_min_eigenpair(
    problem: EigenProblem1D, n_grid: int = DEFAULT_ORACLE_GRID
) -> tuple[float, GridFunction]:
    """Lowest eigenvalue and its grid eigenvector (boundary points included)."""
    _check_grid(problem, n_grid)
    disc = _Discretization(problem, n_grid)
    vals, vecs = disc.lowest_pairs(1)
    lam, g = disc.refine_pair(float(vals[0]), vecs[:, 0], None)
    iv = problem.interval
    grid = np.linspace(iv.lo, iv.hi, n_grid + 2)
    full = np.zeros(n_grid + 2)
    full[1:-1] = g
    return lam, GridFunction(grid=grid, values=full)


def fd_min_eigenvalue(
    problem: EigenProblem1D, n_grid: int = DEFAULT_ORACLE_GRID
) -> float:
    """Smallest eigenvalue of the discrete generalized problem A g = lam B g."""
    return fd_eigenvalues(problem, n_grid, k=1)[0]


def rayleigh_quotient(problem: EigenProblem1D, gf: GridFunction) -> float:
    """Factored Rayleigh quotient of a grid function for self-consistency
    checks against fd_min_eigenpair."""
    m = len(gf.values) - 2
    disc = _Discretization(problem, m)
    return disc.rayleigh(np.asarray(gf.values[1:-1], dtype=float))


def richardson_extrapolate(
    problem: EigenProblem1D, n_grid: int = DEFAULT_ORACLE_GRID // 2
) -> tuple[float, float, float]:
    """Eigenvalues at n_grid and 2*n_grid plus the h^2 extrapolation
    (4*lam(2n) - lam(n)) / 3, the oracle's reference value."""
    lam_n = fd_min_eigenvalue(problem, n_grid)
    lam_2n = fd_min_eigenvalue(problem, 2 * n_grid)
    return lam_n, lam_2n, (4.0 * lam_2n - lam_n) / 3.0

"""Reference energy densities: exact vacuum and thermal values for the
spacetimes whose bounds the catalog provides.

Series are summed with rigorous tail bounds through sum_series; the
periodic-identification lattice sums carry an explicit remainder estimate
from a midpoint Euler-Maclaurin envelope.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from numpy.polynomial.legendre import leggauss

from .errors import DomainError
from .numerics import DEFAULT_SERIES_RTOL, SeriesResult, sum_series


@dataclass(frozen=True)
class StressTensorDiag:
    """Diagonal stress tensor components in a named frame; components[0]
    is the energy density."""

    d: int
    components: tuple[float, ...]
    frame: str

    def __post_init__(self):
        if len(self.components) != self.d:
            raise DomainError(
                f"need {self.d} components, got {len(self.components)}"
            )
        if not all(math.isfinite(c) for c in self.components):
            raise DomainError("components must be finite")


def _csch(x: float) -> float:
    # 2 e^-x / (1 - e^-2x) never overflows for x > 0, unlike 1/sinh
    if not x > 0.0:
        raise DomainError(f"csch argument must be positive, got {x}")
    e = math.exp(-x)
    return 2.0 * e / (1.0 - e * e)


# ---------------------------------------------------------------------------
# spatial circle (cylinder spacetime)
# ---------------------------------------------------------------------------


def cylinder_ground_density(L: float) -> float:
    """Vacuum energy density -pi/(6 L^2) on a circle of circumference L."""
    if not (L > 0.0 and math.isfinite(L)):
        raise DomainError(f"L must be positive and finite, got {L}")
    return -math.pi / (6.0 * L * L)


def cylinder_thermal_density(
    L: float, beta: float = math.inf, rel_tol: float = DEFAULT_SERIES_RTOL
) -> SeriesResult:
    """Thermal energy density at inverse temperature beta:
    -pi/(6 L^2) + (pi/L^2) * sum_n csch^2(n pi beta / L).

    beta = inf returns the vacuum value with a zero-term series.
    """
    if not (L > 0.0 and math.isfinite(L)):
        raise DomainError(f"L must be positive and finite, got {L}")
    if not beta > 0.0:
        raise DomainError(f"beta must be positive, got {beta}")
    ground = cylinder_ground_density(L)
    if math.isinf(beta):
        return SeriesResult(value=ground, n_terms=0, tail_bound=0.0)
    pref = math.pi / (L * L)
    x = math.pi * beta / L
    y = math.exp(-2.0 * x)

    def term(n: int) -> float:
        return pref * _csch(n * x) ** 2

    def tail(n: int) -> float:
        # csch^2(n x) <= 4 y^n / (1-y)^2 summed geometrically past n
        return pref * 4.0 * y ** (n + 1) / (1.0 - y) ** 3

    series = sum_series(term, tail, rel_tol)
    return SeriesResult(
        value=ground + series.value,
        n_terms=series.n_terms,
        tail_bound=series.tail_bound,
    )


def cylinder_mode_cumulative(
    u: float,
    L: float,
    beta: float = math.inf,
    rel_tol: float = DEFAULT_SERIES_RTOL,
) -> float:
    """Cumulative mode function of the circle: a left-continuous staircase
    in u jumping at the mode frequencies 2 pi n / L, plus a u-independent
    thermal floor at finite beta."""
    if not (L > 0.0 and math.isfinite(L)):
        raise DomainError(f"L must be positive and finite, got {L}")
    if not beta > 0.0:
        raise DomainError(f"beta must be positive, got {beta}")
    if not math.isfinite(u):
        raise DomainError("u must be finite")
    w1 = 2.0 * math.pi / L
    total = 0.0
    n_below = int(math.floor(u / w1))
    while n_below >= 1 and n_below * w1 >= u:
        n_below -= 1
    if math.isinf(beta):
        for n in range(1, n_below + 1):
            total += n * w1
        return total / (math.pi * L)
    x = math.exp(-beta * w1)
    for n in range(1, n_below + 1):
        total += n * w1 / (1.0 - x**n)

    def term(n: int) -> float:
        e = x**n
        return n * w1 * e / (1.0 - e)

    def tail(n: int) -> float:
        # sum_{m>n} m x^m = x^(n+1) ((n+1) - n x)/(1-x)^2, then the
        # 1/(1 - x^m) factor is bounded by 1/(1-x)
        return w1 * x ** (n + 1) * ((n + 1) - n * x) / (1.0 - x) ** 3

    series = sum_series(term, tail, rel_tol)
    return (total + series.value) / (math.pi * L)


# ---------------------------------------------------------------------------
# rectangular periodic identifications (torus directions)
# ---------------------------------------------------------------------------

_GL_X, _GL_W = leggauss(48)


def _complement_integrals(b: np.ndarray) -> tuple[float, float, np.ndarray, np.ndarray]:
    """Integrals of q^-2, q^-3, x_i^2 q^-3 and x_i^2 q^-4 over the region
    outside the box |x_k| <= b_k, reduced to the box faces.

    Radially homogeneous integrands integrate exactly from each face to
    infinity, leaving smooth rational integrands on the face rectangles,
    which a 48-point tensor Gauss rule resolves to machine precision.
    """
    b = np.asarray(b, dtype=float)
    j = len(b)
    i2 = 0.0
    i3 = 0.0
    iax3 = np.zeros(j)
    iax4 = np.zeros(j)
    for k in range(j):
        others = [m for m in range(j) if m != k]
        if others:
            axes = [(0.5 * b[m] * (_GL_X + 1.0), 0.5 * b[m] * _GL_W * 2.0) for m in others]
            grids = np.meshgrid(*[a[0] for a in axes], indexing="ij")
            wgt = np.ones_like(grids[0])
            for idx in range(len(others)):
                shape = [1] * len(others)
                shape[idx] = -1
                wgt = wgt * axes[idx][1].reshape(shape)
            r2 = b[k] ** 2 + sum(g**2 for g in grids)
        else:
            grids = []
            wgt = np.ones(())
            r2 = np.array(b[k] ** 2)

        def sq(i: int):
            return b[k] ** 2 if i == k else grids[others.index(i)] ** 2

        i2 += 2.0 * b[k] / (4.0 - j) * float(np.sum(wgt * r2**-2))
        i3 += 2.0 * b[k] / (6.0 - j) * float(np.sum(wgt * r2**-3))
        for i in range(j):
            iax3[i] += 2.0 * b[k] / (4.0 - j) * float(np.sum(wgt * sq(i) * r2**-3))
            iax4[i] += 2.0 * b[k] / (6.0 - j) * float(np.sum(wgt * sq(i) * r2**-4))
    return i2, i3, iax3, iax4


def _lattice_sums(
    lengths: Sequence[float], block_radius: int = 32
) -> dict[str, object]:
    """P = sum' q^-2 and M_i = sum' (n_i L_i)^2 q^-3 over the nonzero
    image lattice, q = sum (n_i L_i)^2.

    The block |n|_inf <= block_radius is summed directly; the complement is
    approximated by its integral (midpoint rule over unit cells), with the
    second-derivative Euler-Maclaurin envelope integrated over the same
    region as a rigorous remainder bound (safety factor 2 on top).
    """
    lens = np.asarray(lengths, dtype=float)
    j = len(lens)
    n = block_radius
    rng = np.arange(-n, n + 1)
    grids = np.meshgrid(*[rng * L for L in lens], indexing="ij")
    q = sum(g**2 for g in grids)
    center = tuple([n] * j)
    q[center] = 1.0
    mask = np.ones_like(q)
    mask[center] = 0.0
    q3 = mask * q**-3
    p_sum = float(np.sum(mask * q**-2))
    m_sum = np.array([float(np.sum(g**2 * q3)) for g in grids])

    b = (n + 0.5) * lens
    cell = float(np.prod(lens))
    i2, i3, iax3, iax4 = _complement_integrals(b)
    p_sum += i2 / cell
    m_sum = m_sum + iax3 / cell

    # d^2/dx_k^2 (q^-2) = -4 q^-3 + 24 x_k^2 q^-4 termwise; for M_i the
    # envelope uses x_i^2 <= q, giving 80 q^-3 (k = i) or 54 q^-3 (k != i)
    bound_p = (
        sum(
            (lens[k] ** 2 / 24.0) * (4.0 * i3 + 24.0 * iax4[k])
            for k in range(j)
        )
        / cell
    )
    bound_m = np.array(
        [
            sum(
                (lens[k] ** 2 / 24.0) * (80.0 if k == i else 54.0) * i3
                for k in range(j)
            )
            / cell
            for i in range(j)
        ]
    )
    return {
        "P": p_sum,
        "M": m_sum,
        "bound_P": 2.0 * float(bound_p),
        "bound_M": 2.0 * bound_m,
        "n_terms": (2 * n + 1) ** j - 1,
    }


def torus_stress(
    lengths: Sequence[float], block_radius: int = 32
) -> tuple[StressTensorDiag, SeriesResult]:
    """Vacuum stress tensor for j of the three spatial directions made
    periodic with the given lengths (ascending).  Components are ordered
    time, noncompact directions, compact directions.

    The energy density is -P/(2 pi^2); each compact pressure subtracts
    2 M_i / pi^2; the sums satisfy sum_i M_i = P, which makes the tensor
    traceless.
    """
    j = len(lengths)
    if not 1 <= j <= 3:
        raise DomainError(f"need 1 to 3 lengths, got {j}")
    for L in lengths:
        if not (L > 0.0 and math.isfinite(L)):
            raise DomainError(f"lengths must be positive and finite, got {L}")
    if list(lengths) != sorted(lengths):
        raise DomainError("lengths must be sorted ascending")
    if block_radius < 4:
        raise DomainError(f"block_radius must be >= 4, got {block_radius}")

    sums = _lattice_sums(lengths, block_radius)
    p = float(sums["P"])
    m = sums["M"]
    two_pi2 = 2.0 * math.pi**2
    rho = -p / two_pi2
    comps = [rho]
    comps.extend([p / two_pi2] * (3 - j))
    for i in range(j):
        comps.append(p / two_pi2 - 2.0 * float(m[i]) / math.pi**2)
    frame = "static frame: t, then noncompact, then compact axes (ascending lengths)"
    stress = StressTensorDiag(d=4, components=tuple(comps), frame=frame)
    density = SeriesResult(
        value=rho,
        n_terms=int(sums["n_terms"]),
        tail_bound=float(sums["bound_P"]) / two_pi2,
    )
    return stress, density


# ---------------------------------------------------------------------------
# closed universe with identification boost (Misner-type interior)
# ---------------------------------------------------------------------------


def misner_prefactor(
    a: float, coupling_shift: float = 0.0, rel_tol: float = DEFAULT_SERIES_RTOL
) -> SeriesResult:
    """Dimensionless vacuum prefactor
    -sum_n [csch^4(n a/2) + 4 eps csch^2(n a/2)] for identification boost a
    and curvature-coupling shift eps."""
    if not (a > 0.0 and math.isfinite(a)):
        raise DomainError(f"a must be positive and finite, got {a}")
    if not math.isfinite(coupling_shift):
        raise DomainError("coupling_shift must be finite")
    eps = float(coupling_shift)
    em = math.exp(-a)
    one = 1.0 - em

    def term(n: int) -> float:
        c2 = _csch(0.5 * n * a) ** 2
        return -(c2 * c2 + 4.0 * eps * c2)

    def tail(n: int) -> float:
        # csch^2(n a/2) = 4 e^-na/(1-e^-na)^2 <= 4 e^-na/(1-e^-a)^2
        quart = 16.0 * math.exp(-2.0 * a * (n + 1)) / (one**4 * (1.0 - em * em))
        quad = 16.0 * abs(eps) * math.exp(-a * (n + 1)) / one**3
        return quart + quad

    return sum_series(term, tail, rel_tol)


def misner_density(
    a: float,
    t: float = 1.0,
    coupling_shift: float = 0.0,
    rel_tol: float = DEFAULT_SERIES_RTOL,
) -> tuple[StressTensorDiag, SeriesResult]:
    """Vacuum stress at interior time t: the prefactor times
    diag(1, 3 t^2, -1, -1) / (16 pi^2 t^4), where the second slot is the
    closed coordinate direction and carries the coordinate factor t^2."""
    if not (t > 0.0 and math.isfinite(t)):
        raise DomainError(f"t must be positive and finite, got {t}")
    series = misner_prefactor(a, coupling_shift, rel_tol)
    scale = 1.0 / (16.0 * math.pi**2 * t**4)
    k = series.value * scale
    stress = StressTensorDiag(
        d=4,
        components=(k, 3.0 * t * t * k, -k, -k),
        frame="interior chart: t, closed coordinate direction, then transverse",
    )
    density = SeriesResult(
        value=k, n_terms=series.n_terms, tail_bound=series.tail_bound * scale
    )
    return stress, density


# ---------------------------------------------------------------------------
# wedge (Rindler) static observers
# ---------------------------------------------------------------------------


def rindler_density(xi: float, zeta: float = 0.0) -> float:
    """Boost-vacuum energy density -(11 - 60 zeta) / (480 pi^2 xi^4) seen
    by the static observer at distance xi from the horizon."""
    if not (xi > 0.0 and math.isfinite(xi)):
        raise DomainError(f"xi must be positive and finite, got {xi}")
    if not math.isfinite(zeta):
        raise DomainError("zeta must be finite")
    return -(11.0 - 60.0 * zeta) / (480.0 * math.pi**2 * xi**4)

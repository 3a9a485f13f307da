"""Consistency checking (exact value vs bound band) and figure data.

This module produces plain data: ConsistencyReport records and FigureData
column sets.  Rendering to image files lives in render; serialization in
the CLI.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import bounds, eigen, exact
from .errors import DomainError, UnsupportedScenario
from .numerics import DEFAULT_SERIES_RTOL

REL_SLACK = 1e-12
SATURATION_RTOL = 1e-9


@dataclass(frozen=True)
class ConsistencyReport:
    """Outcome of comparing an exact density against its bound band."""

    scenario: bounds.Scenario
    exact: float
    lower: float
    upper: float | None
    lower_satisfied: bool
    upper_satisfied: bool | None
    margin_lower: float
    saturation: bool


@dataclass(frozen=True)
class FigureData:
    """Columnar data for one figure: a named grid plus named columns of
    equal length, all finite."""

    id: str
    grid_name: str
    grid: tuple[float, ...]
    columns: dict[str, tuple[float, ...]]

    def __post_init__(self):
        if not all(math.isfinite(g) for g in self.grid):
            raise DomainError("grid must be finite")
        if any(b <= a for a, b in zip(self.grid, self.grid[1:])):
            raise DomainError("grid must be strictly increasing")
        for name, col in self.columns.items():
            if len(col) != len(self.grid):
                raise DomainError(f"column {name} length mismatch")
            if not all(math.isfinite(v) for v in col):
                raise DomainError(f"column {name} has non-finite entries")


def _band_for(
    scenario: bounds.Scenario, series_rel: float
) -> tuple[float, float, float | None]:
    if isinstance(scenario, bounds.Cylinder):
        lo, up = bounds.cylinder_band(scenario.L, scenario.beta)
        ex = exact.cylinder_thermal_density(
            scenario.L, scenario.beta, series_rel
        ).value
        return ex, lo, up
    if isinstance(scenario, bounds.Torus):
        _, density = exact.torus_stress(scenario.lengths)
        lo = bounds.inertial_bound(4, scenario.lengths[0])
        return density.value, lo, None
    if isinstance(scenario, bounds.Misner):
        _, density = exact.misner_density(
            scenario.a, scenario.t, rel_tol=series_rel
        )
        lo = bounds.misner_eigen_bound(scenario.a) / (
            16.0 * math.pi**2 * scenario.t**4
        )
        return density.value, lo, None
    if isinstance(scenario, bounds.Rindler):
        ex = exact.rindler_density(scenario.xi, scenario.zeta)
        lo = bounds.rindler_lower(scenario.xi, scenario.zeta)
        return ex, lo, 0.0
    raise UnsupportedScenario(
        f"no exact reference for {type(scenario).__name__}"
    )


def check(
    scenario: bounds.Scenario, series_rel: float = DEFAULT_SERIES_RTOL
) -> ConsistencyReport:
    """Compare the exact density of a scenario against its bound band.

    lower_satisfied allows relative slack 1e-12 on the bound; saturation
    flags agreement with the lower bound to within 1e-9 relative.
    """
    ex, lo, up = _band_for(scenario, series_rel)
    lower_ok = ex >= lo - REL_SLACK * abs(lo)
    upper_ok = None if up is None else ex <= up + REL_SLACK * abs(up)
    return ConsistencyReport(
        scenario=scenario,
        exact=ex,
        lower=lo,
        upper=up,
        lower_satisfied=bool(lower_ok),
        upper_satisfied=None if upper_ok is None else bool(upper_ok),
        margin_lower=ex - lo,
        saturation=bool(abs(ex - lo) <= SATURATION_RTOL * abs(lo)),
    )


def regression_scenarios() -> list[bounds.Scenario]:
    """The fixed list of scenarios whose exact values must sit inside their
    bands: the full consistency sweep run by the test suite."""
    out: list[bounds.Scenario] = [bounds.Cylinder(1.0)]
    out.extend(bounds.Cylinder(1.0, ratio) for ratio in (0.5, 1.0, 2.0))
    out.extend(bounds.Torus((1.0,) * j) for j in (1, 2, 3))
    out.extend(bounds.Misner(a) for a in (0.5, 1.0, 2.0, 5.0))
    out.extend(bounds.Rindler(xi) for xi in (0.5, 1.0, 2.0))
    return out


# ---------------------------------------------------------------------------
# figure data
# ---------------------------------------------------------------------------


def figure_accn_evals(chi_grid=None, k: int = 3) -> FigureData:
    """Lowest k even-family eigenvalue branches of the accelerated
    worldline problem against chi, on a logarithmic grid by default."""
    if not 1 <= k <= 5:
        raise DomainError(f"k must be in [1, 5], got {k}")
    if chi_grid is None:
        chi_grid = np.logspace(-1.0, 2.0, 60)
    grid = tuple(float(c) for c in chi_grid)
    cols: dict[str, list[float]] = {f"lambda_{j}": [] for j in range(k)}
    for chi in grid:
        for sol in eigen.accel_eigenvalue_branches(chi, k):
            cols[f"lambda_{sol.branch}"].append(sol.value)
    return FigureData(
        id="accn-evals",
        grid_name="chi",
        grid=grid,
        columns={name: tuple(vals) for name, vals in cols.items()},
    )


def figure_thermal_band(ratio_grid=None) -> FigureData:
    """Circle energy density band and exact thermal curve against beta/L
    at L = 1: columns lower, upper, exact."""
    if ratio_grid is None:
        ratio_grid = np.linspace(0.2, 5.0, 60)
    grid = tuple(float(r) for r in ratio_grid)
    lower: list[float] = []
    upper: list[float] = []
    ex: list[float] = []
    for ratio in grid:
        lo, up = bounds.cylinder_band(1.0, ratio)
        lower.append(lo)
        upper.append(up)
        ex.append(exact.cylinder_thermal_density(1.0, ratio).value)
    return FigureData(
        id="thermal-band",
        grid_name="beta_over_L",
        grid=grid,
        columns={
            "lower": tuple(lower),
            "upper": tuple(upper),
            "exact": tuple(ex),
        },
    )


def figure_misner(a_grid=None) -> FigureData:
    """Exact interior prefactor against the variational lower bound on a
    grid of identification boosts: columns exact_prefactor, eigen_lower."""
    if a_grid is None:
        a_grid = np.linspace(0.2, 5.0, 60)
    grid = tuple(float(a) for a in a_grid)
    ex: list[float] = []
    lo: list[float] = []
    for a in grid:
        ex.append(exact.misner_prefactor(a).value)
        lo.append(bounds.misner_eigen_bound(a))
    return FigureData(
        id="misner",
        grid_name="a",
        grid=grid,
        columns={"exact_prefactor": tuple(ex), "eigen_lower": tuple(lo)},
    )


FIGURES = {
    "accn-evals": figure_accn_evals,
    "thermal-band": figure_thermal_band,
    "misner": figure_misner,
}

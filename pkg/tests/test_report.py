import math

import numpy as np
import pytest

from qeiband.bounds import Cylinder, MinkowskiInertial, Misner, Rindler, Torus
from qeiband.errors import DomainError, UnsupportedScenario
from qeiband.report import (
    FIGURES,
    ConsistencyReport,
    FigureData,
    check,
    figure_accn_evals,
    figure_misner,
    figure_thermal_band,
    regression_scenarios,
)

BETA = 4.730040744862704026
C4 = BETA**4 / (16.0 * math.pi**2)


def test_regression_sweep_everything_inside_band():
    for sc in regression_scenarios():
        rep = check(sc)
        assert rep.lower_satisfied, sc
        if rep.upper is not None:
            assert rep.upper_satisfied, sc
        assert rep.exact >= rep.lower - 1e-12 * abs(rep.lower)
        assert np.isclose(rep.margin_lower, rep.exact - rep.lower, rtol=1e-15)


def test_saturating_scenarios():
    saturated = [sc for sc in regression_scenarios() if check(sc).saturation]
    # exactly the vacuum circle and the horizon-distance family sit on
    # their lower bounds; everything else has real margin
    assert saturated == [
        Cylinder(1.0),
        Rindler(0.5),
        Rindler(1.0),
        Rindler(2.0),
    ]


def test_thermal_circle_strictly_inside():
    for beta in (0.5, 1.0, 2.0):
        rep = check(Cylinder(1.0, beta))
        assert rep.lower < rep.exact < rep.upper
        assert not rep.saturation


def test_torus_margin():
    rep = check(Torus((1.0, 1.0, 1.0)))
    assert rep.upper is None and rep.upper_satisfied is None
    assert np.isclose(rep.lower, -C4, rtol=1e-12)
    assert np.isclose(rep.margin_lower, -0.837536910696 + C4, rtol=1e-4)
    assert rep.margin_lower > 0.0


def test_rindler_report_shape():
    rep = check(Rindler(1.0))
    assert rep.upper == 0.0
    assert rep.upper_satisfied is True
    assert rep.saturation is True


def test_check_rejects_scenarios_without_exact_reference():
    with pytest.raises(UnsupportedScenario):
        check(MinkowskiInertial(d=4, tau0=1.0))


def test_figure_data_validation():
    with pytest.raises(DomainError):
        FigureData(id="x", grid_name="g", grid=(0.0, 0.0), columns={})
    with pytest.raises(DomainError):
        FigureData(id="x", grid_name="g", grid=(0.0, math.inf), columns={})
    with pytest.raises(DomainError):
        FigureData(id="x", grid_name="g", grid=(0.0, 1.0), columns={"c": (1.0,)})
    with pytest.raises(DomainError):
        FigureData(
            id="x", grid_name="g", grid=(0.0, 1.0), columns={"c": (1.0, math.nan)}
        )


def test_figure_accn_evals():
    fd = figure_accn_evals()
    assert fd.id == "accn-evals"
    assert fd.grid_name == "chi"
    assert len(fd.grid) == 60
    assert set(fd.columns) == {"lambda_0", "lambda_1", "lambda_2"}
    lam0 = fd.columns["lambda_0"]
    # the ground branch falls monotonically toward its infinite-window
    # limit of 1 and the branches never cross
    assert all(b < a for a, b in zip(lam0, lam0[1:]))
    assert all(v > 1.0 for v in lam0)
    assert lam0[-1] < 1.01
    for lo_name, hi_name in (("lambda_0", "lambda_1"), ("lambda_1", "lambda_2")):
        lo_col, hi_col = fd.columns[lo_name], fd.columns[hi_name]
        assert all(h > l for l, h in zip(lo_col, hi_col))


def test_figure_accn_evals_custom_grid():
    fd = figure_accn_evals(chi_grid=(0.5, 1.0, 5.0), k=1)
    assert fd.grid == (0.5, 1.0, 5.0)
    assert np.isclose(fd.columns["lambda_0"][1], 22.9377267723740933, rtol=1e-12)
    with pytest.raises(DomainError):
        figure_accn_evals(k=0)


def test_figure_thermal_band():
    fd = figure_thermal_band()
    assert fd.grid_name == "beta_over_L"
    assert set(fd.columns) == {"lower", "upper", "exact"}
    lower, upper, ex = (fd.columns[k] for k in ("lower", "upper", "exact"))
    assert all(l < e < u for l, e, u in zip(lower, ex, upper))
    # the vacuum floor is flat in beta
    assert len(set(lower)) == 1


def test_figure_misner_band_containment():
    fd = figure_misner()
    assert fd.grid_name == "a"
    ex = fd.columns["exact_prefactor"]
    lo = fd.columns["eigen_lower"]
    assert all(e >= l for e, l in zip(ex, lo))
    assert all(e < 0.0 for e in ex)
    # both quantities decay steeply with the boost parameter
    assert abs(ex[-1]) < 1e-2 < abs(ex[0])


def test_figures_registry():
    assert set(FIGURES) == {"accn-evals", "thermal-band", "misner"}
    for name, builder in FIGURES.items():
        assert builder().id == name

import math

import numpy as np
import pytest

from qeiband.errors import DomainError
from qeiband.exact import (
    StressTensorDiag,
    cylinder_ground_density,
    cylinder_mode_cumulative,
    cylinder_thermal_density,
    misner_density,
    misner_prefactor,
    rindler_density,
    torus_stress,
)


def test_stress_tensor_validation():
    with pytest.raises(DomainError):
        StressTensorDiag(d=4, components=(1.0, 2.0), frame="x")
    with pytest.raises(DomainError):
        StressTensorDiag(d=4, components=(1.0, 2.0, 3.0, math.inf), frame="x")


# ---------------------------------------------------------------------------
# cylinder
# ---------------------------------------------------------------------------


def test_cylinder_ground_density():
    assert np.isclose(cylinder_ground_density(1.0), -math.pi / 6.0, rtol=1e-15)
    assert np.isclose(cylinder_ground_density(2.0), -math.pi / 24.0, rtol=1e-15)
    with pytest.raises(DomainError):
        cylinder_ground_density(0.0)


CYL_THERMAL = {
    0.5: 0.09421980761294035,
    1.0: -0.5000000000000004,
    2.0: -0.5235549519033095,
}


def test_cylinder_thermal_density():
    for beta, ref in CYL_THERMAL.items():
        r = cylinder_thermal_density(1.0, beta, rel_tol=1e-12)
        assert np.isclose(r.value, ref, rtol=1e-10)
        assert r.tail_bound <= 1e-10 * abs(r.value)
    # at beta = L the value lands on -1/2 to machine precision
    assert abs(cylinder_thermal_density(1.0, 1.0, rel_tol=1e-12).value + 0.5) < 1e-12
    # heat only raises the energy density above the vacuum value
    ground = cylinder_ground_density(1.0)
    for beta in (0.5, 1.0, 2.0, 5.0):
        assert cylinder_thermal_density(1.0, beta).value > ground
    # cold limit collapses onto the vacuum
    cold = cylinder_thermal_density(1.0, 20.0)
    assert np.isclose(cold.value, ground, rtol=1e-14)
    # infinite beta short-circuits the series
    vac = cylinder_thermal_density(1.0)
    assert vac.value == ground and vac.n_terms == 0


def test_cylinder_thermal_tail_honesty():
    loose = cylinder_thermal_density(1.0, 0.5, rel_tol=1e-6)
    tight = cylinder_thermal_density(1.0, 0.5, rel_tol=1e-13)
    assert abs(loose.value - tight.value) <= loose.tail_bound
    assert loose.n_terms <= tight.n_terms


def test_cylinder_mode_cumulative_vacuum_staircase():
    q = lambda u: cylinder_mode_cumulative(u, 1.0)
    assert q(-1.0) == 0.0
    assert q(0.0) == 0.0
    # left-continuous: the jump at omega_n = 2 pi n happens just past it
    assert q(2.0 * math.pi) == 0.0
    assert q(2.0 * math.pi * 1.001) == 2.0
    assert q(4.0 * math.pi * 1.001) == 6.0


def test_cylinder_mode_cumulative_thermal():
    q = lambda u: cylinder_mode_cumulative(u, 1.0, 1.0)
    # below the first mode only the thermal floor contributes
    floor = 0.0037558617871580463
    assert np.isclose(q(-1.0), floor, rtol=1e-9)
    assert q(-1.0) == q(5.0)
    vals = [q(u) for u in (5.0, 7.0, 13.0, 20.0)]
    assert all(b > a for a, b in zip(vals, vals[1:]))
    # occupation factors fatten every jump above its vacuum size
    assert vals[1] - vals[0] > 2.0


# ---------------------------------------------------------------------------
# torus
# ---------------------------------------------------------------------------

# energy densities for unit compactification lengths, from an independent
# analytic-continuation evaluation of the same lattice sums
TORUS_RHO = {
    (1.0,): -(math.pi**2) / 90.0,
    (1.0, 1.0): -0.30532186472573967168,
    (1.0, 1.0, 1.0): -0.837536910696081874,
}


def test_torus_energy_density_against_references():
    for lengths, ref in TORUS_RHO.items():
        st, sr = torus_stress(lengths)
        assert abs(st.components[0] - ref) <= sr.tail_bound
        assert np.isclose(st.components[0], ref, rtol=2e-5)


def test_torus_stress_patterns():
    st1, _ = torus_stress((1.0,))
    rho = st1.components[0]
    assert np.allclose(st1.components, (rho, -rho, -rho, 3.0 * rho), rtol=1e-12)

    st2, _ = torus_stress((1.0, 1.0))
    rho = st2.components[0]
    assert np.allclose(st2.components, (rho, -rho, rho, rho), rtol=1e-12)

    st3, _ = torus_stress((1.0, 1.0, 1.0))
    rho = st3.components[0]
    assert np.allclose(st3.components, (rho, rho / 3.0, rho / 3.0, rho / 3.0), rtol=1e-12)


def test_torus_traceless_and_frame():
    for lengths in ((1.0,), (1.0, 1.0), (0.7, 1.3, 2.1)):
        st, _ = torus_stress(lengths)
        assert abs(st.components[0] - sum(st.components[1:])) < 1e-12
        assert "static frame" in st.frame


def test_torus_block_radius_independence():
    st16, sr16 = torus_stress((1.0, 1.0), block_radius=16)
    st32, sr32 = torus_stress((1.0, 1.0), block_radius=32)
    assert abs(st16.components[0] - st32.components[0]) <= sr16.tail_bound + sr32.tail_bound


def test_torus_anisotropic():
    st, sr = torus_stress((1.0, 2.0))
    assert abs(st.components[0] - (-0.13357832619719578)) <= max(sr.tail_bound, 1e-9)
    # the tighter direction dominates; both compact pressures differ
    assert st.components[2] != st.components[3]


def test_torus_scaling():
    # pure dimensional analysis: lengths -> s * lengths scales rho by s^-4
    st1, _ = torus_stress((1.0, 1.0))
    st2, _ = torus_stress((2.0, 2.0))
    assert np.isclose(st2.components[0], st1.components[0] / 16.0, rtol=1e-10)


def test_torus_rejects_bad_lengths():
    with pytest.raises(DomainError):
        torus_stress(())
    with pytest.raises(DomainError):
        torus_stress((2.0, 1.0))
    with pytest.raises(DomainError):
        torus_stress((0.0, 1.0))


# ---------------------------------------------------------------------------
# misner
# ---------------------------------------------------------------------------

MISNER_K = {
    0.5: -262.07322889478140615,
    1.0: -14.141792005560748844,
    2.0: -0.53014573226053056387,
    3.0: -0.048748020396638144414,
    5.0: -7.463438923517008e-4,
}


def test_misner_prefactor_values():
    for a, ref in MISNER_K.items():
        r = misner_prefactor(a, rel_tol=1e-12)
        assert np.isclose(r.value, ref, rtol=1e-7)
        assert r.tail_bound <= 1e-12 * abs(r.value)
    assert abs(misner_prefactor(40.0).value) < 1e-15


def test_misner_prefactor_coupling_shift():
    a = 2.0
    s2 = sum(
        (2.0 * math.exp(-0.5 * a * n) / (1.0 - math.exp(-a * n))) ** 2
        for n in range(1, 120)
    )
    k0 = misner_prefactor(a, rel_tol=1e-12).value
    ke = misner_prefactor(a, coupling_shift=0.25, rel_tol=1e-12).value
    assert np.isclose(ke, k0 - 4.0 * 0.25 * s2, rtol=1e-9)


def test_misner_density():
    st, sr = misner_density(2.0, rel_tol=1e-12)
    c0 = st.components[0]
    assert np.isclose(c0, -0.003357187068471871, rtol=1e-9)
    # at t = 1 the pattern is (k, 3k, -k, -k) in the interior chart
    assert np.allclose(st.components, (c0, 3.0 * c0, -c0, -c0), rtol=1e-12)
    assert "interior chart" in st.frame
    # proper-time scaling of the diamond normalization
    st2, _ = misner_density(2.0, t=2.0, rel_tol=1e-12)
    assert np.isclose(st2.components[0], st.components[0] / 16.0, rtol=1e-12)
    with pytest.raises(DomainError):
        misner_density(2.0, t=0.0)


# ---------------------------------------------------------------------------
# rindler
# ---------------------------------------------------------------------------


def test_rindler_density():
    assert np.isclose(rindler_density(1.0), -11.0 / (480.0 * math.pi**2), rtol=1e-15)
    assert np.isclose(rindler_density(2.0), rindler_density(1.0) / 16.0, rtol=1e-15)
    # conformal coupling value wipes out the density entirely
    assert rindler_density(1.0, 11.0 / 60.0) == pytest.approx(0.0, abs=1e-18)
    assert rindler_density(1.0, 1.0) > 0.0
    with pytest.raises(DomainError):
        rindler_density(0.0)

import math

import numpy as np
import pytest

from errors import DomainError
from schemas.cycle import IsochoricDirection
from schemas.reservoir import Reservoir
from services import medium_ho as ho
from services.medium_tls import squeezed_occupancy, thermal_occupation
from services.oracle import bosonic_entropy_from_N


def test_ground_state_energy():
    assert ho.ho_internal_energy(1.0, Reservoir.thermal(1e-3)) == pytest.approx(0.5, rel=1e-14)
    assert ho.ho_internal_energy(1.0, Reservoir(temperature=1e-3, squeeze_r=0.5)) == pytest.approx(
        0.5 * math.cosh(1.0), rel=1e-14)


def test_internal_energy_grows_with_squeezing():
    energies = [ho.ho_internal_energy(2.0, Reservoir(temperature=1.0, squeeze_r=r)) for r in np.linspace(0, 2, 11)]
    assert all(b > a for a, b in zip(energies, energies[1:]))


@pytest.mark.parametrize("omega,T,r", [(1.0, 1.0, 0.0), (1.0, 2.0, 0.5), (5.0, 2.0, 1.0), (0.1, 3.0, 0.2)])
def test_coefficient_F_is_occupancy_plus_one(omega, T, r):
    N = squeezed_occupancy(omega, Reservoir(temperature=T, squeeze_r=r)).N
    assert ho.ho_coefficient_F(omega, T, r) == pytest.approx(N + 1.0, rel=1e-12)


def test_gaussian_occupancy():
    occ = ho.gaussian_occupancy(1.0, Reservoir(temperature=1.0, squeeze_r=0.3))
    assert occ.F >= 1.0
    assert occ.n == pytest.approx(thermal_occupation(1.0, 1.0))


def test_hot_isotherm_thermal_reduction():
    t_h = 2.0
    hot = Reservoir.thermal(t_h)
    n1, n2 = thermal_occupation(1.0, t_h), thermal_occupation(5.0, t_h)
    expected = t_h * (bosonic_entropy_from_N(n1) - bosonic_entropy_from_N(n2))
    assert ho.ho_heat_isothermal_hot(1.0, 5.0, hot) == pytest.approx(expected, rel=1e-12)
    assert ho.ho_heat_isothermal_hot(3.0, 3.0, hot) == 0.0


def test_hot_isotherm_first_law():
    hot = Reservoir(temperature=2.0, squeeze_r=0.5)
    q_ab = ho.ho_heat_isothermal_hot(1.0, 5.0, hot)
    delta_u = ho.ho_internal_energy(1.0, hot) - ho.ho_internal_energy(5.0, hot)
    assert ho.ho_work_isothermal_hot(1.0, 5.0, hot) == pytest.approx(q_ab - delta_u, abs=1e-12)


def test_cold_isotherm_first_law():
    cold = Reservoir.thermal(1.0)
    q_cd = ho.ho_heat_isothermal_cold(1.0, 5.0, cold)
    delta_u = ho.ho_internal_energy(5.0, cold) - ho.ho_internal_energy(1.0, cold)
    assert ho.ho_work_isothermal_cold(1.0, 5.0, cold) == pytest.approx(q_cd - delta_u, abs=1e-12)
    expected = math.log(math.sinh(0.5) / math.sinh(2.5))
    assert ho.ho_work_isothermal_cold(1.0, 5.0, cold) == pytest.approx(expected, rel=1e-12)
    with pytest.raises(DomainError):
        ho.ho_work_isothermal_cold(1.0, 5.0, Reservoir(temperature=1.0, squeeze_r=0.2))


def test_isochoric_heat_from_squeezing_alone():
    r = 0.7
    hot, cold = Reservoir(temperature=1.0, squeeze_r=r), Reservoir.thermal(1.0)
    q_da = ho.ho_heat_isochoric(5.0, hot, cold, IsochoricDirection.COLD_TO_HOT)
    assert q_da == pytest.approx(2.5 / math.tanh(2.5) * (math.cosh(2 * r) - 1.0), rel=1e-12)
    assert ho.ho_heat_isochoric(5.0, hot, cold, IsochoricDirection.HOT_TO_COLD) == pytest.approx(-q_da)


def test_total_work_vanishes_without_temperature_gap():
    bath = Reservoir.thermal(1.5)
    assert ho.ho_total_work(1.0, 5.0, bath, bath) == pytest.approx(0.0, abs=1e-11)
    assert ho.ho_total_work(2.0, 2.0, Reservoir(temperature=3.0, squeeze_r=1.0), bath) == pytest.approx(0.0, abs=1e-14)


def test_total_work_rises_with_squeezing():
    cold = Reservoir.thermal(1.0)
    works = [ho.ho_total_work(1.0, 5.0, Reservoir(temperature=2.0, squeeze_r=r), cold) for r in (0.0, 0.5, 1.0)]
    assert works[0] > 0.0
    assert works[0] < works[1] < works[2]


def test_ledger_closes():
    ledger = ho.stroke_ledger(1.0, 5.0, Reservoir(temperature=2.0, squeeze_r=0.8), Reservoir.thermal(1.0))
    assert ledger.closure_residual < 1e-12
    assert ledger.W_total == pytest.approx(
        ho.ho_total_work(1.0, 5.0, Reservoir(temperature=2.0, squeeze_r=0.8), Reservoir.thermal(1.0)))
